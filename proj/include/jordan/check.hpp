#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "format.hpp"

namespace jordan {

/// Outcome of one exact identity check. `first_order` and `residual_terms`
/// describe the lowest h-order at which the residual is nonzero.
struct CheckReport {
    std::string name;
    std::string subject; // generator, pair or leg the failure was found on
    bool pass = true;
    int first_order = -1;
    std::vector<std::string> residual_terms;
    std::string note;
    std::string error; // set when the check could not be evaluated
};

inline constexpr std::size_t kMaxResidualTerms = 12;

template <std::size_t N>
CheckReport residual_report(std::string name, std::string subject, const Series<N>& residual) {
    CheckReport r{std::move(name), std::move(subject), true, -1, {}, {}, {}};
    const int k = residual.valuation();
    if (k < 0) return r;
    r.pass = false;
    r.first_order = k;
    const Algebra& A = residual.algebra();
    for (const auto& [key, c] : residual.at(k)) {
        if (r.residual_terms.size() == kMaxResidualTerms) {
            r.residual_terms.push_back("... (" + std::to_string(residual.at(k).size() - kMaxResidualTerms) +
                                       " more)");
            break;
        }
        r.residual_terms.push_back(term_text<N>(A, k, key, c));
    }
    return r;
}

/// Folds per-subject reports into one: passes iff all pass; on failure keeps
/// the subject with the lowest failing order.
inline CheckReport combine(std::string name, const std::vector<CheckReport>& parts) {
    CheckReport out{std::move(name), {}, true, -1, {}, {}, {}};
    for (const auto& p : parts) {
        if (p.pass) continue;
        if (out.pass || p.first_order < out.first_order) {
            std::string keep = out.name;
            out = p;
            out.name = std::move(keep);
        }
    }
    return out;
}

} // namespace jordan
