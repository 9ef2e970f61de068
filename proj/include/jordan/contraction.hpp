#pragma once

#include <optional>
#include <string>
#include <vector>

#include "format.hpp"
#include "tensor.hpp"

namespace jordan {

/// (μ₁, μ₂, μ₃) with every entry 0 or 1.
struct MuTriple {
    int mu1 = 1, mu2 = 1, mu3 = 1;

    MuTriple() = default;
    MuTriple(int a, int b, int c) : mu1(a), mu2(b), mu3(c) {
        for (int m : {a, b, c})
            if (m != 0 && m != 1) throw Error("contraction parameters must be 0 or 1");
    }
    std::string label() const { return std::to_string(mu1) + std::to_string(mu2) + std::to_string(mu3); }
    friend bool operator==(const MuTriple&, const MuTriple&) = default;
    friend auto operator<=>(const MuTriple&, const MuTriple&) = default;
};

enum class ContractionMode { Eq22, Eq23 };

/// Generator X of the base algebra equals ε^{-generator_weight} X̂ and the base
/// parameter h equals ε^{h_weight} ĥ. Limits are taken at ε → 0.
struct Rescaling {
    std::vector<int> generator_weight;
    int h_weight = 0;
};

/// Rescaling of so4h (generator order J⁺ N⁺ J³ N³ J⁻ N⁻). A zero μ is realized
/// as ε^{zero_power}; zero_power must be even so that √μ stays a monomial.
inline Rescaling so4_rescaling(MuTriple mu, ContractionMode mode, int zero_power = 2) {
    if (zero_power <= 0 || zero_power % 2) throw Error("zero_power must be a positive even integer");
    const int half = zero_power / 2;
    const int e1 = mu.mu1 ? 0 : half, e2 = mu.mu2 ? 0 : half, e3 = mu.mu3 ? 0 : half;
    const int j = e2 + e3, n = e1 + e2, n3 = e1 + e3;
    Rescaling r;
    r.generator_weight = {j, n, 0, n3, j, n};
    r.h_weight = mode == ContractionMode::Eq23 ? e1 + e2 + 2 * e3 : e1 + e2;
    return r;
}

/// A term that keeps a negative power of ε after rescaling.
struct Offense {
    std::string entry;
    int h_order = 0;
    int eps_exponent = 0;
    std::string term;
};

template <std::size_t N>
struct ContractedSeries {
    Series<N> limit;
    std::vector<Offense> offenses;
};

/// Rescales every term of `base` (an expression for ε^{-prefactor}·X̂ …) and
/// keeps the ε⁰ part, re-homed in `target` (same generator positions).
template <std::size_t N>
ContractedSeries<N> contract_series(const Series<N>& base, const Rescaling& r, int prefactor,
                                    const AlgebraPtr& target, const std::string& entry) {
    ContractedSeries<N> out{Series<N>(target, base.order()), {}};
    const Algebra& B = base.algebra();
    base.for_each_term([&](int k, const typename Series<N>::Key& key, const Rational& c) {
        int e = prefactor + k * r.h_weight;
        for (const auto& w : key)
            for (std::size_t i = 0; i < w.size(); ++i) e -= r.generator_weight[static_cast<std::size_t>(letter_at(w, i))];
        if (e < 0) {
            out.offenses.push_back({entry, k, e, term_text<N>(B, k, key, c)});
        } else if (e == 0) {
            out.limit.add(k, key, c);
        }
    });
    return out;
}

struct ContractionOutcome {
    AlgebraPtr algebra; // null when the limit does not exist
    std::vector<Offense> offenses;
    std::optional<TensorSeries2> r_exponent;

    bool ok() const noexcept { return algebra != nullptr; }
};

namespace detail {

template <std::size_t N>
Series<N> require_limit(ContractedSeries<N>&& c) {
    if (!c.offenses.empty()) {
        const auto& o = c.offenses.front();
        throw NonContractible(o.entry + ": term " + o.term + " scales as eps^" + std::to_string(o.eps_exponent));
    }
    return std::move(c.limit);
}

inline std::string bracket_entry(const Algebra& A, int i, int j) {
    return "[" + A.generator_name(i) + "," + A.generator_name(j) + "]";
}

} // namespace detail

/// Builds the contracted algebra from any base algebra. Tables are produced
/// lazily at whatever order is requested; a negative ε power found later
/// raises NonContractible.
inline AlgebraPtr make_contracted_algebra(const AlgebraPtr& base, const Rescaling& r, std::string name,
                                          std::vector<std::string> names, std::string description,
                                          std::string parameter) {
    const int n = base->size();
    if (static_cast<int>(names.size()) != n || static_cast<int>(r.generator_weight.size()) != n)
        throw Error("contraction needs one name and one weight per generator");
    AlgebraDef def;
    def.name = std::move(name);
    def.description = std::move(description);
    def.parameter = std::move(parameter);
    def.generators = std::move(names);
    def.weights = base->def().weights;
    for (const auto& [key, rule] : base->def().brackets) {
        auto [i, j] = key;
        def.brackets[key] = [base, r, i, j](const Algebra& A, int K) {
            int pre = r.generator_weight[static_cast<std::size_t>(i)] + r.generator_weight[static_cast<std::size_t>(j)];
            return detail::require_limit(contract_series(base->bracket(i, j, K), r, pre, A.ptr(),
                                                         detail::bracket_entry(A, i, j)));
        };
    }
    for (int i = 0; i < n; ++i) {
        const int w = r.generator_weight[static_cast<std::size_t>(i)];
        def.coproducts.push_back([base, r, i, w](const Algebra& A, int K) {
            return detail::require_limit(
                contract_series(base->coproduct(i, K), r, w, A.ptr(), "Delta(" + A.generator_name(i) + ")"));
        });
        def.antipodes.push_back([base, r, i, w](const Algebra& A, int K) {
            return detail::require_limit(
                contract_series(base->antipode(i, K), r, w, A.ptr(), "S(" + A.generator_name(i) + ")"));
        });
        // ε(X̂) = ε^w ε(X); only w = 0 survives unchanged
        def.counits.push_back(w == 0 ? base->counit(i) : Rational(0));
    }
    return Algebra::create(std::move(def));
}

/// Scans every structure map of the would-be contraction at order K and lists
/// the entries that keep negative ε powers.
inline std::vector<Offense> contraction_offenses(const AlgebraPtr& base, const Rescaling& r,
                                                 const AlgebraPtr& target, int K) {
    std::vector<Offense> all;
    auto take = [&](auto&& c) { all.insert(all.end(), c.offenses.begin(), c.offenses.end()); };
    const int n = base->size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            int pre = r.generator_weight[static_cast<std::size_t>(i)] + r.generator_weight[static_cast<std::size_t>(j)];
            take(contract_series(base->bracket(i, j, K), r, pre, target, detail::bracket_entry(*target, i, j)));
        }
    for (int i = 0; i < n; ++i) {
        const int w = r.generator_weight[static_cast<std::size_t>(i)];
        take(contract_series(base->coproduct(i, K), r, w, target, "Delta(" + target->generator_name(i) + ")"));
        take(contract_series(base->antipode(i, K), r, w, target, "S(" + target->generator_name(i) + ")"));
    }
    return all;
}

inline std::vector<std::string> hatted_names(const Algebra& base) {
    std::vector<std::string> names;
    for (int i = 0; i < base.size(); ++i) names.push_back(base.generator_name(i) + "_h");
    return names;
}

inline std::string contracted_name(MuTriple mu, ContractionMode mode) {
    return std::string(mode == ContractionMode::Eq22 ? "c22_" : "c") + mu.label();
}

/// Graded contraction of so4h. When `base_exponent` is given (an so4h R
/// exponent), its limit is returned as the contracted R exponent.
inline ContractionOutcome contract(const AlgebraPtr& so4h, MuTriple mu, ContractionMode mode, int K,
                                   const TensorSeries2* base_exponent = nullptr, int zero_power = 2) {
    Rescaling r = so4_rescaling(mu, mode, zero_power);
    if (mu == MuTriple(1, 1, 1)) r = Rescaling{std::vector<int>(6, 0), 0};
    ContractionOutcome out;
    AlgebraPtr target = make_contracted_algebra(
        so4h, r, contracted_name(mu, mode), hatted_names(*so4h),
        "contraction of " + so4h->name() + " at (mu1,mu2,mu3)=(" + std::to_string(mu.mu1) + "," +
            std::to_string(mu.mu2) + "," + std::to_string(mu.mu3) + ")",
        "h");
    out.offenses = contraction_offenses(so4h, r, target, K);
    if (base_exponent) {
        auto c = contract_series(*base_exponent, r, 0, target, "R exponent");
        out.offenses.insert(out.offenses.end(), c.offenses.begin(), c.offenses.end());
        if (c.offenses.empty()) out.r_exponent = std::move(c.limit);
    }
    if (out.offenses.empty()) out.algebra = target;
    else out.r_exponent.reset();
    return out;
}

/// P⁻ := εJ⁻, P⁺ := J⁺, J³ := J³.
inline Rescaling sl2_to_p2_rescaling() { return Rescaling{{0, 0, 1}, 0}; }

} // namespace jordan
