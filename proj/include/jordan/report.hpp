#pragma once

#include <cctype>
#include <chrono>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "check.hpp"
#include "contraction.hpp"
#include "reps.hpp"

namespace jordan {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Always "p/q", integers included.
inline std::string rational_json(const Rational& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

// ---- series and algebras ----------------------------------------------------

inline Json word_json(const Algebra& A, const Word& w) {
    Json out = Json::array();
    for (std::size_t i = 0; i < w.size(); ++i) out.push_back(A.generator_name(letter_at(w, i)));
    return out;
}

/// {"order": K, "coefficients": [terms of h^0, terms of h^1, ...]} where each
/// term is {"coeff": "p/q", "slots": [word, ...]} and a word is a list of
/// generator names in PBW order.
template <std::size_t N>
Json series_json(const Series<N>& s) {
    const Algebra& A = s.algebra();
    Json coeffs = Json::array();
    for (int k = 0; k <= s.order(); ++k) {
        Json terms = Json::array();
        for (const auto& [key, c] : s.at(k)) {
            Json slots = Json::array();
            for (const auto& w : key) slots.push_back(word_json(A, w));
            terms.push_back(Json{{"coeff", rational_json(c)}, {"slots", std::move(slots)}});
        }
        coeffs.push_back(std::move(terms));
    }
    return Json{{"order", s.order()}, {"coefficients", std::move(coeffs)}};
}

inline Json algebra_fields(const Algebra& A, int K) {
    const int n = A.size();
    Json gens = Json::array();
    for (int i = 0; i < n; ++i)
        gens.push_back(Json{{"name", A.generator_name(i)}, {"weight", A.def().weights[static_cast<std::size_t>(i)]}});
    Json brackets = Json::array();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            brackets.push_back(Json{{"pair", {A.generator_name(i), A.generator_name(j)}},
                                    {"value", series_json(A.bracket(i, j, K))}});
    Json coproducts = Json::array(), counits = Json::array(), antipodes = Json::array();
    for (int i = 0; i < n; ++i) {
        coproducts.push_back(Json{{"generator", A.generator_name(i)}, {"value", series_json(A.coproduct(i, K))}});
        counits.push_back(Json{{"generator", A.generator_name(i)}, {"value", rational_json(A.counit(i))}});
        antipodes.push_back(Json{{"generator", A.generator_name(i)}, {"value", series_json(A.antipode(i, K))}});
    }
    return Json{{"name", A.name()},
                {"description", A.def().description},
                {"parameter", A.def().parameter},
                {"order", K},
                {"generators", std::move(gens)},
                {"brackets", std::move(brackets)},
                {"coproducts", std::move(coproducts)},
                {"counits", std::move(counits)},
                {"antipodes", std::move(antipodes)}};
}

/// Structure tables truncated at h^K. Brackets are listed for pairs (a, b)
/// with a before b in PBW order.
inline Json algebra_json(const Algebra& A, int K) {
    Json out{{"schema_version", kSchemaVersion}, {"kind", "algebra"}};
    out.update(algebra_fields(A, K));
    return out;
}

inline Json offense_json(const Offense& o) {
    return Json{{"entry", o.entry}, {"h_order", o.h_order}, {"eps_exponent", o.eps_exponent}, {"term", o.term}};
}

/// Algebra export of the limit (when it exists) plus a diagnostics block.
inline Json contraction_json(const ContractionOutcome& c, const std::string& name, const std::string& mode, int K) {
    Json out{{"schema_version", kSchemaVersion}, {"kind", "contraction"}, {"status", c.ok() ? "pass" : "fail"}};
    if (c.ok()) {
        out.update(algebra_fields(*c.algebra, K));
    } else {
        out["name"] = name;
        out["order"] = K;
    }
    Json offenses = Json::array();
    for (const auto& o : c.offenses) offenses.push_back(offense_json(o));
    out["diagnostics"] = Json{{"mode", mode},
                              {"well_defined", c.ok()},
                              {"offense_count", c.offenses.size()},
                              {"offenses", std::move(offenses)}};
    if (c.r_exponent) out["r_exponent"] = series_json(*c.r_exponent);
    return out;
}

// ---- matrices -------------------------------------------------------------

/// Coefficients of h^0, h^1, ... with trailing zeros dropped.
inline Json poly_json(const Poly& p) {
    Json out = Json::array();
    for (const auto& c : p) out.push_back(rational_json(c));
    return out;
}

inline Json matrix_json(const PolyMatrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.size(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.size(); ++j) row.push_back(poly_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return Json{{"dim", m.size()}, {"degree", m.degree()}, {"entries", std::move(rows)}};
}

inline PolyMatrix matrix_from_json(const Json& j) {
    const int n = j.at("dim").get<int>();
    PolyMatrix m(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            const auto& coeffs = j.at("entries").at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(c));
            for (std::size_t k = 0; k < coeffs.size(); ++k) {
                Rational q(coeffs[k].get<std::string>());
                q.canonicalize();
                m.add(r, c, static_cast<int>(k), q);
            }
        }
    return m;
}

inline std::string poly_text(const Poly& p) {
    std::string out;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (sgn(p[k]) == 0) continue;
        Rational c = abs(p[k]);
        std::string mag;
        if (k == 0) mag = c.get_str();
        else mag = (c == 1 ? std::string() : c.get_str() + "*") + (k == 1 ? "h" : "h^" + std::to_string(k));
        if (out.empty()) out = (sgn(p[k]) < 0 ? "-" : "") + mag;
        else out += (sgn(p[k]) < 0 ? " - " : " + ") + mag;
    }
    return out.empty() ? "0" : out;
}

inline std::string matrix_text(const PolyMatrix& m) {
    std::string out;
    for (int i = 0; i < m.size(); ++i) {
        out += "[";
        for (int j = 0; j < m.size(); ++j) out += (j ? ", " : "") + poly_text(m.at(i, j));
        out += "]\n";
    }
    return out;
}

// ---- LaTeX ------------------------------------------------------------------

inline std::string latex_rational(const Rational& c) {
    if (c.get_den() == 1) return c.get_num().get_str();
    return "\\frac{" + c.get_num().get_str() + "}{" + c.get_den().get_str() + "}";
}

/// Jp -> J^{+}, N3_h -> \hat{N}^{3}, J1m -> J^{-}_{1}; anything else upright.
inline std::string latex_generator(std::string name) {
    bool hat = false;
    if (name.size() > 2 && name.ends_with("_h")) {
        hat = true;
        name.resize(name.size() - 2);
    }
    std::string sup;
    if (!name.empty() && (name.back() == 'p' || name.back() == 'm' || name.back() == '3') && name.size() >= 2) {
        sup = name.back() == 'p' ? "+" : name.back() == 'm' ? "-" : "3";
        name.pop_back();
    } else {
        return "\\mathrm{" + name + "}";
    }
    std::size_t d = name.size();
    while (d > 0 && std::isdigit(static_cast<unsigned char>(name[d - 1]))) --d;
    std::string base = name.substr(0, d), sub = name.substr(d);
    if (hat) base = "\\hat{" + base + "}";
    return base + "^{" + sup + "}" + (sub.empty() ? "" : "_{" + sub + "}");
}

inline std::string latex_parameter(const Algebra& A) {
    bool hatted = A.size() > 0 && A.generator_name(0).ends_with("_h");
    return hatted ? "\\hat{" + A.def().parameter + "}" : A.def().parameter;
}

inline std::string latex_word(const Algebra& A, const Word& w) {
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < w.size();) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        std::string g = latex_generator(A.generator_name(letter_at(w, i)));
        if (!out.empty()) out += " ";
        out += j - i > 1 ? "(" + g + ")^{" + std::to_string(j - i) + "}" : g;
        i = j;
    }
    return out;
}

template <std::size_t N>
std::string series_latex(const Series<N>& s) {
    const Algebra& A = s.algebra();
    const std::string h = latex_parameter(A);
    std::string out;
    s.for_each_term([&](int k, const typename Series<N>::Key& key, const Rational& c) {
        Rational mag = abs(c);
        std::string t;
        if (mag != 1) t = latex_rational(mag) + " ";
        if (k > 0) t += h + (k > 1 ? "^{" + std::to_string(k) + "}" : "") + " ";
        for (std::size_t slot = 0; slot < N; ++slot) {
            if (slot > 0) t += " \\otimes ";
            t += latex_word(A, key[slot]);
        }
        if (out.empty()) out = (sgn(c) < 0 ? "-" : "") + t;
        else out += (sgn(c) < 0 ? " - " : " + ") + t;
    });
    if (out.empty()) out = "0";
    return out + " + O(" + h + "^{" + std::to_string(s.order() + 1) + "})";
}

/// Appendix-style table: brackets, then coproducts, antipodes and counits.
inline std::string algebra_latex(const Algebra& A, int K) {
    std::string out = "\\begin{align*}\n";
    const int n = A.size();
    auto g = [&](int i) { return latex_generator(A.generator_name(i)); };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            out += "[" + g(i) + ", " + g(j) + "] &= " + series_latex(A.bracket(i, j, K)) + " \\\\\n";
    for (int i = 0; i < n; ++i) out += "\\Delta " + g(i) + " &= " + series_latex(A.coproduct(i, K)) + " \\\\\n";
    for (int i = 0; i < n; ++i) out += "S(" + g(i) + ") &= " + series_latex(A.antipode(i, K)) + " \\\\\n";
    for (int i = 0; i < n; ++i)
        out += "\\epsilon(" + g(i) + ") &= " + latex_rational(A.counit(i)) + (i + 1 < n ? " \\\\\n" : "\n");
    return out + "\\end{align*}\n";
}

inline std::string poly_latex(const Poly& p, const std::string& h = "h") {
    std::string out;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (sgn(p[k]) == 0) continue;
        Rational c = abs(p[k]);
        std::string mag;
        if (k == 0) mag = latex_rational(c);
        else mag = (c == 1 ? std::string() : latex_rational(c) + " ") + h + (k > 1 ? "^{" + std::to_string(k) + "}" : "");
        if (out.empty()) out = (sgn(p[k]) < 0 ? "-" : "") + mag;
        else out += (sgn(p[k]) < 0 ? " - " : " + ") + mag;
    }
    return out.empty() ? "0" : out;
}

inline std::string matrix_latex(const PolyMatrix& m) {
    std::string out = "\\begin{pmatrix}\n";
    for (int i = 0; i < m.size(); ++i) {
        for (int j = 0; j < m.size(); ++j) out += (j ? " & " : "") + poly_latex(m.at(i, j));
        out += i + 1 < m.size() ? " \\\\\n" : "\n";
    }
    return out + "\\end{pmatrix}\n";
}

// ---- check reports ----------------------------------------------------------

inline std::string status_of(const CheckReport& c) {
    if (!c.error.empty()) return "error";
    return c.pass ? "pass" : "fail";
}

inline Json check_json(const CheckReport& c) {
    Json out{{"name", c.name}, {"status", status_of(c)}};
    if (!c.subject.empty()) out["subject"] = c.subject;
    if (!c.pass && c.error.empty()) {
        out["first_nonzero_order"] = c.first_order;
        out["residual_terms"] = c.residual_terms;
    }
    if (!c.note.empty()) out["note"] = c.note;
    if (!c.error.empty()) out["error"] = c.error;
    return out;
}

struct Report {
    std::string command;
    std::string algebra;
    int order = 0;
    std::string route;
    std::vector<CheckReport> checks;
    std::vector<std::pair<std::string, double>> timings; // seconds per check group
    Json payload;                                        // command-specific data

    bool ok() const {
        for (const auto& c : checks)
            if (!c.pass || !c.error.empty()) return false;
        return true;
    }
};

/// Timings vary run to run, so they are only included on request.
inline Json report_json(const Report& r, bool with_timings) {
    Json out{{"schema_version", kSchemaVersion}, {"command", r.command}, {"algebra", r.algebra}, {"order", r.order}};
    if (!r.route.empty()) out["route"] = r.route;
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back(check_json(c));
    out["checks"] = std::move(checks);
    out["status"] = r.ok() ? "pass" : "fail";
    if (!r.payload.is_null()) out["result"] = r.payload;
    if (with_timings) {
        Json t = Json::object();
        for (const auto& [name, secs] : r.timings) t[name] = secs;
        out["timings"] = std::move(t);
    }
    return out;
}

inline std::string check_text(const CheckReport& c) {
    std::string s = (c.pass && c.error.empty() ? "PASS " : c.error.empty() ? "FAIL " : "ERROR ") + c.name;
    if (!c.subject.empty()) s += " [" + c.subject + "]";
    if (!c.error.empty()) s += ": " + c.error;
    if (!c.pass && c.error.empty()) {
        s += " first nonzero order h^" + std::to_string(c.first_order) + ":";
        for (const auto& t : c.residual_terms) s += "\n    " + t;
    }
    if (!c.note.empty()) s += "\n    note: " + c.note;
    return s;
}

inline std::string report_text(const Report& r, bool with_timings) {
    std::string out = r.command + " " + r.algebra + " at order " + std::to_string(r.order);
    if (!r.route.empty()) out += " via " + r.route;
    out += "\n";
    for (const auto& c : r.checks) out += check_text(c) + "\n";
    if (with_timings)
        for (const auto& [name, secs] : r.timings) out += "time " + name + " " + std::to_string(secs) + " s\n";
    out += r.ok() ? "all checks pass\n" : "some checks failed\n";
    return out;
}

inline std::string latex_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '_' || c == '&' || c == '%' || c == '#' || c == '$') out += '\\';
        out += c;
    }
    return out;
}

inline std::string report_latex(const Report& r) {
    std::string out = "\\begin{tabular}{lll}\n\\hline\ncheck & subject & status \\\\\n\\hline\n";
    for (const auto& c : r.checks)
        out += latex_escape(c.name) + " & " + latex_escape(c.subject) + " & " + status_of(c) + " \\\\\n";
    return out + "\\hline\n\\end{tabular}\n";
}

/// Wall time of fn in seconds.
template <class Fn>
double timed(Fn&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace jordan
