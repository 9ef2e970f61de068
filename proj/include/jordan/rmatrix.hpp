#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "check.hpp"
#include "registry.hpp"

namespace jordan {

/// How an R matrix is assembled.
///   Direct     exp of the Jordanian exponent with the x/sinh x prefactor
///   Symmetric  exp((Δ−Δ′)X) for the single-element form of the same exponent
///   Copies     product of the two sl(2)/iso(2) copy R matrices, rewritten
///   ClosedForm exp((Δ−Δ′)X) with X reduced to a pole-free left-coefficient form
///   Limit      ε→0 limit of the so4h exponent under the contraction rescaling
enum class Route { Default, Direct, Symmetric, Copies, ClosedForm, Limit };

inline std::string route_name(Route r) {
    switch (r) {
    case Route::Default: return "default";
    case Route::Direct: return "direct";
    case Route::Symmetric: return "symmetric";
    case Route::Copies: return "copies";
    case Route::ClosedForm: return "closed-form";
    case Route::Limit: return "limit";
    }
    return "?";
}

inline Route parse_route(std::string_view s) {
    for (Route r : {Route::Default, Route::Direct, Route::Symmetric, Route::Copies, Route::ClosedForm, Route::Limit})
        if (route_name(r) == s) return r;
    throw Error("unknown route '" + std::string(s) + "'");
}

struct RSpec {
    std::string algebra;
    Route route = Route::Default;
    int order = 6;
};

struct RMatrix {
    AlgebraPtr algebra;
    Route route = Route::Default;
    int order = 0;
    TensorSeries2 exponent;
    TensorSeries2 r;
    TensorSeries2 r_inverse;             // exp(−exponent)
    std::optional<HSeries> x;            // exponent = (Δ−Δ′)X when known
    std::vector<CheckReport> self_checks; // division round trips, form agreements
};

/// Which of the three contracted R forms applies to a triple.
enum class RCase { Classical = 1, Boost = 2, Copies = 3 };

inline RCase r_case(MuTriple mu) {
    if (mu.mu3 == 0) return RCase::Classical;
    if (mu.mu1 == 0) return RCase::Boost;
    if (mu.mu2 == 0) return RCase::Copies;
    throw Error("(1,1,1) is so4h itself, not a contraction");
}

namespace detail {

// so4-shaped generator positions shared by so4h, its contractions and the pair algebras
enum So4Slot { kJp = 0, kNp = 1, kJ3 = 2, kN3 = 3, kJm = 4, kNm = 5 };

/// c·h^k as a series.
inline HSeries h_power(const Algebra& A, const Rational& c, int k, int K) {
    HSeries s(A.ptr(), K);
    s.add(k, {Word{}}, c);
    return s;
}

/// h·Σ c_i g_i.
inline HSeries h_linear(const Algebra& A, const std::vector<std::pair<Rational, int>>& lin, int K) {
    HSeries s(A.ptr(), K);
    for (const auto& [c, g] : lin) s.add(1, {letter(g)}, c);
    return s;
}

inline TensorSeries2 antisymmetrized_delta(const HSeries& x) {
    TensorSeries2 d = apply_coproduct(x);
    return d - flip(d);
}

/// Copies every term into a series of order K2 ≥ order. Only exact when the
/// caller knows the missing orders cannot contribute.
inline HSeries raised(const HSeries& s, int K2) {
    HSeries out(s.algebra_ptr(), K2);
    s.for_each_term([&](int k, const HSeries::Key& w, const Rational& c) { out.add(k, w, c); });
    return out;
}

/// Checks that num/den equals `expected` and that quotient·den gives num back.
inline CheckReport division_check(std::string name, const HSeries& num, const HSeries& den, const HSeries& expected) {
    HSeries q = series_div_exact(num, den);
    CheckReport agree = residual_report(name, "pole-free form", q - expected.truncated(q.order()));
    if (!agree.pass) return agree;
    CheckReport back = residual_report(name, "quotient*divisor", raised(q, num.order()) * den - num);
    back.name = std::move(name);
    return back;
}

inline void require(const CheckReport& c) {
    if (!c.pass)
        throw Error(c.name + " failed (" + c.subject + ") at h^" + std::to_string(c.first_order) +
                    (c.residual_terms.empty() ? "" : ": " + c.residual_terms.front()));
}

} // namespace detail

/// exp{ Δ(shP)/sinh Δ(shP) · [T⊗sinh(shP) − sinh(shP)⊗T] } exponent for the
/// sl(2)-type copy on raising slot p, Cartan slot t, parameter sign s.
inline TensorSeries2 jordanian_exponent(const Algebra& A, int p, int t, int sign, int K) {
    HSeries hp = detail::h_linear(A, {{Rational(sign), p}}, K);
    HSeries one = A.one(K), T = A.generator(t, K);
    TensorSeries2 dp = outer(hp, one) + outer(one, hp);
    HSeries s = analytic_apply(AnalyticFn::sinh(), hp);
    return analytic_apply(AnalyticFn::x_over_sinh(), dp) * (outer(T, s) - outer(s, T));
}

/// X = ½ T · (shP)/sinh(shP), so that the exponent above is (Δ−Δ′)X.
inline HSeries jordanian_x(const Algebra& A, int p, int t, int sign, int K) {
    HSeries hp = detail::h_linear(A, {{Rational(sign), p}}, K);
    return A.generator(t, K) * analytic_apply(AnalyticFn::x_over_sinh(), hp) * Rational(1, 2);
}

/// (shP)/sinh(shP) obtained by exact division, against the analytic form.
inline CheckReport jordanian_ratio_check(const Algebra& A, int p, int K) {
    HSeries hp = detail::h_linear(A, {{Rational(1), p}}, K + 1);
    HSeries s = analytic_apply(AnalyticFn::sinh(), hp);
    HSeries g = analytic_apply(AnalyticFn::x_over_sinh(), detail::h_linear(A, {{Rational(1), p}}, K));
    return detail::division_check("ratio hP/sinh(hP)", hp, s, g);
}

/// so4-shaped X = J³a + N³b with a, b = (g(x₁) ± g(x₂))/4, g(x) = x/sinh x,
/// x₁,₂ = h(J⁺ ± N⁺)/2.
inline HSeries so4_x(const Algebra& A, int K) {
    using namespace detail;
    const Rational half(1, 2), quarter(1, 4);
    auto g = AnalyticFn::x_over_sinh();
    HSeries g1 = analytic_apply(g, h_linear(A, {{half, kJp}, {half, kNp}}, K));
    HSeries g2 = analytic_apply(g, h_linear(A, {{half, kJp}, {-half, kNp}}, K));
    return A.generator(kJ3, K) * ((g1 + g2) * quarter) + A.generator(kN3, K) * ((g1 - g2) * quarter);
}

/// Ratio form of the so4-shaped exponent: left coefficients of J³
/// and N³ are (h/2)(J⁺ sJ cN − N⁺ sN cJ)/(cosh hJ⁺ − cosh hN⁺) and the same with
/// J⁺, N⁺ exchanged in front, where sJ = sinh(hJ⁺/2) etc.
inline std::vector<CheckReport> so4_ratio_checks(const Algebra& A, int K) {
    using namespace detail;
    const int L = K + 2;
    const Rational half(1, 2), quarter(1, 4);
    auto sJ = hyperbolic(A, AnalyticFn::sinh(), kJp, half, L), cJ = hyperbolic(A, AnalyticFn::cosh(), kJp, half, L);
    auto sN = hyperbolic(A, AnalyticFn::sinh(), kNp, half, L), cN = hyperbolic(A, AnalyticFn::cosh(), kNp, half, L);
    HSeries den = hyperbolic(A, AnalyticFn::cosh(), kJp, 1, L) - hyperbolic(A, AnalyticFn::cosh(), kNp, 1, L);
    HSeries J = A.generator(kJp, L), N = A.generator(kNp, L), hh = h_power(A, half, 1, L);
    HSeries num_a = hh * (J * sJ * cN - N * sN * cJ);
    HSeries num_b = hh * (N * sJ * cN - J * sN * cJ);
    auto g = AnalyticFn::x_over_sinh();
    HSeries g1 = analytic_apply(g, h_linear(A, {{half, kJp}, {half, kNp}}, K));
    HSeries g2 = analytic_apply(g, h_linear(A, {{half, kJp}, {-half, kNp}}, K));
    return {division_check("ratio coefficient of J3", num_a, den, (g1 + g2) * quarter),
            division_check("ratio coefficient of N3", num_b, den, (g1 - g2) * quarter)};
}

/// Case μ₃ = 1, μ₁ = 0: X = ½J³g(u) + ¼N³·hJ⁺g′(u), u = hN⁺/2.
inline HSeries boost_x(const Algebra& A, int K) {
    using namespace detail;
    auto g = AnalyticFn::x_over_sinh();
    HSeries u = h_linear(A, {{Rational(1, 2), kNp}}, K);
    HSeries a = analytic_apply(g, u) * Rational(1, 2);
    HSeries b = h_linear(A, {{Rational(1), kJp}}, K) * analytic_apply(AnalyticFn::derivative(g), u) * Rational(1, 4);
    return A.generator(kJ3, K) * a + A.generator(kN3, K) * b;
}

namespace detail {

struct BoostRatio {
    HSeries num_j3, num_n3;
};

// (h/2)·{−N⁺ sinh u} and (h/2)·{(h/2)N⁺J⁺ cosh u − J⁺ sinh u}, u = hN⁺/2
inline BoostRatio boost_numerators(const Algebra& A, int L) {
    const Rational half(1, 2);
    HSeries su = hyperbolic(A, AnalyticFn::sinh(), kNp, half, L);
    HSeries cu = hyperbolic(A, AnalyticFn::cosh(), kNp, half, L);
    HSeries J = A.generator(kJp, L), N = A.generator(kNp, L), hh = h_power(A, half, 1, L);
    return {hh * (-(N * su)), hh * (hh * N * J * cu - J * su)};
}

} // namespace detail

/// Denominator 1 − cosh(hN⁺), or a deliberately wrong one for mutation tests.
inline HSeries boost_denominator(const Algebra& A, const Rational& scale, int L) {
    return A.one(L) - hyperbolic(A, AnalyticFn::cosh(), detail::kNp, scale, L);
}

inline std::vector<CheckReport> boost_ratio_checks(const Algebra& A, int K) {
    using namespace detail;
    const int L = K + 2;
    auto [nj, nn] = boost_numerators(A, L);
    HSeries den = boost_denominator(A, 1, L);
    auto g = AnalyticFn::x_over_sinh();
    HSeries u = h_linear(A, {{Rational(1, 2), kNp}}, K);
    HSeries a = analytic_apply(g, u) * Rational(1, 2);
    HSeries b = h_linear(A, {{Rational(1), kJp}}, K) * analytic_apply(AnalyticFn::derivative(g), u) * Rational(1, 4);
    return {division_check("ratio coefficient of J3", nj, den, a),
            division_check("ratio coefficient of N3", nn, den, b)};
}

/// X for case 2 taken straight from the ratio, dividing by 1 − cosh(scale·hN⁺).
inline HSeries boost_x_from_ratio(const Algebra& A, const Rational& scale, int K) {
    using namespace detail;
    const int L = K + 2;
    auto [nj, nn] = boost_numerators(A, L);
    HSeries den = boost_denominator(A, scale, L);
    return A.generator(kJ3, K) * series_div_exact(nj, den) + A.generator(kN3, K) * series_div_exact(nn, den);
}

/// Assembles exponent, R and R⁻¹.
inline RMatrix r_from_exponent(AlgebraPtr A, Route route, TensorSeries2 exponent, std::optional<HSeries> x = {}) {
    if (!exponent.at(0).empty()) throw NonNilpotentArgument("R exponent has an h^0 part");
    RMatrix m;
    m.algebra = std::move(A);
    m.route = route;
    m.order = exponent.order();
    m.r = series_exp(exponent);
    m.r_inverse = series_exp(-exponent);
    m.exponent = std::move(exponent);
    m.x = std::move(x);
    return m;
}

/// Three-letter sl(2)-type algebras (sl2h, p2m, iso2h): Direct or Symmetric.
inline RMatrix build_jordanian_r(const AlgebraPtr& A, Route route, int K) {
    if (route == Route::Default) route = Route::Direct;
    if (route != Route::Direct && route != Route::Symmetric)
        throw Error("route " + route_name(route) + " is not available for " + A->name());
    HSeries x = jordanian_x(*A, 0, 1, 1, K);
    TensorSeries2 e = route == Route::Direct ? jordanian_exponent(*A, 0, 1, 1, K) : detail::antisymmetrized_delta(x);
    RMatrix m = r_from_exponent(A, route, std::move(e), x);
    m.self_checks.push_back(jordanian_ratio_check(*A, 0, K));
    detail::require(m.self_checks.back());
    return m;
}

/// Sum of the two copy exponents in a pair algebra (copy 2 has parameter −h).
inline TensorSeries2 pair_exponent(const Algebra& P, int K) {
    using namespace detail;
    // pair order X1⁺ X2⁺ X1³ X2³ X1⁻ X2⁻
    return jordanian_exponent(P, 0, 2, 1, K) + jordanian_exponent(P, 1, 3, -1, K);
}

/// Product-of-copies R for an so4-shaped algebra: R₁(h)·R₂(−h) in the pair
/// algebra, rewritten through X₁ = (J+N)/2, X₂ = (J−N)/2.
inline RMatrix build_copies_r(const AlgebraPtr& A, const AlgebraPtr& pair, int K) {
    const Algebra& P = *pair;
    TensorSeries2 e1 = jordanian_exponent(P, 0, 2, 1, K);
    TensorSeries2 e2 = jordanian_exponent(P, 1, 3, -1, K);
    AlgebraMap phi = pair_to_so4(pair, A);
    RMatrix m;
    m.algebra = A;
    m.route = Route::Copies;
    m.order = K;
    m.exponent = phi(e1 + e2);
    m.r = phi(series_exp(e1) * series_exp(e2));
    m.r_inverse = phi(series_exp(-e2) * series_exp(-e1));
    m.self_checks.push_back(residual_report("copies commute", "R1*R2 - R2*R1",
                                            commutator(series_exp(e1), series_exp(e2))));
    detail::require(m.self_checks.back());
    return m;
}

inline RMatrix build_so4_closed_form(const AlgebraPtr& A, int K) {
    HSeries x = so4_x(*A, K);
    RMatrix m = r_from_exponent(A, Route::ClosedForm, detail::antisymmetrized_delta(x), x);
    for (auto& c : so4_ratio_checks(*A, K)) {
        detail::require(c);
        m.self_checks.push_back(std::move(c));
    }
    return m;
}

/// Closed form for a contracted so4h algebra, chosen by the triple's case.
inline RMatrix build_contracted_closed_form(const AlgebraPtr& A, MuTriple mu, int K) {
    switch (r_case(mu)) {
    case RCase::Classical: {
        HSeries x = A->generator(detail::kJ3, K) * Rational(1, 2);
        return r_from_exponent(A, Route::ClosedForm, detail::antisymmetrized_delta(x), x);
    }
    case RCase::Boost: {
        HSeries x = boost_x(*A, K);
        RMatrix m = r_from_exponent(A, Route::ClosedForm, detail::antisymmetrized_delta(x), x);
        for (auto& c : boost_ratio_checks(*A, K)) {
            detail::require(c);
            m.self_checks.push_back(std::move(c));
        }
        return m;
    }
    case RCase::Copies: {
        RMatrix m = build_so4_closed_form(A, K);
        return m;
    }
    }
    throw Error("unreachable");
}

/// The so4h closed-form exponent pushed through the contraction limit.
inline RMatrix build_limit_r(const AlgebraPtr& so4h, const AlgebraPtr& A, MuTriple mu, int K,
                             ContractionMode mode = ContractionMode::Eq23) {
    TensorSeries2 base = detail::antisymmetrized_delta(so4_x(*so4h, K));
    auto c = contract_series(base, so4_rescaling(mu, mode), 0, A, "R exponent");
    if (!c.offenses.empty())
        throw NonContractible("R exponent: term " + c.offenses.front().term + " scales as eps^" +
                              std::to_string(c.offenses.front().eps_exponent));
    return r_from_exponent(A, Route::Limit, std::move(c.limit));
}

/// Routes build_R accepts for an algebra, Default first.
inline std::vector<Route> available_routes(const AlgebraPtr& A) {
    const auto& reg = registry();
    if (A->size() == 3) return {Route::Default, Route::Direct, Route::Symmetric};
    if (A == reg.so4_pair() || A == reg.iso2_pair()) return {Route::Default, Route::Direct};
    if (A == reg.so4h()) return {Route::Default, Route::Copies, Route::ClosedForm};
    auto mu = reg.triple_of(A);
    if (!mu) return {};
    std::vector<Route> routes{Route::Default, Route::ClosedForm, Route::Limit};
    if (r_case(*mu) == RCase::Copies) routes.push_back(Route::Copies);
    return routes;
}

/// R for any algebra of the registry (and the two pair algebras).
inline RMatrix build_R(const AlgebraPtr& A, Route route, int K) {
    if (K < 1) throw Error("R matrices need K >= 1");
    const auto& reg = registry();
    const std::string& name = A->name();
    if (A->size() == 3) return build_jordanian_r(A, route, K);
    if (A == reg.so4_pair() || A == reg.iso2_pair()) {
        if (route != Route::Default && route != Route::Direct)
            throw Error("route " + route_name(route) + " is not available for " + name);
        return r_from_exponent(A, Route::Direct, pair_exponent(*A, K));
    }
    if (A == reg.so4h()) {
        if (route == Route::Default || route == Route::Copies) {
            RMatrix m = build_copies_r(A, reg.so4_pair(), K);
            return m;
        }
        if (route == Route::ClosedForm) return build_so4_closed_form(A, K);
        throw Error("route " + route_name(route) + " is not available for so4h");
    }
    auto mu = reg.triple_of(A);
    if (!mu) throw Error("no R matrix construction known for " + name);
    switch (route) {
    case Route::Default:
    case Route::ClosedForm: return build_contracted_closed_form(A, *mu, K);
    case Route::Limit: return build_limit_r(reg.so4h(), A, *mu, K);
    case Route::Copies:
        if (r_case(*mu) != RCase::Copies) throw Error("route copies is only available for so4h and c101");
        return build_copies_r(A, reg.iso2_pair(), K);
    default: throw Error("route " + route_name(route) + " is not available for " + name);
    }
}

/// Memoized per (algebra, route, order).
inline RMatrix build_R(const RSpec& spec) {
    static std::mutex mutex;
    static std::map<std::tuple<std::string, Route, int>, RMatrix> cache;
    auto key = std::make_tuple(spec.algebra, spec.route, spec.order);
    {
        std::lock_guard lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    RMatrix m = build_R(registry().find(spec.algebra), spec.route, spec.order);
    std::lock_guard lock(mutex);
    return cache.emplace(key, std::move(m)).first->second;
}

// ---- checks ---------------------------------------------------------------

/// (Δ⊗id)R = R₁₃R₂₃ and (id⊗Δ)R = R₁₃R₁₂.
inline CheckReport check_quasitriangular(const RMatrix& m) {
    CoproductMap delta(*m.algebra);
    TensorSeries3 r12 = embed(m.r, Legs::L12), r13 = embed(m.r, Legs::L13), r23 = embed(m.r, Legs::L23);
    return combine("quasitriangular",
                   {residual_report("quasitriangular", "(Delta x id)R = R13 R23", delta.extend(Side::Left, m.r) - r13 * r23),
                    residual_report("quasitriangular", "(id x Delta)R = R13 R12",
                                    delta.extend(Side::Right, m.r) - r13 * r12)});
}

/// R·Δg = Δ′g·R, then R·Δg·R⁻¹ = Δ′g, for one generator.
inline CheckReport check_intertwiner(const RMatrix& m, int g) {
    const Algebra& A = *m.algebra;
    TensorSeries2 d = A.coproduct(g, m.order), dop = flip(d);
    TensorSeries2 rd = m.r * d;
    CheckReport c = residual_report("intertwiner", A.generator_name(g), rd - dop * m.r);
    if (!c.pass) return c;
    c = residual_report("intertwiner", A.generator_name(g), rd * m.r_inverse - dop);
    if (!c.pass) c.note = "conjugation form";
    return c;
}

/// One report per generator.
inline std::vector<CheckReport> check_intertwiner(const RMatrix& m) {
    std::vector<CheckReport> out;
    for (int g = 0; g < m.algebra->size(); ++g) out.push_back(check_intertwiner(m, g));
    return out;
}

/// R·R⁻¹ = 1⊗1.
inline CheckReport check_inverse(const RMatrix& m) {
    return residual_report("inverse", "R*R^-1", m.r * m.r_inverse - TensorSeries2::one(m.algebra, m.order));
}

/// σ(R⁻¹) = R with R⁻¹ = exp(−exponent).
inline CheckReport check_triangular(const RMatrix& m) {
    return residual_report("triangular", "flip(R^-1) = R", flip(m.r_inverse) - m.r);
}

/// R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂.
inline CheckReport check_qybe(const RMatrix& m) {
    TensorSeries3 r12 = embed(m.r, Legs::L12), r13 = embed(m.r, Legs::L13), r23 = embed(m.r, Legs::L23);
    return residual_report("qybe", "R12 R13 R23 = R23 R13 R12", r12 * r13 * r23 - r23 * r13 * r12);
}

/// Exponent + flip(exponent) = 0 and R ≡ 1⊗1 mod h.
inline CheckReport check_antisymmetric_exponent(const RMatrix& m) {
    return residual_report("antisymmetric exponent", "E + flip(E)", m.exponent + flip(m.exponent));
}

// ---- exponent form, classification, Poincaré carry-over -------------------

struct ExponentForm {
    std::string algebra;
    std::optional<HSeries> x; // exponent = (Δ−Δ′)X
    TensorSeries2 exponent;
    CheckReport matches_x;
    CheckReport antisymmetric;
};

inline ExponentForm exponent_form(const RMatrix& m) {
    if (!m.x) throw NoSuchForm("no single-element form recorded for " + m.algebra->name() + " via route " +
                               route_name(m.route));
    ExponentForm f{m.algebra->name(), m.x, m.exponent, {}, {}};
    f.matches_x = residual_report("exponent form", "E - (Delta - Delta')X", m.exponent - detail::antisymmetrized_delta(*m.x));
    f.antisymmetric = check_antisymmetric_exponent(m);
    if (!f.matches_x.pass) throw NoSuchForm("exponent is not (Delta - Delta')X for the recorded X");
    return f;
}

/// Name-level term list so that series over different algebras compare.
inline std::vector<std::string> term_signature(const TensorSeries2& s) {
    std::vector<std::string> out;
    const Algebra& A = s.algebra();
    s.for_each_term([&](int k, const TensorSeries2::Key& w, const Rational& c) { out.push_back(term_text<2>(A, k, w, c)); });
    return out;
}

struct RClass {
    std::vector<MuTriple> members;
    TensorSeries2 exponent; // of the first member
};

/// Groups the seven eq23 contractions by exact equality of the contracted
/// so4h R exponent.
inline std::vector<RClass> classify_contracted_R(int K) {
    const auto& reg = registry();
    std::vector<RClass> classes;
    std::vector<std::vector<std::string>> signatures;
    for (const auto& mu : appendix_triples()) {
        RMatrix m = build_limit_r(reg.so4h(), reg.contracted(mu), mu, K);
        auto sig = term_signature(m.exponent);
        bool placed = false;
        for (std::size_t i = 0; i < classes.size(); ++i)
            if (signatures[i] == sig) {
                classes[i].members.push_back(mu);
                placed = true;
                break;
            }
        if (!placed) {
            classes.push_back({{mu}, m.exponent});
            signatures.push_back(std::move(sig));
        }
    }
    return classes;
}

/// P⁻ := εJ⁻: the contracted algebra plus the sl2h exponent carried over.
inline ContractionOutcome contract_sl2_to_p2(int K) {
    const auto& reg = registry();
    ContractionOutcome out;
    out.offenses = contraction_offenses(reg.sl2h(), sl2_to_p2_rescaling(), reg.p2m(), K);
    auto c = contract_series(jordanian_exponent(*reg.sl2h(), 0, 1, 1, K), sl2_to_p2_rescaling(), 0, reg.p2m(),
                             "R exponent");
    out.offenses.insert(out.offenses.end(), c.offenses.begin(), c.offenses.end());
    if (out.offenses.empty()) {
        out.algebra = reg.p2m();
        out.r_exponent = std::move(c.limit);
    }
    return out;
}

// ---- mutations ------------------------------------------------------------

/// R with its h^k coefficient removed (R⁻¹ and the exponent untouched).
inline RMatrix zero_r_order(RMatrix m, int k) {
    TensorSeries2 r(m.algebra, m.order);
    m.r.for_each_term([&](int j, const TensorSeries2::Key& w, const Rational& c) {
        if (j != k) r.add(j, w, c);
    });
    m.r = std::move(r);
    return m;
}

/// Case-2 R built from the ratio with denominator 1 − cosh(scale·hN⁺);
/// scale = 1 is the correct form.
inline RMatrix boost_r_with_denominator(const AlgebraPtr& A, const Rational& scale, int K) {
    HSeries x = boost_x_from_ratio(*A, scale, K);
    return r_from_exponent(A, Route::ClosedForm, detail::antisymmetrized_delta(x), x);
}

} // namespace jordan
