#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "analytic.hpp"
#include "contraction.hpp"
#include "morphism.hpp"
#include "tensor.hpp"

namespace jordan {

/// f(scale·h·g) for a single generator g, truncated at K.
inline HSeries hyperbolic(const Algebra& A, const AnalyticFn& f, int g, const Rational& scale, int K) {
    HSeries x(A.ptr(), K);
    x.add(1, {letter(g)}, scale);
    return analytic_apply(f, x);
}

namespace detail {

inline void put_bracket(AlgebraDef& def, int a, int b, AlgebraDef::ElementRule rule) {
    if (a > b) {
        def.brackets[{a, b}] = std::move(rule);
    } else {
        def.brackets[{b, a}] = [rule = std::move(rule)](const Algebra& A, int K) { return -rule(A, K); };
    }
}

struct Sl2Slots {
    int raising, cartan, lowering;
    int sign;       // +1 for U_h, -1 for U_{-h}
    bool poincare;  // [J⁺,J⁻] = 0 (the P⁻ = εJ⁻ limit)
};

/// Jordanian sl(2)-type relations and Hopf maps on three generator slots:
///   [J³,J⁺] = 2 sinh(shJ⁺)/(sh),  [J³,J⁻] = −(cosh(shJ⁺)J⁻ + J⁻cosh(shJ⁺)),  [J⁺,J⁻] = J³
///   ΔJ⁺ primitive,  ΔX = X⊗e^{shJ⁺} + e^{−shJ⁺}⊗X,  γ(X) = −e^{shJ⁺}Xe^{−shJ⁺}
inline void add_sl2_rules(AlgebraDef& def, Sl2Slots s) {
    const Rational sign(s.sign);
    const int p = s.raising, t = s.cartan, m = s.lowering;
    put_bracket(def, t, p, [p, sign](const Algebra& A, int K) {
        return hyperbolic(A, AnalyticFn::sinh(), p, sign, K + 1).divided_by_h() * (Rational(2) / sign);
    });
    put_bracket(def, t, m, [p, m, sign](const Algebra& A, int K) {
        HSeries c = hyperbolic(A, AnalyticFn::cosh(), p, sign, K);
        HSeries lo = A.generator(m, K);
        return -(c * lo + lo * c);
    });
    if (!s.poincare) put_bracket(def, p, m, [t](const Algebra& A, int K) { return A.generator(t, K); });

    def.coproducts[static_cast<std::size_t>(p)] = [p](const Algebra& A, int K) {
        return outer(A.generator(p, K), A.one(K)) + outer(A.one(K), A.generator(p, K));
    };
    for (int x : {t, m}) {
        def.coproducts[static_cast<std::size_t>(x)] = [p, x, sign](const Algebra& A, int K) {
            return outer(A.generator(x, K), hyperbolic(A, AnalyticFn::exp(), p, sign, K)) +
                   outer(hyperbolic(A, AnalyticFn::exp(), p, -sign, K), A.generator(x, K));
        };
    }
    for (int x : {p, t, m}) {
        def.antipodes[static_cast<std::size_t>(x)] = [p, x, sign](const Algebra& A, int K) {
            return -(hyperbolic(A, AnalyticFn::exp(), p, sign, K) * A.generator(x, K) *
                     hyperbolic(A, AnalyticFn::exp(), p, -sign, K));
        };
        def.counits[static_cast<std::size_t>(x)] = 0;
    }
    def.weights[static_cast<std::size_t>(p)] = 2;
    def.weights[static_cast<std::size_t>(t)] = 0;
    def.weights[static_cast<std::size_t>(m)] = -2;
}

inline AlgebraDef empty_def(std::string name, std::vector<std::string> generators, std::string description) {
    AlgebraDef def;
    def.name = std::move(name);
    def.description = std::move(description);
    def.generators = std::move(generators);
    const auto n = def.generators.size();
    def.coproducts.resize(n);
    def.antipodes.resize(n);
    def.counits.assign(n, Rational(0));
    def.weights.assign(n, 0);
    return def;
}

} // namespace detail

/// U_h(sl(2)) in the Jordanian deformation; PBW order J⁺ < J³ < J⁻.
inline AlgebraPtr make_sl2h(int sign = 1, std::string name = "sl2h") {
    auto def = detail::empty_def(std::move(name), {"Jp", "J3", "Jm"}, "Jordanian deformation U_h(sl(2))");
    detail::add_sl2_rules(def, {0, 1, 2, sign, false});
    return Algebra::create(std::move(def));
}

/// sl2h with ΔJ³ = J³⊗e^{−hJ⁺} + e^{hJ⁺}⊗J³ (sign of the h-term flipped);
/// a deliberately broken Hopf algebra for mutation tests.
inline AlgebraPtr make_sl2h_with_flipped_cartan_coproduct() {
    auto def = detail::empty_def("sl2h-flipped", {"Jp", "J3", "Jm"}, "sl2h with the h-term of Delta J3 negated");
    detail::add_sl2_rules(def, {0, 1, 2, 1, false});
    def.coproducts[1] = [](const Algebra& A, int K) {
        return outer(A.generator(1, K), hyperbolic(A, AnalyticFn::exp(), 0, Rational(-1), K)) +
               outer(hyperbolic(A, AnalyticFn::exp(), 0, Rational(1), K), A.generator(1, K));
    };
    return Algebra::create(std::move(def));
}

/// The deformed two-dimensional Poincaré / iso(2) algebra written directly:
/// sl2h relations with [P⁺,P⁻] = 0.
inline AlgebraPtr make_iso2h(int sign = 1, std::string name = "iso2h") {
    auto def = detail::empty_def(std::move(name), {"Pp", "J3", "Pm"}, "deformed U(iso(2)), written directly");
    detail::add_sl2_rules(def, {0, 1, 2, sign, true});
    return Algebra::create(std::move(def));
}

/// Direct sum of two sl(2)-type copies with parameters +h and −h. Generator
/// order X1⁺ X2⁺ X1³ X2³ X1⁻ X2⁻ mirrors so4h's J⁺ N⁺ J³ N³ J⁻ N⁻.
inline AlgebraPtr make_pair_algebra(bool poincare, std::string name) {
    const std::string x = poincare ? "K" : "J";
    auto def = detail::empty_def(std::move(name),
                                 {x + "1p", x + "2p", x + "13", x + "23", x + "1m", x + "2m"},
                                 poincare ? "U_h(iso(2)) + U_{-h}(iso(2))" : "U_h(sl(2)) + U_{-h}(sl(2))");
    detail::add_sl2_rules(def, {0, 2, 4, +1, poincare});
    detail::add_sl2_rules(def, {1, 3, 5, -1, poincare});
    return Algebra::create(std::move(def));
}

/// U_h(so(4)) from its explicit tables; PBW order J⁺ < N⁺ < J³ < N³ < J⁻ < N⁻.
inline AlgebraPtr make_so4h() {
    enum { Jp, Np, J3, N3, Jm, Nm };
    auto def = detail::empty_def("so4h", {"Jp", "Np", "J3", "N3", "Jm", "Nm"},
                                 "U_h(so(4)) = U_h(sl(2)) + U_{-h}(sl(2))");
    def.weights = {2, 2, 0, 0, -2, -2};
    const Rational half(1, 2);
    auto sJ = [half](const Algebra& A, int K) { return hyperbolic(A, AnalyticFn::sinh(), Jp, half, K); };
    auto cJ = [half](const Algebra& A, int K) { return hyperbolic(A, AnalyticFn::cosh(), Jp, half, K); };
    auto sN = [half](const Algebra& A, int K) { return hyperbolic(A, AnalyticFn::sinh(), Np, half, K); };
    auto cN = [half](const Algebra& A, int K) { return hyperbolic(A, AnalyticFn::cosh(), Np, half, K); };
    auto eN = [half](const Algebra& A, int K, int s) {
        return hyperbolic(A, AnalyticFn::exp(), Np, half * s, K);
    };

    // (4/h) sinh(h a/2) cosh(h b/2)
    auto raise = [sJ, cJ, sN, cN](bool onJ) {
        return [=](const Algebra& A, int K) {
            HSeries v = onJ ? sJ(A, K + 1) * cN(A, K + 1) : sN(A, K + 1) * cJ(A, K + 1);
            return v.divided_by_h() * Rational(4);
        };
    };
    // −X cosh cosh − cosh cosh X − Y sinh sinh − sinh sinh Y
    auto lower = [sJ, cJ, sN, cN](int x, int y) {
        return [=](const Algebra& A, int K) {
            HSeries cc = cJ(A, K) * cN(A, K), ss = sJ(A, K) * sN(A, K);
            HSeries gx = A.generator(x, K), gy = A.generator(y, K);
            return -(gx * cc + cc * gx + gy * ss + ss * gy);
        };
    };
    using detail::put_bracket;
    put_bracket(def, J3, Jp, raise(true));
    put_bracket(def, J3, Np, raise(false));
    put_bracket(def, J3, Jm, lower(Jm, Nm));
    put_bracket(def, J3, Nm, lower(Nm, Jm));
    put_bracket(def, N3, Np, raise(true));
    put_bracket(def, N3, Nm, lower(Jm, Nm));
    put_bracket(def, N3, Jp, raise(false));
    put_bracket(def, N3, Jm, lower(Nm, Jm));
    put_bracket(def, Jp, Jm, [](const Algebra& A, int K) { return A.generator(J3, K); });
    put_bracket(def, Np, Nm, [](const Algebra& A, int K) { return A.generator(J3, K); });
    put_bracket(def, Jp, Nm, [](const Algebra& A, int K) { return A.generator(N3, K); });
    put_bracket(def, Jm, Np, [](const Algebra& A, int K) { return -A.generator(N3, K); });

    for (int x : {Jp, Np})
        def.coproducts[x] = [x](const Algebra& A, int K) {
            return outer(A.one(K), A.generator(x, K)) + outer(A.generator(x, K), A.one(K));
        };
    // ΔX = e^{-hN/2}cJ⊗X + X⊗cJ e^{hN/2} − e^{-hN/2}sJ⊗Y + Y⊗sJ e^{hN/2}, (X,Y) = (J,N) or (N,J)
    auto lowered = [sJ, cJ, eN](int x, int y) {
        return [=](const Algebra& A, int K) {
            HSeries left = eN(A, K, -1), right = eN(A, K, 1);
            HSeries gx = A.generator(x, K), gy = A.generator(y, K);
            return outer(left * cJ(A, K), gx) + outer(gx, cJ(A, K) * right) - outer(left * sJ(A, K), gy) +
                   outer(gy, sJ(A, K) * right);
        };
    };
    def.coproducts[J3] = lowered(J3, N3);
    def.coproducts[Jm] = lowered(Jm, Nm);
    def.coproducts[N3] = lowered(N3, J3);
    def.coproducts[Nm] = lowered(Nm, Jm);
    for (int x : {Jp, Np, J3, N3, Jm, Nm})
        def.antipodes[x] = [x](const Algebra& A, int K) {
            return -(hyperbolic(A, AnalyticFn::exp(), Np, 1, K) * A.generator(x, K) *
                     hyperbolic(A, AnalyticFn::exp(), Np, -1, K));
        };
    return Algebra::create(std::move(def));
}

/// J = X1 + X2, N = X1 − X2 from a pair algebra into an so4-shaped algebra.
inline AlgebraMap so4_to_pair(const AlgebraPtr& so4, const AlgebraPtr& pair) {
    std::vector<AlgebraMap::Linear> images;
    // so4 order J⁺ N⁺ J³ N³ J⁻ N⁻ ; pair order X1⁺ X2⁺ X1³ X2³ X1⁻ X2⁻
    for (int level = 0; level < 3; ++level) {
        int a = 2 * level, b = 2 * level + 1;
        images.push_back({{Rational(1), a}, {Rational(1), b}});
        images.push_back({{Rational(1), a}, {Rational(-1), b}});
    }
    return AlgebraMap(so4, pair, std::move(images));
}

/// Inverse basis change X1 = (J + N)/2, X2 = (J − N)/2.
inline AlgebraMap pair_to_so4(const AlgebraPtr& pair, const AlgebraPtr& so4) {
    std::vector<AlgebraMap::Linear> images;
    const Rational h(1, 2);
    for (int level = 0; level < 3; ++level) {
        int j = 2 * level, n = 2 * level + 1;
        images.push_back({{h, j}, {h, n}});
        images.push_back({{h, j}, {-h, n}});
    }
    return AlgebraMap(pair, so4, std::move(images));
}

/// The seven (μ₁,μ₂,μ₃) triples with a zero entry, in appendix order.
inline const std::array<MuTriple, 7>& appendix_triples() {
    static const std::array<MuTriple, 7> t{MuTriple(1, 1, 0), MuTriple(1, 0, 0), MuTriple(0, 1, 0),
                                          MuTriple(0, 0, 0), MuTriple(0, 1, 1), MuTriple(0, 0, 1),
                                          MuTriple(1, 0, 1)};
    return t;
}

/// P⁻ := εJ⁻ applied to sl2h.
inline AlgebraPtr make_p2m(const AlgebraPtr& sl2h) {
    return make_contracted_algebra(sl2h, sl2_to_p2_rescaling(), "p2m", {"Pp", "J3", "Pm"},
                                   "deformed 2d Poincare algebra, P- = eps J- limit of sl2h", "h");
}

class Registry {
public:
    Registry() {
        sl2h_ = make_sl2h();
        so4h_ = make_so4h();
        p2m_ = make_p2m(sl2h_);
        so4_pair_ = make_pair_algebra(false, "so4pair");
        iso2_pair_ = make_pair_algebra(true, "iso2pair");
        all_ = {sl2h_, so4h_, p2m_};
        for (const auto& mu : appendix_triples()) {
            auto r = so4_rescaling(mu, ContractionMode::Eq23);
            auto a = make_contracted_algebra(so4h_, r, contracted_name(mu, ContractionMode::Eq23),
                                             hatted_names(*so4h_),
                                             "eq23 contraction of so4h at (mu1,mu2,mu3)=(" + std::to_string(mu.mu1) +
                                                 "," + std::to_string(mu.mu2) + "," + std::to_string(mu.mu3) + ")",
                                             "h");
            contracted_.push_back({mu, a});
            all_.push_back(a);
        }
    }

    const AlgebraPtr& sl2h() const noexcept { return sl2h_; }
    const AlgebraPtr& so4h() const noexcept { return so4h_; }
    const AlgebraPtr& p2m() const noexcept { return p2m_; }
    /// U_h(sl(2)) + U_{-h}(sl(2)) in copy generators; not one of the ten.
    const AlgebraPtr& so4_pair() const noexcept { return so4_pair_; }
    /// U_h(iso(2)) + U_{-h}(iso(2)); the copy form of the (1,0,1) contraction.
    const AlgebraPtr& iso2_pair() const noexcept { return iso2_pair_; }
    const std::vector<AlgebraPtr>& all() const noexcept { return all_; }

    const AlgebraPtr& contracted(MuTriple mu) const {
        for (const auto& [m, a] : contracted_)
            if (m == mu) return a;
        throw Error("no registered contraction for (" + mu.label() + ")");
    }

    AlgebraPtr find(std::string_view name) const {
        for (const auto& a : all_)
            if (a->name() == name) return a;
        for (const auto& a : {so4_pair_, iso2_pair_})
            if (a->name() == name) return a;
        throw Error("unknown algebra '" + std::string(name) + "'");
    }

    /// Appendix triple of a contracted algebra, if it is one.
    std::optional<MuTriple> triple_of(const AlgebraPtr& a) const {
        for (const auto& [m, b] : contracted_)
            if (b == a) return m;
        return std::nullopt;
    }

private:
    AlgebraPtr sl2h_, so4h_, p2m_, so4_pair_, iso2_pair_;
    std::vector<std::pair<MuTriple, AlgebraPtr>> contracted_;
    std::vector<AlgebraPtr> all_;
};

/// The ten algebras: sl2h, so4h, p2m and the seven eq23 contractions.
inline const Registry& registry() {
    static const Registry r;
    return r;
}

} // namespace jordan
