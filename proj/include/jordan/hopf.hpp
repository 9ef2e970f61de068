#pragma once

#include <string>
#include <vector>

#include "check.hpp"
#include "morphism.hpp"
#include "tensor.hpp"

namespace jordan {

struct HopfReport {
    std::string algebra;
    int order = 0;
    std::vector<CheckReport> checks; // coassociativity, counit, antipode, delta_homomorphism

    bool ok() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

inline CheckReport check_coassociativity(const Algebra& A, int K) {
    CoproductMap delta(A);
    std::vector<CheckReport> parts;
    for (int g = 0; g < A.size(); ++g) {
        TensorSeries2 d = A.coproduct(g, K);
        parts.push_back(residual_report("coassociativity", A.generator_name(g),
                                        delta.extend(Side::Left, d) - delta.extend(Side::Right, d)));
    }
    return combine("coassociativity", parts);
}

inline CheckReport check_counit(const Algebra& A, int K) {
    std::vector<CheckReport> parts;
    for (int g = 0; g < A.size(); ++g) {
        TensorSeries2 d = A.coproduct(g, K);
        HSeries x = A.generator(g, K);
        parts.push_back(residual_report("counit", "(eps x id) " + A.generator_name(g), apply_counit(Side::Left, d) - x));
        parts.push_back(residual_report("counit", "(id x eps) " + A.generator_name(g), apply_counit(Side::Right, d) - x));
    }
    return combine("counit", parts);
}

inline CheckReport check_antipode(const Algebra& A, int K) {
    std::vector<CheckReport> parts;
    for (int g = 0; g < A.size(); ++g) {
        TensorSeries2 d = A.coproduct(g, K);
        HSeries unit = A.scalar(A.counit(g), K);
        parts.push_back(residual_report("antipode", "m(S x id) " + A.generator_name(g),
                                        multiply_with_antipode(Side::Left, d) - unit));
        parts.push_back(residual_report("antipode", "m(id x S) " + A.generator_name(g),
                                        multiply_with_antipode(Side::Right, d) - unit));
    }
    return combine("antipode", parts);
}

/// Δ[X,Y] = [ΔX,ΔY] for every generator pair.
inline CheckReport check_delta_homomorphism(const Algebra& A, int K) {
    CoproductMap delta(A);
    std::vector<CheckReport> parts;
    for (int i = 0; i < A.size(); ++i)
        for (int j = 0; j < i; ++j) {
            TensorSeries2 lhs = delta(A.bracket(i, j, K));
            TensorSeries2 rhs = commutator(A.coproduct(i, K), A.coproduct(j, K));
            parts.push_back(residual_report("delta_homomorphism",
                                            "[" + A.generator_name(i) + "," + A.generator_name(j) + "]", lhs - rhs));
        }
    return combine("delta_homomorphism", parts);
}

inline HopfReport verify_hopf(const Algebra& A, int K) {
    if (K < 1) throw Error("verify_hopf needs K >= 1");
    HopfReport r{A.name(), K, {}};
    r.checks.push_back(check_coassociativity(A, K));
    r.checks.push_back(check_counit(A, K));
    r.checks.push_back(check_antipode(A, K));
    r.checks.push_back(check_delta_homomorphism(A, K));
    return r;
}

/// Checks that `phi` (source → target, linear on generators) carries every
/// bracket, coproduct and antipode of the source onto the target's.
inline std::vector<CheckReport> check_hopf_map(AlgebraMap phi, int K) {
    const Algebra& S = *phi.source();
    const Algebra& T = *phi.target();
    std::vector<CheckReport> brackets, coproducts, antipodes, counits;
    CoproductMap delta(T);
    AntipodeMap gamma(T);
    for (int i = 0; i < S.size(); ++i) {
        HSeries xi = phi.image_of_generator(i, K);
        for (int j = 0; j < i; ++j) {
            HSeries xj = phi.image_of_generator(j, K);
            brackets.push_back(residual_report("map_brackets",
                                               "[" + S.generator_name(i) + "," + S.generator_name(j) + "]",
                                               phi(S.bracket(i, j, K)) - commutator(xi, xj)));
        }
        coproducts.push_back(residual_report("map_coproducts", S.generator_name(i),
                                             phi(S.coproduct(i, K)) - delta(xi)));
        antipodes.push_back(residual_report("map_antipodes", S.generator_name(i), phi(S.antipode(i, K)) - gamma(xi)));
        HSeries ce = T.scalar(S.counit(i), K);
        HSeries image_counit(T.ptr(), K);
        xi.for_each_term([&](int k, const HSeries::Key& w, const Rational& c) {
            image_counit.add(k, {Word{}}, c * counit_of_word(T, w[0]));
        });
        counits.push_back(residual_report("map_counits", S.generator_name(i), image_counit - ce));
    }
    return {combine("map_brackets", brackets), combine("map_coproducts", coproducts),
            combine("map_antipodes", antipodes), combine("map_counits", counits)};
}

} // namespace jordan
