#include <gtest/gtest.h>

#include <tuple>

#include "jordan/hopf.hpp"
#include "jordan/rmatrix.hpp"
#include "test_util.hpp"

using namespace jordan;

namespace {

const Registry& reg() { return registry(); }

using Term = std::tuple<int, std::string, Rational>;

/// Terms by generator position, so that series over renamed algebras compare.
template <std::size_t N>
std::vector<Term> terms(const Series<N>& s) {
    std::vector<Term> out;
    s.for_each_term([&](int k, const typename Series<N>::Key& key, const Rational& c) {
        std::string flat;
        for (const auto& w : key) flat += w + "|";
        out.emplace_back(k, flat, c);
    });
    return out;
}

/// Every bracket, coproduct and antipode of two same-shaped algebras agree at order K.
void expect_same_tables(const Algebra& a, const Algebra& b, int K) {
    ASSERT_EQ(a.size(), b.size());
    for (int i = 0; i < a.size(); ++i) {
        for (int j = 0; j < i; ++j) EXPECT_EQ(terms(a.bracket(i, j, K)), terms(b.bracket(i, j, K))) << i << "," << j;
        EXPECT_EQ(terms(a.coproduct(i, K)), terms(b.coproduct(i, K))) << "Delta " << i;
        EXPECT_EQ(terms(a.antipode(i, K)), terms(b.antipode(i, K))) << "S " << i;
        EXPECT_EQ(a.counit(i), b.counit(i));
    }
}

std::vector<MuTriple> all_triples() {
    std::vector<MuTriple> v;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) v.emplace_back(a, b, c);
    return v;
}

} // namespace

TEST(Contraction, InvalidParameterIsRejected) { EXPECT_THROW(MuTriple(2, 1, 0), Error); }

TEST(Contraction, AllOnesLeavesSo4Unchanged) {
    for (auto mode : {ContractionMode::Eq22, ContractionMode::Eq23}) {
        auto out = contract(reg().so4h(), MuTriple(1, 1, 1), mode, 4);
        ASSERT_TRUE(out.ok());
        expect_same_tables(*out.algebra, *reg().so4h(), 4);
    }
}

TEST(Contraction, ItemOneUnderEq23) {
    auto out = contract(reg().so4h(), MuTriple(1, 1, 0), ContractionMode::Eq23, 6);
    ASSERT_TRUE(out.ok());
    const auto& A = out.algebra;
    const int K = 6;
    EXPECT_TRUE(A->bracket(A->index("Jp_h"), A->index("Jm_h"), K).is_zero());
    HSeries j3 = A->generator("J3_h", K), jp = A->generator("Jp_h", K), n3 = A->generator("N3_h", K),
            one = A->one(K);
    EXPECT_EQ(A->coproduct(A->index("J3_h"), K),
              outer(one, j3) + outer(j3, one) + (outer(n3, jp) - outer(jp, n3)).shifted(1) * Rational(1, 2));
    expect_same_tables(*A, *reg().contracted(MuTriple(1, 1, 0)), K);
}

TEST(Contraction, Eq22FailsExactlyWhenMu3Vanishes) {
    for (const auto& mu : all_triples()) {
        auto out = contract(reg().so4h(), mu, ContractionMode::Eq22, 4);
        EXPECT_EQ(out.ok(), mu.mu3 == 1) << mu.label();
        for (const auto& o : out.offenses) {
            EXPECT_LT(o.eps_exponent, 0);
            EXPECT_FALSE(o.entry.empty());
            EXPECT_FALSE(o.term.empty());
        }
    }
}

TEST(Contraction, Eq22OffenseNamesTheCoproductTwist) {
    auto out = contract(reg().so4h(), MuTriple(0, 0, 0), ContractionMode::Eq22, 4);
    ASSERT_FALSE(out.ok());
    bool found = false;
    for (const auto& o : out.offenses) found |= o.entry == "Delta(J3_h)" && o.h_order == 1;
    EXPECT_TRUE(found);
}

TEST(Contraction, NonContractibleAlgebraThrowsWhenQueried) {
    Rescaling r = so4_rescaling(MuTriple(1, 1, 0), ContractionMode::Eq22);
    auto A = make_contracted_algebra(reg().so4h(), r, "bad", hatted_names(*reg().so4h()), "", "h");
    EXPECT_THROW(A->bracket(A->index("J3_h"), A->index("Jp_h"), 2), NonContractible);
}

TEST(Contraction, Eq22AndEq23AgreeWhenMu3IsOne) {
    for (const auto& mu : all_triples()) {
        if (mu.mu3 == 0) continue;
        auto a = contract(reg().so4h(), mu, ContractionMode::Eq22, 4);
        auto b = contract(reg().so4h(), mu, ContractionMode::Eq23, 4);
        ASSERT_TRUE(a.ok() && b.ok()) << mu.label();
        expect_same_tables(*a.algebra, *b.algebra, 4);
    }
}

TEST(Contraction, RealizingZeroAsEpsToTheFourthChangesNothing) {
    for (const auto& mu : {MuTriple(1, 1, 0), MuTriple(0, 1, 1)}) {
        auto a = contract(reg().so4h(), mu, ContractionMode::Eq23, 4, nullptr, 2);
        auto b = contract(reg().so4h(), mu, ContractionMode::Eq23, 4, nullptr, 4);
        ASSERT_TRUE(a.ok() && b.ok());
        expect_same_tables(*a.algebra, *b.algebra, 4);
    }
    EXPECT_THROW(so4_rescaling(MuTriple(1, 1, 0), ContractionMode::Eq23, 3), Error);
}

TEST(Contraction, EveryOutcomeIsAHopfAlgebra) {
    for (const auto& mu : appendix_triples()) {
        auto out = contract(reg().so4h(), mu, ContractionMode::Eq23, 4);
        ASSERT_TRUE(out.ok()) << mu.label();
        auto r = verify_hopf(*out.algebra, 4);
        EXPECT_TRUE(r.ok()) << mu.label();
    }
}

TEST(Contraction, ContractedExponentGivesAValidR) {
    const int K = 4;
    TensorSeries2 base = build_R(reg().so4h(), Route::ClosedForm, K).exponent;
    for (const auto& mu : appendix_triples()) {
        auto out = contract(reg().so4h(), mu, ContractionMode::Eq23, K, &base);
        ASSERT_TRUE(out.ok() && out.r_exponent) << mu.label();
        RMatrix m = r_from_exponent(out.algebra, Route::Limit, *out.r_exponent);
        std::vector<CheckReport> checks{check_quasitriangular(m), check_triangular(m), check_qybe(m)};
        for (auto& c : check_intertwiner(m)) checks.push_back(c);
        for (const auto& c : checks) EXPECT_TRUE(c.pass) << mu.label() << " " << c.name << " " << c.subject;
    }
}

// ---- sl(2) -> Poincare -----------------------------------------------------------

TEST(Poincare, ContractionYieldsP2) {
    const int K = 6;
    auto out = contract_sl2_to_p2(K);
    ASSERT_TRUE(out.ok());
    const auto& P = out.algebra;
    EXPECT_TRUE(P->bracket(P->index("Pp"), P->index("Pm"), K).is_zero());
    // 2 sinh(hP)/h = sum 2 h^{2n} P^{2n+1} / (2n+1)!
    HSeries expected = P->zero(K), pp = P->generator("Pp", K);
    Rational fact = 1;
    for (int n = 0; 2 * n <= K; ++n) {
        if (n > 0) fact *= Rational((2 * n) * (2 * n + 1));
        expected += power(pp, 2 * n + 1).shifted(2 * n) * (Rational(2) / fact);
    }
    EXPECT_EQ(P->bracket(P->index("J3"), P->index("Pp"), K), expected);
    EXPECT_EQ(P->counit(P->index("Pm")), 0);
}

TEST(Poincare, ExponentCarriesOverUnchanged) {
    const int K = 6;
    auto out = contract_sl2_to_p2(K);
    ASSERT_TRUE(out.r_exponent.has_value());
    EXPECT_EQ(terms(*out.r_exponent), terms(build_R(reg().sl2h(), Route::Direct, K).exponent));
    RMatrix m = r_from_exponent(reg().p2m(), Route::Direct, *out.r_exponent);
    EXPECT_TRUE(check_intertwiner(m, reg().p2m()->index("Pm")).pass);
    EXPECT_TRUE(check_quasitriangular(m).pass);
}

// ---- classification ------------------------------------------------------------

TEST(Classification, ThreeDistinctRMatrices) {
    auto classes = classify_contracted_R(6);
    ASSERT_EQ(classes.size(), 3u);
    auto labels = [](const RClass& c) {
        std::vector<std::string> v;
        for (const auto& m : c.members) v.push_back(m.label());
        return v;
    };
    EXPECT_EQ(labels(classes[0]), (std::vector<std::string>{"110", "100", "010", "000"}));
    EXPECT_EQ(labels(classes[1]), (std::vector<std::string>{"011", "001"}));
    EXPECT_EQ(labels(classes[2]), (std::vector<std::string>{"101"}));
}

TEST(Classification, ClassicalClassExponentIsHalfCartanTwist) {
    auto classes = classify_contracted_R(6);
    const auto& e = classes[0].exponent;
    const auto& A = e.algebra_ptr();
    const int K = 6;
    HSeries n3 = A->generator("N3_h", K), jp = A->generator("Jp_h", K);
    EXPECT_EQ(e, (outer(n3, jp) - outer(jp, n3)).shifted(1) * Rational(1, 2));
}

TEST(Classification, BoostClassMatchesDenominatorForm) {
    for (const auto& mu : {MuTriple(0, 1, 1), MuTriple(0, 0, 1)}) {
        const auto& A = reg().contracted(mu);
        EXPECT_EQ(build_R(A, Route::Limit, 5).exponent, boost_r_with_denominator(A, 1, 5).exponent) << mu.label();
    }
}
