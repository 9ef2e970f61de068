#include <gtest/gtest.h>

#include "jordan/rmatrix.hpp"
#include "test_util.hpp"

using namespace jordan;

namespace {

const Registry& reg() { return registry(); }

HSeries g(const AlgebraPtr& A, const char* name, int K) { return A->generator(name, K); }

HSeries h_times(const HSeries& x, int times = 1) { return x.shifted(times); }

std::string failures(const std::vector<CheckReport>& checks) {
    std::string s;
    for (const auto& c : checks)
        if (!c.pass) s += c.name + " [" + c.subject + "] @" + std::to_string(c.first_order) + "\n";
    return s;
}

std::vector<CheckReport> all_checks(const RMatrix& m) {
    std::vector<CheckReport> out{check_quasitriangular(m), check_triangular(m), check_qybe(m), check_inverse(m),
                                 check_antisymmetric_exponent(m)};
    for (auto& c : check_intertwiner(m)) out.push_back(std::move(c));
    return out;
}

RMatrix identity_r(const AlgebraPtr& A, int K) { return r_from_exponent(A, Route::Direct, TensorSeries2(A, K)); }

int order_for(const AlgebraPtr& A) { return A == reg().so4h() ? 4 : 6; }

} // namespace

// ---- construction -------------------------------------------------------------

TEST(Construction, Sl2FirstOrder) {
    const auto& A = reg().sl2h();
    RMatrix m = build_R(A, Route::Default, 1);
    HSeries j3 = g(A, "J3", 1), jp = g(A, "Jp", 1);
    EXPECT_EQ(m.r, TensorSeries2::one(A, 1) + (outer(j3, jp) - outer(jp, j3)).shifted(1));
}

TEST(Construction, Sl2SecondOrderFromLeadingExponent) {
    // the exponent has no h^2 part, so R = 1 + hE1 + h^2 E1^2/2 + O(h^3)
    const auto& A = reg().sl2h();
    const int K = 2;
    TensorSeries2 e1 = outer(g(A, "J3", K), g(A, "Jp", K)) - outer(g(A, "Jp", K), g(A, "J3", K));
    TensorSeries2 expected = TensorSeries2::one(A, K) + e1.shifted(1) + (e1 * e1).shifted(2) * Rational(1, 2);
    EXPECT_EQ(build_R(A, Route::Direct, K).r, expected);
}

TEST(Construction, DirectAndSymmetricExponentsAgree) {
    const auto& A = reg().sl2h();
    for (int K = 1; K <= 8; ++K)
        EXPECT_EQ(build_R(A, Route::Direct, K).exponent, build_R(A, Route::Symmetric, K).exponent) << K;
}

TEST(Construction, ClassicalLimitIsIdentity) {
    std::vector<AlgebraPtr> algebras = reg().all();
    algebras.push_back(reg().so4_pair());
    algebras.push_back(reg().iso2_pair());
    for (const auto& A : algebras) {
        RMatrix m = build_R(A, Route::Default, 3);
        EXPECT_TRUE(m.exponent.at(0).empty()) << A->name();
        TensorSeries2 r0(A, 3);
        m.r.for_each_term([&](int k, const TensorSeries2::Key& w, const Rational& c) {
            if (k == 0) r0.add(k, w, c);
        });
        EXPECT_EQ(r0, TensorSeries2::one(A, 3)) << A->name();
    }
}

TEST(Construction, ExponentWithConstantPartIsRejected) {
    const auto& A = reg().sl2h();
    TensorSeries2 e = outer(g(A, "J3", 2), g(A, "Jp", 2));
    EXPECT_THROW(r_from_exponent(A, Route::Direct, e), NonNilpotentArgument);
}

TEST(Construction, SelfChecksPass) {
    for (const auto& A : reg().all()) {
        RMatrix m = build_R(A, Route::Default, order_for(A));
        EXPECT_EQ(failures(m.self_checks), "") << A->name();
    }
}

TEST(Construction, UnavailableRoutesAreRejected) {
    EXPECT_THROW(build_R(reg().sl2h(), Route::Copies, 2), Error);
    EXPECT_THROW(build_R(reg().contracted(MuTriple(1, 1, 0)), Route::Copies, 2), Error);
    EXPECT_THROW(build_R(reg().so4h(), Route::Limit, 2), Error);
}

// ---- the four properties ------------------------------------------------------

TEST(Properties, IdentityIsQuasitriangularTriangularAndSolvesYangBaxter) {
    for (const auto& A : {reg().sl2h(), reg().so4h()}) {
        RMatrix m = identity_r(A, 3);
        EXPECT_EQ(failures({check_quasitriangular(m), check_triangular(m), check_qybe(m)}), "");
    }
}

TEST(Properties, IdentityDoesNotIntertwineTheNonCocommutativeCoproduct) {
    RMatrix m = identity_r(reg().sl2h(), 3);
    EXPECT_TRUE(check_intertwiner(m, reg().sl2h()->index("Jp")).pass);
    CheckReport c = check_intertwiner(m, reg().sl2h()->index("J3"));
    EXPECT_FALSE(c.pass);
    EXPECT_EQ(c.first_order, 1);
}

TEST(Properties, Sl2AtOrderSix) {
    RMatrix m = build_R(reg().sl2h(), Route::Default, 6);
    EXPECT_EQ(failures(all_checks(m)), "");
    CheckReport jm = check_intertwiner(m, reg().sl2h()->index("Jm"));
    EXPECT_TRUE(jm.pass);
    EXPECT_EQ(jm.subject, "Jm");
}

TEST(Properties, So4AtOrderFour) {
    for (Route r : {Route::Copies, Route::ClosedForm})
        EXPECT_EQ(failures(all_checks(build_R(reg().so4h(), r, 4))), "") << route_name(r);
}

TEST(Properties, PoincareLoweringGenerator) {
    RMatrix m = build_R(reg().p2m(), Route::Default, 6);
    CheckReport pm = check_intertwiner(m, reg().p2m()->index("Pm"));
    EXPECT_TRUE(pm.pass);
    EXPECT_EQ(failures(all_checks(m)), "");
}

TEST(Properties, EveryContractedAlgebraAtOrderSix) {
    for (const auto& mu : appendix_triples()) {
        const auto& A = reg().contracted(mu);
        EXPECT_EQ(failures(all_checks(build_R(A, Route::Default, 6))), "") << A->name();
    }
}

TEST(Properties, PairAlgebras) {
    for (const auto& A : {reg().so4_pair(), reg().iso2_pair()})
        EXPECT_EQ(failures(all_checks(build_R(A, Route::Default, 4))), "") << A->name();
}

// ---- mutations ----------------------------------------------------------------

TEST(Mutation, ZeroedSecondOrderBreaksQuasitriangularity) {
    RMatrix m = zero_r_order(build_R(reg().sl2h(), Route::Default, 6), 2);
    CheckReport c = check_quasitriangular(m);
    EXPECT_FALSE(c.pass);
    EXPECT_EQ(c.first_order, 2);
    EXPECT_FALSE(c.residual_terms.empty());
}

TEST(Mutation, SignFlippedLegBreaksYangBaxter) {
    const auto& A = reg().sl2h();
    const int K = 4;
    HSeries hp = g(A, "Jp", K).shifted(1), one = A->one(K), t = g(A, "J3", K);
    HSeries s = analytic_apply(AnalyticFn::sinh(), hp);
    TensorSeries2 dp = outer(hp, one) + outer(one, hp);
    TensorSeries2 e = analytic_apply(AnalyticFn::x_over_sinh(), dp) * (outer(t, s) + outer(s, t));
    CheckReport c = check_qybe(r_from_exponent(A, Route::Direct, e));
    EXPECT_FALSE(c.pass);
    EXPECT_EQ(c.first_order, 2);
}

TEST(Mutation, WrongBoostDenominatorIsDetected) {
    const auto& A = reg().contracted(MuTriple(0, 1, 1));
    const int K = 4;
    EXPECT_EQ(failures(all_checks(boost_r_with_denominator(A, 1, K))), "");
    RMatrix bad = boost_r_with_denominator(A, 2, K);
    EXPECT_NE(failures(check_intertwiner(bad)), "");
    EXPECT_NE(bad.exponent, build_R(A, Route::ClosedForm, K).exponent);
}

// ---- exponent forms ---------------------------------------------------------------

TEST(ExponentForm, Sl2HalfCartanTimesXOverSinh) {
    const auto& A = reg().sl2h();
    const int K = 4;
    auto f = exponent_form(build_R(A, Route::Default, K));
    HSeries jp2 = power(g(A, "Jp", K), 2);
    // x/sinh x = 1 - x^2/6 + 7x^4/360 + O(x^6)
    HSeries series = A->one(K) - h_times(jp2, 2) * Rational(1, 6) + h_times(jp2 * jp2, 4) * Rational(7, 360);
    ASSERT_TRUE(f.x.has_value());
    EXPECT_EQ(*f.x, g(A, "J3", K) * series * Rational(1, 2));
    EXPECT_TRUE(f.antisymmetric.pass);
}

TEST(ExponentForm, ClassicalCaseIsHalfCartan) {
    const auto& A = reg().contracted(MuTriple(1, 1, 0));
    const int K = 6;
    auto f = exponent_form(build_R(A, Route::Default, K));
    EXPECT_EQ(*f.x, g(A, "J3_h", K) * Rational(1, 2));
    HSeries n3 = g(A, "N3_h", K), jp = g(A, "Jp_h", K);
    EXPECT_EQ(f.exponent, (outer(n3, jp) - outer(jp, n3)).shifted(1) * Rational(1, 2));
}

TEST(ExponentForm, So4ToSecondOrder) {
    const auto& A = reg().so4h();
    const int K = 3;
    auto f = exponent_form(build_R(A, Route::ClosedForm, K));
    HSeries jp = g(A, "Jp", K), np = g(A, "Np", K);
    HSeries a = A->one(K) * Rational(1, 2) - h_times(jp * jp + np * np, 2) * Rational(1, 48);
    HSeries b = -h_times(jp * np, 2) * Rational(1, 24);
    EXPECT_EQ(*f.x, g(A, "J3", K) * a + g(A, "N3", K) * b);
}

TEST(ExponentForm, EveryExponentIsAntisymmetric) {
    for (const auto& A : reg().all())
        EXPECT_TRUE(check_antisymmetric_exponent(build_R(A, Route::Default, 4)).pass) << A->name();
}

TEST(ExponentForm, CopiesRouteHasNoSingleElement) {
    EXPECT_THROW(exponent_form(build_R(reg().so4h(), Route::Copies, 2)), NoSuchForm);
}

// ---- route agreement ----------------------------------------------------------------

TEST(Routes, So4CopiesEqualClosedForm) {
    const auto& A = reg().so4h();
    for (int K = 1; K <= 5; ++K)
        EXPECT_EQ(build_R(A, Route::Copies, K).r, build_R(A, Route::ClosedForm, K).r) << K;
}

TEST(Routes, ItemSevenIsTheProductOfTwoIso2Copies) {
    const auto& A = reg().contracted(MuTriple(1, 0, 1));
    EXPECT_EQ(build_R(A, Route::Copies, 6).r, build_R(A, Route::ClosedForm, 6).r);
}

TEST(Routes, ClosedFormsAreLimitsOfTheSo4Exponent) {
    for (const auto& mu : appendix_triples()) {
        const auto& A = reg().contracted(mu);
        EXPECT_EQ(build_R(A, Route::Limit, 6).exponent, build_R(A, Route::ClosedForm, 6).exponent) << A->name();
    }
}

TEST(Routes, CachedBuildMatchesFreshBuild) {
    RSpec spec{"sl2h", Route::Default, 5};
    EXPECT_EQ(build_R(spec).r, build_R(reg().sl2h(), Route::Default, 5).r);
    EXPECT_EQ(build_R(spec).r, build_R(spec).r);
}
