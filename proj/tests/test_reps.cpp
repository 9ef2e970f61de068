#include <gtest/gtest.h>

#include <fstream>

#include "jordan/report.hpp"
#include "jordan/rmatrix.hpp"
#include "test_util.hpp"

using namespace jordan;

namespace {

const Registry& reg() { return registry(); }

PolyMatrix golden_matrix(const std::string& file) {
    std::ifstream in(std::string(JORDAN_GOLDEN_DIR) + "/" + file);
    if (!in) throw std::runtime_error("missing golden file " + file);
    return matrix_from_json(Json::parse(in).at("result").at("matrix"));
}

PolyMatrix matrix_of(const Rep& rep, const char* name) {
    return rep.generators.at(static_cast<std::size_t>(rep.algebra->index(name)));
}

PolyMatrix commutator(const PolyMatrix& a, const PolyMatrix& b) { return a * b - b * a; }

/// Constant term of every entry.
PolyMatrix at_h_zero(const PolyMatrix& m) {
    PolyMatrix out(m.size());
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j)
            if (!m.at(i, j).empty()) out.add(i, j, 0, m.at(i, j)[0]);
    return out;
}

} // namespace

TEST(Representations, FundamentalRelations) {
    Rep f = fundamental_sl2(reg().sl2h());
    EXPECT_EQ(f.dim, 2);
    EXPECT_TRUE(check_rep(f).pass);
    PolyMatrix jp = matrix_of(f, "Jp"), jm = matrix_of(f, "Jm"), j3 = matrix_of(f, "J3");
    EXPECT_TRUE((jp * jp).is_zero());
    EXPECT_TRUE((commutator(j3, jp) - jp * Rational(2)).is_zero());
    EXPECT_TRUE((commutator(jp, jm) - j3).is_zero());
}

TEST(Representations, So4FromPairRelations) {
    Rep r = rep_so4_from_pair(reg().so4h());
    EXPECT_EQ(r.dim, 4);
    EXPECT_TRUE(check_rep(r).pass);
    for (auto [a, b] : {std::pair{"Jp", "Np"}, {"Jm", "Nm"}, {"J3", "N3"}})
        EXPECT_TRUE(commutator(matrix_of(r, a), matrix_of(r, b)).is_zero()) << a;
    EXPECT_TRUE((commutator(matrix_of(r, "Jp"), matrix_of(r, "Jm")) - matrix_of(r, "J3")).is_zero());
    EXPECT_TRUE((commutator(matrix_of(r, "Np"), matrix_of(r, "Nm")) - matrix_of(r, "J3")).is_zero());
}

TEST(Representations, WrongMatricesAreRejected) {
    Rep f = fundamental_sl2(reg().sl2h());
    f.generators[static_cast<std::size_t>(f.algebra->index("J3"))] = matrix_of(f, "J3") * Rational(2);
    CheckReport c = check_rep(f);
    EXPECT_FALSE(c.pass);
    EXPECT_EQ(c.first_order, 0);
}

TEST(Representations, AlgebraMismatchIsRejected) {
    Rep f = fundamental_sl2(reg().sl2h());
    EXPECT_THROW(f(reg().p2m()->one(2)), AlgebraMismatch);
}

// ---- evaluated R ---------------------------------------------------------------------

TEST(EvaluatedR, IdentityExponentGivesIdentity) {
    Rep f = fundamental_sl2(reg().sl2h());
    RMatrix one = r_from_exponent(reg().sl2h(), Route::Direct, TensorSeries2(reg().sl2h(), 4));
    PolyMatrix m = evaluate_R(one, f);
    EXPECT_TRUE((m - PolyMatrix::identity(4)).is_zero());
    EXPECT_TRUE(matrix_qybe(m, 2).pass);
    EXPECT_TRUE(matrix_triangular(m, 2).pass);
}

TEST(EvaluatedR, FundamentalFourByFour) {
    // in the fundamental rep the exponent is h(J3 ox J+ - J+ ox J3), whose square is -2h^2 e_{0,3}
    PolyMatrix expected(4);
    const Rational one(1);
    for (int i = 0; i < 4; ++i) expected.add(i, i, 0, one);
    expected.add(0, 1, 1, one);
    expected.add(0, 2, 1, -one);
    expected.add(0, 3, 2, one);
    expected.add(1, 3, 1, one);
    expected.add(2, 3, 1, -one);
    Rep f = fundamental_sl2(reg().sl2h());
    PolyMatrix m = evaluate_R(build_R(reg().sl2h(), Route::Default, 6), f);
    EXPECT_TRUE((m - expected).is_zero());
    EXPECT_TRUE((m - golden_matrix("sl2h_fund_R.json")).is_zero());
}

TEST(EvaluatedR, FundamentalChecks) {
    Rep f = fundamental_sl2(reg().sl2h());
    PolyMatrix m = evaluate_R(build_R(reg().sl2h(), Route::Default, 6), f);
    EXPECT_TRUE(matrix_qybe(m, 2).pass);
    EXPECT_TRUE(matrix_triangular(m, 2).pass);
    EXPECT_TRUE(matrix_intertwiner(m, f).pass);
}

TEST(EvaluatedR, So4SixteenBySixteen) {
    Rep r = rep_so4_from_pair(reg().so4h());
    PolyMatrix m = evaluate_R(build_R(reg().so4h(), Route::Default, 4), r);
    EXPECT_EQ(m.size(), 16);
    EXPECT_TRUE(matrix_qybe(m, 4).pass);
    EXPECT_TRUE(matrix_triangular(m, 4).pass);
    EXPECT_TRUE(matrix_intertwiner(m, r).pass);
    EXPECT_TRUE((m - golden_matrix("so4h_so4pair_R.json")).is_zero());
}

TEST(EvaluatedR, So4IsTheProductOfTheTwoCopyMatrices) {
    // copy 1 has parameter h, copy 2 has -h; the 2x2 modules sit in slots (1,3) and (2,4) of C^4 ox C^4
    Rep f = fundamental_sl2(reg().sl2h());
    PolyMatrix r1 = evaluate_R(build_R(reg().sl2h(), Route::Default, 6), f);
    PolyMatrix r2(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const Poly& p = r1.at(i, j);
            for (std::size_t k = 0; k < p.size(); ++k) r2.add(i, j, static_cast<int>(k), k % 2 ? -p[k] : p[k]);
        }
    // C^2_a ox C^2_b ox C^2_c ox C^2_d with R1 on (a,c) and R2 on (b,d)
    PolyMatrix one = PolyMatrix::identity(2), swap = swap_matrix(2);
    PolyMatrix p_bc = kron(kron(one, swap), one);
    PolyMatrix r1_ac = p_bc * kron(r1, PolyMatrix::identity(4)) * p_bc;
    PolyMatrix r2_bd = p_bc * kron(PolyMatrix::identity(4), r2) * p_bc;
    Rep r = rep_so4_from_pair(reg().so4h());
    PolyMatrix m = evaluate_R(build_R(reg().so4h(), Route::Default, 4), r);
    EXPECT_TRUE((m - r1_ac * r2_bd).is_zero());
}

TEST(EvaluatedR, IndependentOfTruncationAboveTheBound) {
    Rep f = fundamental_sl2(reg().sl2h());
    PolyMatrix base = evaluate_R(build_R(reg().sl2h(), Route::Default, 2), f);
    for (int K = 3; K <= 8; ++K)
        EXPECT_TRUE((evaluate_R(build_R(reg().sl2h(), Route::Default, K), f) - base).is_zero()) << K;
    Rep r = rep_so4_from_pair(reg().so4h());
    PolyMatrix so4 = evaluate_R(build_R(reg().so4h(), Route::Default, 4), r);
    EXPECT_TRUE((evaluate_R(build_R(reg().so4h(), Route::ClosedForm, 6), r) - so4).is_zero());
    EXPECT_THROW(evaluate_R(build_R(reg().sl2h(), Route::Default, 1), f), Error);
}

TEST(EvaluatedR, ClassicalLimitIsIdentity) {
    Rep f = fundamental_sl2(reg().sl2h());
    Rep r = rep_so4_from_pair(reg().so4h());
    EXPECT_TRUE((at_h_zero(evaluate_R(build_R(reg().sl2h(), Route::Default, 4), f)) - PolyMatrix::identity(4)).is_zero());
    EXPECT_TRUE(
        (at_h_zero(evaluate_R(build_R(reg().so4h(), Route::Default, 4), r)) - PolyMatrix::identity(16)).is_zero());
}

TEST(EvaluatedR, PerturbedEntryFailsTriangularity) {
    Rep f = fundamental_sl2(reg().sl2h());
    PolyMatrix m = evaluate_R(build_R(reg().sl2h(), Route::Default, 4), f);
    m.add(0, 3, 2, Rational(1));
    CheckReport c = matrix_triangular(m, 2);
    EXPECT_FALSE(c.pass);
    EXPECT_EQ(c.first_order, 2);
}

TEST(EvaluatedR, NonNilpotentExponentIsRejected) {
    EXPECT_THROW(nilpotent_exp(PolyMatrix::identity(2)), NonNilpotentExponent);
    EXPECT_THROW(unipotent_inverse(PolyMatrix::identity(2) * Rational(2)), NonNilpotentExponent);
}
