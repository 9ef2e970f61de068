#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "jordan/cli.hpp"
#include "test_util.hpp"

using namespace jordan;
using Kind = Expr::Kind;

namespace {

const AlgebraPtr& sl2() { return registry().sl2h(); }

struct Run {
    int code;
    std::string out, err;
};

Run jordan_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::string golden(const std::string& file) { return slurp(std::string(JORDAN_GOLDEN_DIR) + "/" + file); }

ExprPtr gen(const char* n) { return Expr::generator(n); }
ExprPtr node(Kind k, std::vector<ExprPtr> a, int e = 0) { return Expr::node(k, std::move(a), e); }

/// Random AST over sl2h names with non-negative literals.
ExprPtr random_expr(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 12 : 2), small(0, 5), den(1, 4);
    switch (pick(rng)) {
    case 0: return Expr::number(Rational(small(rng)) / den(rng));
    case 1: return Expr::h();
    case 2: return gen(std::array{"Jp", "J3", "Jm"}[static_cast<std::size_t>(small(rng) % 3)]);
    case 3: return node(Kind::Add, {random_expr(rng, depth - 1), random_expr(rng, depth - 1)});
    case 4: return node(Kind::Sub, {random_expr(rng, depth - 1), random_expr(rng, depth - 1)});
    case 5: return node(Kind::Neg, {random_expr(rng, depth - 1)});
    case 6: return node(Kind::Tensor, {random_expr(rng, depth - 1), random_expr(rng, depth - 1)});
    case 7: return node(Kind::Mul, {random_expr(rng, depth - 1), random_expr(rng, depth - 1)});
    case 8: return node(Kind::Pow, {random_expr(rng, depth - 1)}, small(rng));
    case 9: return node(Kind::Comm, {random_expr(rng, depth - 1), random_expr(rng, depth - 1)});
    case 10: return node(Kind::Delta, {random_expr(rng, depth - 1)});
    case 11: return node(Kind::Flip, {random_expr(rng, depth - 1)});
    default: return node(Kind::Exp, {random_expr(rng, depth - 1)});
    }
}

} // namespace

// ---- parser ------------------------------------------------------------------------

TEST(Parser, CommutatorEvaluatesToCartan) {
    auto e = parse_expr("comm(Jp, Jm)", sl2().get());
    EXPECT_EQ(*e, *node(Kind::Comm, {gen("Jp"), gen("Jm")}));
    EXPECT_EQ(std::get<HSeries>(evaluate(*e, *sl2(), 4)), sl2()->generator("J3", 4));
}

TEST(Parser, DeltaOfRaisingIsPrimitive) {
    auto v = evaluate(*parse_expr("delta(Jp)", sl2().get()), *sl2(), 4);
    HSeries jp = sl2()->generator("Jp", 4), one = sl2()->one(4);
    EXPECT_EQ(tensor_rank(v), 2);
    EXPECT_EQ(std::get<TensorSeries2>(v), outer(jp, one) + outer(one, jp));
}

TEST(Parser, ZeroDenominatorIsASyntaxError) {
    try {
        parse_expr("1/0 * Jp", sl2().get());
        FAIL() << "no error";
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.line(), 1);
        EXPECT_EQ(e.column(), 1);
    }
}

TEST(Parser, Precedence) {
    EXPECT_EQ(*parse_expr("Jp + J3*Jm^2"),
              *node(Kind::Add, {gen("Jp"), node(Kind::Mul, {gen("J3"), node(Kind::Pow, {gen("Jm")}, 2)})}));
    EXPECT_EQ(*parse_expr("-Jp^2"), *node(Kind::Neg, {node(Kind::Pow, {gen("Jp")}, 2)}));
    EXPECT_EQ(*parse_expr("Jp ox J3 - 1 ox h"),
              *node(Kind::Sub, {node(Kind::Tensor, {gen("Jp"), gen("J3")}),
                                node(Kind::Tensor, {Expr::number(1), Expr::h()})}));
    EXPECT_EQ(*parse_expr("Jp - J3 - Jm"), *node(Kind::Sub, {node(Kind::Sub, {gen("Jp"), gen("J3")}), gen("Jm")}));
    EXPECT_EQ(*parse_expr("3/6"), *Expr::number(Rational(1, 2)));
}

TEST(Parser, ErrorsCarryPositions) {
    try {
        parse_expr("Jp +\n  )");
        FAIL() << "no error";
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.line(), 2);
        EXPECT_EQ(e.column(), 3);
    }
    EXPECT_THROW(parse_expr("(Jp"), SyntaxError);
    EXPECT_THROW(parse_expr("Jp / 2"), SyntaxError);
    EXPECT_THROW(parse_expr("comm(Jp)"), SyntaxError);
    EXPECT_THROW(parse_expr(""), SyntaxError);
    EXPECT_THROW(parse_expr("Jp^-1"), SyntaxError);
}

TEST(Parser, UnknownGenerator) { EXPECT_THROW(parse_expr("Np + Jp", sl2().get()), UnknownGenerator); }

TEST(Parser, RandomTreesRoundTrip) {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 500; ++trial) {
        ExprPtr e = random_expr(rng, 4);
        std::string text = print_expr(*e);
        ExprPtr back = parse_expr(text);
        ASSERT_EQ(*back, *e) << text << " reprinted as " << print_expr(*back);
    }
}

TEST(Parser, PrintParseIsStableOnText) {
    for (const char* src : {"comm(Jp, -J3) + 1/2*h*exp(h*Jp)", "flip(delta(J3)) - (Jp + Jm) ox J3", "-(Jp - J3)^3"}) {
        std::string once = print_expr(*parse_expr(src));
        EXPECT_EQ(print_expr(*parse_expr(once)), once) << src;
    }
}

// ---- evaluation -----------------------------------------------------------------

TEST(Evaluation, DeformedCartanBracket) {
    // 2 sinh(hJ+)/h = 2J+ + h^2 (J+)^3 / 3 + O(h^4)
    auto v = evaluate(*parse_expr("comm(J3, Jp)", sl2().get()), *sl2(), 3);
    HSeries jp = sl2()->generator("Jp", 3);
    EXPECT_EQ(std::get<HSeries>(v), jp * Rational(2) + power(jp, 3).shifted(2) * Rational(1, 3));
}

TEST(Evaluation, ExponentialsCancel) {
    auto v = evaluate(*parse_expr("exp(h*Jp) * exp(-h*Jp)", sl2().get()), *sl2(), 5);
    EXPECT_EQ(std::get<HSeries>(v), sl2()->one(5));
    auto t = evaluate(*parse_expr("exp(h*(J3 ox Jp - Jp ox J3)) * exp(-h*(J3 ox Jp - Jp ox J3))", sl2().get()),
                      *sl2(), 4);
    EXPECT_EQ(std::get<TensorSeries2>(t), TensorSeries2::one(sl2(), 4));
}

TEST(Evaluation, OppositeCoproduct) {
    auto a = evaluate(*parse_expr("flip(delta(J3))", sl2().get()), *sl2(), 3);
    EXPECT_EQ(std::get<TensorSeries2>(a), flip(sl2()->coproduct(sl2()->index("J3"), 3)));
}

TEST(Evaluation, TensorCube) {
    auto v = evaluate(*parse_expr("Jp ox 1 ox J3", sl2().get()), *sl2(), 2);
    EXPECT_EQ(tensor_rank(v), 3);
}

TEST(Evaluation, TypeErrors) {
    for (const char* src : {"flip(Jp)", "delta(Jp ox Jp)", "Jp ox J3 + Jp", "Jp ox (J3 ox Jm)", "comm(Jp, Jp ox Jp)"})
        EXPECT_THROW(evaluate(*parse_expr(src, sl2().get()), *sl2(), 2), TypeError) << src;
}

TEST(Evaluation, NonNilpotentExponential) {
    EXPECT_THROW(evaluate(*parse_expr("exp(Jp)", sl2().get()), *sl2(), 2), NonNilpotentArgument);
}

// ---- commands ----------------------------------------------------------------------

TEST(Commands, VerifySl2Passes) {
    auto r = jordan_cli({"verify", "--algebra", "sl2h", "--order", "6", "--checks",
                         "hopf,quasitri,intertwiner,qybe,triangular"});
    EXPECT_EQ(r.code, cli::kExitPass) << r.out << r.err;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
    EXPECT_NE(r.out.find("PASS intertwiner"), std::string::npos);
}

TEST(Commands, VerifyJsonReport) {
    auto r = jordan_cli({"verify", "--algebra", "c110", "--order", "3", "--checks", "hopf,qybe", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    Json j = Json::parse(r.out);
    EXPECT_EQ(j.at("schema_version"), 1);
    EXPECT_EQ(j.at("algebra"), "c110");
    EXPECT_EQ(j.at("order"), 3);
    EXPECT_EQ(j.at("status"), "pass");
    EXPECT_FALSE(j.contains("timings"));
    for (const auto& c : j.at("checks")) EXPECT_EQ(c.at("status"), "pass");
}

TEST(Commands, TimingsOnlyOnRequest) {
    auto r = jordan_cli({"verify", "--algebra", "sl2h", "--order", "2", "--checks", "hopf", "--format", "json",
                         "--timings"});
    EXPECT_TRUE(Json::parse(r.out).contains("timings"));
}

TEST(Commands, ContractEq22IsNotWellDefined) {
    auto r = jordan_cli({"contract", "--mu", "1,1,0", "--mode", "eq22", "--order", "4", "--format", "json"});
    EXPECT_EQ(r.code, cli::kExitFail);
    Json j = Json::parse(r.out);
    EXPECT_EQ(j.at("status"), "fail");
    EXPECT_EQ(j.at("diagnostics").at("well_defined"), false);
    EXPECT_GT(j.at("diagnostics").at("offense_count").get<int>(), 0);
}

TEST(Commands, ContractEq23Succeeds) {
    auto r = jordan_cli({"contract", "--mu", "1,1,0", "--order", "3", "--with-r", "--format", "json"});
    EXPECT_EQ(r.code, cli::kExitPass) << r.out << r.err;
    Json j = Json::parse(r.out);
    EXPECT_EQ(j.at("status"), "pass");
    EXPECT_EQ(j.at("name"), "c110");
    EXPECT_TRUE(j.contains("r_exponent"));
}

TEST(Commands, ClassifyFindsThreeClasses) {
    auto r = jordan_cli({"contract", "--classify", "--order", "3", "--format", "json"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(Json::parse(r.out).at("classes").size(), 3u);
}

TEST(Commands, RMatrixGoldens) {
    auto a = jordan_cli({"rmatrix", "--algebra", "sl2h", "--rep", "fund", "--format", "json"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, golden("sl2h_fund_R.json"));
    auto b = jordan_cli({"rmatrix", "--algebra", "so4h", "--rep", "so4pair", "--format", "json"});
    EXPECT_EQ(b.code, 0);
    EXPECT_EQ(b.out, golden("so4h_so4pair_R.json"));
}

TEST(Commands, ReportsAreByteStable) {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"rmatrix", "--algebra", "c011", "--order", "3", "--format", "json"},
             {"verify", "--algebra", "so4h", "--order", "2", "--checks", "all", "--format", "text"},
             {"eval", "--algebra", "so4h", "--order", "3", "delta(J3)", "--format", "latex"},
             {"list-algebras", "--format", "json"}})
        EXPECT_EQ(jordan_cli(args).out, jordan_cli(args).out) << args[0];
}

TEST(Commands, ListAlgebras) {
    Json j = Json::parse(jordan_cli({"list-algebras", "--format", "json"}).out);
    int primary = 0;
    for (const auto& a : j.at("algebras")) primary += !a.at("auxiliary").get<bool>();
    EXPECT_EQ(primary, 10);
}

TEST(Commands, Eval) {
    auto r = jordan_cli({"eval", "--algebra", "sl2h", "--order", "2", "comm(J3,Jp)"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "2*Jp + 1/3*h^2*Jp^3\n");
}

TEST(Commands, OutWritesFile) {
    auto path = std::filesystem::temp_directory_path() / "jordan_cli_out_test.json";
    std::filesystem::remove(path);
    auto r = jordan_cli({"eval", "--algebra", "sl2h", "--order", "1", "delta(Jp)", "--format", "json", "--out",
                         path.string()});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    EXPECT_NO_THROW(Json::parse(slurp(path.string())));
    std::filesystem::remove(path);
}

TEST(Commands, UsageErrorsExitTwo) {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"eval", "--algebra", "sl2h", "1/0 * Jp"},
             {"eval", "--algebra", "sl2h", "Np"},
             {"eval", "--algebra", "sl2h", "flip(Jp)"},
             {"verify", "--algebra", "so5h"},
             {"verify", "--algebra", "sl2h", "--order", "0"},
             {"verify", "--algebra", "sl2h", "--checks", "nonsense"},
             {"contract", "--mu", "1,2,0"},
             {"contract", "--mu", "1,1,0", "--mode", "eq24"},
             {"rmatrix", "--algebra", "sl2h", "--rep", "adjoint"},
             {"rmatrix", "--algebra", "sl2h", "--route", "copies"},
             {"frobnicate"},
             {}}) {
        auto r = jordan_cli(args);
        EXPECT_EQ(r.code, cli::kExitUsage) << (args.empty() ? "<none>" : args.back()) << "\n" << r.out << r.err;
    }
}

TEST(Commands, FlaggedAppendixLinesFail) {
    auto r = jordan_cli({"verify", "--algebra", "c011", "--order", "3", "--checks", "appendix", "--format", "json"});
    EXPECT_EQ(r.code, cli::kExitFail);
    int failed = 0;
    Json j = Json::parse(r.out);
    for (const auto& c : j.at("checks")) {
        if (c.at("status") != "fail") continue;
        ++failed;
        EXPECT_TRUE(c.contains("first_nonzero_order"));
        EXPECT_TRUE(c.contains("residual_terms"));
    }
    EXPECT_EQ(failed, 2);
}
