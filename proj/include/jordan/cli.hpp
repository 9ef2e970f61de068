#pragma once

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "appendix.hpp"
#include "expr.hpp"
#include "hopf.hpp"
#include "report.hpp"
#include "reps.hpp"
#include "rmatrix.hpp"

namespace jordan::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public Error {
public:
    using Error::Error;
};

inline const std::vector<std::string>& check_groups() {
    static const std::vector<std::string> g{"hopf",  "quasitri", "intertwiner", "qybe",  "triangular", "inverse",
                                            "antisym", "ratios", "routes",      "basis", "appendix",   "rep"};
    return g;
}

inline const std::vector<std::string>& default_checks() {
    static const std::vector<std::string> d{"hopf", "quasitri", "intertwiner", "qybe", "triangular"};
    return d;
}

/// The groups of check_groups() that make sense for A.
inline std::vector<std::string> applicable_groups(const AlgebraPtr& A) {
    const auto& reg = registry();
    const bool contracted = reg.triple_of(A).has_value();
    std::vector<std::string> out;
    for (const auto& g : check_groups()) {
        if (g == "routes" && !(A->size() == 3 || A == reg.so4h() || contracted)) continue;
        if (g == "basis" && !(A == reg.so4h() || reg.triple_of(A) == MuTriple(1, 0, 1))) continue;
        if (g == "appendix" && !contracted) continue;
        if (g == "rep" && !(A == reg.sl2h() || A == reg.so4h())) continue;
        out.push_back(g);
    }
    return out;
}

inline int default_order(const Algebra& A) { return &A == registry().so4h().get() ? 4 : 6; }

inline AlgebraPtr find_algebra(const std::string& name) {
    try {
        return registry().find(name);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
}

inline std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(item);
    return out;
}

inline MuTriple parse_mu(const std::string& s) {
    auto parts = split_csv(s);
    if (parts.size() != 3) throw UsageError("--mu expects three comma-separated values, got '" + s + "'");
    int v[3];
    for (int i = 0; i < 3; ++i) {
        if (parts[static_cast<std::size_t>(i)] != "0" && parts[static_cast<std::size_t>(i)] != "1")
            throw UsageError("--mu entries must be 0 or 1, got '" + s + "'");
        v[i] = parts[static_cast<std::size_t>(i)] == "1";
    }
    return MuTriple(v[0], v[1], v[2]);
}

inline Route parse_route_flag(const std::string& s, const AlgebraPtr& A) {
    Route r;
    try {
        r = parse_route(s);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    auto routes = available_routes(A);
    if (std::find(routes.begin(), routes.end(), r) == routes.end())
        throw UsageError("route " + s + " is not available for " + A->name());
    return r;
}

inline std::optional<Rep> rep_for(const AlgebraPtr& A) {
    const auto& reg = registry();
    if (A == reg.sl2h()) return fundamental_sl2(A);
    if (A == reg.so4h()) return rep_so4_from_pair(A);
    return std::nullopt;
}

inline Rep named_rep(const std::string& name, const AlgebraPtr& A) {
    const auto& reg = registry();
    if (name == "fund") {
        if (A != reg.sl2h()) throw UsageError("rep fund is defined for sl2h only");
        return fundamental_sl2(A);
    }
    if (name == "so4pair") {
        if (A != reg.so4h()) throw UsageError("rep so4pair is defined for so4h only");
        return rep_so4_from_pair(A);
    }
    throw UsageError("unknown rep '" + name + "' (expected fund or so4pair)");
}

/// The exact (polynomial) matrix of R; the order is raised to the rep's span
/// when needed so that every term that survives in the rep is present.
inline PolyMatrix represented_R(const AlgebraPtr& A, Route route, int K, const Rep& rep) {
    return evaluate_R(build_R(RSpec{A->name(), route, std::max(K, rep.weight_span)}), rep);
}

inline std::vector<CheckReport> route_agreement(const AlgebraPtr& A, int K) {
    const auto& reg = registry();
    std::vector<std::pair<Route, Route>> pairs;
    if (A->size() == 3) pairs = {{Route::Direct, Route::Symmetric}};
    else if (A == reg.so4h()) pairs = {{Route::Copies, Route::ClosedForm}};
    else if (auto mu = reg.triple_of(A)) {
        pairs = {{Route::ClosedForm, Route::Limit}};
        if (r_case(*mu) == RCase::Copies) pairs.push_back({Route::ClosedForm, Route::Copies});
    } else {
        throw Error("only one R construction is known for " + A->name());
    }
    std::vector<CheckReport> out;
    for (auto [a, b] : pairs) {
        RMatrix ra = build_R(RSpec{A->name(), a, K}), rb = build_R(RSpec{A->name(), b, K});
        std::string subject = route_name(a) + " - " + route_name(b);
        out.push_back(residual_report("route exponents", subject, ra.exponent - rb.exponent));
        out.push_back(residual_report("route R", subject, ra.r - rb.r));
    }
    return out;
}

inline std::vector<CheckReport> basis_checks(const AlgebraPtr& A, int K) {
    const auto& reg = registry();
    AlgebraPtr pair;
    if (A == reg.so4h()) pair = reg.so4_pair();
    else if (reg.triple_of(A) == MuTriple(1, 0, 1)) pair = reg.iso2_pair();
    else throw Error("no basis change registered for " + A->name());
    std::vector<CheckReport> out = check_hopf_map(so4_to_pair(A, pair), K);
    for (auto& c : check_hopf_map(pair_to_so4(pair, A), K)) {
        c.name += " (inverse)";
        out.push_back(std::move(c));
    }
    return out;
}

inline std::vector<CheckReport> appendix_checks(const AlgebraPtr& A, int K) {
    auto mu = registry().triple_of(A);
    if (!mu) throw Error(A->name() + " is not an appendix algebra");
    for (const auto& item : appendix_items())
        if (item.mu == *mu) return compare_appendix(item, A, K).entries;
    throw Error("no appendix item for " + A->name());
}

inline std::vector<CheckReport> rep_checks(const AlgebraPtr& A, Route route, int K) {
    auto rep = rep_for(A);
    if (!rep) throw Error("no matrix representation registered for " + A->name());
    PolyMatrix rm = represented_R(A, route, K, *rep);
    return {check_rep(*rep), matrix_qybe(rm, rep->dim), matrix_triangular(rm, rep->dim),
            matrix_intertwiner(rm, *rep)};
}

inline std::vector<CheckReport> run_group(const std::string& group, const AlgebraPtr& A, Route route, int K) {
    auto R = [&] { return build_R(RSpec{A->name(), route, K}); };
    if (group == "hopf") return verify_hopf(*A, K).checks;
    if (group == "quasitri") return {check_quasitriangular(R())};
    if (group == "intertwiner") return check_intertwiner(R());
    if (group == "qybe") return {check_qybe(R())};
    if (group == "triangular") return {check_triangular(R())};
    if (group == "inverse") return {check_inverse(R())};
    if (group == "antisym") return {check_antisymmetric_exponent(R())};
    if (group == "ratios") return R().self_checks;
    if (group == "routes") return route_agreement(A, K);
    if (group == "basis") return basis_checks(A, K);
    if (group == "appendix") return appendix_checks(A, K);
    if (group == "rep") return rep_checks(A, route, K);
    throw UsageError("unknown check '" + group + "'");
}

/// Runs each group; an exception becomes one "error" entry for that group.
inline Report verify(const AlgebraPtr& A, const std::vector<std::string>& groups, Route route, int K) {
    Report r{"verify", A->name(), K, route_name(route), {}, {}, {}};
    for (const auto& g : groups) {
        std::vector<CheckReport> got;
        double secs = timed([&] {
            try {
                got = run_group(g, A, route, K);
            } catch (const UsageError&) {
                throw;
            } catch (const std::exception& e) {
                CheckReport c;
                c.name = g;
                c.pass = false;
                c.error = e.what();
                got = {c};
            }
        });
        for (auto& c : got) {
            if (!c.name.starts_with(g)) c.name = g + "." + c.name;
            r.checks.push_back(std::move(c));
        }
        r.timings.emplace_back(g, secs);
    }
    return r;
}

// ---- command plumbing -------------------------------------------------------

struct Common {
    std::string format = "text";
    std::string out_path;
    bool timings = false;
};

inline void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "text", "latex"}));
    cmd->add_option("--out", c.out_path, "Write output to this file instead of stdout");
    cmd->add_flag("--timings", c.timings, "Include wall-clock timings");
}

inline void emit(const Common& c, std::ostream& out, const std::string& text) {
    if (c.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.out_path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + c.out_path);
    f << text;
}

inline std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

inline std::string render(const Report& r, const Common& c, const std::function<std::string()>& latex_body = {}) {
    if (c.format == "json") return json_text(report_json(r, c.timings));
    if (c.format == "latex") return (latex_body ? latex_body() : std::string()) + report_latex(r);
    return report_text(r, c.timings);
}

inline int check_order(int K, int minimum = 1) {
    if (K < minimum) throw UsageError("--order must be at least " + std::to_string(minimum));
    if (K > 40) throw UsageError("--order above 40 is not supported");
    return K;
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact checks for Jordanian quantum algebras and their contractions", "jordan"};
    app.require_subcommand(1);

    Common common;
    std::string algebra, checks, mu_text, mode = "eq23", rep_name, route_text = "default", base = "so4h",
                                         expression;
    int order = -1, zero_power = 2;
    bool with_r = false, classify = false;

    auto* list = app.add_subcommand("list-algebras", "List the registered algebras");
    add_common(list, common);

    auto* verify_cmd = app.add_subcommand("verify", "Run exact identity checks on an algebra");
    verify_cmd->add_option("--algebra", algebra, "Algebra name")->required();
    verify_cmd->add_option("--order", order, "Truncation order K");
    verify_cmd->add_option("--checks", checks, "Comma-separated checks, or 'all' for every check that applies");
    verify_cmd->add_option("--route", route_text, "R construction route");
    add_common(verify_cmd, common);

    auto* contract_cmd = app.add_subcommand("contract", "Contract so4h (or sl2h) and report well-definedness");
    contract_cmd->add_option("--mu", mu_text, "Contraction triple a,b,c with entries 0 or 1");
    contract_cmd->add_option("--mode", mode, "Rescaling rule")->check(CLI::IsMember({"eq22", "eq23"}));
    contract_cmd->add_option("--order", order, "Truncation order K");
    contract_cmd->add_option("--base", base, "Base algebra")->check(CLI::IsMember({"so4h", "sl2h"}));
    contract_cmd->add_option("--zero-power", zero_power, "Power of eps used for a vanishing mu")
        ->check(CLI::IsMember({2, 4}));
    contract_cmd->add_flag("--with-r", with_r, "Also contract the so4h R exponent");
    contract_cmd->add_flag("--classify", classify, "Group the seven eq23 contractions by contracted R");
    add_common(contract_cmd, common);

    auto* rmatrix_cmd = app.add_subcommand("rmatrix", "Build the universal R matrix or its matrix image");
    rmatrix_cmd->add_option("--algebra", algebra, "Algebra name")->required();
    rmatrix_cmd->add_option("--order", order, "Truncation order K");
    rmatrix_cmd->add_option("--route", route_text, "R construction route");
    rmatrix_cmd->add_option("--rep", rep_name, "Matrix representation (fund or so4pair)");
    add_common(rmatrix_cmd, common);

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate an expression in an algebra");
    eval_cmd->add_option("--algebra", algebra, "Algebra name")->required();
    eval_cmd->add_option("--order", order, "Truncation order K");
    eval_cmd->add_option("expression", expression, "Expression, e.g. 'delta(Jp)'")->required();
    add_common(eval_cmd, common);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (list->parsed()) {
            const auto& reg = registry();
            std::vector<AlgebraPtr> algebras = reg.all();
            algebras.push_back(reg.so4_pair());
            algebras.push_back(reg.iso2_pair());
            if (common.format == "json") {
                Json arr = Json::array();
                for (const auto& a : algebras) {
                    Json gens = Json::array();
                    for (int i = 0; i < a->size(); ++i) gens.push_back(a->generator_name(i));
                    arr.push_back(Json{{"name", a->name()},
                                       {"generators", std::move(gens)},
                                       {"description", a->def().description},
                                       {"auxiliary", a == reg.so4_pair() || a == reg.iso2_pair()}});
                }
                emit(common, out, json_text(Json{{"schema_version", kSchemaVersion}, {"algebras", std::move(arr)}}));
            } else {
                std::string text;
                for (const auto& a : algebras) {
                    std::string gens;
                    for (int i = 0; i < a->size(); ++i) gens += (i ? " " : "") + a->generator_name(i);
                    text += a->name() + "  [" + gens + "]  " + a->def().description + "\n";
                }
                emit(common, out, text);
            }
            return kExitPass;
        }

        if (verify_cmd->parsed()) {
            AlgebraPtr A = find_algebra(algebra);
            const int K = check_order(order < 0 ? default_order(*A) : order);
            std::vector<std::string> groups = checks.empty() ? default_checks() : split_csv(checks);
            if (groups.size() == 1 && groups[0] == "all") groups = applicable_groups(A);
            for (const auto& g : groups)
                if (std::find(check_groups().begin(), check_groups().end(), g) == check_groups().end())
                    throw UsageError("unknown check '" + g + "'");
            Report r = verify(A, groups, parse_route_flag(route_text, A), K);
            emit(common, out, render(r, common));
            return r.ok() ? kExitPass : kExitFail;
        }

        if (contract_cmd->parsed()) {
            const int K = check_order(order < 0 ? 6 : order);
            if (classify) {
                Json classes = Json::array();
                std::string text;
                for (const auto& c : classify_contracted_R(K)) {
                    Json members = Json::array();
                    std::string labels;
                    for (const auto& m : c.members) {
                        members.push_back(m.label());
                        labels += (labels.empty() ? "" : " ") + m.label();
                    }
                    classes.push_back(Json{{"members", std::move(members)}, {"exponent", series_json(c.exponent)}});
                    text += "{" + labels + "}  r = " + to_text(c.exponent) + "\n";
                }
                if (common.format == "json")
                    emit(common, out, json_text(Json{{"schema_version", kSchemaVersion}, {"kind", "r-classes"},
                                                     {"order", K}, {"classes", std::move(classes)}}));
                else
                    emit(common, out, text);
                return kExitPass;
            }
            ContractionOutcome c;
            std::string name, label;
            if (base == "sl2h") {
                if (!mu_text.empty()) throw UsageError("--mu applies to --base so4h only");
                c = contract_sl2_to_p2(K);
                name = "p2m";
                label = "sl2h with P- = eps J-";
            } else {
                if (mu_text.empty()) throw UsageError("contract needs --mu (or --classify)");
                MuTriple mu = parse_mu(mu_text);
                ContractionMode m = mode == "eq22" ? ContractionMode::Eq22 : ContractionMode::Eq23;
                std::optional<TensorSeries2> base_exponent;
                if (with_r) base_exponent = build_R(RSpec{"so4h", Route::ClosedForm, K}).exponent;
                c = contract(registry().so4h(), mu, m, K, base_exponent ? &*base_exponent : nullptr, zero_power);
                name = contracted_name(mu, m);
                label = "so4h at (" + std::to_string(mu.mu1) + "," + std::to_string(mu.mu2) + "," +
                        std::to_string(mu.mu3) + ") " + mode;
            }
            if (common.format == "json") {
                emit(common, out, json_text(contraction_json(c, name, base == "sl2h" ? "p2" : mode, K)));
            } else if (common.format == "latex") {
                if (!c.ok()) throw Error("no limit to typeset: " + label + " is not well defined");
                std::string text = algebra_latex(*c.algebra, K);
                if (c.r_exponent) text += "\\[ r = " + series_latex(*c.r_exponent) + " \\]\n";
                emit(common, out, text);
            } else {
                std::string text = "contraction of " + label + " at order " + std::to_string(K) + ": ";
                if (c.ok()) {
                    text += "well defined\n";
                    if (c.r_exponent) text += "r = " + to_text(*c.r_exponent) + "\n";
                } else {
                    text += "not well defined, " + std::to_string(c.offenses.size()) + " terms keep a negative power of eps\n";
                    const std::size_t shown = std::min<std::size_t>(c.offenses.size(), 12);
                    for (std::size_t i = 0; i < shown; ++i) {
                        const auto& o = c.offenses[i];
                        text += "  " + o.entry + ": " + o.term + " ~ eps^" + std::to_string(o.eps_exponent) + "\n";
                    }
                    if (shown < c.offenses.size()) text += "  ... (" + std::to_string(c.offenses.size() - shown) + " more)\n";
                }
                emit(common, out, text);
            }
            return c.ok() ? kExitPass : kExitFail;
        }

        if (rmatrix_cmd->parsed()) {
            AlgebraPtr A = find_algebra(algebra);
            const Route route = parse_route_flag(route_text, A);
            const int K = check_order(order < 0 ? default_order(*A) : order);
            std::optional<Rep> rep;
            if (!rep_name.empty()) rep = named_rep(rep_name, A);
            RMatrix m = build_R(RSpec{A->name(), route, K});
            Report r{"rmatrix", A->name(), K, route_name(m.route), m.self_checks, {}, {}};
            std::optional<PolyMatrix> rm;
            if (rep) {
                rm = represented_R(A, route, K, *rep);
                r.checks.push_back(check_rep(*rep));
                r.checks.push_back(matrix_qybe(*rm, rep->dim));
                r.checks.push_back(matrix_triangular(*rm, rep->dim));
                r.checks.push_back(matrix_intertwiner(*rm, *rep));
                r.payload = Json{{"rep", rep->name}, {"matrix", matrix_json(*rm)}};
            } else {
                r.payload = Json{{"exponent", series_json(m.exponent)}, {"r", series_json(m.r)}};
                if (m.x) r.payload["x"] = series_json(*m.x);
            }
            std::string text;
            if (common.format == "json") {
                text = json_text(report_json(r, common.timings));
            } else if (common.format == "latex") {
                text = rm ? matrix_latex(*rm) : "\\[ \\mathcal{R} = " + series_latex(m.r) + " \\]\n";
                text += report_latex(r);
            } else {
                text = rm ? matrix_text(*rm) : "exponent = " + to_text(m.exponent) + "\nR = " + to_text(m.r) + "\n";
                text += report_text(r, common.timings);
            }
            emit(common, out, text);
            return r.ok() ? kExitPass : kExitFail;
        }

        if (eval_cmd->parsed()) {
            AlgebraPtr A = find_algebra(algebra);
            const int K = check_order(order < 0 ? 6 : order, 0);
            ExprPtr e = parse_expr(expression, A.get());
            Value v = evaluate(*e, *A, K);
            std::string text;
            if (common.format == "json") {
                Json j{{"schema_version", kSchemaVersion}, {"kind", "value"}, {"algebra", A->name()},
                       {"order", K}, {"expression", print_expr(*e)}, {"rank", tensor_rank(v)}};
                j["value"] = std::visit([](const auto& x) { return series_json(x); }, v);
                text = json_text(j);
            } else if (common.format == "latex") {
                text = std::visit([](const auto& x) { return series_latex(x); }, v) + "\n";
            } else {
                text = value_text(v) + "\n";
            }
            emit(common, out, text);
            return kExitPass;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SyntaxError& e) {
        err << "syntax error at " << e.what() << "\n";
        return kExitUsage;
    } catch (const UnknownGenerator& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const TypeError& e) {
        err << "type error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(std::move(args), out, err);
}

} // namespace jordan::cli
