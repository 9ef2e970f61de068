#pragma once

#include <functional>
#include <string>
#include <vector>

#include "check.hpp"
#include "rmatrix.hpp"

namespace jordan {

/// One printed structure-map line of a contracted algebra, as a rule that
/// builds the printed value in the contracted algebra itself.
struct AppendixEntry {
    enum class Kind { Bracket, Coproduct, Antipode };
    Kind kind;
    int i = 0, j = 0; // generators; j only for brackets
    std::function<HSeries(const Algebra&, int)> element;        // brackets, antipodes
    std::function<TensorSeries2(const Algebra&, int)> tensor;   // coproducts
    std::string flag;  // why the printed line is suspect, if it is
    std::string note;  // e.g. "unlisted, taken primitive"
};

struct AppendixItem {
    int number = 0;
    MuTriple mu;
    std::string classical; // the undeformed algebra named in the text
    std::vector<AppendixEntry> entries;
};

struct AppendixComparison {
    int number = 0;
    MuTriple mu;
    std::vector<CheckReport> entries; // residual = engine − printed; note holds the flag

    std::vector<const CheckReport*> mismatches() const {
        std::vector<const CheckReport*> out;
        for (const auto& e : entries)
            if (!e.pass) out.push_back(&e);
        return out;
    }
};

namespace detail {

using Element = std::function<HSeries(const Algebra&, int)>;
using Tensor = std::function<TensorSeries2(const Algebra&, int)>;

inline HSeries gen(const Algebra& A, int i, int K) { return A.generator(i, K); }

inline Element linear(std::vector<std::pair<int, int>> terms) { // Σ c·g
    return [terms](const Algebra& A, int K) {
        HSeries s(A.ptr(), K);
        for (const auto& [c, g] : terms) s.add(0, {letter(g)}, Rational(c));
        return s;
    };
}

inline Element zero_element() {
    return [](const Algebra& A, int K) { return A.zero(K); };
}

inline HSeries hyp(const Algebra& A, const AnalyticFn& f, int g, int K) {
    return hyperbolic(A, f, g, Rational(1, 2), K);
}

// (4/h) sinh(hP/2) cosh(hQ/2)
inline Element four_over_h_sinh_cosh(int p, int q) {
    return [p, q](const Algebra& A, int K) {
        return (hyp(A, AnalyticFn::sinh(), p, K + 1) * hyp(A, AnalyticFn::cosh(), q, K + 1)).divided_by_h() *
               Rational(4);
    };
}

// −x cJ cN − cJ cN x − y sJ sN − sJ sN y
inline Element lowered_bracket(int x, int y) {
    return [x, y](const Algebra& A, int K) {
        HSeries cc = hyp(A, AnalyticFn::cosh(), kJp, K) * hyp(A, AnalyticFn::cosh(), kNp, K);
        HSeries ss = hyp(A, AnalyticFn::sinh(), kJp, K) * hyp(A, AnalyticFn::sinh(), kNp, K);
        HSeries gx = gen(A, x, K), gy = gen(A, y, K);
        return -(gx * cc + cc * gx + gy * ss + ss * gy);
    };
}

inline Tensor primitive(int x) {
    return [x](const Algebra& A, int K) { return outer(gen(A, x, K), A.one(K)) + outer(A.one(K), gen(A, x, K)); };
}

// x⊗1 + 1⊗x + (h/2)(a⊗b − b⊗a)
inline Tensor primitive_plus_twist(int x, int a, int b) {
    return [=](const Algebra& A, int K) {
        TensorSeries2 t = outer(gen(A, a, K), gen(A, b, K));
        return primitive(x)(A, K) + (t - flip(t)).shifted(1) * Rational(1, 2);
    };
}

// e^{−u}⊗x + x⊗e^{u} − (h/2)(e^{−u}J⁺⊗y − y⊗J⁺e^{u}),  u = hN⁺/2
inline Tensor boost_coproduct(int x, int y) {
    return [=](const Algebra& A, int K) {
        HSeries em = hyperbolic(A, AnalyticFn::exp(), kNp, Rational(-1, 2), K);
        HSeries ep = hyperbolic(A, AnalyticFn::exp(), kNp, Rational(1, 2), K);
        HSeries gx = gen(A, x, K), gy = gen(A, y, K), jp = gen(A, kJp, K);
        return outer(em, gx) + outer(gx, ep) - (outer(em * jp, gy) - outer(gy, jp * ep)).shifted(1) * Rational(1, 2);
    };
}

// e^{−u}J⁺⊗y + y⊗e^{u}, transcribed with its extra J⁺
inline Tensor printed_boost_n_coproduct(int y) {
    return [=](const Algebra& A, int K) {
        HSeries em = hyperbolic(A, AnalyticFn::exp(), kNp, Rational(-1, 2), K);
        HSeries ep = hyperbolic(A, AnalyticFn::exp(), kNp, Rational(1, 2), K);
        HSeries gy = gen(A, y, K);
        return outer(em * gen(A, kJp, K), gy) + outer(gy, ep);
    };
}

// e^{−u}cJ⊗x + x⊗cJ e^{u} − e^{−u}sJ⊗y + y⊗sJ e^{u}
inline Tensor so4_coproduct(int x, int y) {
    return [=](const Algebra& A, int K) {
        HSeries em = hyperbolic(A, AnalyticFn::exp(), kNp, Rational(-1, 2), K);
        HSeries ep = hyperbolic(A, AnalyticFn::exp(), kNp, Rational(1, 2), K);
        HSeries c = hyp(A, AnalyticFn::cosh(), kJp, K), s = hyp(A, AnalyticFn::sinh(), kJp, K);
        HSeries gx = gen(A, x, K), gy = gen(A, y, K);
        return outer(em * c, gx) + outer(gx, c * ep) - outer(em * s, gy) + outer(gy, s * ep);
    };
}

inline Element conjugation_antipode(int x) {
    return [x](const Algebra& A, int K) {
        return -(hyperbolic(A, AnalyticFn::exp(), kNp, 1, K) * gen(A, x, K) *
                 hyperbolic(A, AnalyticFn::exp(), kNp, -1, K));
    };
}

struct ItemBuilder {
    AppendixItem item;
    std::vector<std::pair<int, int>> listed_pairs;
    std::vector<int> listed_coproducts;

    void bracket(int a, int b, Element v, std::string flag = {}) {
        AppendixEntry e{AppendixEntry::Kind::Bracket, a, b, std::move(v), {}, std::move(flag), {}};
        item.entries.push_back(std::move(e));
        listed_pairs.push_back({std::max(a, b), std::min(a, b)});
    }
    void coproduct(int x, Tensor v, std::string flag = {}) {
        AppendixEntry e{AppendixEntry::Kind::Coproduct, x, 0, {}, std::move(v), std::move(flag), {}};
        item.entries.push_back(std::move(e));
        listed_coproducts.push_back(x);
    }
    void antipodes_by_conjugation() {
        for (int x = 0; x < 6; ++x)
            item.entries.push_back({AppendixEntry::Kind::Antipode, x, 0, conjugation_antipode(x), {}, {}, {}});
    }
    // [J^i, N^i] = 0
    void diagonal_zero() {
        bracket(kJp, kNp, zero_element());
        bracket(kJm, kNm, zero_element());
        bracket(kJ3, kN3, zero_element());
    }
    AppendixItem finish() {
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < i; ++j)
                if (std::find(listed_pairs.begin(), listed_pairs.end(), std::make_pair(i, j)) == listed_pairs.end())
                    throw Error("appendix item " + std::to_string(item.number) + " leaves a bracket unspecified");
        for (int x = 0; x < 6; ++x)
            if (std::find(listed_coproducts.begin(), listed_coproducts.end(), x) == listed_coproducts.end()) {
                AppendixEntry e{AppendixEntry::Kind::Coproduct, x, 0, {}, primitive(x), {}, "unlisted, taken primitive"};
                item.entries.push_back(std::move(e));
            }
        return std::move(item);
    }
};

// Items 1–4 share [J³,J^±] = ±2J^±, [J³,N^±] = ±2N^±, [J^i,N^i] = 0 and ΔJ³.
inline void classical_common(ItemBuilder& b) {
    b.bracket(kJ3, kJp, linear({{2, kJp}}));
    b.bracket(kJ3, kJm, linear({{-2, kJm}}));
    b.bracket(kJ3, kNp, linear({{2, kNp}}));
    b.bracket(kJ3, kNm, linear({{-2, kNm}}));
    b.diagonal_zero();
    b.coproduct(kJ3, primitive_plus_twist(kJ3, kN3, kJp));
}

inline void n3_brackets(ItemBuilder& b, bool to_j) {
    b.bracket(kN3, kNp, to_j ? linear({{2, kJp}}) : zero_element());
    b.bracket(kN3, kNm, to_j ? linear({{-2, kJm}}) : zero_element());
    b.bracket(kN3, kJp, zero_element());
    b.bracket(kN3, kJm, zero_element());
}

inline void ladder_brackets(ItemBuilder& b, bool jj, bool nn, bool jn) {
    b.bracket(kJp, kJm, jj ? linear({{1, kJ3}}) : zero_element());
    b.bracket(kNp, kNm, nn ? linear({{1, kJ3}}) : zero_element());
    b.bracket(kJp, kNm, jn ? linear({{1, kN3}}) : zero_element());
    b.bracket(kJm, kNp, jn ? linear({{-1, kN3}}) : zero_element());
}

inline AppendixItem classical_item(int number, MuTriple mu, std::string name, bool n3_to_j, bool nn, bool jn,
                                   bool lists_nm) {
    ItemBuilder b{{number, mu, std::move(name), {}}, {}, {}};
    classical_common(b);
    n3_brackets(b, n3_to_j);
    ladder_brackets(b, false, nn, jn);
    if (lists_nm) b.coproduct(kNm, primitive_plus_twist(kNm, kJm, kJp));
    return b.finish();
}

inline AppendixItem boost_item(int number, MuTriple mu, std::string name, bool jj_and_jn) {
    ItemBuilder b{{number, mu, std::move(name), {}}, {}, {}};
    b.bracket(kJ3, kJp, [](const Algebra& A, int K) {
        return gen(A, kJp, K) * hyp(A, AnalyticFn::cosh(), kNp, K) * Rational(2);
    });
    b.bracket(kJ3, kJm, [](const Algebra& A, int K) {
        HSeries c = hyp(A, AnalyticFn::cosh(), kNp, K), s = hyp(A, AnalyticFn::sinh(), kNp, K);
        HSeries jm = gen(A, kJm, K), jp = gen(A, kJp, K), nm = gen(A, kNm, K);
        return -(jm * c + c * jm) - (nm * jp * s + jp * s * nm).shifted(1) * Rational(1, 2);
    });
    Element j3_np = [](const Algebra& A, int K) {
        return hyp(A, AnalyticFn::sinh(), kNp, K + 1).divided_by_h() * Rational(4);
    };
    Element j3_nm = [](const Algebra& A, int K) {
        HSeries c = hyp(A, AnalyticFn::cosh(), kNp, K), nm = gen(A, kNm, K);
        return -(nm * c + c * nm);
    };
    b.bracket(kJ3, kNp, j3_np);
    b.bracket(kJ3, kNm, j3_nm);
    b.bracket(kN3, kNp, zero_element());
    b.bracket(kN3, kNm, zero_element());
    b.bracket(kN3, kJp, j3_np);
    b.bracket(kN3, kJm, j3_nm);
    ladder_brackets(b, jj_and_jn, false, jj_and_jn);
    b.diagonal_zero();
    const std::string delimiter = number == 6 ? "printed line lacks its closing parenthesis; read as item 5" : "";
    b.coproduct(kJm, boost_coproduct(kJm, kNm), delimiter);
    b.coproduct(kJ3, boost_coproduct(kJ3, kN3), delimiter);
    const std::string extra = "extra J+ factor in the first term breaks the h -> 0 limit";
    b.coproduct(kNm, printed_boost_n_coproduct(kNm), extra);
    b.coproduct(kN3, printed_boost_n_coproduct(kN3), extra);
    b.antipodes_by_conjugation();
    return b.finish();
}

inline AppendixItem copies_item() {
    ItemBuilder b{{7, MuTriple(1, 0, 1), "iso(2)+iso(2)", {}}, {}, {}};
    b.bracket(kJ3, kJp, four_over_h_sinh_cosh(kJp, kNp));
    b.bracket(kJ3, kJm, lowered_bracket(kJm, kNm));
    b.bracket(kJ3, kNp, four_over_h_sinh_cosh(kNp, kJp));
    b.bracket(kJ3, kNm, lowered_bracket(kNm, kJm));
    b.bracket(kN3, kNp, four_over_h_sinh_cosh(kJp, kNp));
    b.bracket(kN3, kNm, lowered_bracket(kJm, kNm));
    b.bracket(kN3, kJp, four_over_h_sinh_cosh(kNp, kJp));
    b.bracket(kN3, kJm, lowered_bracket(kNm, kJm));
    ladder_brackets(b, false, false, false);
    b.diagonal_zero();
    b.coproduct(kJm, so4_coproduct(kJm, kNm));
    b.coproduct(kJ3, so4_coproduct(kJ3, kN3));
    b.coproduct(kNm, so4_coproduct(kNm, kJm));
    b.coproduct(kN3, so4_coproduct(kN3, kJ3));
    b.antipodes_by_conjugation();
    return b.finish();
}

} // namespace detail

/// The seven printed Hopf structures, in printed order.
inline const std::vector<AppendixItem>& appendix_items() {
    static const std::vector<AppendixItem> items = [] {
        using detail::classical_item;
        std::vector<AppendixItem> v;
        v.push_back(classical_item(1, MuTriple(1, 1, 0), "iso(3)", true, true, true, true));
        v.push_back(classical_item(2, MuTriple(1, 0, 0), "iiso(2)", true, false, false, true));
        v.push_back(classical_item(3, MuTriple(0, 1, 0), "i'iso(2)", false, false, true, false));
        v.push_back(classical_item(4, MuTriple(0, 0, 0), "R+(R^4+so(2))", false, false, false, false));
        v.push_back(detail::boost_item(5, MuTriple(0, 1, 1), "iso(3)", true));
        v.push_back(detail::boost_item(6, MuTriple(0, 0, 1), "iiso(2)", false));
        v.push_back(detail::copies_item());
        return v;
    }();
    return items;
}

inline std::string entry_label(const Algebra& A, const AppendixEntry& e) {
    switch (e.kind) {
    case AppendixEntry::Kind::Bracket: return "[" + A.generator_name(e.i) + "," + A.generator_name(e.j) + "]";
    case AppendixEntry::Kind::Coproduct: return "Delta(" + A.generator_name(e.i) + ")";
    case AppendixEntry::Kind::Antipode: return "S(" + A.generator_name(e.i) + ")";
    }
    return "?";
}

/// Engine output minus printed value for every entry of one item.
inline AppendixComparison compare_appendix(const AppendixItem& item, const AlgebraPtr& A, int K) {
    AppendixComparison out{item.number, item.mu, {}};
    for (const auto& e : item.entries) {
        const std::string label = entry_label(*A, e);
        CheckReport c;
        switch (e.kind) {
        case AppendixEntry::Kind::Bracket:
            c = residual_report(label, "engine - printed", A->bracket(e.i, e.j, K) - A->normal_order(e.element(*A, K)));
            break;
        case AppendixEntry::Kind::Coproduct:
            c = residual_report(label, "engine - printed", A->coproduct(e.i, K) - A->normal_order(e.tensor(*A, K)));
            break;
        case AppendixEntry::Kind::Antipode:
            c = residual_report(label, "engine - printed", A->antipode(e.i, K) - A->normal_order(e.element(*A, K)));
            break;
        }
        c.note = e.flag.empty() ? e.note : "flagged: " + e.flag;
        out.entries.push_back(std::move(c));
    }
    return out;
}

/// Classical limit of a contracted algebra: every bracket at h = 0.
inline std::vector<HSeries> classical_brackets(const Algebra& A) {
    std::vector<HSeries> out;
    for (int i = 0; i < A.size(); ++i)
        for (int j = 0; j < i; ++j) out.push_back(A.bracket(i, j, 0));
    return out;
}

} // namespace jordan
