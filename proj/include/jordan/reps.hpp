#pragma once

#include <string>
#include <vector>

#include "check.hpp"
#include "rmatrix.hpp"

namespace jordan {

/// Polynomial in h with exact coefficients; index = power, no trailing zeros.
using Poly = std::vector<Rational>;

inline void trim(Poly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

/// Square matrix over Q[h].
class PolyMatrix {
public:
    PolyMatrix() = default;
    explicit PolyMatrix(int n) : n_(n), e_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {}

    static PolyMatrix identity(int n) {
        PolyMatrix m(n);
        for (int i = 0; i < n; ++i) m.add(i, i, 0, Rational(1));
        return m;
    }

    /// Constant matrix from rows of rationals.
    static PolyMatrix constant(const std::vector<std::vector<Rational>>& rows) {
        PolyMatrix m(static_cast<int>(rows.size()));
        for (int i = 0; i < m.n_; ++i) {
            if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != m.n_) throw Error("matrix is not square");
            for (int j = 0; j < m.n_; ++j) m.add(i, j, 0, rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        }
        return m;
    }

    int size() const noexcept { return n_; }
    const Poly& at(int i, int j) const { return e_[index(i, j)]; }

    void add(int i, int j, int k, const Rational& c) {
        if (sgn(c) == 0) return;
        Poly& p = e_[index(i, j)];
        if (static_cast<int>(p.size()) <= k) p.resize(static_cast<std::size_t>(k) + 1);
        p[static_cast<std::size_t>(k)] += c;
        trim(p);
    }

    bool is_zero() const {
        for (const auto& p : e_)
            if (!p.empty()) return false;
        return true;
    }

    int degree() const {
        int d = -1;
        for (const auto& p : e_) d = std::max(d, static_cast<int>(p.size()) - 1);
        return d;
    }

    /// Value at h = 0.
    PolyMatrix at_zero() const {
        PolyMatrix m(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (!at(i, j).empty()) m.add(i, j, 0, at(i, j)[0]);
        return m;
    }

    PolyMatrix& operator+=(const PolyMatrix& o) {
        check(o);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                const Poly& p = o.at(i, j);
                for (std::size_t k = 0; k < p.size(); ++k) add(i, j, static_cast<int>(k), p[k]);
            }
        return *this;
    }
    PolyMatrix& operator*=(const Rational& c) {
        for (auto& p : e_) {
            for (auto& x : p) x *= c;
            trim(p);
        }
        return *this;
    }
    friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
    friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) { return a += b * Rational(-1); }
    friend PolyMatrix operator*(PolyMatrix a, const Rational& c) { return a *= c; }

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
        a.check(b);
        PolyMatrix m(a.n_);
        for (int i = 0; i < a.n_; ++i)
            for (int l = 0; l < a.n_; ++l) {
                const Poly& x = a.at(i, l);
                if (x.empty()) continue;
                for (int j = 0; j < a.n_; ++j) {
                    const Poly& y = b.at(l, j);
                    for (std::size_t p = 0; p < x.size(); ++p)
                        for (std::size_t q = 0; q < y.size(); ++q)
                            m.add(i, j, static_cast<int>(p + q), x[p] * y[q]);
                }
            }
        return m;
    }

    /// Shifts every entry by h^k.
    PolyMatrix times_h(int k) const {
        PolyMatrix m(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                const Poly& p = at(i, j);
                for (std::size_t q = 0; q < p.size(); ++q) m.add(i, j, static_cast<int>(q) + k, p[q]);
            }
        return m;
    }

    /// Lowest power of h with a nonzero entry, or -1 for the zero matrix.
    int valuation() const {
        int v = -1;
        for (const auto& p : e_)
            for (std::size_t k = 0; k < p.size(); ++k)
                if (sgn(p[k]) != 0) {
                    if (v < 0 || static_cast<int>(k) < v) v = static_cast<int>(k);
                    break;
                }
        return v;
    }

    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) { return a.n_ == b.n_ && a.e_ == b.e_; }

private:
    std::size_t index(int i, int j) const {
        if (i < 0 || j < 0 || i >= n_ || j >= n_) throw Error("matrix index out of range");
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
    }
    void check(const PolyMatrix& o) const {
        if (o.n_ != n_) throw Error("matrix sizes differ: " + std::to_string(n_) + " vs " + std::to_string(o.n_));
    }

    int n_ = 0;
    std::vector<Poly> e_;
};

inline PolyMatrix kron(const PolyMatrix& a, const PolyMatrix& b) {
    const int n = a.size(), m = b.size();
    PolyMatrix r(n * m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Poly& x = a.at(i, j);
            if (x.empty()) continue;
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    const Poly& y = b.at(k, l);
                    for (std::size_t p = 0; p < x.size(); ++p)
                        for (std::size_t q = 0; q < y.size(); ++q)
                            r.add(i * m + k, j * m + l, static_cast<int>(p + q), x[p] * y[q]);
                }
        }
    return r;
}

inline CheckReport matrix_report(std::string name, std::string subject, const PolyMatrix& residual) {
    return CheckReport{std::move(name), std::move(subject), residual.is_zero(), residual.valuation(), {}, {}, {}};
}

/// Swap of the two factors of C^d ⊗ C^d.
inline PolyMatrix swap_matrix(int d) {
    PolyMatrix p(d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) p.add(i * d + j, j * d + i, 0, Rational(1));
    return p;
}

/// Σ (-N)^k for a unipotent M = 1 + N.
inline PolyMatrix unipotent_inverse(const PolyMatrix& m) {
    const int n = m.size();
    PolyMatrix nil = m - PolyMatrix::identity(n);
    PolyMatrix term = PolyMatrix::identity(n), sum = term;
    for (int k = 1; k <= n; ++k) {
        term = term * nil * Rational(-1);
        if (term.is_zero()) return sum;
        sum += term;
    }
    throw NonNilpotentExponent("matrix is not unipotent");
}

/// Constant-matrix representation of an algebra. `weight_span` is the spread
/// of the grading eigenvalues on the module; a word of grading weight w acts
/// as zero once |w| exceeds it.
struct Rep {
    std::string name;
    AlgebraPtr algebra;
    int dim = 0;
    int weight_span = 0;
    std::vector<PolyMatrix> generators;

    PolyMatrix word(const Word& w) const {
        PolyMatrix m = PolyMatrix::identity(dim);
        for (std::size_t i = 0; i < w.size(); ++i) m = m * generators.at(static_cast<std::size_t>(letter_at(w, i)));
        return m;
    }

    PolyMatrix operator()(const HSeries& x) const {
        check(x.algebra_ptr());
        PolyMatrix m(dim);
        x.for_each_term([&](int k, const HSeries::Key& w, const Rational& c) { m += word(w[0]).times_h(k) * c; });
        return m;
    }

    PolyMatrix operator()(const TensorSeries2& x) const {
        check(x.algebra_ptr());
        PolyMatrix m(dim * dim);
        x.for_each_term([&](int k, const TensorSeries2::Key& w, const Rational& c) {
            m += kron(word(w[0]), word(w[1])).times_h(k) * c;
        });
        return m;
    }

    void check(const AlgebraPtr& a) const {
        if (a != algebra) throw AlgebraMismatch("rep " + name + " is for " + algebra->name() + ", got " + a->name());
    }
};

/// Every commutator of the algebra as a matrix identity, evaluated at an
/// order high enough for the represented series to terminate.
inline CheckReport check_rep(const Rep& rep) {
    const Algebra& A = *rep.algebra;
    const int K = rep.weight_span + 4;
    std::vector<CheckReport> parts;
    for (int i = 0; i < A.size(); ++i)
        for (int j = 0; j < i; ++j) {
            PolyMatrix lhs = rep(A.bracket(i, j, K));
            const auto& x = rep.generators[static_cast<std::size_t>(i)];
            const auto& y = rep.generators[static_cast<std::size_t>(j)];
            parts.push_back(matrix_report("rep relations",
                                          "[" + A.generator_name(i) + "," + A.generator_name(j) + "]",
                                          lhs - (x * y - y * x)));
        }
    return combine("rep relations", parts);
}

inline Rep fundamental_sl2(const AlgebraPtr& sl2h) {
    const Rational o(1), z(0);
    Rep r{"fund", sl2h, 2, 2, {}};
    r.generators = {PolyMatrix::constant({{z, o}, {z, z}}),   // J⁺
                    PolyMatrix::constant({{o, z}, {z, -o}}),  // J³
                    PolyMatrix::constant({{z, z}, {o, z}})};  // J⁻
    if (!check_rep(r).pass) throw Error("fundamental matrices violate the sl2h relations");
    return r;
}

/// 2⊗2 module of the two copies, J = X₁ + X₂, N = X₁ − X₂.
inline Rep rep_so4_from_pair(const AlgebraPtr& so4h) {
    Rep fund = fundamental_sl2(registry().sl2h());
    PolyMatrix one = PolyMatrix::identity(2);
    Rep r{"so4pair", so4h, 4, 4, {}};
    for (int level : {0, 1, 2}) {
        PolyMatrix x1 = kron(fund.generators[static_cast<std::size_t>(level)], one);
        PolyMatrix x2 = kron(one, fund.generators[static_cast<std::size_t>(level)]);
        r.generators.push_back(x1 + x2);
        r.generators.push_back(x1 - x2);
    }
    if (!check_rep(r).pass) throw Error("pair matrices violate the so4h relations");
    return r;
}

/// exp of a nilpotent matrix, exactly.
inline PolyMatrix nilpotent_exp(const PolyMatrix& x) {
    const int n = x.size();
    PolyMatrix term = PolyMatrix::identity(n), sum = term;
    for (int k = 1; k <= n; ++k) {
        term = term * x * Rational(1, k);
        if (term.is_zero()) return sum;
        sum += term;
    }
    throw NonNilpotentExponent("represented exponent is not nilpotent");
}

/// Image of R = exp(E) as an exact matrix over Q[h]. The exponent has grading
/// weight 0, so its h^k part has letter weight 2k and vanishes in the rep once
/// 2k exceeds twice the module span; K must reach that bound.
inline PolyMatrix evaluate_R(const RMatrix& m, const Rep& rep) {
    if (m.order < rep.weight_span)
        throw Error("order " + std::to_string(m.order) + " is below the exactness bound " +
                    std::to_string(rep.weight_span) + " for rep " + rep.name);
    PolyMatrix e = rep(m.exponent);
    return nilpotent_exp(e);
}

/// R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂ for a d²×d² matrix.
inline CheckReport matrix_qybe(const PolyMatrix& rm, int d) {
    PolyMatrix one = PolyMatrix::identity(d);
    PolyMatrix r12 = kron(rm, one), r23 = kron(one, rm);
    PolyMatrix p23 = kron(one, swap_matrix(d));
    PolyMatrix r13 = p23 * r12 * p23;
    return matrix_report("matrix qybe", "R12 R13 R23 = R23 R13 R12", r12 * r13 * r23 - r23 * r13 * r12);
}

/// P·R⁻¹·P = R with the exact unipotent inverse.
inline CheckReport matrix_triangular(const PolyMatrix& rm, int d) {
    PolyMatrix p = swap_matrix(d);
    return matrix_report("matrix triangular", "P R^-1 P = R", p * unipotent_inverse(rm) * p - rm);
}

/// (ρ⊗ρ)(Δ′g) = Rm·(ρ⊗ρ)(Δg)·Rm⁻¹ for every generator.
inline CheckReport matrix_intertwiner(const PolyMatrix& rm, const Rep& rep) {
    const Algebra& A = *rep.algebra;
    const int K = rep.weight_span + 2;
    PolyMatrix inv = unipotent_inverse(rm);
    std::vector<CheckReport> parts;
    for (int g = 0; g < A.size(); ++g) {
        TensorSeries2 d = A.coproduct(g, K);
        parts.push_back(matrix_report("matrix intertwiner", A.generator_name(g), rm * rep(d) * inv - rep(flip(d))));
    }
    return combine("matrix intertwiner", parts);
}

} // namespace jordan
