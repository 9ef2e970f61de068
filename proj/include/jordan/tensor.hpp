#pragma once

#include <map>
#include <string>
#include <utility>

#include "algebra.hpp"

namespace jordan {

enum class Legs { L12, L13, L23 };
enum class Side { Left, Right };

/// a ⊗ b, truncated at the common order.
inline TensorSeries2 outer(const HSeries& a, const HSeries& b) {
    a.check_compatible(b);
    const int K = a.order();
    TensorSeries2 out(a.algebra_ptr(), K);
    a.for_each_term([&](int ka, const HSeries::Key& wa, const Rational& ca) {
        b.for_each_term([&](int kb, const HSeries::Key& wb, const Rational& cb) {
            out.add(ka + kb, {wa[0], wb[0]}, ca * cb);
        }, K - ka);
    });
    return out;
}

inline TensorSeries3 outer(const TensorSeries2& a, const HSeries& b) {
    if (a.algebra_ptr() != b.algebra_ptr()) throw AlgebraMismatch("series belong to different algebras");
    if (a.order() != b.order()) throw OrderMismatch(a.order(), b.order());
    const int K = a.order();
    TensorSeries3 out(a.algebra_ptr(), K);
    a.for_each_term([&](int ka, const TensorSeries2::Key& wa, const Rational& ca) {
        b.for_each_term([&](int kb, const HSeries::Key& wb, const Rational& cb) {
            out.add(ka + kb, {wa[0], wa[1], wb[0]}, ca * cb);
        }, K - ka);
    });
    return out;
}

/// σ(a ⊗ b) = b ⊗ a.
inline TensorSeries2 flip(const TensorSeries2& t) {
    TensorSeries2 out(t.algebra_ptr(), t.order());
    t.for_each_term([&](int k, const TensorSeries2::Key& w, const Rational& c) { out.add(k, {w[1], w[0]}, c); });
    return out;
}

/// Leg embedding into the tensor cube: R12 = R⊗1, R13, R23 = 1⊗R.
inline TensorSeries3 embed(const TensorSeries2& t, Legs legs) {
    TensorSeries3 out(t.algebra_ptr(), t.order());
    t.for_each_term([&](int k, const TensorSeries2::Key& w, const Rational& c) {
        switch (legs) {
        case Legs::L12: out.add(k, {w[0], w[1], Word{}}, c); break;
        case Legs::L13: out.add(k, {w[0], Word{}, w[1]}, c); break;
        case Legs::L23: out.add(k, {Word{}, w[0], w[1]}, c); break;
        }
    });
    return out;
}

/// Coproduct extended multiplicatively to arbitrary words, memoized per call
/// site. Holds a reference to the algebra for its lifetime.
class CoproductMap {
public:
    explicit CoproductMap(const Algebra& A) : A_(A) {}

    const TensorSeries2& word(const Word& w, int K) {
        auto key = std::make_pair(K, w);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        TensorSeries2 value = w.empty() ? TensorSeries2::one(A_.ptr(), K)
                            : w.size() == 1 ? A_.coproduct(letter_at(w, 0), K)
                                            : A_.coproduct(letter_at(w, 0), K) * word(w.substr(1), K);
        return memo_.emplace(key, std::move(value)).first->second;
    }

    TensorSeries2 operator()(const HSeries& x) {
        const int K = x.order();
        TensorSeries2 out(x.algebra_ptr(), K);
        x.for_each_term([&](int k, const HSeries::Key& w, const Rational& c) {
            word(w[0], K - k).for_each_term([&](int k2, const TensorSeries2::Key& t, const Rational& c2) {
                out.add(k + k2, t, c * c2);
            });
        });
        return out;
    }

    /// (Δ⊗id) for Side::Left, (id⊗Δ) for Side::Right.
    TensorSeries3 extend(Side side, const TensorSeries2& x) {
        const int K = x.order();
        TensorSeries3 out(x.algebra_ptr(), K);
        x.for_each_term([&](int k, const TensorSeries2::Key& w, const Rational& c) {
            const Word& split = side == Side::Left ? w[0] : w[1];
            word(split, K - k).for_each_term([&](int k2, const TensorSeries2::Key& t, const Rational& c2) {
                if (side == Side::Left)
                    out.add(k + k2, {t[0], t[1], w[1]}, c * c2);
                else
                    out.add(k + k2, {w[0], t[0], t[1]}, c * c2);
            });
        });
        return out;
    }

private:
    const Algebra& A_;
    std::map<std::pair<int, Word>, TensorSeries2> memo_;
};

inline TensorSeries2 apply_coproduct(const HSeries& x) { return CoproductMap(x.algebra())(x); }

inline TensorSeries3 extend_delta(Side side, const TensorSeries2& x) {
    return CoproductMap(x.algebra()).extend(side, x);
}

/// Δ′ = σ∘Δ.
inline TensorSeries2 apply_opposite_coproduct(const HSeries& x) { return flip(apply_coproduct(x)); }

inline Rational counit_of_word(const Algebra& A, const Word& w) {
    Rational r = 1;
    for (std::size_t i = 0; i < w.size(); ++i) r *= A.counit(letter_at(w, i));
    return r;
}

/// (ε⊗id) for Side::Left, (id⊗ε) for Side::Right.
inline HSeries apply_counit(Side side, const TensorSeries2& t) {
    const Algebra& A = t.algebra();
    HSeries out(t.algebra_ptr(), t.order());
    t.for_each_term([&](int k, const TensorSeries2::Key& w, const Rational& c) {
        const Word& gone = side == Side::Left ? w[0] : w[1];
        const Word& kept = side == Side::Left ? w[1] : w[0];
        Rational e = counit_of_word(A, gone);
        if (sgn(e) != 0) out.add(k, {kept}, c * e);
    });
    return out;
}

/// Antipode extended as an anti-homomorphism, memoized per instance.
class AntipodeMap {
public:
    explicit AntipodeMap(const Algebra& A) : A_(A) {}

    const HSeries& word(const Word& w, int K) {
        auto key = std::make_pair(K, w);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        HSeries value = w.empty() ? A_.one(K)
                      : w.size() == 1 ? A_.antipode(letter_at(w, 0), K)
                                      : word(w.substr(1), K) * A_.antipode(letter_at(w, 0), K);
        return memo_.emplace(key, std::move(value)).first->second;
    }

    HSeries operator()(const HSeries& x) {
        const int K = x.order();
        HSeries out(x.algebra_ptr(), K);
        x.for_each_term([&](int k, const HSeries::Key& w, const Rational& c) {
            word(w[0], K - k).for_each_term([&](int k2, const HSeries::Key& t, const Rational& c2) {
                out.add(k + k2, t, c * c2);
            });
        });
        return out;
    }

private:
    const Algebra& A_;
    std::map<std::pair<int, Word>, HSeries> memo_;
};

/// m∘(γ⊗id) for Side::Left, m∘(id⊗γ) for Side::Right.
inline HSeries multiply_with_antipode(Side side, const TensorSeries2& t) {
    const Algebra& A = t.algebra();
    AntipodeMap gamma(A);
    const int K = t.order();
    HSeries out(t.algebra_ptr(), K);
    t.for_each_term([&](int k, const TensorSeries2::Key& w, const Rational& c) {
        const int rem = K - k;
        HSeries a = side == Side::Left ? gamma.word(w[0], rem) : A.normal_word(w[0], rem);
        HSeries b = side == Side::Left ? A.normal_word(w[1], rem) : gamma.word(w[1], rem);
        (a * b).for_each_term([&](int k2, const HSeries::Key& x, const Rational& c2) { out.add(k + k2, x, c * c2); });
    });
    return out;
}

} // namespace jordan
