#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace jordan {

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// A monomial: one char per letter, holding the generator's PBW position.
/// The empty word is the identity.
using Word = std::string;

inline Word letter(int generator) { return Word(1, static_cast<char>(generator)); }

inline int letter_at(const Word& w, std::size_t i) {
    return static_cast<unsigned char>(w[i]);
}

/// Degree first, then lexicographic in PBW positions.
struct WordLess {
    bool operator()(const Word& a, const Word& b) const noexcept {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

template <std::size_t N>
struct KeyLess {
    bool operator()(const std::array<Word, N>& a, const std::array<Word, N>& b) const noexcept {
        WordLess less;
        for (std::size_t s = 0; s < N; ++s) {
            if (less(a[s], b[s])) return true;
            if (less(b[s], a[s])) return false;
        }
        return false;
    }
};

/// Truncated power series in the deformation parameter h whose coefficients
/// are finite sums of N-fold tensor words over one algebra. Series<1> is an
/// algebra element, Series<2>/<3> live in the tensor square/cube.
///
/// Terms beyond h^order are never stored. Values returned by the algebra and
/// tensor operations are in PBW normal form in every slot; add() itself does
/// not normal-order, so callers inserting arbitrary words must pass the result
/// through Algebra::normal_order.
template <std::size_t N>
class Series {
public:
    static_assert(N >= 1 && N <= 3, "tensor powers above three are not supported");

    using Key = std::array<Word, N>;
    using Terms = std::map<Key, Rational, KeyLess<N>>;

    Series() = default;
    Series(AlgebraPtr algebra, int order) : algebra_(std::move(algebra)), order_(order) {
        if (order < 0) throw Error("negative truncation order");
        coeffs_.resize(static_cast<std::size_t>(order) + 1);
    }

    static Series one(AlgebraPtr algebra, int order) {
        Series s(std::move(algebra), order);
        s.add(0, Key{}, Rational(1));
        return s;
    }

    const AlgebraPtr& algebra_ptr() const noexcept { return algebra_; }
    const Algebra& algebra() const { return *algebra_; }
    int order() const noexcept { return order_; }

    const Terms& at(int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }

    /// Adds c·h^k·key; silently drops k > order.
    void add(int k, const Key& key, const Rational& c) {
        if (k > order_ || sgn(c) == 0) return;
        if (k < 0) throw Error("negative h-exponent");
        auto& terms = coeffs_[static_cast<std::size_t>(k)];
        auto [it, inserted] = terms.try_emplace(key, c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) terms.erase(it);
        }
    }

    bool is_zero() const noexcept {
        for (const auto& t : coeffs_)
            if (!t.empty()) return false;
        return true;
    }

    /// Lowest h-exponent with a nonzero coefficient, or -1 for zero.
    int valuation() const noexcept {
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            if (!coeffs_[k].empty()) return static_cast<int>(k);
        return -1;
    }

    std::size_t term_count() const noexcept {
        std::size_t n = 0;
        for (const auto& t : coeffs_) n += t.size();
        return n;
    }

    Series truncated(int order) const {
        if (order > order_)
            throw Error("cannot raise truncation order from " + std::to_string(order_) + " to " +
                        std::to_string(order));
        Series r(algebra_, order);
        for (int k = 0; k <= order; ++k) r.coeffs_[k] = coeffs_[k];
        return r;
    }

    /// Multiplies by h^s. A negative s requires the dropped orders to vanish.
    Series shifted(int s) const {
        if (s < 0) {
            for (int k = 0; k < -s && k <= order_; ++k)
                if (!coeffs_[k].empty()) throw Error("division by h of a series with low-order terms");
        }
        Series r(algebra_, order_);
        for (int k = 0; k <= order_; ++k) {
            int t = k + s;
            if (t >= 0 && t <= order_) r.coeffs_[t] = coeffs_[k];
        }
        return r;
    }

    /// Same terms, truncation order lowered by one per unit of negative shift.
    /// Used to divide by h without inventing unknown top-order terms.
    Series divided_by_h(int times = 1) const {
        Series r = shifted(-times);
        return r.truncated(order_ - times);
    }

    void check_compatible(const Series& other) const {
        if (algebra_ != other.algebra_) throw AlgebraMismatch("series belong to different algebras");
        if (order_ != other.order_) throw OrderMismatch(order_, other.order_);
    }

    Series& operator+=(const Series& other) {
        check_compatible(other);
        for (int k = 0; k <= order_; ++k)
            for (const auto& [key, c] : other.coeffs_[k]) add(k, key, c);
        return *this;
    }
    Series& operator-=(const Series& other) {
        check_compatible(other);
        for (int k = 0; k <= order_; ++k)
            for (const auto& [key, c] : other.coeffs_[k]) add(k, key, -c);
        return *this;
    }
    Series& operator*=(const Rational& c) {
        if (sgn(c) == 0) {
            for (auto& t : coeffs_) t.clear();
            return *this;
        }
        for (auto& t : coeffs_)
            for (auto& [key, v] : t) v *= c;
        return *this;
    }

    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator*(Series a, const Rational& c) { return a *= c; }
    friend Series operator*(const Rational& c, Series a) { return a *= c; }
    friend Series operator-(Series a) { return a *= Rational(-1); }

    /// Exact coefficient-wise equality; the orders must agree.
    friend bool operator==(const Series& a, const Series& b) {
        a.check_compatible(b);
        return a.coeffs_ == b.coeffs_;
    }

    template <class Fn>
    void for_each_term(Fn&& fn, int max_order) const {
        for (int k = 0; k <= std::min(max_order, order_); ++k)
            for (const auto& [key, c] : coeffs_[k]) fn(k, key, c);
    }
    template <class Fn>
    void for_each_term(Fn&& fn) const {
        for_each_term(std::forward<Fn>(fn), order_);
    }

private:
    AlgebraPtr algebra_;
    int order_ = 0;
    std::vector<Terms> coeffs_;
};

using HSeries = Series<1>;
using TensorSeries2 = Series<2>;
using TensorSeries3 = Series<3>;

} // namespace jordan
