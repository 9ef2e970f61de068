#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"

namespace jordan {

/// A power series f(x) = Σ f_k x^k with exact rational coefficients, produced
/// on demand and cached. Copies share the cache.
class AnalyticFn {
public:
    using Rule = std::function<Rational(int)>;

    AnalyticFn(std::string name, Rule rule)
        : state_(std::make_shared<State>()) {
        state_->name = std::move(name);
        state_->rule = std::move(rule);
    }

    const std::string& name() const noexcept { return state_->name; }

    Rational coefficient(int k) const {
        if (k < 0) return Rational(0);
        std::lock_guard lock(state_->mutex);
        auto& cache = state_->cache;
        while (static_cast<int>(cache.size()) <= k) cache.push_back(state_->rule(static_cast<int>(cache.size())));
        return cache[static_cast<std::size_t>(k)];
    }

    static AnalyticFn exp() {
        return AnalyticFn("exp", [](int k) { return factorial_inverse(k); });
    }
    static AnalyticFn sinh() {
        return AnalyticFn("sinh", [](int k) { return k % 2 ? factorial_inverse(k) : Rational(0); });
    }
    static AnalyticFn cosh() {
        return AnalyticFn("cosh", [](int k) { return k % 2 ? Rational(0) : factorial_inverse(k); });
    }
    /// sinh(x)/x = Σ x^{2k}/(2k+1)!
    static AnalyticFn sinhc() {
        return AnalyticFn("sinh(x)/x", [](int k) { return k % 2 ? Rational(0) : factorial_inverse(k + 1); });
    }
    /// x/sinh(x), obtained by inverting sinh(x)/x term by term.
    static AnalyticFn x_over_sinh() { return reciprocal(sinhc(), "x/sinh(x)"); }

    /// 1/f; requires f_0 != 0.
    static AnalyticFn reciprocal(const AnalyticFn& f, std::string name) {
        if (sgn(f.coefficient(0)) == 0) throw Error("reciprocal of a series without constant term");
        auto memo = std::make_shared<std::vector<Rational>>();
        return AnalyticFn(std::move(name), [f, memo](int n) {
            // called with n = 0, 1, 2, ... in sequence through the cache
            Rational a0 = f.coefficient(0);
            Rational c = n == 0 ? Rational(1) : Rational(0);
            for (int j = 1; j <= n; ++j) c -= f.coefficient(j) * (*memo)[static_cast<std::size_t>(n - j)];
            c /= a0;
            memo->push_back(c);
            return c;
        });
    }

    static AnalyticFn derivative(const AnalyticFn& f) {
        return AnalyticFn(f.name() + "'", [f](int k) -> Rational { return Rational(k + 1) * f.coefficient(k + 1); });
    }

    /// Largest |n| <= order at which (f·g)_n differs from the unit series, or -1.
    static int product_defect(const AnalyticFn& f, const AnalyticFn& g, int order) {
        for (int n = 0; n <= order; ++n) {
            Rational s = 0;
            for (int j = 0; j <= n; ++j) s += f.coefficient(j) * g.coefficient(n - j);
            if (s != (n == 0 ? Rational(1) : Rational(0))) return n;
        }
        return -1;
    }

private:
    struct State {
        std::string name;
        Rule rule;
        std::vector<Rational> cache;
        std::mutex mutex;
    };
    std::shared_ptr<State> state_;
};

/// Σ f_k x^k truncated at the order of x. Requires x = O(h).
template <std::size_t N>
Series<N> analytic_apply(const AnalyticFn& f, const Series<N>& x) {
    if (!x.at(0).empty())
        throw NonNilpotentArgument(f.name() + " applied to a series with nonzero h^0 part");
    Series<N> one = Series<N>::one(x.algebra_ptr(), x.order());
    Series<N> result = one * f.coefficient(0);
    Series<N> p = one;
    for (int k = 1; k <= x.order(); ++k) {
        p = p * x;
        if (p.is_zero()) break;
        result += p * f.coefficient(k);
    }
    return result;
}

template <std::size_t N>
Series<N> series_exp(const Series<N>& x) {
    return analytic_apply(AnalyticFn::exp(), x);
}

namespace detail {

using Exponents = std::vector<int>;

struct GradedLexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const {
        int da = 0, db = 0;
        for (int e : a) da += e;
        for (int e : b) db += e;
        if (da != db) return da > db;
        return a > b;
    }
};

// Commutative polynomial, leading term first.
using CPoly = std::map<Exponents, Rational, GradedLexGreater>;

inline Exponents exponents_of(const Word& w, int n) {
    Exponents e(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < w.size(); ++i) ++e[static_cast<std::size_t>(letter_at(w, i))];
    return e;
}

inline Word word_of(const Exponents& e) {
    Word w;
    for (std::size_t g = 0; g < e.size(); ++g) w.append(static_cast<std::size_t>(e[g]), static_cast<char>(g));
    return w;
}

inline void add_to(CPoly& p, const Exponents& e, const Rational& c) {
    auto [it, inserted] = p.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) p.erase(it);
    }
}

inline CPoly cmul(const CPoly& a, const CPoly& b) {
    CPoly r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            Exponents e = ea;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            add_to(r, e, ca * cb);
        }
    return r;
}

inline CPoly cdiv_exact(CPoly r, const CPoly& d, int h_order) {
    const auto& [lead_e, lead_c] = *d.begin();
    CPoly q;
    while (!r.empty()) {
        const auto [re, rc] = *r.begin();
        Exponents e = re;
        for (std::size_t i = 0; i < e.size(); ++i) {
            e[i] -= lead_e[i];
            if (e[i] < 0)
                throw NotDivisible("nonzero remainder at h^" + std::to_string(h_order));
        }
        Rational c = rc / lead_c;
        add_to(q, e, c);
        for (const auto& [de, dc] : d) {
            Exponents t = de;
            for (std::size_t i = 0; i < t.size(); ++i) t[i] += e[i];
            add_to(r, t, -c * dc);
        }
    }
    return q;
}

} // namespace detail

/// Exact quotient num/den inside a commutative subring, order by order in h.
/// The result has truncation order num.order() - valuation(den).
inline HSeries series_div_exact(const HSeries& num, const HSeries& den) {
    num.check_compatible(den);
    const Algebra& A = num.algebra();
    const int K = num.order();
    const int d = den.valuation();
    if (d < 0) throw NotDivisible("division by the zero series");

    std::set<int> letters;
    auto collect = [&](int, const HSeries::Key& w, const Rational&) {
        for (std::size_t i = 0; i < w[0].size(); ++i) letters.insert(letter_at(w[0], i));
    };
    num.for_each_term(collect);
    den.for_each_term(collect);
    for (int a : letters)
        for (int b : letters)
            if (a < b && !A.commutes(a, b, K))
                throw NonCommutativeInput("generators " + A.generator_name(a) + " and " + A.generator_name(b) +
                                          " do not commute");

    const int n = A.size();
    auto to_cpoly = [&](const HSeries::Terms& t) {
        detail::CPoly p;
        for (const auto& [w, c] : t) detail::add_to(p, detail::exponents_of(w[0], n), c);
        return p;
    };
    for (int k = 0; k < d; ++k)
        if (!num.at(k).empty()) throw NotDivisible("numerator has terms below the denominator's h-order");

    const int out_order = K - d;
    std::vector<detail::CPoly> dens, quot;
    for (int k = d; k <= K; ++k) dens.push_back(to_cpoly(den.at(k)));
    for (int k = 0; k <= out_order; ++k) {
        detail::CPoly r = to_cpoly(num.at(k + d));
        for (int j = 1; j <= k; ++j)
            for (const auto& [e, c] : detail::cmul(quot[static_cast<std::size_t>(k - j)], dens[static_cast<std::size_t>(j)]))
                detail::add_to(r, e, -c);
        quot.push_back(detail::cdiv_exact(std::move(r), dens[0], k + d));
    }
    HSeries out(num.algebra_ptr(), out_order);
    for (int k = 0; k <= out_order; ++k)
        for (const auto& [e, c] : quot[static_cast<std::size_t>(k)]) out.add(k, {detail::word_of(e)}, c);
    return out;
}

} // namespace jordan
