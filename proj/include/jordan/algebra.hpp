#pragma once

#include <algorithm>
#include <climits>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"
#include "series.hpp"

namespace jordan {

/// Rewrite-order choices for PBW normal ordering. Memoized is the default
/// engine (leftmost descent, recursive, cached per word); Leftmost and
/// Rightmost rewrite a work list directly and exist for confluence checks.
enum class Strategy { Memoized, Leftmost, Rightmost };

inline constexpr std::size_t kDefaultFuel = 1'000'000;

/// Declarative description of a Hopf algebra. Rules take the owning algebra
/// so they may use its normal-ordered arithmetic, and the truncation order.
struct AlgebraDef {
    using ElementRule = std::function<HSeries(const Algebra&, int)>;
    using CoproductRule = std::function<TensorSeries2(const Algebra&, int)>;

    std::string name;
    std::string description;
    std::string parameter = "h";
    std::vector<std::string> generators; // PBW order
    std::vector<int> weights;            // J3-grading; h carries weight -2

    /// Key (i, j) with i > j holds [g_i, g_j]; absent pairs commute.
    std::map<std::pair<int, int>, ElementRule> brackets;
    std::vector<CoproductRule> coproducts;
    std::vector<Rational> counits;
    std::vector<ElementRule> antipodes;

    int index(std::string_view g) const {
        for (std::size_t i = 0; i < generators.size(); ++i)
            if (generators[i] == g) return static_cast<int>(i);
        throw UnknownGenerator(std::string(g));
    }

    /// Stores [a, b] = rule, flipping orientation when a precedes b.
    void set_bracket(std::string_view a, std::string_view b, ElementRule rule) {
        int i = index(a), j = index(b);
        if (i == j) throw Error("bracket of a generator with itself");
        if (i > j) {
            brackets[{i, j}] = std::move(rule);
        } else {
            brackets[{j, i}] = [rule = std::move(rule)](const Algebra& A, int K) { return -rule(A, K); };
        }
    }
};

/// One term of a flattened normal form: coeff · h^k · word.
struct FlatTerm {
    int k;
    Word word;
    Rational coeff;
};
using FlatTerms = std::vector<FlatTerm>; // sorted by k
using FlatPtr = std::shared_ptr<const FlatTerms>;

/// An immutable algebra with memoized PBW normal ordering. Caches are guarded
/// by a recursive mutex and are invisible to callers.
class Algebra : public std::enable_shared_from_this<Algebra> {
public:
    static AlgebraPtr create(AlgebraDef def) {
        auto n = def.generators.size();
        if (n == 0 || n > 64) throw Error("algebra '" + def.name + "' needs 1..64 generators");
        if (def.coproducts.size() != n || def.counits.size() != n || def.antipodes.size() != n)
            throw Error("algebra '" + def.name + "' has incomplete Hopf tables");
        if (def.weights.empty()) def.weights.assign(n, 0);
        return AlgebraPtr(new Algebra(std::move(def)));
    }

    const AlgebraDef& def() const noexcept { return def_; }
    const std::string& name() const noexcept { return def_.name; }
    int size() const noexcept { return static_cast<int>(def_.generators.size()); }
    int index(std::string_view g) const { return def_.index(g); }
    const std::string& generator_name(int i) const { return def_.generators.at(static_cast<std::size_t>(i)); }
    AlgebraPtr ptr() const { return shared_from_this(); }

    void set_fuel(std::size_t fuel) const { fuel_ = fuel; }
    std::size_t fuel() const noexcept { return fuel_; }

    HSeries zero(int K) const { return HSeries(ptr(), K); }
    HSeries one(int K) const { return HSeries::one(ptr(), K); }
    HSeries scalar(const Rational& c, int K) const {
        HSeries s(ptr(), K);
        s.add(0, {Word{}}, c);
        return s;
    }
    HSeries generator(int i, int K) const {
        check_index(i);
        HSeries s(ptr(), K);
        s.add(0, {letter(i)}, Rational(1));
        return s;
    }
    HSeries generator(std::string_view g, int K) const { return generator(index(g), K); }

    /// Normal-ordered [g_i, g_j] for any i, j.
    HSeries bracket(int i, int j, int K) const {
        check_index(i);
        check_index(j);
        HSeries s(ptr(), K);
        if (i == j) return s;
        auto flat = bracket_flat(std::max(i, j), std::min(i, j), K);
        Rational sign = i > j ? 1 : -1;
        for (const auto& t : *flat) {
            if (t.k > K) break;
            s.add(t.k, {t.word}, sign * t.coeff);
        }
        return s;
    }

    bool commutes(int i, int j, int K) const { return bracket(i, j, K).is_zero(); }

    bool is_ordered(const Word& w) const noexcept {
        for (std::size_t i = 1; i < w.size(); ++i)
            if (w[i - 1] > w[i]) return false;
        return true;
    }

    /// Normal form of a single word, truncated at h^K; terms sorted by k.
    FlatPtr normal_flat(const Word& w, int K) const {
        std::lock_guard lock(mutex_);
        if (depth_ == 0) steps_ = 0;
        ++depth_;
        struct Guard {
            int& d;
            ~Guard() { --d; }
        } guard{depth_};
        return normal_flat_locked(w, K);
    }

    HSeries normal_word(const Word& w, int K) const {
        HSeries s(ptr(), K);
        for (auto held = normal_flat(w, K); const auto& t : *held) {
            if (t.k > K) break;
            s.add(t.k, {t.word}, t.coeff);
        }
        return s;
    }

    /// Normal-orders every slot of an arbitrary series.
    template <std::size_t N>
    Series<N> normal_order(const Series<N>& raw, Strategy strategy = Strategy::Memoized) const {
        if (raw.algebra_ptr().get() != this) throw AlgebraMismatch("series belongs to another algebra");
        const int K = raw.order();
        Series<N> out(ptr(), K);
        if constexpr (N == 1) {
            if (strategy != Strategy::Memoized) return rewrite_direct(raw, strategy);
        } else {
            if (strategy != Strategy::Memoized) throw Error("direct strategies are defined for single-slot series");
        }
        raw.for_each_term([&](int k, const typename Series<N>::Key& key, const Rational& c) {
            std::array<FlatPtr, N> parts;
            for (std::size_t s = 0; s < N; ++s) parts[s] = normal_flat(key[s], K - k);
            accumulate_outer<N>(out, parts, k, c, K);
        });
        return out;
    }

    TensorSeries2 coproduct(int i, int K) const {
        check_index(i);
        std::lock_guard lock(mutex_);
        auto it = coproduct_cache_.find(i);
        if (it != coproduct_cache_.end() && it->second.order() >= K) return it->second.truncated(K);
        auto raw = def_.coproducts[static_cast<std::size_t>(i)](*this, K);
        auto value = normal_order(raw);
        coproduct_cache_.insert_or_assign(i, value);
        return value;
    }

    HSeries antipode(int i, int K) const {
        check_index(i);
        std::lock_guard lock(mutex_);
        auto it = antipode_cache_.find(i);
        if (it != antipode_cache_.end() && it->second.order() >= K) return it->second.truncated(K);
        auto value = normal_order(def_.antipodes[static_cast<std::size_t>(i)](*this, K));
        antipode_cache_.insert_or_assign(i, value);
        return value;
    }

    const Rational& counit(int i) const {
        check_index(i);
        return def_.counits[static_cast<std::size_t>(i)];
    }

    /// Adds c·h^k·(parts[0] ⊗ … ⊗ parts[N-1]) into out, dropping orders above K.
    template <std::size_t N>
    static void accumulate_outer(Series<N>& out, const std::array<FlatPtr, N>& parts, int k,
                                 const Rational& c, int K) {
        typename Series<N>::Key key;
        outer_step<N, 0>(out, parts, key, k, c, K);
    }

private:
    explicit Algebra(AlgebraDef def) : def_(std::move(def)) {}

    void check_index(int i) const {
        if (i < 0 || i >= size()) throw UnknownGenerator("#" + std::to_string(i));
    }

    template <std::size_t N, std::size_t S>
    static void outer_step(Series<N>& out, const std::array<FlatPtr, N>& parts,
                           typename Series<N>::Key& key, int k, const Rational& c, int K) {
        if constexpr (S == N) {
            out.add(k, key, c);
        } else {
            for (const auto& t : *parts[S]) {
                if (k + t.k > K) break;
                key[S] = t.word;
                outer_step<N, S + 1>(out, parts, key, k + t.k, c * t.coeff, K);
            }
        }
    }

    struct CacheEntry {
        int order;
        FlatPtr terms;
    };

    static FlatPtr flatten(const std::map<std::pair<int, Word>, Rational>& acc) {
        auto v = std::make_shared<FlatTerms>();
        v->reserve(acc.size());
        for (const auto& [kw, c] : acc)
            if (sgn(c) != 0) v->push_back({kw.first, kw.second, c});
        return v;
    }

    FlatPtr normal_flat_locked(const Word& w, int K) const {
        if (is_ordered(w)) {
            auto v = std::make_shared<FlatTerms>();
            v->push_back({0, w, Rational(1)});
            return v;
        }
        auto it = nf_cache_.find(w);
        if (it != nf_cache_.end() && it->second.order >= K) return it->second.terms;
        if (in_progress_.count(w))
            throw FuelExhausted("cyclic rewriting of a word in algebra '" + name() + "'");
        if (++steps_ > fuel_) throw FuelExhausted("rewrite budget exhausted in algebra '" + name() + "'");
        in_progress_.insert(w);
        struct Release {
            std::set<Word>& s;
            const Word& w;
            ~Release() { s.erase(w); }
        } release{in_progress_, w};

        std::size_t i = 0;
        while (w[i] <= w[i + 1]) ++i;
        const int x = letter_at(w, i), y = letter_at(w, i + 1);
        const Word prefix = w.substr(0, i), suffix = w.substr(i + 2);

        std::map<std::pair<int, Word>, Rational> acc;
        Word swapped = prefix;
        swapped.push_back(w[i + 1]);
        swapped.push_back(w[i]);
        swapped += suffix;
        for (auto held = normal_flat_locked(swapped, K); const auto& t : *held) {
            if (t.k > K) break;
            acc[{t.k, t.word}] += t.coeff;
        }
        auto corr = bracket_flat_locked(x, y, K);
        for (const auto& b : *corr) {
            if (b.k > K) break;
            for (auto held = normal_flat_locked(prefix + b.word + suffix, K - b.k); const auto& t : *held) {
                if (b.k + t.k > K) break;
                acc[{b.k + t.k, t.word}] += b.coeff * t.coeff;
            }
        }
        auto result = flatten(acc);
        nf_cache_.insert_or_assign(w, CacheEntry{K, result});
        return result;
    }

    FlatPtr bracket_flat(int i, int j, int K) const {
        std::lock_guard lock(mutex_);
        if (depth_ == 0) steps_ = 0;
        ++depth_;
        struct Guard {
            int& d;
            ~Guard() { --d; }
        } guard{depth_};
        return bracket_flat_locked(i, j, K);
    }

    // [g_i, g_j] with i > j, normal-ordered.
    FlatPtr bracket_flat_locked(int i, int j, int K) const {
        auto key = std::make_pair(i, j);
        auto it = bracket_cache_.find(key);
        if (it != bracket_cache_.end() && it->second.order >= K) return it->second.terms;
        auto rule = def_.brackets.find(key);
        if (rule == def_.brackets.end()) {
            auto empty = std::make_shared<FlatTerms>();
            bracket_cache_.insert_or_assign(key, CacheEntry{INT_MAX, empty});
            return empty;
        }
        if (bracket_in_progress_.count(key))
            throw FuelExhausted("cyclic commutator table in algebra '" + name() + "'");
        bracket_in_progress_.insert(key);
        struct Release {
            std::set<std::pair<int, int>>& s;
            std::pair<int, int> k;
            ~Release() { s.erase(k); }
        } release{bracket_in_progress_, key};

        HSeries raw = rule->second(*this, K);
        if (raw.order() < K) throw Error("commutator rule returned a lower order than requested");
        std::map<std::pair<int, Word>, Rational> acc;
        raw.for_each_term(
            [&](int k, const HSeries::Key& w, const Rational& c) {
                for (auto held = normal_flat_locked(w[0], K - k); const auto& t : *held) {
                    if (k + t.k > K) break;
                    acc[{k + t.k, t.word}] += c * t.coeff;
                }
            },
            K);
        auto result = flatten(acc);
        bracket_cache_.insert_or_assign(key, CacheEntry{K, result});
        return result;
    }

    HSeries rewrite_direct(const HSeries& raw, Strategy strategy) const {
        const int K = raw.order();
        HSeries out(ptr(), K);
        std::map<std::pair<int, Word>, Rational> pending;
        raw.for_each_term([&](int k, const HSeries::Key& w, const Rational& c) { pending[{k, w[0]}] += c; });
        std::size_t steps = 0;
        while (!pending.empty()) {
            auto node = pending.extract(pending.begin());
            const auto& [k, w] = node.key();
            const Rational c = node.mapped();
            if (sgn(c) == 0) continue;
            std::ptrdiff_t pos = -1;
            if (strategy == Strategy::Leftmost) {
                for (std::size_t i = 0; i + 1 < w.size(); ++i)
                    if (w[i] > w[i + 1]) {
                        pos = static_cast<std::ptrdiff_t>(i);
                        break;
                    }
            } else {
                for (std::size_t i = w.size(); i-- > 1;)
                    if (w[i - 1] > w[i]) {
                        pos = static_cast<std::ptrdiff_t>(i - 1);
                        break;
                    }
            }
            if (pos < 0) {
                out.add(k, {w}, c);
                continue;
            }
            if (++steps > fuel_) throw FuelExhausted("rewrite budget exhausted in algebra '" + name() + "'");
            auto i = static_cast<std::size_t>(pos);
            Word prefix = w.substr(0, i), suffix = w.substr(i + 2);
            Word swapped = prefix + w[i + 1] + w[i] + suffix;
            pending[{k, swapped}] += c;
            for (auto held = bracket_flat(letter_at(w, i), letter_at(w, i + 1), K - k); const auto& b : *held) {
                if (k + b.k > K) break;
                pending[{k + b.k, prefix + b.word + suffix}] += c * b.coeff;
            }
        }
        return out;
    }

    AlgebraDef def_;
    mutable std::recursive_mutex mutex_;
    mutable std::size_t fuel_ = kDefaultFuel;
    mutable std::size_t steps_ = 0;
    mutable int depth_ = 0;
    mutable std::map<Word, CacheEntry> nf_cache_;
    mutable std::set<Word> in_progress_;
    mutable std::map<std::pair<int, int>, CacheEntry> bracket_cache_;
    mutable std::set<std::pair<int, int>> bracket_in_progress_;
    mutable std::map<int, TensorSeries2> coproduct_cache_;
    mutable std::map<int, HSeries> antipode_cache_;
};

/// Slotwise product (a1⊗…⊗aN)(b1⊗…⊗bN) = a1b1⊗…⊗aNbN, normal-ordered and
/// truncated at the common order.
template <std::size_t N>
Series<N> operator*(const Series<N>& a, const Series<N>& b) {
    a.check_compatible(b);
    const Algebra& A = a.algebra();
    const int K = a.order();
    Series<N> out(a.algebra_ptr(), K);
    for (int ka = 0; ka <= K; ++ka) {
        const auto& ta = a.at(ka);
        if (ta.empty()) continue;
        for (int kb = 0; ka + kb <= K; ++kb) {
            const auto& tb = b.at(kb);
            if (tb.empty()) continue;
            const int rem = K - ka - kb;
            for (const auto& [ka_key, ca] : ta)
                for (const auto& [kb_key, cb] : tb) {
                    std::array<FlatPtr, N> parts;
                    for (std::size_t s = 0; s < N; ++s) {
                        const Word& u = ka_key[s];
                        const Word& v = kb_key[s];
                        if (u.empty() || v.empty() || u.back() <= v.front()) {
                            auto single = std::make_shared<FlatTerms>();
                            single->push_back({0, u + v, Rational(1)});
                            parts[s] = std::move(single);
                        } else {
                            parts[s] = A.normal_flat(u + v, rem);
                        }
                    }
                    Algebra::accumulate_outer<N>(out, parts, ka + kb, ca * cb, K);
                }
        }
    }
    return out;
}

template <std::size_t N>
Series<N> commutator(const Series<N>& a, const Series<N>& b) {
    return a * b - b * a;
}

template <std::size_t N>
Series<N> power(const Series<N>& a, int n) {
    if (n < 0) throw Error("negative power");
    Series<N> r = Series<N>::one(a.algebra_ptr(), a.order());
    for (int i = 0; i < n; ++i) r = r * a;
    return r;
}

} // namespace jordan
