#pragma once

#include <map>
#include <utility>
#include <vector>

#include "tensor.hpp"

namespace jordan {

/// Algebra homomorphism defined by linear images of the generators (no h
/// dependence), e.g. the basis change J = J1 + J2, N = J1 − J2.
class AlgebraMap {
public:
    using Linear = std::vector<std::pair<Rational, int>>; // Σ c · target generator

    AlgebraMap(AlgebraPtr source, AlgebraPtr target, std::vector<Linear> images)
        : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
        if (static_cast<int>(images_.size()) != source_->size())
            throw Error("map needs one image per generator of " + source_->name());
    }

    const AlgebraPtr& source() const noexcept { return source_; }
    const AlgebraPtr& target() const noexcept { return target_; }

    HSeries image_of_generator(int i, int K) const {
        HSeries s(target_, K);
        for (const auto& [c, g] : images_.at(static_cast<std::size_t>(i))) s.add(0, {letter(g)}, c);
        return s;
    }

    HSeries word(const Word& w, int K) {
        auto key = std::make_pair(K, w);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        HSeries value = w.empty() ? target_->one(K)
                                  : image_of_generator(letter_at(w, 0), K) * word(w.substr(1), K);
        memo_.emplace(key, value);
        return value;
    }

    HSeries operator()(const HSeries& x) {
        check_source(x.algebra_ptr());
        const int K = x.order();
        HSeries out(target_, K);
        x.for_each_term([&](int k, const HSeries::Key& w, const Rational& c) {
            word(w[0], K - k).for_each_term([&](int k2, const HSeries::Key& t, const Rational& c2) {
                out.add(k + k2, t, c * c2);
            });
        });
        return out;
    }

    TensorSeries2 operator()(const TensorSeries2& x) {
        check_source(x.algebra_ptr());
        const int K = x.order();
        TensorSeries2 out(target_, K);
        x.for_each_term([&](int k, const TensorSeries2::Key& w, const Rational& c) {
            const int rem = K - k;
            HSeries a = word(w[0], rem);
            HSeries b = word(w[1], rem);
            a.for_each_term([&](int ka, const HSeries::Key& wa, const Rational& ca) {
                b.for_each_term([&](int kb, const HSeries::Key& wb, const Rational& cb) {
                    out.add(k + ka + kb, {wa[0], wb[0]}, c * ca * cb);
                }, rem - ka);
            });
        });
        return out;
    }

private:
    void check_source(const AlgebraPtr& a) const {
        if (a != source_) throw AlgebraMismatch("map source is " + source_->name() + ", got " + a->name());
    }

    AlgebraPtr source_, target_;
    std::vector<Linear> images_;
    std::map<std::pair<int, Word>, HSeries> memo_;
};

} // namespace jordan
