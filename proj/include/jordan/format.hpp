#pragma once

#include <sstream>
#include <string>

#include "algebra.hpp"

namespace jordan {

/// Letters joined by '*', runs collapsed to X^n; "1" for the empty word.
inline std::string word_text(const Algebra& A, const Word& w) {
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < w.size();) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        if (!out.empty()) out += '*';
        out += A.generator_name(letter_at(w, i));
        if (j - i > 1) out += '^' + std::to_string(j - i);
        i = j;
    }
    return out;
}

template <std::size_t N>
std::string term_text(const Algebra& A, int k, const typename Series<N>::Key& key, const Rational& c) {
    std::ostringstream os;
    bool need_star = false;
    if (c != 1) {
        os << to_string(c);
        need_star = true;
    }
    if (k > 0) {
        if (need_star) os << '*';
        os << A.def().parameter;
        if (k > 1) os << '^' << k;
        need_star = true;
    }
    for (std::size_t s = 0; s < N; ++s) {
        if (s > 0) os << " ox ";
        if (s == 0 && key[0].empty() && need_star) continue;
        if (s == 0 && need_star) os << '*';
        os << word_text(A, key[s]);
    }
    return os.str();
}

/// Deterministic text: h-order ascending, then words in PBW graded-lex order.
template <std::size_t N>
std::string to_text(const Series<N>& x) {
    const Algebra& A = x.algebra();
    std::string out;
    x.for_each_term([&](int k, const typename Series<N>::Key& key, const Rational& c) {
        if (out.empty()) {
            out = term_text<N>(A, k, key, c);
        } else if (sgn(c) < 0) {
            out += " - " + term_text<N>(A, k, key, -c);
        } else {
            out += " + " + term_text<N>(A, k, key, c);
        }
    });
    return out.empty() ? "0" : out;
}

} // namespace jordan
