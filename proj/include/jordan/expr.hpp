#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "analytic.hpp"
#include "format.hpp"
#include "tensor.hpp"

namespace jordan {

/// Surface syntax for algebra elements:
///   sum     := ['-'] tensor (('+' | '-') tensor)*
///   tensor  := product ('ox' product)*
///   product := power ('*' power)*
///   power   := atom ['^' integer]
///   atom    := integer ['/' integer] | 'h' | generator | '(' sum ')'
///            | comm(sum, sum) | delta(sum) | flip(sum) | exp(sum)
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Number, H, Generator, Add, Sub, Neg, Tensor, Mul, Pow, Comm, Delta, Flip, Exp };
    Kind kind;
    Rational value;     // Number (never negative)
    std::string name;   // Generator
    int exponent = 0;   // Pow
    std::vector<ExprPtr> args;

    static ExprPtr number(Rational v) {
        if (sgn(v) < 0) throw Error("number literals are non-negative; use negation");
        return std::make_shared<Expr>(Expr{Kind::Number, std::move(v), {}, 0, {}});
    }
    static ExprPtr h() { return std::make_shared<Expr>(Expr{Kind::H, 0, {}, 0, {}}); }
    static ExprPtr generator(std::string n) { return std::make_shared<Expr>(Expr{Kind::Generator, 0, std::move(n), 0, {}}); }
    static ExprPtr node(Kind k, std::vector<ExprPtr> a, int e = 0) {
        return std::make_shared<Expr>(Expr{k, 0, {}, e, std::move(a)});
    }
};

inline bool operator==(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.value != b.value || a.name != b.name || a.exponent != b.exponent ||
        a.args.size() != b.args.size())
        return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!(*a.args[i] == *b.args[i])) return false;
    return true;
}

namespace detail {

enum Precedence { kSum = 1, kTensor = 2, kProduct = 3, kPower = 4, kAtom = 5 };

inline int precedence(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
    case Expr::Kind::Neg: return kSum;
    case Expr::Kind::Tensor: return kTensor;
    case Expr::Kind::Mul: return kProduct;
    case Expr::Kind::Pow: return kPower;
    default: return kAtom;
    }
}

inline std::string print_at(const Expr& e, int min_prec);

inline std::string print_bare(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind) {
    case K::Number: return e.value.get_str();
    case K::H: return "h";
    case K::Generator: return e.name;
    case K::Add: return print_at(*e.args[0], kSum) + " + " + print_at(*e.args[1], kTensor);
    case K::Sub: return print_at(*e.args[0], kSum) + " - " + print_at(*e.args[1], kTensor);
    case K::Neg: return "-" + print_at(*e.args[0], kTensor);
    case K::Tensor: return print_at(*e.args[0], kTensor) + " ox " + print_at(*e.args[1], kProduct);
    case K::Mul: return print_at(*e.args[0], kProduct) + "*" + print_at(*e.args[1], kPower);
    case K::Pow: return print_at(*e.args[0], kAtom) + "^" + std::to_string(e.exponent);
    case K::Comm: return "comm(" + print_at(*e.args[0], kSum) + ", " + print_at(*e.args[1], kSum) + ")";
    case K::Delta: return "delta(" + print_at(*e.args[0], kSum) + ")";
    case K::Flip: return "flip(" + print_at(*e.args[0], kSum) + ")";
    case K::Exp: return "exp(" + print_at(*e.args[0], kSum) + ")";
    }
    return "?";
}

inline std::string print_at(const Expr& e, int min_prec) {
    // a negation can only open a sum, so it is wrapped anywhere else
    bool wrap = precedence(e) < min_prec || (e.kind == Expr::Kind::Neg && min_prec > kSum);
    return wrap ? "(" + print_bare(e) + ")" : print_bare(e);
}

class Parser {
public:
    Parser(std::string_view src, const Algebra* algebra) : src_(src), algebra_(algebra) {}

    ExprPtr parse() {
        skip();
        if (pos_ >= src_.size()) fail("empty expression");
        ExprPtr e = sum();
        skip();
        if (pos_ < src_.size()) fail(std::string("unexpected '") + src_[pos_] + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { fail_at(what, pos_); }
    [[noreturn]] void fail_at(const std::string& what, std::size_t at) const {
        int line = 1, col = 1;
        for (std::size_t i = 0; i < at && i < src_.size(); ++i) {
            if (src_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw SyntaxError(what, line, col);
    }

    void skip() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < src_.size() && src_[pos_] == c;
    }
    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    bool at_word(std::string_view w) {
        skip();
        if (src_.substr(pos_, w.size()) != w) return false;
        std::size_t end = pos_ + w.size();
        return end >= src_.size() || !(std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_');
    }

    std::string identifier() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
        return std::string(src_.substr(start, pos_ - start));
    }

    std::string integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        return std::string(src_.substr(start, pos_ - start));
    }

    ExprPtr sum() {
        ExprPtr e;
        if (accept('-')) {
            e = Expr::node(Expr::Kind::Neg, {tensor()});
        } else {
            e = tensor();
        }
        for (;;) {
            if (accept('+')) {
                e = Expr::node(Expr::Kind::Add, {e, tensor()});
            } else if (accept('-')) {
                e = Expr::node(Expr::Kind::Sub, {e, tensor()});
            } else {
                return e;
            }
        }
    }

    ExprPtr tensor() {
        ExprPtr e = product();
        while (at_word("ox")) {
            pos_ += 2;
            e = Expr::node(Expr::Kind::Tensor, {e, product()});
        }
        return e;
    }

    ExprPtr product() {
        ExprPtr e = power();
        for (;;) {
            if (accept('*')) {
                e = Expr::node(Expr::Kind::Mul, {e, power()});
            } else if (peek('/')) {
                fail("division is only allowed inside a rational literal p/q");
            } else {
                return e;
            }
        }
    }

    ExprPtr power() {
        ExprPtr e = atom();
        if (accept('^')) {
            std::size_t at = pos_;
            std::string digits = integer();
            if (digits.size() > 6) fail_at("exponent too large", at);
            e = Expr::node(Expr::Kind::Pow, {e}, std::stoi(digits));
        }
        return e;
    }

    ExprPtr call(Expr::Kind kind, int arity) {
        expect('(');
        std::vector<ExprPtr> args{sum()};
        for (int i = 1; i < arity; ++i) {
            expect(',');
            args.push_back(sum());
        }
        expect(')');
        return Expr::node(kind, std::move(args));
    }

    ExprPtr atom() {
        skip();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            std::string num = integer();
            if (accept('/')) {
                std::string den = integer();
                if (mpz_class(den) == 0) fail_at("zero denominator in rational literal", start);
                num += "/" + den;
            }
            Rational v(num);
            v.canonicalize();
            return Expr::number(v);
        }
        if (accept('(')) {
            ExprPtr e = sum();
            expect(')');
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            std::string id = identifier();
            if (id == "comm") return call(Expr::Kind::Comm, 2);
            if (id == "delta") return call(Expr::Kind::Delta, 1);
            if (id == "flip") return call(Expr::Kind::Flip, 1);
            if (id == "exp") return call(Expr::Kind::Exp, 1);
            if (id == "ox") fail_at("'ox' needs a left operand", start);
            if (id == "h") return Expr::h();
            if (algebra_) algebra_->index(id);
            return Expr::generator(id);
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view src_;
    const Algebra* algebra_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses against an algebra's generator names (pass nullptr to skip the check).
inline ExprPtr parse_expr(std::string_view src, const Algebra* algebra = nullptr) {
    return detail::Parser(src, algebra).parse();
}

/// Canonical text; parse_expr(print_expr(e)) == e.
inline std::string print_expr(const Expr& e) { return detail::print_at(e, detail::kSum); }

using Value = std::variant<HSeries, TensorSeries2, TensorSeries3>;

inline int tensor_rank(const Value& v) { return static_cast<int>(v.index()) + 1; }

namespace detail {

inline std::string rank_name(int r) {
    return r == 1 ? "an algebra element" : r == 2 ? "a tensor-square element" : "a tensor-cube element";
}

template <class Fn>
Value same_rank(const Value& a, const Value& b, const char* op, Fn&& fn) {
    if (a.index() != b.index())
        throw TypeError(std::string(op) + " of " + rank_name(tensor_rank(a)) + " and " + rank_name(tensor_rank(b)));
    return std::visit(
        [&](const auto& x) -> Value {
            using T = std::decay_t<decltype(x)>;
            return fn(x, std::get<T>(b));
        },
        a);
}

// a scalar series of rank 1 lifted to the rank of `like`
inline Value lift(const HSeries& s, int rank) {
    if (rank == 1) return s;
    const int K = s.order();
    HSeries one = HSeries::one(s.algebra_ptr(), K);
    TensorSeries2 t = outer(s, one);
    if (rank == 2) return t;
    return outer(t, one);
}

inline bool is_scalar(const Value& v) {
    const auto* s = std::get_if<HSeries>(&v);
    if (!s) return false;
    bool scalar = true;
    s->for_each_term([&](int, const HSeries::Key& w, const Rational&) {
        if (!w[0].empty()) scalar = false;
    });
    return scalar;
}

} // namespace detail

/// Evaluates at truncation order K; every result is normal-ordered.
inline Value evaluate(const Expr& e, const Algebra& A, int K) {
    using K_ = Expr::Kind;
    switch (e.kind) {
    case K_::Number: return A.scalar(e.value, K);
    case K_::H: {
        HSeries s(A.ptr(), K);
        s.add(1, {Word{}}, Rational(1));
        return s;
    }
    case K_::Generator: return A.generator(e.name, K);
    case K_::Add:
    case K_::Sub: {
        Value a = evaluate(*e.args[0], A, K), b = evaluate(*e.args[1], A, K);
        const bool add = e.kind == K_::Add;
        return detail::same_rank(a, b, add ? "sum" : "difference",
                                 [add](const auto& x, const auto& y) { return add ? x + y : x - y; });
    }
    case K_::Neg:
        return std::visit([](const auto& x) -> Value { return -x; }, evaluate(*e.args[0], A, K));
    case K_::Mul: {
        Value a = evaluate(*e.args[0], A, K), b = evaluate(*e.args[1], A, K);
        // scalars (rank-1 values without letters) multiply anything
        if (a.index() != b.index()) {
            if (detail::is_scalar(a)) a = detail::lift(std::get<HSeries>(a), tensor_rank(b));
            else if (detail::is_scalar(b)) b = detail::lift(std::get<HSeries>(b), tensor_rank(a));
        }
        return detail::same_rank(a, b, "product", [](const auto& x, const auto& y) { return x * y; });
    }
    case K_::Pow:
        return std::visit([&](const auto& x) -> Value { return power(x, e.exponent); }, evaluate(*e.args[0], A, K));
    case K_::Tensor: {
        Value a = evaluate(*e.args[0], A, K), b = evaluate(*e.args[1], A, K);
        if (!std::holds_alternative<HSeries>(b)) throw TypeError("right operand of 'ox' must be an algebra element");
        if (auto* x = std::get_if<HSeries>(&a)) return outer(*x, std::get<HSeries>(b));
        if (auto* x = std::get_if<TensorSeries2>(&a)) return outer(*x, std::get<HSeries>(b));
        throw TypeError("tensor powers above three are not supported");
    }
    case K_::Comm: {
        Value a = evaluate(*e.args[0], A, K), b = evaluate(*e.args[1], A, K);
        return detail::same_rank(a, b, "commutator", [](const auto& x, const auto& y) { return commutator(x, y); });
    }
    case K_::Delta: {
        Value a = evaluate(*e.args[0], A, K);
        if (auto* x = std::get_if<HSeries>(&a)) return apply_coproduct(*x);
        throw TypeError("delta takes an algebra element");
    }
    case K_::Flip: {
        Value a = evaluate(*e.args[0], A, K);
        if (auto* x = std::get_if<TensorSeries2>(&a)) return flip(*x);
        throw TypeError("flip takes a tensor-square element");
    }
    case K_::Exp:
        return std::visit([](const auto& x) -> Value { return series_exp(x); }, evaluate(*e.args[0], A, K));
    }
    throw Error("unreachable");
}

inline std::string value_text(const Value& v) {
    return std::visit([](const auto& x) { return to_text(x); }, v);
}

} // namespace jordan
