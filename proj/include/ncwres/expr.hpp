#pragma once

// A small expression language for reference values: scalars are rational
// functions of xi (= xi_n) over Q(i)[h], matrices are symbols on Lambda^*.
//
//   expr  := term (('+' | '-') term)*
//   term  := unary (('*' | '/') unary)*
//   unary := '-' unary | power
//   power := atom ('^' ['-'] digits)?
//   atom  := digits | name | name '(' expr ')' | '(' expr ')'
//
// Scalar names: i, xi, h, a, b. Matrix names are listed in `Context::atom`.
// Functions: tr, piplus, dxi (d/dxi_n), res (residue at +i), integrate (real line, coefficient of pi),
// sum_i (sum over tangential basis directions e_i, i < n, binding the suffix _i).

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncwres/errors.hpp"
#include "ncwres/exterior_algebra.hpp"
#include "ncwres/scalar_field.hpp"
#include "ncwres/symbol_calculus.hpp"

namespace ncwres::expr {

struct Value {
  bool is_matrix = false;
  RationalFn scalar;
  RationalSymbol matrix;

  static Value of(RationalFn f) { return Value{false, std::move(f), {}}; }
  static Value of(RationalSymbol m) { return Value{true, {}, std::move(m)}; }
};

inline RationalFn reciprocal(const RationalFn& f) {
  if (f.is_zero())
    throw InvalidParameter("division by zero");
  return RationalFn::from_quotient(f.denominator(), f.numerator());
}

/// Evaluation environment: one boundary point and its symbols.
class Context {
public:
  Context(const ExteriorAlgebra& alg, Params params, Covector xi_prime)
      : pt_(alg, std::move(params), std::move(xi_prime)) {}

  const BoundaryPoint& point() const { return pt_; }
  int n() const { return pt_.n(); }
  std::size_t dim() const { return pt_.alg->dim(); }

  /// Tangential basis index bound to the suffix _i (1-based), 0 when unbound.
  int bound_index = 0;

  Value atom(const std::string& name) {
    const auto& alg = *pt_.alg;
    const Params& p = pt_.params;
    if (name == "i")
      return Value::of(RationalFn(GaussianRational::i()));
    if (name == "xi")
      return Value::of(RationalFn::xi());
    if (name == "h")
      return Value::of(RationalFn(ScalarRing::h()));
    if (name == "a")
      return Value::of(RationalFn(ScalarRing(p.a)));
    if (name == "b")
      return Value::of(RationalFn(ScalarRing(p.b)));
    if (name == "Id")
      return Value::of(RationalSymbol::identity(dim()));

    auto us = name.rfind('_');
    if (us != std::string::npos) {
      std::string head = name.substr(0, us), tail = name.substr(us + 1);
      if (tail == "D" || tail == "Dstar")
        return engine_atom(head, parse_operator(tail));
      if (tail == "t" || tail == "n" || tail == "i" || tail == "xi") {
        if (tail == "xi") {
          if (head == "ct")
            return Value::of(twisted_xi(pt_, Operator::D));
          if (head == "cb")
            return Value::of(twisted_xi(pt_, Operator::Dstar));
          throw ParseError("unknown name '" + name + "'");
        }
        Covector v = tail == "t" ? pt_.xi_prime : (tail == "n" ? Covector::normal(n()) : bound());
        Endo e = alg.eps(v), io = alg.iota(v);
        if (head == "eps")
          return Value::of(lift(e));
        if (head == "iota")
          return Value::of(lift(io));
        if (head == "c")
          return Value::of(lift(e - io));
        if (head == "chat")
          return Value::of(lift(e + io));
        if (head == "ct")
          return Value::of(lift(twisted_action(alg, p, Operator::D, v)));
        if (head == "cb")
          return Value::of(lift(twisted_action(alg, p, Operator::Dstar, v)));
        if (tail == "t") {
          if (head == "diota")
            return Value::of(lift(ScalarRing::h() * io));
          if (head == "dct")
            return Value::of(lift(dxn_twisted_tangential(pt_, Operator::D)));
          if (head == "dcb")
            return Value::of(lift(dxn_twisted_tangential(pt_, Operator::Dstar)));
        }
      }
    }
    if (name == "p0t")
      return Value::of(lift(p0_matrix(alg, p, Operator::D)));
    if (name == "p0b")
      return Value::of(lift(p0_matrix(alg, p, Operator::Dstar)));
    throw ParseError("unknown name '" + name + "'");
  }

private:
  Covector bound() const {
    if (bound_index == 0)
      throw ParseError("suffix _i used outside sum_i");
    return Covector::basis(n(), bound_index);
  }

  const OperatorSymbols& symbols(Operator op) {
    auto& slot = op == Operator::D ? d_ : dstar_;
    if (!slot)
      slot = std::make_unique<OperatorSymbols>(build_symbols(pt_, op));
    return *slot;
  }

  // Symbols of one operator; p0conn is sigma_0 rebuilt from the collar connection.
  Value engine_atom(const std::string& head, Operator op) {
    const OperatorSymbols& s = symbols(op);
    if (head == "q1")
      return Value::of(s.q1.value);
    if (head == "q2")
      return Value::of(s.q2.value);
    if (head == "dxn_q1")
      return Value::of(s.q1.normal_derivative());
    if (head == "dxn_q2")
      return Value::of(s.q2.normal_derivative());
    if (head == "p1")
      return Value::of(s.p1.value);
    if (head == "p0")
      return Value::of(s.p0.value);
    if (head == "p0conn")
      return Value::of(lift(p0_from_connection(*pt_.alg, pt_.params, op)));
    throw ParseError("unknown symbol '" + head + "_" + to_string(op) + "'");
  }

  BoundaryPoint pt_;
  std::unique_ptr<OperatorSymbols> d_;
  std::unique_ptr<OperatorSymbols> dstar_;
};

inline Value add(Value x, Value y, bool subtract, std::size_t dim) {
  if (subtract) {
    if (y.is_matrix)
      y.matrix = -y.matrix;
    else
      y.scalar = -y.scalar;
  }
  if (!x.is_matrix && !y.is_matrix)
    return Value::of(x.scalar + y.scalar);
  auto as_matrix = [dim](const Value& v) {
    return v.is_matrix ? v.matrix : v.scalar * RationalSymbol::identity(dim);
  };
  return Value::of(as_matrix(x) + as_matrix(y));
}

inline Value mul(const Value& x, const Value& y) {
  if (!x.is_matrix && !y.is_matrix)
    return Value::of(x.scalar * y.scalar);
  if (!x.is_matrix)
    return Value::of(x.scalar * y.matrix);
  if (!y.is_matrix)
    return Value::of(y.scalar * x.matrix);
  return Value::of(x.matrix * y.matrix);
}

class Parser {
public:
  Parser(std::string_view src, Context& ctx) : s_(src), ctx_(ctx) {}

  Value parse() {
    Value v = expression();
    skip();
    if (pos_ != s_.size())
      fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c))
      fail(std::string("expected '") + c + "'");
  }

  Value expression() {
    Value v = term();
    for (;;) {
      if (accept('+'))
        v = add(std::move(v), term(), false, ctx_.dim());
      else if (accept('-'))
        v = add(std::move(v), term(), true, ctx_.dim());
      else
        return v;
    }
  }

  Value term() {
    Value v = unary();
    for (;;) {
      if (accept('*')) {
        v = mul(v, unary());
      } else if (accept('/')) {
        Value d = unary();
        if (d.is_matrix)
          fail("division by a matrix");
        v = mul(v, Value::of(reciprocal(d.scalar)));
      } else {
        return v;
      }
    }
  }

  Value unary() {
    if (accept('-')) {
      Value v = unary();
      return mul(Value::of(RationalFn(-1L)), v);
    }
    return power();
  }

  Value power() {
    Value base = atom();
    if (!accept('^'))
      return base;
    bool neg = accept('-');
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (start == pos_)
      fail("expected an integer exponent");
    int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
    if (base.is_matrix) {
      if (neg)
        fail("negative power of a matrix");
      RationalSymbol r = RationalSymbol::identity(ctx_.dim());
      for (int t = 0; t < e; ++t)
        r = r * base.matrix;
      return Value::of(std::move(r));
    }
    RationalFn b = neg ? reciprocal(base.scalar) : base.scalar;
    RationalFn r(1L);
    for (int t = 0; t < e; ++t)
      r *= b;
    return Value::of(std::move(r));
  }

  Value atom() {
    skip();
    if (pos_ >= s_.size())
      fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expression();
      expect(')');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      return Value::of(RationalFn(ScalarRing(parse_rational(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (accept('('))
        return call(name);
      return ctx_.atom(name);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Value call(const std::string& fn) {
    if (fn == "sum_i") {
      std::size_t body = pos_;
      std::size_t end = 0;
      std::optional<Value> total;
      for (int k = 1; k < ctx_.n(); ++k) {
        pos_ = body;
        int saved = ctx_.bound_index;
        ctx_.bound_index = k;
        Value v = expression();
        ctx_.bound_index = saved;
        end = pos_;
        total = total ? add(std::move(*total), std::move(v), false, ctx_.dim()) : std::move(v);
      }
      pos_ = end;
      expect(')');
      return *total;
    }
    Value arg = expression();
    expect(')');
    if (fn == "tr") {
      if (!arg.is_matrix)
        fail("tr of a scalar");
      return Value::of(trace(arg.matrix));
    }
    if (fn == "piplus")
      return arg.is_matrix ? Value::of(pi_plus(arg.matrix)) : Value::of(pi_plus(arg.scalar));
    if (fn == "dxi")
      return arg.is_matrix ? Value::of(diff_xi(arg.matrix)) : Value::of(diff_xi(arg.scalar));
    if (fn == "res") {
      if (arg.is_matrix)
        fail("res of a matrix");
      return Value::of(RationalFn(residue_plus(arg.scalar)));
    }
    if (fn == "integrate") {
      if (arg.is_matrix)
        fail("integrate of a matrix");
      return Value::of(RationalFn(integrate_line(arg.scalar)));
    }
    fail("unknown function '" + fn + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  Context& ctx_;
};

inline Value evaluate(std::string_view src, Context& ctx) { return Parser(src, ctx).parse(); }

inline bool equal(const Value& x, const Value& y, std::size_t dim) {
  if (x.is_matrix == y.is_matrix)
    return x.is_matrix ? x.matrix == y.matrix : x.scalar == y.scalar;
  const Value& m = x.is_matrix ? x : y;
  const Value& s = x.is_matrix ? y : x;
  return m.matrix == s.scalar * RationalSymbol::identity(dim);
}

/// Short text form; matrices are summarized by their trace and nonzero count.
inline std::string describe(const Value& v) {
  if (!v.is_matrix)
    return format_rfn(v.scalar);
  std::size_t nz = 0;
  for (std::size_t i = 0; i < v.matrix.size(); ++i)
    for (std::size_t j = 0; j < v.matrix.size(); ++j)
      if (!v.matrix(i, j).is_zero())
        ++nz;
  return "matrix[" + std::to_string(v.matrix.size()) + "x" + std::to_string(v.matrix.size()) + ", " +
         std::to_string(nz) + " nonzero, trace " + format_rfn(trace(v.matrix)) + "]";
}

/// First entry where two matrices differ, as "(row, col): x vs y".
inline std::string first_difference(const Value& x, const Value& y, std::size_t dim) {
  auto as_matrix = [dim](const Value& v) {
    return v.is_matrix ? v.matrix : v.scalar * RationalSymbol::identity(dim);
  };
  RationalSymbol mx = as_matrix(x), my = as_matrix(y);
  std::size_t count = 0;
  std::string first;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      if (mx(i, j) != my(i, j)) {
        if (count++ == 0)
          first = "(" + std::to_string(i) + ", " + std::to_string(j) + "): " + format_rfn(mx(i, j)) + " vs " +
                  format_rfn(my(i, j));
      }
  return std::to_string(count) + " entries differ; first " + first;
}

} // namespace ncwres::expr
