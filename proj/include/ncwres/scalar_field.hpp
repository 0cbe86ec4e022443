#pragma once

// Exact scalars used throughout the engine:
//
//   GaussianRational  Q(i)
//   ScalarRing        Q(i)[h] truncated at degree 2, h standing for h'(0)
//   XiPoly            ScalarRing[xi]
//   RationalFn        XiPoly / ((xi - i)^p (xi + i)^q)
//
// plus partial fractions, the projections pi^+ and pi', and integration over
// the real line by residues at +i. Nothing here uses floating point; pi is a
// formal unit and results of integrate_line are exact multiples of it.

#include <algorithm>
#include <array>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ncwres/errors.hpp"
#include "ncwres/rational.hpp"

namespace ncwres {

// ---------------------------------------------------------------------------
// GaussianRational

struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)) {}
  GaussianRational(long r) : re(r) {}
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  GaussianRational conj() const { return {re, -im}; }
  Rational norm() const { return re * re + im * im; }

  GaussianRational inverse() const {
    if (is_zero())
      throw InvalidParameter("division by zero Gaussian rational");
    Rational n = norm();
    return {re / n, -im / n};
  }

  GaussianRational operator-() const { return {-re, -im}; }
  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    const bool real_a = sgn(im) == 0, real_b = sgn(o.im) == 0;
    if (real_a && real_b) {
      re *= o.re;
      return *this;
    }
    if (real_b) {
      re *= o.re;
      im *= o.re;
      return *this;
    }
    if (real_a) {
      im = re * o.im;
      re *= o.re;
      return *this;
    }
    Rational r = re * o.re - im * o.im;
    Rational m = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(m);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

inline GaussianRational pow(GaussianRational base, int e) {
  if (e < 0) {
    base = base.inverse();
    e = -e;
  }
  GaussianRational r(1);
  while (e > 0) {
    if (e & 1)
      r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

/// "p/q", "r/s*i", "p/q+r/s*i", with "i" / "-i" for unit imaginary parts.
inline std::string format_gaussian(const GaussianRational& g) {
  auto imag = [](const Rational& r) -> std::string {
    if (r == 1)
      return "i";
    if (r == -1)
      return "-i";
    return format_rational(r) + "*i";
  };
  if (g.is_real())
    return format_rational(g.re);
  if (sgn(g.re) == 0)
    return imag(g.im);
  std::string s = format_rational(g.re);
  std::string m = imag(g.im);
  if (m[0] != '-')
    s += '+';
  return s + m;
}

inline GaussianRational parse_gaussian(std::string_view text) {
  if (text.empty())
    throw ParseError("empty Gaussian literal");
  auto parse_imag = [&](std::string_view t) -> Rational {
    // t ends in 'i': forms "i", "+i", "-i", "<rational>*i"
    std::string_view body = t.substr(0, t.size() - 1);
    if (body.empty() || body == "+")
      return Rational(1);
    if (body == "-")
      return Rational(-1);
    if (body.back() != '*')
      throw ParseError("malformed imaginary part '" + std::string(t) + "'");
    body.remove_suffix(1);
    if (!body.empty() && body[0] == '+')
      body.remove_prefix(1);
    return parse_rational(body);
  };
  if (text.back() != 'i')
    return GaussianRational(parse_rational(text));
  std::size_t split = std::string_view::npos;
  for (std::size_t k = text.size() - 1; k > 0; --k)
    if (text[k] == '+' || text[k] == '-') {
      split = k;
      break;
    }
  if (split == std::string_view::npos)
    return {Rational(0), parse_imag(text)};
  return {parse_rational(text.substr(0, split)), parse_imag(text.substr(split))};
}

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& g) {
  return os << format_gaussian(g);
}

// ---------------------------------------------------------------------------
// ScalarRing: polynomials in h = h'(0) of degree <= 2.

class ScalarRing {
public:
  static constexpr int kMaxDegree = 2;

  ScalarRing() = default;
  ScalarRing(GaussianRational c) {
    if (!c.is_zero())
      c_.push_back(std::move(c));
  }
  ScalarRing(Rational c) : ScalarRing(GaussianRational(std::move(c))) {}
  ScalarRing(long c) : ScalarRing(GaussianRational(c)) {}

  static ScalarRing h() { return monomial(GaussianRational(1), 1); }
  static ScalarRing monomial(GaussianRational c, int degree) {
    if (degree < 0 || degree > kMaxDegree)
      throw HDegreeOverflow("h-degree " + std::to_string(degree) + " exceeds cap");
    ScalarRing s;
    if (c.is_zero())
      return s;
    s.c_.resize(static_cast<std::size_t>(degree + 1));
    s.c_[static_cast<std::size_t>(degree)] = std::move(c);
    return s;
  }

  const GaussianRational& coeff(int k) const {
    static const GaussianRational zero;
    if (k < 0 || k > kMaxDegree)
      throw HDegreeOverflow("h-degree " + std::to_string(k) + " exceeds cap");
    return k < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(k)] : zero;
  }

  /// -1 for zero.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }

  /// Units are the nonzero constants.
  ScalarRing inverse() const {
    if (!is_constant() || is_zero())
      throw InvalidParameter("ScalarRing element is not a unit");
    return ScalarRing(c_[0].inverse());
  }

  ScalarRing operator-() const {
    ScalarRing r = *this;
    for (auto& c : r.c_)
      c = -c;
    return r;
  }
  ScalarRing& operator+=(const ScalarRing& o) {
    if (o.c_.size() > c_.size())
      c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k)
      c_[k] += o.c_[k];
    trim();
    return *this;
  }
  ScalarRing& operator-=(const ScalarRing& o) {
    if (o.c_.size() > c_.size())
      c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k)
      c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  ScalarRing& operator*=(const ScalarRing& o) {
    int da = degree(), db = o.degree();
    if (da < 0 || db < 0) {
      c_.clear();
      return *this;
    }
    if (da + db > kMaxDegree)
      throw HDegreeOverflow("product has h-degree " + std::to_string(da + db));
    if (da == 0 && db == 0) {
      c_[0] *= o.c_[0];
      return *this;
    }
    std::vector<GaussianRational> r(static_cast<std::size_t>(da + db + 1));
    for (int i = 0; i <= da; ++i) {
      if (c_[i].is_zero())
        continue;
      for (int j = 0; j <= db; ++j)
        if (!o.c_[j].is_zero())
          r[i + j] += c_[i] * o.c_[j];
    }
    c_ = std::move(r);
    trim();
    return *this;
  }

  friend ScalarRing operator+(ScalarRing a, const ScalarRing& b) { return a += b; }
  friend ScalarRing operator-(ScalarRing a, const ScalarRing& b) { return a -= b; }
  friend ScalarRing operator*(ScalarRing a, const ScalarRing& b) { return a *= b; }
  friend bool operator==(const ScalarRing& a, const ScalarRing& b) { return a.c_ == b.c_; }
  friend bool operator!=(const ScalarRing& a, const ScalarRing& b) { return !(a == b); }

private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero())
      c_.pop_back();
  }

  // Ascending in h, no trailing zeros.
  std::vector<GaussianRational> c_;
};

inline std::string format_scalar(const ScalarRing& s) {
  if (s.is_zero())
    return "0";
  std::string out;
  for (int k = 0; k <= ScalarRing::kMaxDegree; ++k) {
    const auto& c = s.coeff(k);
    if (c.is_zero())
      continue;
    std::string term = format_gaussian(c);
    bool compound = !c.is_real() && sgn(c.re) != 0;
    if (k > 0) {
      std::string hp = k == 1 ? "h" : "h^" + std::to_string(k);
      if (c == GaussianRational(1))
        term = hp;
      else if (c == GaussianRational(-1))
        term = "-" + hp;
      else
        term = (compound ? "(" + term + ")" : term) + "*" + hp;
    } else if (compound && s.degree() > 0) {
      term = "(" + term + ")";
    }
    if (!out.empty() && term[0] != '-')
      out += "+";
    out += term;
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const ScalarRing& s) { return os << format_scalar(s); }

// ---------------------------------------------------------------------------
// XiPoly: ascending coefficients in xi over ScalarRing, trailing zeros trimmed.

class XiPoly {
public:
  XiPoly() = default;
  XiPoly(ScalarRing c) {
    if (!c.is_zero())
      c_.push_back(std::move(c));
  }
  explicit XiPoly(std::vector<ScalarRing> c) : c_(std::move(c)) { trim(); }

  static XiPoly xi() { return XiPoly(std::vector<ScalarRing>{ScalarRing(), ScalarRing(1)}); }
  /// xi - x0
  static XiPoly linear(const GaussianRational& x0) {
    return XiPoly(std::vector<ScalarRing>{ScalarRing(-x0), ScalarRing(1)});
  }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<ScalarRing>& coeffs() const { return c_; }
  ScalarRing coeff(int k) const {
    return k >= 0 && k < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(k)] : ScalarRing();
  }

  ScalarRing operator()(const GaussianRational& x) const {
    ScalarRing acc;
    ScalarRing xs(x);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
      acc = acc * xs + *it;
    return acc;
  }

  XiPoly derivative() const {
    std::vector<ScalarRing> d;
    for (std::size_t k = 1; k < c_.size(); ++k)
      d.push_back(c_[k] * ScalarRing(static_cast<long>(k)));
    return XiPoly(std::move(d));
  }

  /// Coefficients of p(x0 + t) in t.
  std::vector<ScalarRing> taylor_at(const GaussianRational& x0) const {
    std::vector<ScalarRing> c = c_;
    ScalarRing xs(x0);
    // Repeated synthetic division by (xi - x0).
    for (std::size_t k = 0; k < c.size(); ++k)
      for (std::size_t j = c.size() - 1; j > k; --j)
        c[j - 1] += xs * c[j];
    return c;
  }

  /// Exact division by (xi - x0); requires p(x0) == 0.
  XiPoly divide_linear(const GaussianRational& x0) const {
    if (c_.empty())
      return {};
    std::vector<ScalarRing> q(c_.size() - 1);
    ScalarRing carry;
    ScalarRing xs(x0);
    for (std::size_t j = c_.size() - 1; j > 0; --j) {
      carry = c_[j] + carry * xs;
      q[j - 1] = carry;
    }
    if (!(c_[0] + carry * xs).is_zero())
      throw ModelingError("divide_linear: nonzero remainder");
    return XiPoly(std::move(q));
  }

  /// Long division by a monic divisor.
  std::pair<XiPoly, XiPoly> divmod_monic(const XiPoly& d) const {
    if (d.is_zero() || d.c_.back() != ScalarRing(1))
      throw InvalidParameter("divmod_monic: divisor must be monic");
    std::vector<ScalarRing> r = c_;
    int dd = d.degree();
    if (degree() < dd)
      return {XiPoly(), *this};
    std::vector<ScalarRing> q(static_cast<std::size_t>(degree() - dd + 1));
    for (int k = degree(); k >= dd; --k) {
      ScalarRing lead = r[static_cast<std::size_t>(k)];
      if (lead.is_zero())
        continue;
      q[static_cast<std::size_t>(k - dd)] = lead;
      for (int j = 0; j <= dd; ++j)
        r[static_cast<std::size_t>(k - dd + j)] -= lead * d.c_[static_cast<std::size_t>(j)];
    }
    return {XiPoly(std::move(q)), XiPoly(std::move(r))};
  }

  XiPoly operator-() const {
    XiPoly r = *this;
    for (auto& c : r.c_)
      c = -c;
    return r;
  }
  XiPoly& operator+=(const XiPoly& o) {
    if (o.c_.size() > c_.size())
      c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k)
      c_[k] += o.c_[k];
    trim();
    return *this;
  }
  XiPoly& operator-=(const XiPoly& o) { return *this += -o; }
  friend XiPoly operator+(XiPoly a, const XiPoly& b) { return a += b; }
  friend XiPoly operator-(XiPoly a, const XiPoly& b) { return a -= b; }
  friend XiPoly operator*(const XiPoly& a, const XiPoly& b) {
    if (a.is_zero() || b.is_zero())
      return {};
    std::vector<ScalarRing> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero())
        continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        if (!b.c_[j].is_zero())
          r[i + j] += a.c_[i] * b.c_[j];
    }
    return XiPoly(std::move(r));
  }
  friend XiPoly operator*(const ScalarRing& s, const XiPoly& p) {
    if (s.is_zero())
      return {};
    std::vector<ScalarRing> r = p.c_;
    for (auto& c : r)
      c = s * c;
    return XiPoly(std::move(r));
  }
  friend bool operator==(const XiPoly& a, const XiPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const XiPoly& a, const XiPoly& b) { return !(a == b); }

  /// (xi - x0)^k
  static XiPoly linear_power(const GaussianRational& x0, int k) {
    XiPoly r(ScalarRing(1));
    XiPoly l = linear(x0);
    for (int j = 0; j < k; ++j)
      r = r * l;
    return r;
  }

  int h_degree() const {
    int d = -1;
    for (const auto& c : c_)
      d = std::max(d, c.degree());
    return d;
  }

private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero())
      c_.pop_back();
  }
  std::vector<ScalarRing> c_;
};

inline std::string format_xipoly(const XiPoly& p) {
  if (p.is_zero())
    return "0";
  std::string out;
  for (int k = 0; k <= p.degree(); ++k) {
    ScalarRing c = p.coeff(k);
    if (c.is_zero())
      continue;
    std::string cs = format_scalar(c);
    bool atomic = cs.find_first_of("+-", 1) == std::string::npos;
    std::string term;
    if (k == 0)
      term = cs;
    else {
      std::string x = k == 1 ? "xi" : "xi^" + std::to_string(k);
      if (cs == "1")
        term = x;
      else if (cs == "-1")
        term = "-" + x;
      else
        term = (atomic ? cs : "(" + cs + ")") + "*" + x;
    }
    if (!out.empty() && term[0] != '-')
      out += "+";
    out += term;
  }
  return out;
}

// ---------------------------------------------------------------------------
// RationalFn

enum class Pole { Plus, Minus }; // +i, -i

inline GaussianRational pole_location(Pole p) {
  return p == Pole::Plus ? GaussianRational::i() : -GaussianRational::i();
}

class RationalFn {
public:
  RationalFn() = default;
  RationalFn(ScalarRing c) : num_(std::move(c)) {}
  RationalFn(GaussianRational c) : num_(ScalarRing(std::move(c))) {}
  RationalFn(long c) : num_(ScalarRing(c)) {}
  RationalFn(XiPoly num, int p = 0, int q = 0) : num_(std::move(num)), p_(p), q_(q) {
    if (p < 0 || q < 0)
      throw InvalidParameter("negative pole order");
    normalize();
  }

  static RationalFn xi() { return RationalFn(XiPoly::xi()); }
  /// 1 / (1 + xi^2)^k
  static RationalFn inv_norm_power(int k) { return RationalFn(XiPoly(ScalarRing(1)), k, k); }
  /// 1 / (xi -+ i)^k
  static RationalFn pole_power(Pole pole, int k) {
    return pole == Pole::Plus ? RationalFn(XiPoly(ScalarRing(1)), k, 0)
                              : RationalFn(XiPoly(ScalarRing(1)), 0, k);
  }

  /// num / den for an arbitrary denominator; every root of den must be +i or -i.
  static RationalFn from_quotient(XiPoly num, XiPoly den) {
    if (den.is_zero())
      throw InvalidParameter("zero denominator");
    int p = 0, q = 0;
    auto strip = [&](const GaussianRational& x0, int& count) {
      while (den.degree() > 0 && den(x0).is_zero()) {
        den = den.divide_linear(x0);
        ++count;
      }
    };
    strip(GaussianRational::i(), p);
    strip(-GaussianRational::i(), q);
    if (den.degree() > 0)
      throw UnsupportedPole("denominator has roots outside {i, -i}");
    ScalarRing unit = den.coeff(0);
    if (!unit.is_constant())
      throw UnsupportedPole("denominator constant is not a unit");
    return RationalFn(unit.inverse() * num, p, q);
  }

  const XiPoly& numerator() const { return num_; }
  /// Order of the pole at +i.
  int plus_order() const { return p_; }
  /// Order of the pole at -i.
  int minus_order() const { return q_; }
  int order(Pole pole) const { return pole == Pole::Plus ? p_ : q_; }

  XiPoly denominator() const {
    return XiPoly::linear_power(GaussianRational::i(), p_) * XiPoly::linear_power(-GaussianRational::i(), q_);
  }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return p_ == 0 && q_ == 0; }
  /// deg(numerator) - deg(denominator); very negative for zero.
  int degree_at_infinity() const { return is_zero() ? -1000 : num_.degree() - p_ - q_; }
  int h_degree() const { return num_.h_degree(); }

  /// Value at a point that is not a pole.
  ScalarRing operator()(const GaussianRational& x) const {
    ScalarRing d = denominator()(x);
    if (d.is_zero())
      throw InvalidParameter("evaluation at a pole");
    return num_(x) * d.inverse();
  }

  /// Element with every ScalarRing coefficient replaced by its h^k coefficient.
  RationalFn h_part(int k) const {
    std::vector<ScalarRing> c;
    for (const auto& s : num_.coeffs())
      c.emplace_back(s.coeff(k));
    return RationalFn(XiPoly(std::move(c)), p_, q_);
  }

  RationalFn operator-() const {
    RationalFn r = *this;
    r.num_ = -r.num_;
    return r;
  }
  RationalFn& operator+=(const RationalFn& o) {
    if (o.is_zero())
      return *this;
    if (is_zero())
      return *this = o;
    int p = std::max(p_, o.p_), q = std::max(q_, o.q_);
    num_ = lift(num_, p - p_, q - q_) + lift(o.num_, p - o.p_, q - o.q_);
    p_ = p;
    q_ = q;
    normalize();
    return *this;
  }
  RationalFn& operator-=(const RationalFn& o) { return *this += -o; }
  RationalFn& operator*=(const RationalFn& o) {
    if (is_zero() || o.is_zero()) {
      *this = RationalFn();
      return *this;
    }
    num_ = num_ * o.num_;
    p_ += o.p_;
    q_ += o.q_;
    normalize();
    return *this;
  }
  friend RationalFn operator+(RationalFn a, const RationalFn& b) { return a += b; }
  friend RationalFn operator-(RationalFn a, const RationalFn& b) { return a -= b; }
  friend RationalFn operator*(RationalFn a, const RationalFn& b) { return a *= b; }
  friend bool operator==(const RationalFn& a, const RationalFn& b) {
    return a.p_ == b.p_ && a.q_ == b.q_ && a.num_ == b.num_;
  }
  friend bool operator!=(const RationalFn& a, const RationalFn& b) { return !(a == b); }

private:
  static XiPoly lift(const XiPoly& n, int dp, int dq) {
    if (dp == 0 && dq == 0)
      return n;
    return n * XiPoly::linear_power(GaussianRational::i(), dp) * XiPoly::linear_power(-GaussianRational::i(), dq);
  }

  void normalize() {
    if (num_.is_zero()) {
      p_ = q_ = 0;
      return;
    }
    const GaussianRational ip = GaussianRational::i(), im = -GaussianRational::i();
    while (p_ > 0 && num_(ip).is_zero()) {
      num_ = num_.divide_linear(ip);
      --p_;
    }
    while (q_ > 0 && num_(im).is_zero()) {
      num_ = num_.divide_linear(im);
      --q_;
    }
  }

  XiPoly num_;
  int p_ = 0;
  int q_ = 0;
};

inline std::string format_rfn(const RationalFn& f) {
  std::string n = format_xipoly(f.numerator());
  if (f.is_polynomial())
    return n;
  std::string d;
  auto factor = [&](const char* base, int k) {
    if (k == 0)
      return;
    if (!d.empty())
      d += "*";
    d += base;
    if (k > 1)
      d += "^" + std::to_string(k);
  };
  factor("(xi-i)", f.plus_order());
  factor("(xi+i)", f.minus_order());
  return "(" + n + ")/(" + d + ")";
}

inline std::ostream& operator<<(std::ostream& os, const RationalFn& f) { return os << format_rfn(f); }

/// k-th derivative in xi.
inline RationalFn diff_xi(const RationalFn& f, int k = 1) {
  if (k < 0)
    throw InvalidParameter("negative derivative order");
  RationalFn r = f;
  const XiPoly lm = XiPoly::linear(GaussianRational::i());
  const XiPoly lp = XiPoly::linear(-GaussianRational::i());
  for (int step = 0; step < k && !r.is_zero(); ++step) {
    int p = r.plus_order(), q = r.minus_order();
    const XiPoly& n = r.numerator();
    // (N / ((xi-i)^p (xi+i)^q))' = (N' (xi-i)(xi+i) - p N (xi+i) - q N (xi-i)) / ((xi-i)^{p+1} (xi+i)^{q+1})
    XiPoly top = n.derivative() * lm * lp - ScalarRing(static_cast<long>(p)) * (n * lp) -
                 ScalarRing(static_cast<long>(q)) * (n * lm);
    r = RationalFn(std::move(top), p + 1, q + 1);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Partial fractions

struct PartialFractions {
  XiPoly polynomial;
  /// plus[k-1] multiplies (xi - i)^{-k}; minus[k-1] multiplies (xi + i)^{-k}.
  std::vector<ScalarRing> plus;
  std::vector<ScalarRing> minus;

  struct Term {
    Pole pole;
    int order;
    ScalarRing coeff;
  };

  /// Nonzero principal terms, +i first, ascending order.
  std::vector<Term> terms() const {
    std::vector<Term> t;
    for (std::size_t k = 0; k < plus.size(); ++k)
      if (!plus[k].is_zero())
        t.push_back({Pole::Plus, static_cast<int>(k + 1), plus[k]});
    for (std::size_t k = 0; k < minus.size(); ++k)
      if (!minus[k].is_zero())
        t.push_back({Pole::Minus, static_cast<int>(k + 1), minus[k]});
    return t;
  }
};

namespace detail {

/// Principal part of N / ((xi - x0)^p (xi - x1)^q) at x0; returns c[k-1] for (xi - x0)^{-k}.
inline std::vector<ScalarRing> principal_part(const XiPoly& num, const GaussianRational& x0, int p,
                                              const GaussianRational& x1, int q) {
  std::vector<ScalarRing> out(static_cast<std::size_t>(p));
  if (p == 0 || num.is_zero())
    return out;
  std::vector<ScalarRing> nt = num.taylor_at(x0);
  nt.resize(static_cast<std::size_t>(p));
  // (x0 - x1 + t)^{-q} = d^{-q} sum_m binom(-q, m) (t/d)^m,  d = x0 - x1
  GaussianRational d = x0 - x1;
  GaussianRational dinv = d.inverse();
  std::vector<GaussianRational> series(static_cast<std::size_t>(p));
  GaussianRational lead = pow(dinv, q);
  Rational binom(1);
  GaussianRational dpow(1);
  for (int m = 0; m < p; ++m) {
    series[static_cast<std::size_t>(m)] = lead * GaussianRational(binom) * dpow;
    // binom(-q, m+1) = binom(-q, m) * (-q - m) / (m + 1)
    binom = binom * Rational(-q - m) / Rational(m + 1);
    dpow *= dinv;
  }
  for (int k = 1; k <= p; ++k) {
    int m = p - k;
    ScalarRing acc;
    for (int j = 0; j <= m; ++j)
      acc += nt[static_cast<std::size_t>(j)] * ScalarRing(series[static_cast<std::size_t>(m - j)]);
    out[static_cast<std::size_t>(k - 1)] = acc;
  }
  return out;
}

} // namespace detail

inline PartialFractions pf_decompose(const RationalFn& f) {
  PartialFractions pf;
  const GaussianRational ip = GaussianRational::i(), im = -GaussianRational::i();
  pf.polynomial = f.numerator().divmod_monic(f.denominator()).first;
  pf.plus = detail::principal_part(f.numerator(), ip, f.plus_order(), im, f.minus_order());
  pf.minus = detail::principal_part(f.numerator(), im, f.minus_order(), ip, f.plus_order());
  return pf;
}

inline RationalFn recompose(const PartialFractions& pf) {
  RationalFn r(pf.polynomial);
  for (std::size_t k = 0; k < pf.plus.size(); ++k)
    if (!pf.plus[k].is_zero())
      r += RationalFn(XiPoly(pf.plus[k]), static_cast<int>(k + 1), 0);
  for (std::size_t k = 0; k < pf.minus.size(); ++k)
    if (!pf.minus[k].is_zero())
      r += RationalFn(XiPoly(pf.minus[k]), 0, static_cast<int>(k + 1));
  return r;
}

/// The H^+ component: partial-fraction terms with pole at +i.
inline RationalFn pi_plus(const RationalFn& f) {
  if (f.plus_order() == 0)
    return {};
  auto pp = detail::principal_part(f.numerator(), GaussianRational::i(), f.plus_order(),
                                   -GaussianRational::i(), f.minus_order());
  // sum_k c_k (xi - i)^{p-k} over (xi - i)^p
  int p = f.plus_order();
  XiPoly num;
  for (int k = 1; k <= p; ++k)
    num += pp[static_cast<std::size_t>(k - 1)] * XiPoly::linear_power(GaussianRational::i(), p - k);
  return RationalFn(std::move(num), p, 0);
}

/// Sum of residues at +i.
inline ScalarRing residue_plus(const RationalFn& f) {
  auto pp = detail::principal_part(f.numerator(), GaussianRational::i(), f.plus_order(),
                                   -GaussianRational::i(), f.minus_order());
  return pp.empty() ? ScalarRing() : pp.front();
}

/// (1 / 2pi) times the integral over a contour enclosing the upper half-plane poles.
inline ScalarRing pi_prime(const RationalFn& f) { return ScalarRing(GaussianRational::i()) * residue_plus(f); }

/// Integral over the real line, returned as the coefficient of pi.
inline ScalarRing integrate_line(const RationalFn& f) {
  if (f.is_zero())
    return {};
  if (f.degree_at_infinity() > -2)
    throw IntegrabilityError("integrand " + format_rfn(f) + " does not decay like xi^-2");
  return ScalarRing(GaussianRational(0, 2)) * residue_plus(f);
}

} // namespace ncwres
