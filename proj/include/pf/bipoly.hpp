#ifndef PF_BIPOLY_HPP
#define PF_BIPOLY_HPP

#include <algorithm>
#include <complex>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pf/errors.hpp"
#include "pf/rational.hpp"
#include "pf/upoly.hpp"

namespace pf {

enum class Var { x, y };

/// x^a y^b
struct Monomial
{
  int a = 0;
  int b = 0;

  int degree() const { return a + b; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend Monomial operator*(const Monomial& m, const Monomial& n) { return {m.a + n.a, m.b + n.b}; }

  std::string to_string() const;
};

/// Global monomial order: by total degree, then x before y (x^2 < xy < y^2).
struct GradedLex
{
  bool operator()(const Monomial& m, const Monomial& n) const
  {
    if (m.degree() != n.degree()) return m.degree() < n.degree();
    return m.a > n.a;
  }
};

/// All monomials of total degree d, in GradedLex order.
std::vector<Monomial> monomials_of_degree(int d);
/// All monomials of total degree <= d, in GradedLex order.
std::vector<Monomial> monomials_up_to(int d);

/// Sparse polynomial in x, y. No stored coefficient is zero.
template<typename Scalar>
class BiPoly
{
public:
  using TermMap = std::map<Monomial, Scalar, GradedLex>;

  BiPoly() = default;
  BiPoly(const Scalar& c) { add_term({0, 0}, c); }
  BiPoly(int c) : BiPoly(Scalar(c)) {}

  static BiPoly term(const Scalar& c, int a, int b)
  {
    BiPoly p;
    p.add_term({a, b}, c);
    return p;
  }
  static BiPoly x() { return term(Scalar(1), 1, 0); }
  static BiPoly y() { return term(Scalar(1), 0, 1); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  int degree() const { return terms_.empty() ? kZeroDegree : terms_.rbegin()->first.degree(); }
  int degree_in(Var v) const
  {
    int d = kZeroDegree;
    for (const auto& [m, c] : terms_) d = std::max(d, v == Var::x ? m.a : m.b);
    return d;
  }
  bool is_homogeneous() const
  {
    return terms_.empty() || terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
  }

  Scalar coeff(const Monomial& m) const
  {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
  }
  Scalar coeff(int a, int b) const { return coeff(Monomial{a, b}); }

  void add_term(const Monomial& m, const Scalar& c)
  {
    if (is_zero_scalar(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (is_zero_scalar(it->second)) terms_.erase(it);
    }
  }

  BiPoly homogeneous_part(int d) const
  {
    BiPoly r;
    for (const auto& [m, c] : terms_)
      if (m.degree() == d) r.terms_.emplace(m, c);
    return r;
  }

  BiPoly& operator+=(const BiPoly& o)
  {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  BiPoly& operator-=(const BiPoly& o)
  {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  BiPoly operator-() const
  {
    BiPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  friend BiPoly operator+(BiPoly p, const BiPoly& q) { return p += q; }
  friend BiPoly operator-(BiPoly p, const BiPoly& q) { return p -= q; }
  friend BiPoly operator*(const BiPoly& p, const BiPoly& q)
  {
    BiPoly r;
    for (const auto& [m, c] : p.terms_)
      for (const auto& [n, d] : q.terms_) r.add_term(m * n, c * d);
    return r;
  }
  friend BiPoly operator*(const Scalar& s, const BiPoly& p)
  {
    if (is_zero_scalar(s)) return BiPoly();
    BiPoly r = p;
    for (auto& [m, c] : r.terms_) c = s * c;
    return r;
  }
  BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }
  friend bool operator==(const BiPoly& p, const BiPoly& q) { return p.terms_ == q.terms_; }

  /// Multiply by the monomial m.
  BiPoly shifted(const Monomial& m) const
  {
    BiPoly r;
    for (const auto& [n, c] : terms_) r.terms_.emplace(n * m, c);
    return r;
  }

  template<typename T>
  T operator()(const T& xv, const T& yv) const
  {
    if (terms_.empty()) return T(0);
    int dx = degree_in(Var::x), dy = degree_in(Var::y);
    std::vector<T> px(dx + 1, T(1)), py(dy + 1, T(1));
    for (int i = 1; i <= dx; ++i) px[i] = px[i - 1] * xv;
    for (int i = 1; i <= dy; ++i) py[i] = py[i - 1] * yv;
    T acc(0);
    for (const auto& [m, c] : terms_) acc = acc + convert<T>(c) * px[m.a] * py[m.b];
    return acc;
  }

  /// Human-readable and re-parseable form, highest degree first.
  std::string to_string() const
  {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Descending degree; within a degree keep x-first order.
    std::vector<std::pair<Monomial, Scalar>> ts(terms_.begin(), terms_.end());
    std::stable_sort(ts.begin(), ts.end(), [](const auto& u, const auto& v) {
      if (u.first.degree() != v.first.degree()) return u.first.degree() > v.first.degree();
      return u.first.a > v.first.a;
    });
    for (const auto& [m, c] : ts) {
      std::ostringstream cs;
      cs << c;
      std::string s = cs.str();
      bool neg = !s.empty() && s[0] == '-';
      if (neg) s.erase(0, 1);
      if (first) os << (neg ? "-" : "");
      else os << (neg ? " - " : " + ");
      first = false;
      if (m.degree() == 0) {
        os << s;
        continue;
      }
      if (s != "1") os << s << "*";
      os << m.to_string();
    }
    return os.str();
  }

private:
  template<typename T>
  static T convert(const Scalar& v)
  {
    if constexpr (std::is_same_v<Scalar, Rational> && !std::is_same_v<T, Rational>)
      return T(v.to_double());
    else
      return T(v);
  }

  TermMap terms_;
};

using RatBiPoly = BiPoly<Rational>;
using CBiPoly = BiPoly<std::complex<double>>;

template<typename Scalar>
BiPoly<Scalar> partial_derivative(const BiPoly<Scalar>& p, Var v)
{
  BiPoly<Scalar> r;
  for (const auto& [m, c] : p.terms()) {
    int e = v == Var::x ? m.a : m.b;
    if (e == 0) continue;
    Monomial n = v == Var::x ? Monomial{m.a - 1, m.b} : Monomial{m.a, m.b - 1};
    r.add_term(n, Scalar(e) * c);
  }
  return r;
}

template<typename Scalar>
BiPoly<Scalar> highest_homogeneous_part(const BiPoly<Scalar>& p)
{
  if (p.is_zero()) throw ZeroPolynomial("highest homogeneous part of the zero polynomial");
  return p.homogeneous_part(p.degree());
}

template<typename Scalar>
BiPoly<Scalar> pow(const BiPoly<Scalar>& p, int e)
{
  BiPoly<Scalar> r(Scalar(1));
  for (int i = 0; i < e; ++i) r = r * p;
  return r;
}

/// p(sx, sy): substitutes polynomials for both variables.
template<typename Scalar>
BiPoly<Scalar> substitute(const BiPoly<Scalar>& p, const BiPoly<Scalar>& sx, const BiPoly<Scalar>& sy)
{
  BiPoly<Scalar> r;
  for (const auto& [m, c] : p.terms()) r += c * (pow(sx, m.a) * pow(sy, m.b));
  return r;
}

inline CBiPoly to_complex(const RatBiPoly& p)
{
  CBiPoly r;
  for (const auto& [m, c] : p.terms()) r.add_term(m, std::complex<double>(c.to_double(), 0.0));
  return r;
}

/// p as a polynomial in `v` whose coefficients are univariate in the other variable.
std::vector<RatUPoly> coefficients_in(const RatBiPoly& p, Var v);

} // namespace pf

#endif // PF_BIPOLY_HPP
