#ifndef PF_UPOLY_HPP
#define PF_UPOLY_HPP

#include <algorithm>
#include <complex>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pf/errors.hpp"
#include "pf/rational.hpp"

namespace pf {

/// Degree reported for the zero polynomial / zero form. Far enough from
/// INT_MIN that adding a few small degrees never overflows.
inline constexpr int kZeroDegree = std::numeric_limits<int>::min() / 4;

inline bool is_zero_scalar(const Rational& v) { return v.is_zero(); }
template<typename T>
bool is_zero_scalar(const std::complex<T>& v) { return v == std::complex<T>(0); }
inline bool is_zero_scalar(double v) { return v == 0.0; }

/// Dense univariate polynomial, coefficients stored from the constant term up.
template<typename Scalar>
class UPoly
{
public:
  UPoly() = default;
  explicit UPoly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }
  UPoly(const Scalar& constant) : c_{constant} { trim(); }

  static UPoly monomial(const Scalar& coeff, int degree)
  {
    std::vector<Scalar> c(static_cast<std::size_t>(degree) + 1, Scalar(0));
    c.back() = coeff;
    return UPoly(std::move(c));
  }
  static UPoly variable() { return monomial(Scalar(1), 1); }

  int degree() const { return c_.empty() ? kZeroDegree : static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar coeff(int k) const
  {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Scalar(0);
  }
  const Scalar& leading() const { return c_.back(); }

  template<typename T>
  T operator()(const T& x) const
  {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
      acc = acc * x + convert<T>(*it);
    return acc;
  }

  UPoly& operator+=(const UPoly& o)
  {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& o)
  {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  UPoly operator-() const
  {
    UPoly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b)
  {
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<Scalar> c(a.c_.size() + b.c_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (is_zero_scalar(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(c));
  }
  friend UPoly operator*(const Scalar& s, const UPoly& a)
  {
    UPoly r = a;
    for (auto& v : r.c_) v = s * v;
    r.trim();
    return r;
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  /// Euclidean division over a field: a = q*b + r, deg r < deg b.
  friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b)
  {
    if (b.is_zero()) throw DegenerateInput("polynomial division by zero");
    std::vector<Scalar> r = a.c_;
    int db = b.degree();
    int da = a.degree();
    if (da < db) return {UPoly(), a};
    std::vector<Scalar> q(static_cast<std::size_t>(da - db) + 1, Scalar(0));
    const Scalar lead = b.leading();
    for (int k = da; k >= db; --k) {
      if (is_zero_scalar(r[k])) continue;
      Scalar f = r[k] / lead;
      q[k - db] = f;
      for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.c_[j];
    }
    r.resize(static_cast<std::size_t>(db));
    return {UPoly(std::move(q)), UPoly(std::move(r))};
  }

  /// Quotient of a division known to be exact.
  friend UPoly exact_div(const UPoly& a, const UPoly& b)
  {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw InternalRankError("exact_div: nonzero remainder");
    return q;
  }

  UPoly derivative() const
  {
    if (c_.size() <= 1) return UPoly();
    std::vector<Scalar> d(c_.size() - 1, Scalar(0));
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = Scalar(static_cast<long>(i)) * c_[i];
    return UPoly(std::move(d));
  }

  UPoly monic() const
  {
    if (is_zero()) return *this;
    Scalar inv = Scalar(1) / leading();
    return inv * *this;
  }

  std::string to_string(char var = 't') const
  {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
      const Scalar& v = c_[k];
      if (is_zero_scalar(v)) continue;
      std::ostringstream cs;
      cs << v;
      std::string s = cs.str();
      bool neg = !s.empty() && s[0] == '-';
      if (neg) s.erase(0, 1);
      if (first) os << (neg ? "-" : "");
      else os << (neg ? " - " : " + ");
      first = false;
      if (k == 0) os << s;
      else {
        if (s != "1") os << s << "*";
        os << var;
        if (k > 1) os << "^" << k;
      }
    }
    return os.str();
  }

private:
  template<typename T>
  static T convert(const Scalar& v)
  {
    if constexpr (std::is_same_v<Scalar, Rational>) {
      if constexpr (std::is_same_v<T, Rational>) return v;
      else return T(v.to_double());
    } else {
      return T(v);
    }
  }

  void trim()
  {
    while (!c_.empty() && is_zero_scalar(c_.back())) c_.pop_back();
  }

  std::vector<Scalar> c_;
};

using RatUPoly = UPoly<Rational>;

template<typename Scalar>
bool is_zero_scalar(const UPoly<Scalar>& p) { return p.is_zero(); }

/// Monic gcd over a field.
template<typename Scalar>
UPoly<Scalar> gcd(UPoly<Scalar> a, UPoly<Scalar> b)
{
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

template<typename Scalar>
bool is_squarefree(const UPoly<Scalar>& p)
{
  if (p.degree() <= 1) return true;
  return gcd(p, p.derivative()).is_constant();
}

/// Yun's algorithm: p = lc * prod_k f_k^k with f_k monic, squarefree, pairwise coprime.
/// Entry k-1 of the result holds f_k (possibly constant 1).
template<typename Scalar>
std::vector<UPoly<Scalar>> squarefree_decomposition(const UPoly<Scalar>& p)
{
  std::vector<UPoly<Scalar>> out;
  if (p.degree() <= 0) return out;
  UPoly<Scalar> a = p.monic();
  UPoly<Scalar> b = gcd(a, a.derivative());
  UPoly<Scalar> c = exact_div(a, b);
  UPoly<Scalar> d = exact_div(a.derivative(), b) - c.derivative();
  while (c.degree() > 0) {
    UPoly<Scalar> f = gcd(c, d);
    out.push_back(f);
    c = exact_div(c, f);
    d = exact_div(d, f) - c.derivative();
  }
  while (!out.empty() && out.back().degree() == 0) out.pop_back();
  return out;
}

} // namespace pf

#endif // PF_UPOLY_HPP
