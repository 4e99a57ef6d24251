#ifndef PF_RATIONAL_HPP
#define PF_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <Eigen/Core>

namespace pf {

/// Exact rational number, always kept in lowest terms with a positive denominator.
class Rational
{
public:
  Rational() = default;
  Rational(int v) : value_(v) {}
  Rational(long v) : value_(v) {}
  Rational(long long v) : value_(static_cast<long>(v)) {}
  Rational(long num, long den);
  explicit Rational(const mpz_class& v) : value_(v) {}
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(const mpq_class& v) : value_(v) { value_.canonicalize(); }

  /// Parses "p", "-p" or "p/q".
  static Rational from_string(std::string_view s);

  const mpq_class& mpq() const { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }
  double to_double() const { return value_.get_d(); }
  std::string to_string() const { return value_.get_str(); }

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
  {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

private:
  mpq_class value_{0};
};

Rational abs(const Rational& r);
Rational pow(const Rational& r, int e);

using RatMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

} // namespace pf

namespace Eigen {

template<>
struct NumTraits<pf::Rational> : GenericNumTraits<pf::Rational>
{
  typedef pf::Rational Real;
  typedef pf::Rational NonInteger;
  typedef pf::Rational Literal;
  typedef pf::Rational Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 50,
    MulCost = 100
  };
  static inline Real epsilon() { return pf::Rational(0); }
  static inline Real dummy_precision() { return pf::Rational(0); }
  static inline int digits10() { return 0; }
};

} // namespace Eigen

#endif // PF_RATIONAL_HPP
