#include "pf/rational.hpp"

#include <string>

#include "pf/errors.hpp"

namespace pf {

Rational::Rational(long num, long den)
{
  if (den == 0) throw DegenerateInput("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den)
{
  if (sgn(den) == 0) throw DegenerateInput("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational Rational::from_string(std::string_view s)
{
  std::string str(s);
  auto slash = str.find('/');
  try {
    if (slash == std::string::npos) return Rational(mpz_class(str, 10));
    return Rational(mpz_class(str.substr(0, slash), 10), mpz_class(str.substr(slash + 1), 10));
  } catch (const std::invalid_argument&) {
    throw DegenerateInput("not a rational number: '" + str + "'");
  }
}

Rational& Rational::operator/=(const Rational& o)
{
  if (o.is_zero()) throw DegenerateInput("rational division by zero");
  value_ /= o.value_;
  return *this;
}

Rational abs(const Rational& r)
{
  return r.sign() < 0 ? -r : r;
}

Rational pow(const Rational& r, int e)
{
  if (e < 0) return Rational(1) / pow(r, -e);
  Rational out(1);
  for (int i = 0; i < e; ++i) out *= r;
  return out;
}

} // namespace pf
