#include "pf/resultant.hpp"

#include "pf/errors.hpp"
#include "pf/linalg.hpp"

namespace pf {

namespace {

template<typename Coeff>
std::vector<std::vector<Coeff>> sylvester(const std::vector<Coeff>& p, const std::vector<Coeff>& q)
{
  // p, q: coefficients from the constant term up.
  const int dp = static_cast<int>(p.size()) - 1;
  const int dq = static_cast<int>(q.size()) - 1;
  const int n = dp + dq;
  std::vector<std::vector<Coeff>> s(n, std::vector<Coeff>(n, Coeff(0)));
  for (int r = 0; r < dq; ++r)
    for (int k = 0; k <= dp; ++k) s[r][r + k] = p[dp - k];
  for (int r = 0; r < dp; ++r)
    for (int k = 0; k <= dq; ++k) s[dq + r][r + k] = q[dq - k];
  return s;
}

} // namespace

RatUPoly resultant(const RatBiPoly& p, const RatBiPoly& q, Var v)
{
  const int dp = p.is_zero() ? kZeroDegree : p.degree_in(v);
  const int dq = q.is_zero() ? kZeroDegree : q.degree_in(v);
  if (dp < 0 || dq < 0) throw DegenerateInput("resultant of a zero polynomial");
  if (dp == 0 && dq == 0) throw DegenerateInput("resultant: both polynomials are constant in the eliminated variable");
  auto cp = coefficients_in(p, v);
  auto cq = coefficients_in(q, v);
  return determinant(sylvester(cp, cq));
}

Rational resultant(const RatUPoly& p, const RatUPoly& q)
{
  if (p.is_zero() || q.is_zero()) return Rational(0);
  auto s = sylvester(p.coeffs(), q.coeffs());
  if (s.empty()) return Rational(1);
  RatMatrix m(s.size(), s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) m(i, j) = s[i][j];
  return determinant(m);
}

} // namespace pf
