#include "pf/bipoly.hpp"

namespace pf {

std::string Monomial::to_string() const
{
  if (a == 0 && b == 0) return "1";
  std::string s;
  if (a > 0) s += a == 1 ? "x" : "x^" + std::to_string(a);
  if (b > 0) {
    if (!s.empty()) s += "*";
    s += b == 1 ? "y" : "y^" + std::to_string(b);
  }
  return s;
}

std::vector<Monomial> monomials_of_degree(int d)
{
  std::vector<Monomial> out;
  for (int a = d; a >= 0; --a) out.push_back({a, d - a});
  return out;
}

std::vector<Monomial> monomials_up_to(int d)
{
  std::vector<Monomial> out;
  for (int k = 0; k <= d; ++k)
    for (const auto& m : monomials_of_degree(k)) out.push_back(m);
  return out;
}

std::vector<RatUPoly> coefficients_in(const RatBiPoly& p, Var v)
{
  if (p.is_zero()) return {};
  const int deg = p.degree_in(v);
  const int other = p.degree_in(v == Var::x ? Var::y : Var::x);
  std::vector<std::vector<Rational>> c(deg + 1, std::vector<Rational>(other + 1, Rational(0)));
  for (const auto& [m, coeff] : p.terms()) {
    if (v == Var::x) c[m.a][m.b] = coeff;
    else c[m.b][m.a] = coeff;
  }
  std::vector<RatUPoly> out;
  for (auto& row : c) out.emplace_back(std::move(row));
  return out;
}

} // namespace pf
