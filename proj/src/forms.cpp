#include "pf/forms.hpp"

#include "pf/errors.hpp"

namespace pf {

OneForm canonical_primitive(const Monomial& m)
{
  const Rational s(1, m.a + m.b + 2);
  return {RatBiPoly::term(-s, m.a, m.b + 1), RatBiPoly::term(s, m.a + 1, m.b)};
}

OneForm radial_primitive(const TwoForm& w)
{
  OneForm out;
  for (const auto& [m, c] : w.F.terms()) out += c * canonical_primitive(m);
  return out;
}

RatBiPoly exact_potential(const OneForm& w)
{
  if (!exterior_derivative(w).is_zero()) throw DegenerateInput("exact_potential: form is not closed");
  // Homotopy formula: f = int_0^1 (x P(sx,sy) + y Q(sx,sy)) ds.
  RatBiPoly f;
  for (const auto& [m, c] : w.P.terms()) f.add_term({m.a + 1, m.b}, c / Rational(m.degree() + 1));
  for (const auto& [m, c] : w.Q.terms()) f.add_term({m.a, m.b + 1}, c / Rational(m.degree() + 1));
  return f;
}

} // namespace pf
