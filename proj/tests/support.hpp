#ifndef PF_TESTS_SUPPORT_HPP
#define PF_TESTS_SUPPORT_HPP

#include <random>

#include "pf/bipoly.hpp"
#include "pf/forms.hpp"
#include "pf/linalg.hpp"
#include "pf/milnor.hpp"
#include "pf/parse.hpp"
#include "pf/picard_fuchs.hpp"

namespace pf::test {

inline RatBiPoly P(const char* s) { return parse_polynomial(s); }

inline Rational random_rational(std::mt19937& rng, int range = 5, int max_den = 3)
{
  std::uniform_int_distribution<int> num(-range, range), den(1, max_den);
  return Rational(num(rng), den(rng));
}

/// Dense random polynomial of total degree <= deg, roughly `density` of the terms nonzero.
inline RatBiPoly random_poly(std::mt19937& rng, int deg, double density = 0.6, int range = 5)
{
  std::bernoulli_distribution keep(density);
  RatBiPoly p;
  for (const Monomial& m : monomials_up_to(deg))
    if (keep(rng)) p.add_term(m, random_rational(rng, range));
  return p;
}

inline OneForm random_form(std::mt19937& rng, int deg)
{
  return {random_poly(rng, deg - 1), random_poly(rng, deg - 1)};
}

/// Random Hamiltonian of exact degree `deg`, regular at infinity, small integer coefficients.
inline RatBiPoly random_regular(std::mt19937& rng, int deg)
{
  std::uniform_int_distribution<int> c(-3, 3);
  for (;;) {
    RatBiPoly H;
    for (const Monomial& m : monomials_up_to(deg)) {
      if (m.degree() == 0) continue;
      int v = c(rng);
      if (v != 0) H.add_term(m, Rational(v));
    }
    if (H.degree() != deg) continue;
    if (check_regular_at_infinity(H).regular) return H;
  }
}

/// Morse-plus: regular at infinity and mu pairwise distinct critical values,
/// i.e. charpoly(A) squarefree.
inline bool is_morse_plus(const PFSystem& sys)
{
  return is_squarefree(characteristic_polynomial(sys.A));
}

inline RatMatrix random_matrix(std::mt19937& rng, int rows, int cols, int range = 4)
{
  RatMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = random_rational(rng, range, 2);
  return m;
}

} // namespace pf::test

#endif // PF_TESTS_SUPPORT_HPP
