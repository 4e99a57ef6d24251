#ifndef PF_MILNOR_HPP
#define PF_MILNOR_HPP

#include <optional>
#include <string>
#include <vector>

#include "pf/bipoly.hpp"
#include "pf/forms.hpp"
#include "pf/rational.hpp"
#include "pf/roots.hpp"

namespace pf {

struct RegularityReport
{
  int degree_H = 0;
  int n = 0;
  int mu = 0;
  bool regular = false;
  std::string reason;
};

/// Regular at infinity <=> the top homogeneous part is a product of pairwise
/// distinct linear forms. Decided exactly.
RegularityReport check_regular_at_infinity(const RatBiPoly& H);

/// Ordered monomial basis m_1..m_mu of C[x,y]/<H_x, H_y> together with the
/// radial primitives w_i, dw_i = m_i dx^dy.
struct MilnorBasis
{
  RatBiPoly H;
  int n = 0;
  int mu = 0;
  std::vector<Monomial> monomials;
  std::vector<OneForm> primitives;
  bool standard_grid = false;

  RatBiPoly Hx, Hy;         // gradient
  RatBiPoly top_Hx, top_Hy; // its top homogeneous parts

  int form_degree(std::size_t i) const { return monomials[i].degree() + 2; }
  std::optional<std::size_t> index_of(const Monomial& m) const;
};

/// Standard n x n grid when it is a basis, otherwise a graded greedy monomial
/// basis. Sorted by (degree, x-exponent descending). Throws NotRegular.
MilnorBasis monomial_basis(const RatBiPoly& H);

/// Validates a caller-supplied monomial list (order kept as given).
/// Throws NotRegular or DegenerateInput when the list is not a basis.
MilnorBasis make_basis(const RatBiPoly& H, const std::vector<Monomial>& monomials);

/// P = sum_i c_i m_i + quotB * H_x - quotA * H_y
struct GradientReduction
{
  RatVector remainder_coeffs;
  RatBiPoly quotA;
  RatBiPoly quotB;
};

GradientReduction reduce_mod_gradient(const RatBiPoly& P, const MilnorBasis& basis);

/// Omega = dH ^ eta + sum_i c_i dw_i
struct TwoFormDivision
{
  OneForm eta;
  RatVector coeffs;
};

TwoFormDivision divide_two_form(const TwoForm& omega, const MilnorBasis& basis);

/// Row i holds the coordinates of H * m_i modulo the gradient ideal.
RatMatrix multiplication_matrix(const MilnorBasis& basis);

struct CriticalPoint
{
  cplx x, y, t;
  int multiplicity = 1;
};

struct CriticalPointOptions
{
  double cluster_radius = 1e-6;
  int max_shear_attempts = 12;
};

/// Critical points from the resultant Res_y(H_x, H_y), independent of the
/// Milnor-algebra machinery. Multiplicities sum to mu.
std::vector<CriticalPoint> critical_points_numeric(const RatBiPoly& H, const CriticalPointOptions& opts = {});

} // namespace pf

#endif // PF_MILNOR_HPP
