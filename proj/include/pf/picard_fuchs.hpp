#ifndef PF_PICARD_FUCHS_HPP
#define PF_PICARD_FUCHS_HPP

#include <string>
#include <vector>

#include "pf/milnor.hpp"
#include "pf/petrov.hpp"

namespace pf {

/// (t - A) X' = (B0 + t B1) X for the period matrix X of the basis forms
/// (rows index forms, columns cycles).
struct PFSystem
{
  MilnorBasis basis;
  RatMatrix A, B0, B1;
  std::vector<Rational> D;                   // deg w_i / (n+1)
  std::vector<OneForm> etas;                 // H dw_i = dH ^ eta_i + sum_j A_ij dw_j
  std::vector<PetrovDecomposition> petrov;   // certificates for eta_i
  std::vector<CriticalPoint> critical_points; // numeric oracle, may be empty
  std::string numeric_note;                  // why critical_points is empty, if it is
};

PFSystem build_system(const RatBiPoly& H);
PFSystem build_system(const MilnorBasis& basis);

/// Critical values with multiplicities, grouped from the critical points.
std::vector<Root> critical_values(const PFSystem& sys, double merge_tol = 1e-8);

struct ValidationOptions
{
  double spectrum_tol = 1e-8;
  double eigenvector_tol = 1e-6;
};

struct ValidationReport
{
  bool identity_ok = false;
  bool spectrum_ok = false;
  bool eigenvector_ok = false;
  bool b0_triangular_ok = false;
  bool b0_diagonal_ok = false;
  bool b1_triangular_ok = false;
  bool b1_square_zero_ok = false;
  bool b_invertible_ok = false;

  double spectrum_distance = 0.0;
  double eigenvector_residual = 0.0;
  RatUPoly det_B;
  std::string details;

  bool all_ok() const
  {
    return identity_ok && spectrum_ok && eigenvector_ok && b0_triangular_ok && b0_diagonal_ok && b1_triangular_ok
           && b1_square_zero_ok && b_invertible_ok;
  }
};

ValidationReport validate_system(const PFSystem& sys, const ValidationOptions& opts = {});

/// Spectrum of A as numeric roots of its exact characteristic polynomial.
std::vector<Root> spectrum(const RatMatrix& A);

struct SingularityClassification
{
  bool finite_fuchsian = false;       // minimal polynomial of A squarefree
  bool infinity_fuchsian_form = false; // B1 == 0
  RatUPoly minimal_polynomial;
  std::string details;
};

SingularityClassification classify_singularities(const PFSystem& sys);

enum class Format { json, latex, text };

std::string serialize_system(const PFSystem& sys, Format format);

/// Matrices and metadata recovered from the JSON serialization.
struct SerializedSystem
{
  RatBiPoly hamiltonian;
  int n = 0;
  int mu = 0;
  std::vector<Monomial> basis;
  RatMatrix A, B0, B1;
  std::vector<Rational> D;
};

SerializedSystem parse_system_json(const std::string& text);

} // namespace pf

#endif // PF_PICARD_FUCHS_HPP
