#ifndef PF_PETROV_HPP
#define PF_PETROV_HPP

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "pf/forms.hpp"
#include "pf/linalg.hpp"
#include "pf/milnor.hpp"
#include "pf/upoly.hpp"

namespace pf {

/// w = sum_i p_i(H) w_i + g dH + df, with (n+1) deg p_i + deg w_i <= deg w.
struct PetrovDecomposition
{
  std::vector<RatUPoly> coeff_polys;
  RatBiPoly witness_g;
  RatBiPoly witness_f;
};

/// Decomposes 1-forms in the Petrov module over a fixed basis. The truncated
/// linear system depends only on deg w, so its factorization is cached per degree.
class PetrovDecomposer
{
public:
  explicit PetrovDecomposer(MilnorBasis basis);

  const MilnorBasis& basis() const { return basis_; }

  /// Throws NoSolution when the truncated system is inconsistent and
  /// InternalRankError when the Petrov coefficients are not unique.
  PetrovDecomposition decompose(const OneForm& w) const;

private:
  struct Unknown
  {
    std::size_t form = 0; // basis index, c-unknowns only
    int power = 0;        // exponent of H, c-unknowns only
    Monomial mono;        // g-unknowns only
    bool is_c = true;
  };
  struct Layout
  {
    std::vector<Unknown> unknowns;
    std::vector<OneForm> columns; // the 1-form each unknown multiplies
    std::vector<Monomial> rows;   // 2-form coordinates
    std::unique_ptr<ExactFactorization> factor;
  };

  const Layout& layout(int degree) const;
  const RatBiPoly& power_of_H(int k) const;

  MilnorBasis basis_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::unique_ptr<Layout>> layouts_;
  mutable std::vector<RatBiPoly> h_powers_;
};

PetrovDecomposition petrov_decompose(const OneForm& w, const MilnorBasis& basis);

bool petrov_class_is_zero(const OneForm& w, const MilnorBasis& basis);

/// w - sum_i p_i(H) w_i - g dH - df; zero for a valid certificate.
OneForm petrov_certificate_residual(const OneForm& w, const PetrovDecomposition& dec, const MilnorBasis& basis);

/// p(H) as a bivariate polynomial.
RatBiPoly compose(const RatUPoly& p, const RatBiPoly& H);

} // namespace pf

#endif // PF_PETROV_HPP
