#ifndef PF_LINALG_HPP
#define PF_LINALG_HPP

#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "pf/rational.hpp"
#include "pf/upoly.hpp"

namespace pf {

inline mpz_class exact_div(const mpz_class& a, const mpz_class& b)
{
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline bool is_zero_scalar(const mpz_class& v) { return sgn(v) == 0; }

/// Fraction-free determinant over an integral domain that supports exact_div.
template<typename Ring>
Ring bareiss_determinant(std::vector<std::vector<Ring>> m)
{
  const std::size_t n = m.size();
  if (n == 0) return Ring(1);
  Ring prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero_scalar(m[k][k])) {
      std::size_t r = k + 1;
      while (r < n && is_zero_scalar(m[r][k])) ++r;
      if (r == n) return Ring(0);
      std::swap(m[k], m[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
      m[i][k] = Ring(0);
    }
    prev = m[k][k];
  }
  Ring det = m[n - 1][n - 1];
  return negate ? Ring(-det) : det;
}

/// Echelon factorization of a rational matrix by integer Bareiss elimination.
/// Pivoting: leftmost pivot column, first nonzero row. Keeps the row transform,
/// so repeated right-hand sides cost only a matrix-vector product and a back solve.
class ExactFactorization
{
public:
  explicit ExactFactorization(const RatMatrix& m);

  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots_.size()); }
  const std::vector<Eigen::Index>& pivot_columns() const { return pivots_; }

  /// One solution with all free variables zero, or nullopt when rhs is outside the column span.
  std::optional<RatVector> solve(const RatVector& rhs) const;

  /// Basis of the right kernel, one vector per free column.
  std::vector<RatVector> nullspace() const;

private:
  Eigen::Index rows_ = 0, cols_ = 0;
  std::vector<mpz_class> row_scale_;
  std::vector<std::vector<mpz_class>> echelon_;   // rows_ x cols_
  std::vector<std::vector<mpz_class>> transform_; // rows_ x rows_
  std::vector<Eigen::Index> pivots_;
};

std::optional<RatVector> exact_solve(const RatMatrix& m, const RatVector& rhs);

Eigen::Index rank(const RatMatrix& m);

Rational determinant(const RatMatrix& m);

/// det(M0 + t*M1 + ...) for a matrix with polynomial entries.
RatUPoly determinant(const std::vector<std::vector<RatUPoly>>& m);

/// Monic characteristic polynomial det(t - M), via exact Hessenberg reduction.
RatUPoly characteristic_polynomial(const RatMatrix& m);

/// Monic minimal polynomial, as the lcm of the Krylov minimal polynomials of the unit vectors.
RatUPoly minimal_polynomial(const RatMatrix& m);

/// p(M) by Horner's rule.
RatMatrix evaluate(const RatUPoly& p, const RatMatrix& m);

bool is_zero(const RatMatrix& m);

} // namespace pf

#endif // PF_LINALG_HPP
