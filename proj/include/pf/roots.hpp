#ifndef PF_ROOTS_HPP
#define PF_ROOTS_HPP

#include <complex>
#include <vector>

#include "pf/upoly.hpp"

namespace pf {

using cplx = std::complex<double>;

struct Root
{
  cplx value;
  int multiplicity = 1;
};

/// Roots of a polynomial with complex coefficients (constant term first),
/// companion-matrix eigenvalues followed by Newton polishing.
std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs);

/// Roots of an exact polynomial with multiplicities. Multiplicities come from
/// the exact squarefree decomposition, not from numeric clustering.
std::vector<Root> complex_roots(const RatUPoly& p);

/// Roots of a squarefree exact polynomial, each polished against it.
std::vector<cplx> simple_roots(const RatUPoly& f);

/// Expand a root list into a flat multiset.
std::vector<cplx> expand(const std::vector<Root>& roots);

/// Largest distance in a greedy nearest-neighbour pairing of two equally sized
/// multisets; infinity when the sizes differ.
double multiset_distance(std::vector<cplx> a, std::vector<cplx> b);

} // namespace pf

#endif // PF_ROOTS_HPP
