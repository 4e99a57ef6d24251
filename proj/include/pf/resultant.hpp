#ifndef PF_RESULTANT_HPP
#define PF_RESULTANT_HPP

#include "pf/bipoly.hpp"
#include "pf/upoly.hpp"

namespace pf {

/// Sylvester resultant of p and q with respect to `v`, as a univariate
/// polynomial in the remaining variable.
RatUPoly resultant(const RatBiPoly& p, const RatBiPoly& q, Var v);

/// Resultant of two univariate polynomials (a constant).
Rational resultant(const RatUPoly& p, const RatUPoly& q);

} // namespace pf

#endif // PF_RESULTANT_HPP
