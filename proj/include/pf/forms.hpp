#ifndef PF_FORMS_HPP
#define PF_FORMS_HPP

#include <algorithm>
#include <string>

#include "pf/bipoly.hpp"

namespace pf {

/// Polynomial 1-form P dx + Q dy. deg(x^a y^b dx) = a + b + 1.
template<typename Scalar>
struct BasicOneForm
{
  using Poly = BiPoly<Scalar>;
  Poly P; // dx
  Poly Q; // dy

  bool is_zero() const { return P.is_zero() && Q.is_zero(); }
  int degree() const
  {
    if (is_zero()) return kZeroDegree;
    return 1 + std::max(P.degree(), Q.degree());
  }

  BasicOneForm& operator+=(const BasicOneForm& o) { P += o.P; Q += o.Q; return *this; }
  BasicOneForm& operator-=(const BasicOneForm& o) { P -= o.P; Q -= o.Q; return *this; }
  friend BasicOneForm operator+(BasicOneForm a, const BasicOneForm& b) { return a += b; }
  friend BasicOneForm operator-(BasicOneForm a, const BasicOneForm& b) { return a -= b; }
  BasicOneForm operator-() const { return {-P, -Q}; }
  friend BasicOneForm operator*(const Poly& f, const BasicOneForm& w) { return {f * w.P, f * w.Q}; }
  friend BasicOneForm operator*(const Scalar& s, const BasicOneForm& w) { return {s * w.P, s * w.Q}; }
  friend bool operator==(const BasicOneForm&, const BasicOneForm&) = default;

  std::string to_string() const
  {
    return "(" + P.to_string() + ") dx + (" + Q.to_string() + ") dy";
  }
};

/// Polynomial 2-form F dx^dy. deg(x^a y^b dx^dy) = a + b + 2.
template<typename Scalar>
struct BasicTwoForm
{
  BiPoly<Scalar> F;

  bool is_zero() const { return F.is_zero(); }
  int degree() const { return F.is_zero() ? kZeroDegree : F.degree() + 2; }

  BasicTwoForm& operator+=(const BasicTwoForm& o) { F += o.F; return *this; }
  BasicTwoForm& operator-=(const BasicTwoForm& o) { F -= o.F; return *this; }
  friend BasicTwoForm operator+(BasicTwoForm a, const BasicTwoForm& b) { return a += b; }
  friend BasicTwoForm operator-(BasicTwoForm a, const BasicTwoForm& b) { return a -= b; }
  friend BasicTwoForm operator*(const Scalar& s, const BasicTwoForm& w) { return {s * w.F}; }
  friend bool operator==(const BasicTwoForm&, const BasicTwoForm&) = default;
};

using OneForm = BasicOneForm<Rational>;
using TwoForm = BasicTwoForm<Rational>;

/// df for a 0-form f.
template<typename Scalar>
BasicOneForm<Scalar> differential(const BiPoly<Scalar>& f)
{
  return {partial_derivative(f, Var::x), partial_derivative(f, Var::y)};
}

/// d(P dx + Q dy) = (Q_x - P_y) dx^dy
template<typename Scalar>
BasicTwoForm<Scalar> exterior_derivative(const BasicOneForm<Scalar>& w)
{
  return {partial_derivative(w.Q, Var::x) - partial_derivative(w.P, Var::y)};
}

/// dH ^ (A dx + B dy) = (H_x B - H_y A) dx^dy
template<typename Scalar>
BasicTwoForm<Scalar> wedge_with_dH(const BiPoly<Scalar>& H, const BasicOneForm<Scalar>& eta)
{
  return {partial_derivative(H, Var::x) * eta.Q - partial_derivative(H, Var::y) * eta.P};
}

/// Radial primitive of x^a y^b dx^dy: (x^{a+1} y^b dy - x^a y^{b+1} dx) / (a+b+2).
OneForm canonical_primitive(const Monomial& m);

/// Radial primitive of F dx^dy, linear extension of canonical_primitive.
OneForm radial_primitive(const TwoForm& w);

/// f with df = w and f(0,0) = 0, for a closed polynomial 1-form w.
/// Throws DegenerateInput when w is not closed.
RatBiPoly exact_potential(const OneForm& w);

} // namespace pf

#endif // PF_FORMS_HPP
