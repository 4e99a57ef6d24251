#include "pf/petrov.hpp"

#include "pf/errors.hpp"

namespace pf {

namespace {

RatVector two_form_coordinates(const TwoForm& w, const std::vector<Monomial>& rows,
                               const std::map<Monomial, Eigen::Index, GradedLex>& index)
{
  RatVector v = RatVector::Zero(static_cast<Eigen::Index>(rows.size()));
  for (const auto& [m, c] : w.F.terms()) {
    auto it = index.find(m);
    if (it == index.end()) throw InternalRankError("2-form coordinate outside the truncation");
    v(it->second) = c;
  }
  return v;
}

} // namespace

PetrovDecomposer::PetrovDecomposer(MilnorBasis basis) : basis_(std::move(basis))
{
  h_powers_.push_back(RatBiPoly(Rational(1)));
}

const RatBiPoly& PetrovDecomposer::power_of_H(int k) const
{
  while (static_cast<int>(h_powers_.size()) <= k) h_powers_.push_back(h_powers_.back() * basis_.H);
  return h_powers_[k];
}

const PetrovDecomposer::Layout& PetrovDecomposer::layout(int degree) const
{
  std::lock_guard lock(mutex_);
  if (auto it = layouts_.find(degree); it != layouts_.end()) return *it->second;

  auto lay = std::make_unique<Layout>();
  const int h_deg = basis_.n + 1;
  const OneForm dH = differential(basis_.H);

  for (std::size_t i = 0; i < basis_.monomials.size(); ++i)
    for (int k = 0; h_deg * k + basis_.form_degree(i) <= degree; ++k) {
      lay->unknowns.push_back({i, k, {}, true});
      lay->columns.push_back(power_of_H(k) * basis_.primitives[i]);
    }
  if (degree - h_deg >= 0)
    for (const auto& q : monomials_up_to(degree - h_deg)) {
      lay->unknowns.push_back({0, 0, q, false});
      lay->columns.push_back(RatBiPoly::term(Rational(1), q.a, q.b) * dH);
    }

  lay->rows = degree >= 2 ? monomials_up_to(degree - 2) : std::vector<Monomial>{};
  std::map<Monomial, Eigen::Index, GradedLex> index;
  for (std::size_t r = 0; r < lay->rows.size(); ++r) index[lay->rows[r]] = static_cast<Eigen::Index>(r);

  RatMatrix m(static_cast<Eigen::Index>(lay->rows.size()), static_cast<Eigen::Index>(lay->columns.size()));
  for (std::size_t c = 0; c < lay->columns.size(); ++c)
    m.col(c) = two_form_coordinates(exterior_derivative(lay->columns[c]), lay->rows, index);
  lay->factor = std::make_unique<ExactFactorization>(m);

  // The Petrov coefficients must be pinned down: no kernel vector may touch a c-unknown.
  for (const auto& v : lay->factor->nullspace())
    for (std::size_t c = 0; c < lay->unknowns.size(); ++c)
      if (lay->unknowns[c].is_c && !v(c).is_zero())
        throw InternalRankError("Petrov coefficients are not unique in degree " + std::to_string(degree));

  auto [it, _] = layouts_.emplace(degree, std::move(lay));
  return *it->second;
}

PetrovDecomposition PetrovDecomposer::decompose(const OneForm& w) const
{
  PetrovDecomposition out;
  out.coeff_polys.assign(basis_.mu, RatUPoly());
  if (w.is_zero()) return out;

  const Layout& lay = layout(w.degree());
  std::map<Monomial, Eigen::Index, GradedLex> index;
  for (std::size_t r = 0; r < lay.rows.size(); ++r) index[lay.rows[r]] = static_cast<Eigen::Index>(r);
  const auto sol = lay.factor->solve(two_form_coordinates(exterior_derivative(w), lay.rows, index));
  if (!sol)
    throw NoSolution("form has no Petrov decomposition within the degree bounds (is H regular at infinity?)");

  OneForm closed = w;
  std::vector<std::vector<Rational>> coeffs(basis_.mu);
  for (std::size_t c = 0; c < lay.unknowns.size(); ++c) {
    const Rational& v = (*sol)(c);
    if (v.is_zero()) continue;
    const Unknown& u = lay.unknowns[c];
    if (u.is_c) {
      auto& cv = coeffs[u.form];
      if (static_cast<int>(cv.size()) <= u.power) cv.resize(u.power + 1, Rational(0));
      cv[u.power] = v;
    } else {
      out.witness_g.add_term(u.mono, v);
    }
    closed -= v * lay.columns[c];
  }
  for (int i = 0; i < basis_.mu; ++i) out.coeff_polys[i] = RatUPoly(std::move(coeffs[i]));
  out.witness_f = exact_potential(closed);
  return out;
}

PetrovDecomposition petrov_decompose(const OneForm& w, const MilnorBasis& basis)
{
  return PetrovDecomposer(basis).decompose(w);
}

bool petrov_class_is_zero(const OneForm& w, const MilnorBasis& basis)
{
  const auto dec = petrov_decompose(w, basis);
  for (const auto& p : dec.coeff_polys)
    if (!p.is_zero()) return false;
  return true;
}

RatBiPoly compose(const RatUPoly& p, const RatBiPoly& H)
{
  RatBiPoly acc;
  for (int k = p.degree(); k >= 0; --k) acc = acc * H + RatBiPoly(p.coeff(k));
  return acc;
}

OneForm petrov_certificate_residual(const OneForm& w, const PetrovDecomposition& dec, const MilnorBasis& basis)
{
  OneForm r = w;
  for (int i = 0; i < basis.mu; ++i) r -= compose(dec.coeff_polys[i], basis.H) * basis.primitives[i];
  r -= dec.witness_g * differential(basis.H);
  r -= differential(dec.witness_f);
  return r;
}

} // namespace pf
