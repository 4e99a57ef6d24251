#include "pf/milnor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pf/errors.hpp"
#include "pf/linalg.hpp"
#include "pf/parallel.hpp"
#include "pf/resultant.hpp"

namespace pf {

namespace {

// Homogeneous slice of degree d is indexed by the x-exponent: row d - a.
void put_homogeneous(RatMatrix& m, Eigen::Index col, const RatBiPoly& p, int d)
{
  for (const auto& [mono, c] : p.terms()) m(d - mono.a, col) = c;
}

/// Generators Hx^ * q, Hy^ * q of the degree-d slice of the top gradient ideal.
RatMatrix ideal_slice(const RatBiPoly& top_hx, const RatBiPoly& top_hy, int n, int d)
{
  const auto qs = d >= n ? monomials_of_degree(d - n) : std::vector<Monomial>{};
  RatMatrix m = RatMatrix::Zero(d + 1, 2 * static_cast<Eigen::Index>(qs.size()));
  Eigen::Index col = 0;
  for (const auto& q : qs) put_homogeneous(m, col++, top_hx.shifted(q), d);
  for (const auto& q : qs) put_homogeneous(m, col++, top_hy.shifted(q), d);
  return m;
}

RatMatrix with_monomials(const RatMatrix& ideal, const std::vector<Monomial>& monos, int d)
{
  RatMatrix m(ideal.rows(), ideal.cols() + static_cast<Eigen::Index>(monos.size()));
  m.leftCols(ideal.cols()) = ideal;
  m.rightCols(monos.size()).setZero();
  for (std::size_t i = 0; i < monos.size(); ++i) m(d - monos[i].a, ideal.cols() + i) = 1;
  return m;
}

MilnorBasis basis_skeleton(const RatBiPoly& H)
{
  const auto report = check_regular_at_infinity(H);
  if (!report.regular) throw NotRegular(report.reason);
  MilnorBasis b;
  b.H = H;
  b.n = report.n;
  b.mu = report.mu;
  b.Hx = partial_derivative(H, Var::x);
  b.Hy = partial_derivative(H, Var::y);
  b.top_Hx = b.Hx.homogeneous_part(b.n);
  b.top_Hy = b.Hy.homogeneous_part(b.n);
  return b;
}

// Empty string when `monos` is a basis of the top Jacobian ring, else the reason.
std::string basis_defect(const MilnorBasis& b, const std::vector<Monomial>& monos)
{
  if (static_cast<int>(monos.size()) != b.mu)
    return "expected " + std::to_string(b.mu) + " monomials, got " + std::to_string(monos.size());
  for (const auto& m : monos)
    if (m.a < 0 || m.b < 0 || m.degree() > 2 * b.n - 2)
      return "monomial " + m.to_string() + " lies in the gradient ideal by degree";
  for (int d = 0; d <= 2 * b.n - 1; ++d) {
    std::vector<Monomial> slice;
    for (const auto& m : monos)
      if (m.degree() == d) slice.push_back(m);
    const RatMatrix ideal = ideal_slice(b.top_Hx, b.top_Hy, b.n, d);
    const auto r_ideal = rank(ideal);
    const auto r_all = rank(with_monomials(ideal, slice, d));
    if (r_all != r_ideal + static_cast<Eigen::Index>(slice.size()))
      return "degree-" + std::to_string(d) + " monomials are dependent modulo the gradient ideal";
    if (r_all != d + 1)
      return "degree-" + std::to_string(d) + " monomials do not span the quotient";
  }
  return {};
}

void attach_primitives(MilnorBasis& b)
{
  b.primitives.clear();
  for (const auto& m : b.monomials) b.primitives.push_back(canonical_primitive(m));
}

} // namespace

RegularityReport check_regular_at_infinity(const RatBiPoly& H)
{
  RegularityReport r;
  r.degree_H = H.degree();
  if (H.is_zero() || r.degree_H <= 1)
    throw DegreeTooSmall("Hamiltonian must have degree at least 2");
  r.n = r.degree_H - 1;
  const RatBiPoly top = highest_homogeneous_part(H);

  int y_mult = std::numeric_limits<int>::max();
  std::vector<Rational> zc(r.degree_H + 1, Rational(0));
  for (const auto& [m, c] : top.terms()) {
    y_mult = std::min(y_mult, m.b);
    zc[m.a] = c;
  }
  const RatUPoly dehomogenized(std::move(zc));
  r.regular = y_mult <= 1 && is_squarefree(dehomogenized);
  if (r.regular) r.mu = r.n * r.n;
  else r.reason = "highest homogeneous part " + top.to_string() + " has a repeated factor";
  return r;
}

std::optional<std::size_t> MilnorBasis::index_of(const Monomial& m) const
{
  auto it = std::find(monomials.begin(), monomials.end(), m);
  if (it == monomials.end()) return std::nullopt;
  return static_cast<std::size_t>(it - monomials.begin());
}

MilnorBasis make_basis(const RatBiPoly& H, const std::vector<Monomial>& monomials)
{
  MilnorBasis b = basis_skeleton(H);
  if (auto why = basis_defect(b, monomials); !why.empty())
    throw DegenerateInput("not a monomial basis of the Jacobian ring: " + why);
  b.monomials = monomials;
  b.standard_grid = false;
  attach_primitives(b);
  return b;
}

MilnorBasis monomial_basis(const RatBiPoly& H)
{
  MilnorBasis b = basis_skeleton(H);

  std::vector<Monomial> grid;
  for (int a = 0; a < b.n; ++a)
    for (int c = 0; c < b.n; ++c) grid.push_back({a, c});
  std::sort(grid.begin(), grid.end(), GradedLex{});

  if (basis_defect(b, grid).empty()) {
    b.monomials = std::move(grid);
    b.standard_grid = true;
  } else {
    // Graded greedy: per degree, keep monomials that are new modulo the ideal slice.
    for (int d = 0; d <= 2 * b.n - 2; ++d) {
      RatMatrix span = ideal_slice(b.top_Hx, b.top_Hy, b.n, d);
      auto r = rank(span);
      for (const auto& m : monomials_of_degree(d)) {
        RatMatrix trial = with_monomials(span, {m}, d);
        auto rt = rank(trial);
        if (rt > r) {
          span = std::move(trial);
          r = rt;
          b.monomials.push_back(m);
        }
      }
    }
    if (static_cast<int>(b.monomials.size()) != b.mu)
      throw InternalRankError("greedy basis has " + std::to_string(b.monomials.size()) + " elements, expected "
                              + std::to_string(b.mu));
  }
  attach_primitives(b);
  return b;
}

GradientReduction reduce_mod_gradient(const RatBiPoly& P, const MilnorBasis& basis)
{
  GradientReduction out;
  out.remainder_coeffs = RatVector::Zero(basis.mu);
  const int n = basis.n;
  RatBiPoly rest = P;
  while (!rest.is_zero()) {
    const int d = rest.degree();
    const RatBiPoly top = rest.homogeneous_part(d);

    std::vector<std::size_t> slice_idx;
    for (std::size_t i = 0; i < basis.monomials.size(); ++i)
      if (basis.monomials[i].degree() == d) slice_idx.push_back(i);
    const auto qs = d >= n ? monomials_of_degree(d - n) : std::vector<Monomial>{};
    const Eigen::Index nc = static_cast<Eigen::Index>(slice_idx.size());
    const Eigen::Index nq = static_cast<Eigen::Index>(qs.size());

    // Unknowns: [c-hat | B-hat | A-hat], top = sum c m + B Hx^ - A Hy^.
    RatMatrix m = RatMatrix::Zero(d + 1, nc + 2 * nq);
    for (Eigen::Index k = 0; k < nc; ++k) m(d - basis.monomials[slice_idx[k]].a, k) = 1;
    for (Eigen::Index k = 0; k < nq; ++k) {
      put_homogeneous(m, nc + k, basis.top_Hx.shifted(qs[k]), d);
      put_homogeneous(m, nc + nq + k, -basis.top_Hy.shifted(qs[k]), d);
    }
    RatVector rhs = RatVector::Zero(d + 1);
    for (const auto& [mono, c] : top.terms()) rhs(d - mono.a) = c;

    auto sol = exact_solve(m, rhs);
    if (!sol) throw InternalRankError("degree-" + std::to_string(d) + " slice is not covered by basis and gradient ideal");

    RatBiPoly a_hat, b_hat;
    for (Eigen::Index k = 0; k < nc; ++k) {
      const auto i = slice_idx[k];
      out.remainder_coeffs(i) += (*sol)(k);
      rest.add_term(basis.monomials[i], -(*sol)(k));
    }
    for (Eigen::Index k = 0; k < nq; ++k) {
      b_hat.add_term(qs[k], (*sol)(nc + k));
      a_hat.add_term(qs[k], (*sol)(nc + nq + k));
    }
    rest -= b_hat * basis.Hx;
    rest += a_hat * basis.Hy;
    out.quotA += a_hat;
    out.quotB += b_hat;
    if (!rest.is_zero() && rest.degree() >= d)
      throw InternalRankError("reduction failed to lower the degree");
  }
  return out;
}

TwoFormDivision divide_two_form(const TwoForm& omega, const MilnorBasis& basis)
{
  auto red = reduce_mod_gradient(omega.F, basis);
  return {OneForm{red.quotA, red.quotB}, red.remainder_coeffs};
}

RatMatrix multiplication_matrix(const MilnorBasis& basis)
{
  RatMatrix a(basis.mu, basis.mu);
  std::vector<RatVector> rows(basis.mu);
  parallel_for(basis.mu, [&](std::size_t i) {
    rows[i] = reduce_mod_gradient(basis.H.shifted(basis.monomials[i]), basis).remainder_coeffs;
  });
  for (int i = 0; i < basis.mu; ++i) a.row(i) = rows[i].transpose();
  return a;
}

namespace {

// Newton on (Hx, Hy) = 0 from (x, y).
void polish_critical_point(const CBiPoly& hx, const CBiPoly& hy, const CBiPoly& hxx, const CBiPoly& hxy,
                           const CBiPoly& hyy, cplx& x, cplx& y)
{
  for (int it = 0; it < 30; ++it) {
    const cplx f = hx(x, y), g = hy(x, y);
    const cplx a = hxx(x, y), b = hxy(x, y), d = hyy(x, y);
    const cplx det = a * d - b * b;
    if (std::abs(det) == 0.0) return;
    const cplx dx = (d * f - b * g) / det;
    const cplx dy = (a * g - b * f) / det;
    x -= dx;
    y -= dy;
    if (std::abs(dx) + std::abs(dy) <= 1e-15 * (1.0 + std::abs(x) + std::abs(y))) return;
  }
}

double term_scale(const CBiPoly& p, cplx x, cplx y)
{
  double s = 0.0;
  for (const auto& [m, c] : p.terms()) s += std::abs(c) * std::pow(std::abs(x), m.a) * std::pow(std::abs(y), m.b);
  return std::max(s, 1e-300);
}

std::optional<std::vector<CriticalPoint>> critical_points_sheared(const RatBiPoly& H, const Rational& shear, int mu,
                                                                  const CriticalPointOptions& opts)
{
  // H_s(x, y) = H(x + s y, y) has a y^{n+1} term, so Res_y has exactly mu roots.
  const RatBiPoly hs = substitute(H, RatBiPoly::x() + shear * RatBiPoly::y(), RatBiPoly::y());
  const RatBiPoly hsx = partial_derivative(hs, Var::x);
  const RatBiPoly hsy = partial_derivative(hs, Var::y);
  const RatUPoly g = resultant(hsx, hsy, Var::y);
  if (g.degree() != mu) return std::nullopt;

  const CBiPoly chx = to_complex(hsx), chy = to_complex(hsy), ch = to_complex(hs);
  const CBiPoly chxx = partial_derivative(chx, Var::x), chxy = partial_derivative(chx, Var::y),
                chyy = partial_derivative(chy, Var::y);
  const auto hy_in_y = coefficients_in(hsy, Var::y);
  const double s = shear.to_double();

  std::vector<CriticalPoint> out;
  for (const auto& root : complex_roots(g)) {
    const cplx x0 = root.value;
    std::vector<cplx> yc;
    for (const auto& c : hy_in_y) yc.push_back(c(x0));
    std::vector<cplx> ys = polynomial_roots(yc);

    std::vector<std::pair<double, cplx>> scored;
    for (const auto& y : ys) scored.push_back({std::abs(chx(x0, y)) / term_scale(chx, x0, y), y});
    std::sort(scored.begin(), scored.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
    if (scored.empty()) return std::nullopt;

    cplx x = x0, y = scored.front().second;
    if (root.multiplicity == 1) {
      polish_critical_point(chx, chy, chxx, chxy, chyy, x, y);
    } else {
      // A multiple resultant root must carry a single critical point; multiple
      // roots of the y-polynomial are only accurate to about eps^(1/k).
      const double radius = std::max(opts.cluster_radius, 10.0 * std::pow(1e-16, 1.0 / root.multiplicity))
                            * (1.0 + std::abs(y));
      const double accept = std::max(1e-6, 10.0 * std::pow(1e-16, 1.0 / root.multiplicity));
      cplx sum = 0.0;
      int count = 0;
      for (const auto& [res, yy] : scored) {
        if (res > accept) continue;
        if (std::abs(yy - y) > radius) return std::nullopt;
        sum += yy;
        ++count;
      }
      if (count > 0) y = sum / static_cast<double>(count);
    }
    const double res = (std::abs(chx(x, y)) / term_scale(chx, x, y)) + (std::abs(chy(x, y)) / term_scale(chy, x, y));
    if (res > 1e-4) return std::nullopt;
    out.push_back({x + s * y, y, ch(x, y), root.multiplicity});
  }
  return out;
}

} // namespace

std::vector<CriticalPoint> critical_points_numeric(const RatBiPoly& H, const CriticalPointOptions& opts)
{
  const auto report = check_regular_at_infinity(H);
  if (!report.regular) throw NotRegular(report.reason);
  const RatBiPoly top = highest_homogeneous_part(H);
  for (int attempt = 0; attempt < opts.max_shear_attempts; ++attempt) {
    const int k = (attempt + 1) / 2;
    const Rational shear = attempt % 2 == 1 ? Rational(k) : Rational(-k);
    // The sheared top part has y^{n+1} coefficient top(shear, 1).
    if (top(shear, Rational(1)).is_zero()) continue;
    if (auto pts = critical_points_sheared(H, shear, report.mu, opts)) return *pts;
  }
  throw NumericalFailure("could not resolve the critical points of " + H.to_string());
}

} // namespace pf
