#include "pf/roots.hpp"

#include <algorithm>
#include <limits>

#include <Eigen/Eigenvalues>

#include "pf/errors.hpp"

namespace pf {

namespace {

using lcplx = std::complex<long double>;

template<typename Coeffs>
void polish(cplx& z, const Coeffs& c)
{
  lcplx x(z.real(), z.imag());
  for (int it = 0; it < 20; ++it) {
    lcplx p = 0, dp = 0;
    for (auto k = c.size(); k-- > 0;) {
      dp = dp * x + p;
      p = p * x + c[k];
    }
    if (std::abs(dp) == 0.0L) break;
    lcplx step = p / dp;
    x -= step;
    if (std::abs(step) <= 1e-18L * std::max(1.0L, std::abs(x))) break;
  }
  cplx polished(static_cast<double>(x.real()), static_cast<double>(x.imag()));
  if (std::isfinite(polished.real()) && std::isfinite(polished.imag())
      && std::abs(polished - z) <= 1e-3 * std::max(1.0, std::abs(z)))
    z = polished;
}

std::vector<cplx> companion_roots(const std::vector<cplx>& c)
{
  const int d = static_cast<int>(c.size()) - 1;
  if (d <= 0) return {};
  if (d == 1) return {-c[0] / c[1]};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[i] / c[d];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  if (es.info() != Eigen::Success) throw NumericalFailure("companion eigenvalue iteration failed");
  std::vector<cplx> out(es.eigenvalues().data(), es.eigenvalues().data() + d);
  return out;
}

} // namespace

std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs)
{
  std::vector<cplx> c = coeffs;
  while (!c.empty() && c.back() == cplx(0)) c.pop_back();
  auto roots = companion_roots(c);
  std::vector<lcplx> lc(c.begin(), c.end());
  for (auto& z : roots) polish(z, lc);
  return roots;
}

std::vector<cplx> simple_roots(const RatUPoly& f)
{
  std::vector<cplx> c;
  for (const auto& v : f.coeffs()) c.emplace_back(v.to_double(), 0.0);
  auto roots = companion_roots(c);
  std::vector<lcplx> lc(c.begin(), c.end());
  for (auto& z : roots) polish(z, lc);
  return roots;
}

std::vector<Root> complex_roots(const RatUPoly& p)
{
  std::vector<Root> out;
  auto factors = squarefree_decomposition(p);
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (factors[k].degree() < 1) continue;
    for (const auto& z : simple_roots(factors[k])) out.push_back({z, static_cast<int>(k) + 1});
  }
  return out;
}

std::vector<cplx> expand(const std::vector<Root>& roots)
{
  std::vector<cplx> out;
  for (const auto& r : roots)
    for (int i = 0; i < r.multiplicity; ++i) out.push_back(r.value);
  return out;
}

double multiset_distance(std::vector<cplx> a, std::vector<cplx> b)
{
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  std::vector<bool> used(b.size(), false);
  // Pair the globally closest remaining couple first.
  for (std::size_t round = 0; round < a.size(); ++round) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (std::isnan(a[i].real())) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (used[j]) continue;
        double d = std::abs(a[i] - b[j]);
        if (d < best) { best = d; bi = i; bj = j; }
      }
    }
    worst = std::max(worst, best);
    used[bj] = true;
    a[bi] = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
  }
  return worst;
}

} // namespace pf
