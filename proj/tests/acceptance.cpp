#include <chrono>
#include <cmath>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "pf/periods.hpp"
#include "pf/petrov.hpp"
#include "pf/roots.hpp"
#include "support.hpp"

using namespace pf;
using namespace pf::test;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int g_failures = 0;

void report(int n, bool ok, const std::string& what, const std::string& detail)
{
  if (!ok) ++g_failures;
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << n << ": " << what;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
}

/// Runs a criterion body; an exception counts as failure with its message.
template <class F>
void criterion(int n, const std::string& what, F&& body)
{
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  report(n, ok, what, detail);
}

bool identities_exact(const PFSystem& s)
{
  const MilnorBasis& b = s.basis;
  for (int i = 0; i < b.mu; ++i) {
    TwoForm lhs{b.H * exterior_derivative(b.primitives[i]).F};
    TwoForm rhs = wedge_with_dH(b.H, s.etas[i]);
    for (int j = 0; j < b.mu; ++j) rhs.F += s.A(i, j) * exterior_derivative(b.primitives[j]).F;
    if (!(lhs == rhs)) return false;
    if (!petrov_certificate_residual(s.etas[i], s.petrov[i], b).is_zero()) return false;
  }
  return true;
}

std::vector<cplx> oracle_values(const RatBiPoly& H)
{
  std::vector<cplx> v;
  for (const CriticalPoint& c : critical_points_numeric(H))
    for (int k = 0; k < c.multiplicity; ++k) v.push_back(c.t);
  return v;
}

const RatBiPoly kQuintic = parse_polynomial("x^5+y^5+x^2*y^2+x+y");

} // namespace

int main()
{
  auto t_start = Clock::now();
  const PFSystem quintic = build_system(kQuintic);
  const double quintic_build = seconds_since(t_start);

  criterion(1, "quintic golden values", [&](std::string& d) {
    const MilnorBasis& b = quintic.basis;
    bool ok = b.mu == 16;
    for (int i = 0; i < b.mu; ++i) {
      ok = ok && b.monomials[i].a <= 3 && b.monomials[i].b <= 3;
      if (i > 0) ok = ok && b.monomials[i - 1].degree() <= b.monomials[i].degree();
    }
    auto i33 = b.index_of({3, 3}), i00 = b.index_of({0, 0});
    ok = ok && i33 && i00;
    if (!ok) {
      d = "unexpected basis";
      return false;
    }
    bool row = quintic.B1(*i33, *i00) == Rational(1, 175);
    for (int j = 0; j < b.mu; ++j)
      if (j != static_cast<int>(*i00)) row = row && quintic.B1(*i33, j).is_zero();
    bool diag = true;
    for (int i = 0; i < b.mu; ++i)
      diag = diag && quintic.B0(i, i) == Rational(b.monomials[i].a + b.monomials[i].b + 2, 5);
    bool square = is_zero(RatMatrix(quintic.B1 * quintic.B1));
    std::ostringstream os;
    os << std::boolalpha << "B1 row 1/175 " << row << ", B0 diagonal " << diag << ", B1^2=0 " << square << ", build "
       << quintic_build << " s";
    d = os.str();
    return row && diag && square && quintic_build < 30.0;
  });

  criterion(2, "exact certificates (quintic + 10 random Morse-plus cubics/quartics)", [&](std::string& d) {
    bool ok = identities_exact(quintic);
    std::mt19937 rng(2024);
    int done = 0, tried = 0;
    while (done < 10) {
      ++tried;
      PFSystem s = build_system(random_regular(rng, done < 5 ? 3 : 4));
      if (!is_morse_plus(s)) continue;
      ok = identities_exact(s) && ok;
      ++done;
    }
    d = std::to_string(done) + " random instances out of " + std::to_string(tried) + " drawn";
    return ok;
  });

  criterion(3, "spectrum of A matches resultant oracle to 1e-8", [&](std::string& d) {
    double dq = multiset_distance(expand(spectrum(quintic.A)), oracle_values(kQuintic));
    RatBiPoly folium = parse_polynomial("x^3+y^3-3xy");
    PFSystem fs = build_system(folium);
    std::vector<cplx> fspec = expand(spectrum(fs.A));
    double df = multiset_distance(fspec, oracle_values(folium));
    double dexp = multiset_distance(fspec, {0.0, -1.0, -1.0, -1.0});
    std::ostringstream os;
    os << "quintic " << dq << " over " << quintic.basis.mu << " values, folium " << df << ", folium vs {0,-1,-1,-1} "
       << dexp;
    d = os.str();
    return quintic.basis.mu == 16 && dq <= 1e-8 && df <= 1e-8 && dexp <= 1e-8;
  });

  criterion(4, "homogeneous degeneration A = 0, B1 = 0, B0 = diag(D)", [&](std::string& d) {
    bool ok = true;
    for (const char* h : {"x^2+y^2", "x^3+y^3", "x^4+y^4"}) {
      PFSystem s = build_system(parse_polynomial(h));
      const MilnorBasis& b = s.basis;
      bool this_ok = is_zero(s.A) && is_zero(s.B1);
      for (int i = 0; i < b.mu; ++i)
        for (int j = 0; j < b.mu; ++j)
          this_ok = this_ok && s.B0(i, j) == (i == j ? Rational(b.form_degree(i), b.n + 1) : Rational(0));
      if (!this_ok) d += std::string(d.empty() ? "" : ", ") + h + " failed";
      ok = ok && this_ok;
    }
    return ok;
  });

  criterion(5, "degree bounds and invariance on 200 random forms over 5 Hamiltonians", [&](std::string& d) {
    std::mt19937 rng(5);
    int forms = 0, bad_bound = 0, bad_repeat = 0, bad_cert = 0;
    for (int h = 0; h < 5; ++h) {
      RatBiPoly H = random_regular(rng, 3 + h % 3);
      MilnorBasis b = monomial_basis(H);
      PetrovDecomposer dec(b);
      const int n = b.n;
      std::uniform_int_distribution<int> degree(1, 3 * (n + 1));
      for (int k = 0; k < 40; ++k, ++forms) {
        OneForm w = random_form(rng, degree(rng));
        PetrovDecomposition p = dec.decompose(w);
        if (!petrov_certificate_residual(w, p, b).is_zero()) ++bad_cert;
        for (int i = 0; i < b.mu; ++i)
          if (!p.coeff_polys[i].is_zero() && (n + 1) * p.coeff_polys[i].degree() + b.form_degree(i) > w.degree())
            ++bad_bound;
        int dw = std::max(0, w.degree());
        RatBiPoly g = random_poly(rng, std::max(0, dw - (n + 1)));
        RatBiPoly f = random_poly(rng, dw);
        PetrovDecomposition p2 = dec.decompose(w + g * differential(H) + differential(f));
        if (p2.coeff_polys != p.coeff_polys) ++bad_repeat;
      }
    }
    d = std::to_string(forms) + " forms, bound violations " + std::to_string(bad_bound) + ", mismatches " +
        std::to_string(bad_repeat) + ", bad certificates " + std::to_string(bad_cert);
    return forms == 200 && bad_bound == 0 && bad_repeat == 0 && bad_cert == 0;
  });

  criterion(6, "numeric end-to-end residuals and circle period", [&](std::string& d) {
    auto t0 = Clock::now();
    RatBiPoly folium = parse_polynomial("x^3+y^3-3xy");
    PFSystem fs = build_system(folium);
    double worst = 0.0;
    for (double t : {-0.9, -0.7, -0.5, -0.3, -0.1}) {
      Cycle c = trace_cycle(folium, t, {1.0, 1.0}, RealOval{});
      worst = std::max(worst, system_residual(fs, c).residual);
    }
    RatBiPoly circle = parse_polynomial("x^2+y^2");
    PFSystem cs = build_system(circle);
    Cycle cc = trace_cycle(circle, 1.0, {1.0, 0.0}, RealOval{});
    PeriodSample s = system_residual(cs, cc);
    double period_err = std::abs(s.I[0] - M_PI);
    double elapsed = seconds_since(t0);
    std::ostringstream os;
    os << "folium worst residual " << worst << ", circle |I - pi| " << period_err << ", circle residual "
       << s.residual << ", " << elapsed << " s";
    d = os.str();
    return worst < 1e-6 && period_err <= 1e-10 && s.residual < 1e-10 && elapsed < 60.0;
  });

  criterion(7, "rejection of Hamiltonians with a repeated factor at infinity", [&](std::string& d) {
    bool ok = true;
    for (const char* h : {"y^2+x^3-x", "y^2+x^4-x^2"}) {
      RegularityReport r = check_regular_at_infinity(parse_polynomial(h));
      bool rejected = !r.regular && r.reason.find("repeated factor") != std::string::npos;
      d += std::string(d.empty() ? "" : "; ") + h + ": " + r.reason;
      ok = ok && rejected;
    }
    return ok;
  });

  criterion(8, "singularity classification", [&](std::string& d) {
    bool ok = !classify_singularities(quintic).infinity_fuchsian_form && !is_zero(quintic.B1);
    for (const char* h : {"x^2+y^2", "x^3+y^3", "x^4+y^4"}) {
      PFSystem s = build_system(parse_polynomial(h));
      ok = ok && classify_singularities(s).infinity_fuchsian_form && is_zero(s.B1);
    }
    d = "quintic infinity non-Fuchsian, homogeneous B1 = 0";
    return ok;
  });

  std::cout << (g_failures == 0 ? "all criteria passed" : std::to_string(g_failures) + " criteria failed")
            << " in " << seconds_since(t_start) << " s" << std::endl;
  return g_failures == 0 ? 0 : 1;
}
