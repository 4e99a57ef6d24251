#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pf/errors.hpp"
#include "pf/periods.hpp"
#include "support.hpp"

using namespace pf;
using namespace pf::test;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuadTol = 1e-11;

Cycle circle(double t, CurvePoint seed = {1.0, 0.0})
{
  return trace_cycle(P("x^2+y^2"), t, seed, RealOval{});
}

Cycle folium_oval(double t) { return trace_cycle(P("x^3+y^3-3xy"), t, {1.0, 1.0}, RealOval{}); }

/// Uniform samples of the circle of radius sqrt(t) with a given start angle.
Cycle sampled_circle(int n, double t = 1.0, double phase = 0.0)
{
  Cycle c;
  c.H = P("x^2+y^2");
  c.t = t;
  for (int k = 0; k < n; ++k) {
    double a = phase + 2.0 * kPi * k / n;
    c.points.push_back({std::sqrt(t) * std::cos(a), std::sqrt(t) * std::sin(a)});
  }
  return c;
}

/// Counterclockwise around s, then clockwise around s*w, both circles through 0.
XLoop figure_eight(double s, cplx w, int per_lobe = 128)
{
  XLoop L;
  for (int j = 0; j < per_lobe; ++j) L.path.push_back(s * (1.0 - std::exp(cplx(0, 2 * kPi * j / per_lobe))));
  for (int j = 0; j < per_lobe; ++j) L.path.push_back(s * w * (1.0 - std::exp(cplx(0, -2 * kPi * j / per_lobe))));
  return L;
}

/// The closing lift of the loop with the largest periods.
Cycle best_lift(const RatBiPoly& H, const PFSystem& sys, cplx t, const XLoop& L)
{
  double best = -1.0;
  Cycle out;
  for (cplx y : fiber(H, t, L.start())) {
    Cycle c;
    try {
      c = trace_cycle(H, t, {L.start(), y}, L);
    } catch (const NotClosed&) {
      continue;
    }
    double m = 0.0;
    for (cplx v : system_residual(sys, c).I) m = std::max(m, std::abs(v));
    if (m > best) {
      best = m;
      out = c;
    }
  }
  REQUIRE(best > 0.0);
  return out;
}

} // namespace

TEST_CASE("unit circle")
{
  Cycle c = circle(1.0);
  CHECK(c.closure_error < 1e-10);
  for (const CurvePoint& p : c.points) CHECK(std::abs(p.x * p.x + p.y * p.y - 1.0) < 1e-12);
  OneForm area{P("-1/2 y"), P("1/2 x")};
  CHECK(std::abs(integrate_form(area, c).value - kPi) < 1e-10);
  CHECK(std::abs(gelfand_leray_derivative(P("1"), c).value - kPi) < 1e-10);
  PFSystem sys = build_system(P("x^2+y^2"));
  PeriodSample s = system_residual(sys, c);
  CHECK(std::abs(s.I[0] - kPi) < 1e-10);
  CHECK(std::abs(s.Idot[0] - kPi) < 1e-10);
  CHECK(s.residual < 1e-10);
}

TEST_CASE("seed is projected and orientation is counterclockwise")
{
  Cycle a = circle(4.0, {0.3, 0.1});
  Cycle b = circle(4.0, {-5.0, 7.0});
  OneForm area{P("-1/2 y"), P("1/2 x")};
  CHECK(std::abs(integrate_form(area, a).value - 4.0 * kPi) < 1e-10);
  CHECK(std::abs(integrate_form(area, b).value - 4.0 * kPi) < 1e-10);
}

TEST_CASE("folium oval around the local minimum")
{
  Cycle c = folium_oval(-0.5);
  CHECK(c.closure_error < 1e-10);
  for (const CurvePoint& p : c.points) {
    CHECK(std::abs(p.x.imag()) == 0.0);
    CHECK(std::abs(p.x - 1.0) < 1.0);
    CHECK(std::abs(p.y - 1.0) < 1.0);
  }
  PFSystem sys = build_system(P("x^3+y^3-3xy"));
  CHECK(system_residual(sys, c).residual < 1e-6);
}

TEST_CASE("critical levels are refused")
{
  CHECK_THROWS_AS(circle(0.0), PreconditionError);
  CHECK_THROWS_AS(folium_oval(-1.0), PreconditionError);
  CHECK_THROWS_AS(folium_oval(-1.0 + 1e-7), PreconditionError);
  TraceOptions o;
  o.critical_values = std::vector<cplx>{cplx(2.0, 0.0)};
  CHECK_THROWS_AS(trace_cycle(P("x^2+y^2"), 2.0, {1.0, 1.0}, RealOval{}, o), PreconditionError);
}

TEST_CASE("tracing failures")
{
  // a simple branch point at x = 1 swaps the two lifts
  XLoop around_branch{1.0, 0.5, 1, 256, {}};
  CHECK_THROWS_AS(trace_cycle(P("x^2+y^2"), 1.0, {1.5, cplx(0.0, 1.1)}, around_branch), NotClosed);
  XLoop twice = around_branch;
  twice.turns = 2;
  Cycle c = trace_cycle(P("x^2+y^2"), 1.0, {1.5, cplx(0.0, 1.1)}, twice);
  CHECK(c.closure_error < 1e-8);
  TraceOptions o;
  o.max_steps = 20000;
  CHECK_THROWS_AS(trace_cycle(P("x^3+y^3-3xy"), 1.0, {2.0, 0.0}, RealOval{}, o), TraceDiverged);
  CHECK_THROWS_AS(trace_cycle(P("x^2+y^2"), cplx(1.0, 0.5), {1.0, 0.0}, RealOval{}), PreconditionError);
}

TEST_CASE("exact forms and multiples of dH integrate to zero")
{
  std::mt19937 rng(61);
  std::vector<std::pair<RatBiPoly, Cycle>> cycles{{P("x^2+y^2"), circle(1.0)},
                                                  {P("x^3+y^3-3xy"), folium_oval(-0.3)},
                                                  {P("x^3+y^3-3xy"), folium_oval(-0.9)}};
  for (auto& [H, c] : cycles)
    for (int k = 0; k < 5; ++k) {
      RatBiPoly f = random_poly(rng, 5), g = random_poly(rng, 3);
      CHECK(std::abs(integrate_form(differential(f), c).value) <= 10 * kQuadTol);
      CHECK(std::abs(integrate_form(g * differential(H), c).value) <= 10 * kQuadTol);
    }
}

TEST_CASE("Gelfand-Leray of H_y vanishes")
{
  Cycle c = folium_oval(-0.5);
  RatBiPoly Hy = partial_derivative(P("x^3+y^3-3xy"), Var::y);
  CHECK(std::abs(gelfand_leray_derivative(Hy, c).value) < 10 * kQuadTol);
  CHECK(std::abs(gelfand_leray_derivative(P("2y"), circle(1.0)).value) < 10 * kQuadTol);
}

TEST_CASE("Gelfand-Leray agrees with finite differences")
{
  PFSystem sys = build_system(P("x^3+y^3-3xy"));
  const double h = 1e-4;
  for (double t : {-0.8, -0.5, -0.2}) {
    Cycle lo = folium_oval(t - h), mid = folium_oval(t), hi = folium_oval(t + h);
    for (int i = 0; i < sys.basis.mu; ++i) {
      cplx fd = (integrate_form(sys.basis.primitives[i], hi).value - integrate_form(sys.basis.primitives[i], lo).value)
                / (2 * h);
      RatBiPoly m = RatBiPoly::term(Rational(1), sys.basis.monomials[i].a, sys.basis.monomials[i].b);
      cplx gl = gelfand_leray_derivative(m, mid).value;
      CHECK(std::abs(fd - gl) <= 1e-6 * std::max(1.0, std::abs(gl)));
    }
  }
}

TEST_CASE("quadrature converges with order at least four")
{
  OneForm w{P("-1/2 y + x^2 y"), P("1/2 x + y^3")};
  QuadratureOptions q{2};
  double exact = 0.75 * kPi; // area pi, and x^2 y dx contributes -pi/4
  double e1 = std::abs(integrate_form(w, sampled_circle(8), q).value - exact);
  double e2 = std::abs(integrate_form(w, sampled_circle(16), q).value - exact);
  double e3 = std::abs(integrate_form(w, sampled_circle(32), q).value - exact);
  CHECK(std::log2(e1 / e2) >= 3.5);
  CHECK(std::log2(e2 / e3) >= 3.5);
  QuadratureResult r = integrate_form(w, sampled_circle(16), q);
  CHECK(r.error_estimate == doctest::Approx(e2).epsilon(0.1));
}

TEST_CASE("residual invariant under start rotation and reparametrization")
{
  PFSystem sys = build_system(P("x^3+y^3-3xy"));
  Cycle c = folium_oval(-0.4);
  PeriodSample s0 = system_residual(sys, c);
  Cycle rotated = c;
  std::rotate(rotated.points.begin(), rotated.points.begin() + rotated.points.size() / 3, rotated.points.end());
  Cycle thinned = c;
  thinned.points.clear();
  for (std::size_t k = 0; k < c.points.size(); k += 2) thinned.points.push_back(c.points[k]);
  for (const Cycle& other : {rotated, thinned}) {
    PeriodSample s = system_residual(sys, other);
    CHECK(s.residual < 1e-6);
    for (int i = 0; i < sys.basis.mu; ++i) {
      CHECK(std::abs(s.I[i] - s0.I[i]) < 1e-10);
      CHECK(std::abs(s.Idot[i] - s0.Idot[i]) < 1e-9);
    }
  }
  PeriodSample circ = system_residual(build_system(P("x^2+y^2")), sampled_circle(64, 1.0, 0.7));
  CHECK(circ.residual < 1e-10);
}

TEST_CASE("negative control: perturbed B0")
{
  PFSystem sys = build_system(P("x^3+y^3-3xy"));
  std::mt19937 rng(67);
  for (double t : {-0.7, -0.3}) {
    PeriodSample s = system_residual(sys, folium_oval(t));
    CHECK(s.residual < 1e-6);
    RatMatrix B0 = sys.B0 + random_matrix(rng, sys.basis.mu, sys.basis.mu, 3);
    CHECK(system_residual(sys.A, B0, sys.B1, s) > 1e-2);
  }
}

TEST_CASE("mu = 1: the period matrix is c (t - t_1)")
{
  for (double t : {0.25, 1.0, 3.0, 10.0}) {
    Cycle c = circle(t);
    cplx I = integrate_form(OneForm{P("-1/2 y"), P("1/2 x")}, c).value;
    CHECK(std::abs(I / t - kPi) < 1e-10);
  }
}

TEST_CASE("asymptotic exponents")
{
  {
    PFSystem sys = build_system(P("x^2+y^2"));
    std::vector<Cycle> cs;
    for (int k = 0; k < 6; ++k) cs.push_back(circle(0.5 * std::pow(2.0, k)));
    ExponentFit f = asymptotic_exponent_check(sys, cs);
    CHECK(f.usable[0]);
    CHECK(f.fitted[0] == doctest::Approx(1.0).epsilon(0.01));
  }
  const cplx w = std::exp(cplx(0, 2 * kPi / 3));
  for (const char* h : {"x^3+y^3", "x^3+y^3-3xy"}) {
    RatBiPoly H = P(h);
    PFSystem sys = build_system(H);
    bool homogeneous = std::string(h) == "x^3+y^3";
    std::vector<Cycle> cs;
    for (int k = 0; k < 5; ++k) {
      double t = (homogeneous ? 1.0 : 1e3) * std::pow(4.0, k);
      cs.push_back(best_lift(H, sys, t, figure_eight(std::cbrt(t), w)));
      CHECK(system_residual(sys, cs.back()).residual < 1e-6);
    }
    ExponentFit f = asymptotic_exponent_check(sys, cs);
    for (int i = 0; i < sys.basis.mu; ++i) {
      CHECK(f.usable[i]);
      CHECK(std::abs(f.fitted[i] - f.expected[i]) < (homogeneous ? 1e-6 : 0.05));
    }
  }
}

TEST_CASE("complex x-loops satisfy the system")
{
  RatBiPoly H = P("x^5+y^5+x^2*y^2+x+y");
  PFSystem sys = build_system(H);
  XLoop big{0.0, 3.0, 5, 512, {}};
  Cycle c = best_lift(H, sys, cplx(0.3, 0.2), big);
  PeriodSample s = system_residual(sys, c);
  CHECK(s.residual < 1e-6);
}

TEST_CASE("singular denominator near a critical point")
{
  Cycle c = sampled_circle(32, 1e-28);
  CHECK_THROWS_AS(gelfand_leray_derivative(P("1"), c), SingularDenominator);
}

TEST_CASE("cycle JSON round trip")
{
  Cycle c = folium_oval(-0.5);
  Cycle back = cycle_from_json(cycle_to_json(c), c.H);
  REQUIRE(back.points.size() == c.points.size());
  CHECK(back.t == c.t);
  PFSystem sys = build_system(c.H);
  PeriodSample a = system_residual(sys, c), b = system_residual(sys, back);
  for (int i = 0; i < sys.basis.mu; ++i) CHECK(std::abs(a.I[i] - b.I[i]) < 1e-14);
  CHECK_THROWS_AS(cycle_from_json("[1,2]", c.H), DegenerateInput);
  CHECK_THROWS_AS(cycle_from_json(cycle_to_json(c), P("x^2+y^2")), DegenerateInput);
}
