#ifndef PF_PERIODS_HPP
#define PF_PERIODS_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pf/bipoly.hpp"
#include "pf/forms.hpp"
#include "pf/picard_fuchs.hpp"
#include "pf/roots.hpp"

namespace pf {

struct CurvePoint
{
  cplx x, y;
};

/// Closed curve on {H = t}, sampled densely enough that every chord between
/// consecutive samples (the last one wrapping to the first) projects back onto
/// the same local branch of the curve.
struct Cycle
{
  RatBiPoly H;
  cplx t;
  std::vector<CurvePoint> points;
  double closure_error = 0.0;
};

/// Trace the real oval through (or reached from) the seed, counterclockwise.
struct RealOval
{};

/// Closed x-path traversed `turns` times while y is lifted by continuation:
/// the circle center + radius * exp(i theta), or the closed polygon through
/// `path` (start at path[0]) when it is nonempty.
struct XLoop
{
  cplx center;
  double radius = 1.0;
  int turns = 1;
  int steps_per_turn = 512;
  std::vector<cplx> path;

  cplx start() const { return path.empty() ? center + radius : path.front(); }
};

using CycleMode = std::variant<RealOval, XLoop>;

struct TraceOptions
{
  double newton_tol = 1e-12;
  double closure_tol = 1e-8;
  double max_step = 0.05;       // relative to 1 + |seed|
  double min_step = 1e-10;
  double max_turn_angle = 0.05; // radians between successive tangents
  int max_steps = 1'000'000;
  /// Levels to refuse; when unset they come from critical_points_numeric.
  std::optional<std::vector<cplx>> critical_values;
  double critical_tol = 1e-6;
};

/// Throws PreconditionError (t critical), TraceDiverged or NotClosed.
Cycle trace_cycle(const RatBiPoly& H, cplx t, CurvePoint seed, const CycleMode& mode, const TraceOptions& opts = {});

/// Roots y of H(x, y) = t.
std::vector<cplx> fiber(const RatBiPoly& H, cplx t, cplx x);

struct QuadratureResult
{
  cplx value;
  double error_estimate = 0.0;
};

struct QuadratureOptions
{
  int order = 12; // Gauss-Legendre nodes per segment; the error estimate compares with order + 6
};

/// Composite Gauss-Legendre quadrature of w along the cycle. Every node is
/// projected exactly onto the curve, so the rule integrates a smooth
/// parametrization of each arc.
QuadratureResult integrate_form(const OneForm& w, const Cycle& c, const QuadratureOptions& q = {});

/// d/dt of the period of any primitive of m dx^dy: the integral of the
/// Gelfand-Leray form m dy / H_x = -m dx / H_y, evaluated in whichever chart
/// has the larger denominator. Throws SingularDenominator near critical points.
QuadratureResult gelfand_leray_derivative(const RatBiPoly& m, const Cycle& c, const QuadratureOptions& q = {});

struct PeriodSample
{
  cplx t;
  std::vector<cplx> I;
  std::vector<cplx> Idot;
  double residual = 0.0;
};

/// || (t - A) Idot - (B0 + t B1) I ||_inf / max(1, ||I||_inf) on one cycle.
PeriodSample system_residual(const PFSystem& sys, const Cycle& c, const QuadratureOptions& q = {});

/// Same residual with caller-supplied matrices (negative controls, imported systems).
double system_residual(const RatMatrix& A, const RatMatrix& B0, const RatMatrix& B1, const PeriodSample& sample);

struct ExponentFit
{
  std::vector<double> fitted;   // least-squares slope of log|I_i| against log|t|
  std::vector<double> expected; // d_i = deg w_i / (n+1)
  std::vector<bool> usable;     // false when the period vanishes on the family
};

ExponentFit asymptotic_exponent_check(const PFSystem& sys, const std::vector<Cycle>& cycles,
                                      const QuadratureOptions& q = {});

std::string cycle_to_json(const Cycle& c);
Cycle cycle_from_json(const std::string& text, const RatBiPoly& H);
std::string period_sample_to_json(const PeriodSample& s);

} // namespace pf

#endif // PF_PERIODS_HPP
