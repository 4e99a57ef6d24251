#include "pf/periods.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <mutex>
#include <tuple>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <json.hpp>

#include "pf/errors.hpp"
#include "pf/milnor.hpp"

namespace pf {

namespace {

using Vec2 = std::array<cplx, 2>;

/// Flat term list for repeated evaluation at the same point via power tables.
struct FlatPoly
{
  std::vector<std::tuple<int, int, cplx>> terms;
  int dx = 0, dy = 0;

  FlatPoly() = default;
  explicit FlatPoly(const RatBiPoly& p)
  {
    for (const auto& [m, c] : p.terms()) {
      terms.emplace_back(m.a, m.b, cplx(c.to_double(), 0.0));
      dx = std::max(dx, m.a);
      dy = std::max(dy, m.b);
    }
  }
};

struct Powers
{
  std::vector<cplx> px, py;
  Powers(cplx x, cplx y, int dx, int dy) : px(dx + 1, 1.0), py(dy + 1, 1.0)
  {
    for (int i = 1; i <= dx; ++i) px[i] = px[i - 1] * x;
    for (int i = 1; i <= dy; ++i) py[i] = py[i - 1] * y;
  }
  cplx operator()(const FlatPoly& p) const
  {
    cplx acc = 0.0;
    for (const auto& [a, b, c] : p.terms) acc += c * px[a] * py[b];
    return acc;
  }
};

struct Curve
{
  FlatPoly H, Hx, Hy;
  cplx t;
  int dx = 0, dy = 0;

  Curve(const RatBiPoly& h, cplx level)
      : H(h), Hx(partial_derivative(h, Var::x)), Hy(partial_derivative(h, Var::y)), t(level), dx(H.dx), dy(H.dy)
  {}

  /// value - t and gradient at (x, y).
  void eval(cplx x, cplx y, cplx& f, cplx& gx, cplx& gy) const
  {
    Powers pw(x, y, dx, dy);
    f = pw(H) - t;
    gx = pw(Hx);
    gy = pw(Hy);
  }
};

double norm2(const Vec2& v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1])); }

/// Golub-Welsch nodes and weights on [0, 1].
struct GaussRule
{
  std::vector<double> nodes, weights;
};

const GaussRule& gauss_rule(int n)
{
  static std::mutex m;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(m);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  GaussRule r;
  for (int k = 0; k < n; ++k) {
    r.nodes.push_back(0.5 * (es.eigenvalues()(k) + 1.0));
    double v0 = es.eigenvectors()(0, k);
    r.weights.push_back(v0 * v0); // 2 v0^2 on [-1,1], halved for [0,1]
  }
  return cache.emplace(n, std::move(r)).first->second;
}

/// One quadrature node on the curve: position, tangent (w.r.t. the chord
/// parameter) and the gradient there.
struct Node
{
  cplx x, y, dx, dy, gx, gy;
  double w;
};

std::vector<Node> curve_nodes(const Curve& C, const std::vector<CurvePoint>& pts, int order)
{
  const GaussRule& g = gauss_rule(order);
  const std::size_t N = pts.size();
  std::vector<Node> out;
  out.reserve(N * order);
  for (std::size_t k = 0; k < N; ++k) {
    const CurvePoint& p = pts[k];
    const CurvePoint& q = pts[(k + 1) % N];
    Vec2 d{q.x - p.x, q.y - p.y};
    cplx f, gx, gy;
    C.eval(p.x, p.y, f, gx, gy);
    double gn = std::sqrt(std::norm(gx) + std::norm(gy));
    if (gn == 0.0) throw SingularDenominator("gradient vanishes on the cycle");
    Vec2 nrm{std::conj(gx) / gn, std::conj(gy) / gn};
    double scale = norm2(d) + 1e-300;
    for (int j = 0; j < order; ++j) {
      double s = g.nodes[j];
      cplx x0 = p.x + s * d[0], y0 = p.y + s * d[1];
      cplx u = 0.0;
      cplx x = x0, y = y0;
      bool ok = false;
      for (int it = 0; it < 40; ++it) {
        C.eval(x, y, f, gx, gy);
        cplx fp = gx * nrm[0] + gy * nrm[1];
        if (fp == 0.0) break;
        cplx du = f / fp;
        u -= du;
        x = x0 + u * nrm[0];
        y = y0 + u * nrm[1];
        if (std::abs(du) <= 1e-15 * (1.0 + std::abs(x) + std::abs(y))) {
          ok = true;
          break;
        }
      }
      if (!ok) {
        C.eval(x, y, f, gx, gy);
        if (std::abs(f) > 1e-9 * (1.0 + std::abs(C.t)))
          throw NumericalFailure("node projection onto the curve did not converge");
      }
      if (std::abs(u) > 2.0 * scale + 1e-12)
        throw NumericalFailure("cycle sampling too coarse for node projection");
      C.eval(x, y, f, gx, gy);
      cplx fn = gx * nrm[0] + gy * nrm[1];
      cplx up = -(gx * d[0] + gy * d[1]) / fn;
      out.push_back({x, y, d[0] + up * nrm[0], d[1] + up * nrm[1], gx, gy, g.weights[j]});
    }
  }
  return out;
}

QuadratureResult two_orders(const Cycle& c, const QuadratureOptions& q,
                            const std::function<cplx(const Node&, const Powers&)>& integrand, int dx, int dy)
{
  Curve C(c.H, c.t);
  if (c.points.size() < 3) throw PreconditionError("cycle needs at least three samples");
  cplx vals[2];
  int orders[2] = {q.order, q.order + 6};
  for (int k = 0; k < 2; ++k) {
    cplx acc = 0.0;
    for (const Node& nd : curve_nodes(C, c.points, orders[k])) {
      Powers pw(nd.x, nd.y, dx, dy);
      acc += nd.w * integrand(nd, pw);
    }
    vals[k] = acc;
  }
  return {vals[0], std::abs(vals[1] - vals[0])};
}

cplx gl_value(const FlatPoly& m, const Node& nd, const Powers& pw)
{
  double ax = std::abs(nd.gx), ay = std::abs(nd.gy);
  double scale = 1.0 + std::abs(nd.x) + std::abs(nd.y);
  if (std::max(ax, ay) <= 1e-12 * scale) throw SingularDenominator("both partial derivatives vanish on the cycle");
  cplx mv = pw(m);
  if (ax >= ay) return mv * nd.dy / nd.gx;
  return -mv * nd.dx / nd.gy;
}

// ---------------------------------------------------------------------------
// tracing

void check_level(const RatBiPoly& H, cplx t, const TraceOptions& opts)
{
  std::vector<cplx> cvs;
  if (opts.critical_values) cvs = *opts.critical_values;
  else
    for (const CriticalPoint& cp : critical_points_numeric(H)) cvs.push_back(cp.t);
  for (cplx v : cvs)
    if (std::abs(t - v) <= opts.critical_tol)
      throw PreconditionError("level t is within " + std::to_string(opts.critical_tol) + " of a critical value");
}

struct RealCurve
{
  const Curve& C;
  double f(double x, double y) const
  {
    cplx v, gx, gy;
    C.eval(x, y, v, gx, gy);
    return v.real();
  }
  void grad(double x, double y, double& fv, double& gx, double& gy) const
  {
    cplx v, a, b;
    C.eval(x, y, v, a, b);
    fv = v.real();
    gx = a.real();
    gy = b.real();
  }
  /// Newton along the gradient; false if it fails.
  bool project(double& x, double& y, double tol, double max_move) const
  {
    double x0 = x, y0 = y;
    for (int it = 0; it < 50; ++it) {
      double fv, gx, gy;
      grad(x, y, fv, gx, gy);
      double g2 = gx * gx + gy * gy;
      if (g2 == 0.0) return false;
      double s = fv / g2;
      x -= s * gx;
      y -= s * gy;
      if (std::hypot(x - x0, y - y0) > max_move) return false;
      if (std::abs(s) * std::sqrt(g2) <= tol * (1.0 + std::hypot(x, y))) return true;
    }
    return false;
  }
};

/// Move the seed onto the real level set: Newton if it is close, otherwise a
/// ray search for a sign change followed by bisection.
std::pair<double, double> seed_onto_curve(const RealCurve& R, double sx, double sy, const TraceOptions& opts)
{
  double fs = R.f(sx, sy);
  double x = sx, y = sy;
  double scale = 1.0 + std::hypot(sx, sy);
  if (std::abs(fs) <= 1e-6 * (1.0 + std::abs(R.C.t)) && R.project(x, y, opts.newton_tol, 0.1 * scale)) return {x, y};
  double best = INFINITY;
  std::pair<double, double> found{0, 0};
  const double h = 1e-3 * scale;
  const int dirs = 16;
  for (int k = 0; k < dirs; ++k) {
    double th = 2.0 * std::numbers::pi * k / dirs + 0.1;
    double ux = std::cos(th), uy = std::sin(th);
    double prev = fs;
    for (int s = 1; s <= 20000 && s * h < best; ++s) {
      double cur = R.f(sx + s * h * ux, sy + s * h * uy);
      if ((prev < 0) != (cur < 0) || cur == 0.0) {
        double lo = (s - 1) * h, hi = s * h;
        for (int b = 0; b < 80; ++b) {
          double mid = 0.5 * (lo + hi);
          double fm = R.f(sx + mid * ux, sy + mid * uy);
          if ((fm < 0) == (fs < 0) && fm != 0.0) lo = mid;
          else hi = mid;
        }
        double px = sx + hi * ux, py = sy + hi * uy;
        if (R.project(px, py, opts.newton_tol, h)) {
          best = hi;
          found = {px, py};
        }
        break;
      }
      prev = cur;
    }
  }
  if (!std::isfinite(best)) throw TraceDiverged("no point of the real level set found near the seed");
  return found;
}

Cycle trace_real(const RatBiPoly& H, cplx t, CurvePoint seed, const TraceOptions& opts)
{
  if (std::abs(t.imag()) > 1e-14 * (1.0 + std::abs(t)) || std::abs(seed.x.imag()) > 0 || std::abs(seed.y.imag()) > 0)
    throw PreconditionError("real_oval mode needs a real level and a real seed");
  Curve C(H, t.real());
  RealCurve R{C};
  auto [x0, y0] = seed_onto_curve(R, seed.x.real(), seed.y.real(), opts);
  double scale = 1.0 + std::hypot(x0, y0);

  auto tangent = [&](double x, double y, double& tx, double& ty) {
    double fv, gx, gy;
    R.grad(x, y, fv, gx, gy);
    double g = std::hypot(gx, gy);
    if (g == 0.0) throw TraceDiverged("gradient vanished while tracing");
    tx = -gy / g;
    ty = gx / g;
  };

  std::vector<std::pair<double, double>> pts{{x0, y0}};
  double px = x0, py = y0, tx, ty;
  tangent(px, py, tx, ty);
  double sx0 = tx, sy0 = ty;
  double h = 1e-3 * scale;
  const double hmax = opts.max_step * scale;
  double arc = 0.0;
  for (int step = 0;; ++step) {
    if (step >= opts.max_steps) throw TraceDiverged("step budget exhausted before the oval closed");
    double qx = px + h * tx, qy = py + h * ty;
    double ntx, nty;
    bool ok = R.project(qx, qy, opts.newton_tol, 0.5 * h + 1e-14);
    if (ok) {
      tangent(qx, qy, ntx, nty);
      double dot = std::clamp(tx * ntx + ty * nty, -1.0, 1.0);
      if (std::acos(dot) > opts.max_turn_angle) ok = false;
    }
    if (!ok) {
      h *= 0.5;
      if (h < opts.min_step * scale) throw TraceDiverged("step size underflow while tracing the oval");
      continue;
    }
    // Closing: the chord p->q passes the start, on its forward side.
    double cx = qx - px, cy = qy - py;
    double L2 = cx * cx + cy * cy;
    double s = ((x0 - px) * cx + (y0 - py) * cy) / L2;
    double perp = std::abs((x0 - px) * cy - (y0 - py) * cx) / std::sqrt(L2);
    double start_side_prev = (px - x0) * sx0 + (py - y0) * sy0;
    double start_side_next = (qx - x0) * sx0 + (qy - y0) * sy0;
    if (arc > 4.0 * h && s > 0.0 && s <= 1.0 && perp < 0.5 * std::sqrt(L2) && start_side_prev < 0.0
        && start_side_next >= 0.0)
      break;
    arc += std::sqrt(L2);
    pts.emplace_back(qx, qy);
    px = qx;
    py = qy;
    tx = ntx;
    ty = nty;
    h = std::min(1.5 * h, hmax);
    if (arc > 1e6 * scale) throw TraceDiverged("traced arc length diverged; level set may be unbounded");
  }

  Cycle c;
  c.H = H;
  c.t = t;
  double area = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    auto [ax, ay] = pts[k];
    auto [bx, by] = pts[(k + 1) % pts.size()];
    area += ax * by - bx * ay;
  }
  if (area < 0.0) std::reverse(pts.begin() + 1, pts.end());
  for (auto [x, y] : pts) c.points.push_back({x, y});

  auto [lx, ly] = pts.back();
  std::vector<CurvePoint> closing{{lx, ly}, {x0, y0}};
  curve_nodes(C, closing, 16); // throws if the closing chord leaves the branch
  c.closure_error = std::abs(R.f(x0, y0));
  return c;
}

/// Closed x-path parametrized by theta in [0, 2 pi) per turn.
struct XPath
{
  const XLoop& L;
  std::vector<double> cum; // cumulative polygon length at each vertex
  double length = 0.0;

  explicit XPath(const XLoop& loop) : L(loop)
  {
    const auto& v = L.path;
    for (std::size_t k = 0; k < v.size(); ++k) {
      cum.push_back(length);
      length += std::abs(v[(k + 1) % v.size()] - v[k]);
    }
  }
  bool polygon() const { return !L.path.empty(); }

  /// Segment index and offset along it for theta.
  std::pair<std::size_t, double> locate(double th) const
  {
    double per = std::fmod(th, 2.0 * std::numbers::pi) / (2.0 * std::numbers::pi) * length;
    std::size_t k = std::upper_bound(cum.begin(), cum.end(), per) - cum.begin();
    k = k == 0 ? 0 : k - 1;
    return {k, per - cum[k]};
  }
  cplx pos(double th) const
  {
    if (!polygon()) return L.center + L.radius * std::exp(cplx(0.0, th));
    auto [k, off] = locate(th);
    const auto& v = L.path;
    cplx d = v[(k + 1) % v.size()] - v[k];
    return v[k] + d * (off / std::abs(d));
  }
  /// dx/dtheta, evaluated inside the step [a, b] (never straddles a vertex).
  cplx vel(double a, double b) const
  {
    double th = 0.5 * (a + b);
    if (!polygon()) return cplx(0.0, 1.0) * L.radius * std::exp(cplx(0.0, th));
    auto [k, off] = locate(th);
    const auto& v = L.path;
    cplx d = v[(k + 1) % v.size()] - v[k];
    return d / std::abs(d) * (length / (2.0 * std::numbers::pi));
  }
  /// First vertex parameter strictly after theta.
  double next_break(double th) const
  {
    if (!polygon()) return INFINITY;
    const double turn = 2.0 * std::numbers::pi;
    double base = std::floor(th / turn) * turn;
    for (int rep = 0; rep < 2; ++rep, base += turn)
      for (double c : cum) {
        double b = base + c / length * turn;
        if (b > th + 1e-14 * turn) return b;
      }
    return INFINITY;
  }
};

Cycle trace_loop(const RatBiPoly& H, cplx t, CurvePoint seed, const XLoop& L, const TraceOptions& opts)
{
  if (L.turns < 1 || L.steps_per_turn < 8) throw PreconditionError("invalid x_loop parameters");
  if (L.path.empty() && !(L.radius > 0.0)) throw PreconditionError("x_loop radius must be positive");
  if (!L.path.empty() && L.path.size() < 3) throw PreconditionError("x_loop path needs at least three vertices");
  XPath X(L);
  if (X.polygon() && !(X.length > 0.0)) throw PreconditionError("degenerate x_loop path");
  Curve C(H, t);
  auto newton_y = [&](cplx x, cplx& y, double max_move) {
    cplx y0 = y, f, gx, gy;
    for (int it = 0; it < 30; ++it) {
      C.eval(x, y, f, gx, gy);
      if (gy == 0.0) return false;
      cplx dy = f / gy;
      y -= dy;
      if (std::abs(y - y0) > max_move) return false;
      if (std::abs(dy) <= opts.newton_tol * (1.0 + std::abs(y))) return true;
    }
    return false;
  };

  cplx x = X.pos(0.0);
  cplx y = seed.y;
  if (!newton_y(x, y, 1e3 * (1.0 + std::abs(seed.y)))) throw TraceDiverged("could not lift the seed onto the curve");
  const cplx ystart = y;
  Cycle c;
  c.H = H;
  c.t = t;
  c.points.push_back({x, y});

  const double total = 2.0 * std::numbers::pi * L.turns;
  const double base = 2.0 * std::numbers::pi / L.steps_per_turn;
  double th = 0.0, dth = base;
  int steps = 0;
  while (th < total) {
    if (++steps > opts.max_steps) throw TraceDiverged("step budget exhausted on the x loop");
    double end = std::min({th + dth, total, X.next_break(th)});
    double step = end - th;
    cplx f, gx, gy;
    C.eval(x, y, f, gx, gy);
    if (gy == 0.0) throw TraceDiverged("loop passes through a branch point");
    cplx yp = -gx * X.vel(th, end) / gy;
    cplx xn = end >= total ? X.pos(0.0) : X.pos(end);
    cplx yn = y + yp * step;
    cplx pred = yn;
    double allowed = 0.1 * std::abs(yp * step) + 1e-9 * (1.0 + std::abs(y));
    bool ok = newton_y(xn, yn, 10.0 * allowed + 1e-12) && std::abs(yn - pred) <= allowed;
    if (!ok) {
      dth = 0.5 * step;
      if (dth < opts.min_step) throw TraceDiverged("step size underflow on the x loop");
      continue;
    }
    th = end;
    x = xn;
    y = yn;
    c.points.push_back({x, y});
    dth = std::min(base, 1.5 * dth);
  }
  c.points.pop_back();
  c.closure_error = std::abs(y - ystart);
  if (c.closure_error > opts.closure_tol * (1.0 + std::abs(ystart)))
    throw NotClosed("x loop does not close: y returned to (" + std::to_string(y.real()) + ", "
                    + std::to_string(y.imag()) + ") instead of (" + std::to_string(ystart.real()) + ", "
                    + std::to_string(ystart.imag()) + ")");
  return c;
}

} // namespace

Cycle trace_cycle(const RatBiPoly& H, cplx t, CurvePoint seed, const CycleMode& mode, const TraceOptions& opts)
{
  if (H.degree() < 2) throw DegreeTooSmall("tracing needs deg H >= 2");
  check_level(H, t, opts);
  if (const auto* loop = std::get_if<XLoop>(&mode)) return trace_loop(H, t, seed, *loop, opts);
  return trace_real(H, t, seed, opts);
}

std::vector<cplx> fiber(const RatBiPoly& H, cplx t, cplx x)
{
  std::vector<RatUPoly> cs = coefficients_in(H, Var::y);
  std::vector<cplx> coeffs;
  for (const RatUPoly& p : cs) coeffs.push_back(p(x));
  if (coeffs.empty()) return {};
  coeffs[0] -= t;
  while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
  if (coeffs.size() < 2) return {};
  return polynomial_roots(coeffs);
}

QuadratureResult integrate_form(const OneForm& w, const Cycle& c, const QuadratureOptions& q)
{
  FlatPoly P(w.P), Q(w.Q);
  int dx = std::max(P.dx, Q.dx), dy = std::max(P.dy, Q.dy);
  return two_orders(
      c, q, [&](const Node& nd, const Powers& pw) { return pw(P) * nd.dx + pw(Q) * nd.dy; }, dx, dy);
}

QuadratureResult gelfand_leray_derivative(const RatBiPoly& m, const Cycle& c, const QuadratureOptions& q)
{
  FlatPoly M(m);
  return two_orders(
      c, q, [&](const Node& nd, const Powers& pw) { return gl_value(M, nd, pw); }, M.dx, M.dy);
}

PeriodSample system_residual(const PFSystem& sys, const Cycle& c, const QuadratureOptions& q)
{
  const MilnorBasis& b = sys.basis;
  const int mu = b.mu;
  Curve C(c.H, c.t);
  std::vector<FlatPoly> P, Q, M;
  int dx = 0, dy = 0;
  for (int i = 0; i < mu; ++i) {
    P.emplace_back(b.primitives[i].P);
    Q.emplace_back(b.primitives[i].Q);
    M.emplace_back(RatBiPoly::term(Rational(1), b.monomials[i].a, b.monomials[i].b));
    dx = std::max({dx, P.back().dx, Q.back().dx});
    dy = std::max({dy, P.back().dy, Q.back().dy});
  }
  PeriodSample s;
  s.t = c.t;
  s.I.assign(mu, 0.0);
  s.Idot.assign(mu, 0.0);
  for (const Node& nd : curve_nodes(C, c.points, q.order)) {
    Powers pw(nd.x, nd.y, dx, dy);
    for (int i = 0; i < mu; ++i) {
      s.I[i] += nd.w * (pw(P[i]) * nd.dx + pw(Q[i]) * nd.dy);
      s.Idot[i] += nd.w * gl_value(M[i], nd, pw);
    }
  }
  s.residual = system_residual(sys.A, sys.B0, sys.B1, s);
  return s;
}

double system_residual(const RatMatrix& A, const RatMatrix& B0, const RatMatrix& B1, const PeriodSample& s)
{
  const Eigen::Index mu = A.rows();
  if (static_cast<Eigen::Index>(s.I.size()) != mu || static_cast<Eigen::Index>(s.Idot.size()) != mu)
    throw PreconditionError("period sample size does not match the system");
  double rmax = 0.0, imax = 0.0;
  for (Eigen::Index i = 0; i < mu; ++i) {
    cplx r = s.t * s.Idot[i];
    for (Eigen::Index j = 0; j < mu; ++j) {
      double a = A(i, j).to_double(), b0 = B0(i, j).to_double(), b1 = B1(i, j).to_double();
      r -= a * s.Idot[j] + (b0 + s.t * b1) * s.I[j];
    }
    rmax = std::max(rmax, std::abs(r));
    imax = std::max(imax, std::abs(s.I[i]));
  }
  return rmax / std::max(1.0, imax);
}

ExponentFit asymptotic_exponent_check(const PFSystem& sys, const std::vector<Cycle>& cycles, const QuadratureOptions& q)
{
  const int mu = sys.basis.mu;
  ExponentFit fit;
  fit.fitted.assign(mu, 0.0);
  fit.usable.assign(mu, true);
  for (const Rational& d : sys.D) fit.expected.push_back(d.to_double());
  if (cycles.size() < 2) throw PreconditionError("exponent fit needs at least two cycles");
  std::vector<double> lt;
  std::vector<std::vector<double>> li(mu);
  for (const Cycle& c : cycles) {
    lt.push_back(std::log(std::abs(c.t)));
    for (int i = 0; i < mu; ++i) {
      QuadratureResult r = integrate_form(sys.basis.primitives[i], c, q);
      double a = std::abs(r.value);
      double tiny = 1e-10 * std::pow(std::abs(c.t), fit.expected[i]);
      if (a <= tiny || a <= 10.0 * r.error_estimate) fit.usable[i] = false;
      li[i].push_back(std::log(std::max(a, 1e-300)));
    }
  }
  const double n = static_cast<double>(lt.size());
  double mt = 0.0;
  for (double v : lt) mt += v / n;
  double stt = 0.0;
  for (double v : lt) stt += (v - mt) * (v - mt);
  if (stt == 0.0) throw PreconditionError("exponent fit needs distinct |t|");
  for (int i = 0; i < mu; ++i) {
    double mi = 0.0;
    for (double v : li[i]) mi += v / n;
    double sti = 0.0;
    for (std::size_t k = 0; k < lt.size(); ++k) sti += (lt[k] - mt) * (li[i][k] - mi);
    fit.fitted[i] = sti / stt;
  }
  return fit;
}

namespace {
nlohmann::json cjson(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }
cplx jcplx(const nlohmann::json& j)
{
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw DegenerateInput("complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}
} // namespace

std::string cycle_to_json(const Cycle& c)
{
  nlohmann::json j;
  j["hamiltonian"] = c.H.to_string();
  j["t"] = cjson(c.t);
  j["closure_error"] = c.closure_error;
  nlohmann::json s = nlohmann::json::array();
  for (const CurvePoint& p : c.points) s.push_back({{"x", cjson(p.x)}, {"y", cjson(p.y)}});
  j["samples"] = std::move(s);
  return j.dump(2);
}

Cycle cycle_from_json(const std::string& text, const RatBiPoly& H)
{
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DegenerateInput(std::string("invalid cycle JSON: ") + e.what());
  }
  try {
    Cycle c;
    c.H = H;
    c.t = jcplx(j.at("t"));
    c.closure_error = j.value("closure_error", 0.0);
    for (const auto& s : j.at("samples")) c.points.push_back({jcplx(s.at("x")), jcplx(s.at("y"))});
    if (c.points.size() < 3) throw DegenerateInput("cycle needs at least three samples");
    Curve C(H, c.t);
    for (const CurvePoint& p : c.points) {
      cplx f, gx, gy;
      C.eval(p.x, p.y, f, gx, gy);
      double scale = 1.0 + std::abs(c.t) + std::abs(p.x) + std::abs(p.y);
      if (std::abs(f) > 1e-6 * scale) throw DegenerateInput("cycle sample is not on the level set H = t");
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw DegenerateInput(std::string("malformed cycle JSON: ") + e.what());
  }
}

std::string period_sample_to_json(const PeriodSample& s)
{
  nlohmann::json j;
  j["t"] = cjson(s.t);
  nlohmann::json I = nlohmann::json::array(), D = nlohmann::json::array();
  for (cplx v : s.I) I.push_back(cjson(v));
  for (cplx v : s.Idot) D.push_back(cjson(v));
  j["I"] = std::move(I);
  j["Idot"] = std::move(D);
  j["residual"] = s.residual;
  return j.dump(2);
}

} // namespace pf
