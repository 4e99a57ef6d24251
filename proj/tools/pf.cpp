// pf: command-line front end for the Picard-Fuchs library.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pf/errors.hpp"
#include "pf/milnor.hpp"
#include "pf/parse.hpp"
#include "pf/periods.hpp"
#include "pf/petrov.hpp"
#include "pf/picard_fuchs.hpp"

using nlohmann::json;
using namespace pf;

namespace {

constexpr int kOk = 0;
constexpr int kValidationFailure = 1;
constexpr int kInputError = 2;

bool g_json_errors = false;

int report_error(const std::string& kind, const std::string& message, int code)
{
  if (g_json_errors) {
    json j{{"error", kind}, {"message", message}, {"exit_code", code}};
    std::cerr << j.dump() << "\n";
  } else {
    std::cerr << "error: " << kind << ": " << message << "\n";
  }
  return code;
}

/// "1.5", "-2", "0.3+0.2i", "-1e-3-4i", "2i"
cplx parse_complex(std::string s)
{
  s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
  if (s.empty()) throw ParseError(0, "empty number");
  auto num = [&](const std::string& part, std::size_t offset) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw ParseError(offset, "invalid number '" + part + "'");
    }
    if (used != part.size()) throw ParseError(offset + used, "unexpected character in number");
    return v;
  };
  if (s.back() != 'i') return {num(s, 0), 0.0};
  std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  if (split == std::string::npos) return {0.0, num(body, 0)};
  return {num(body.substr(0, split), 0), num(body.substr(split), split)};
}

CurvePoint parse_point(const std::string& s)
{
  auto comma = s.find(',');
  if (comma == std::string::npos) throw ParseError(s.size(), "expected X,Y");
  return {parse_complex(s.substr(0, comma)), parse_complex(s.substr(comma + 1))};
}

Format parse_format(const std::string& f)
{
  if (f == "json") return Format::json;
  if (f == "latex") return Format::latex;
  return Format::text;
}

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

void emit(const std::string& text, const std::string& out)
{
  if (out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw DegenerateInput("cannot open output file " + out);
  f << text;
}

std::string read_file(const std::string& path)
{
  std::ifstream f(path);
  if (!f) throw DegenerateInput("cannot read file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct NumericFlags
{
  std::vector<std::string> t;
  std::vector<std::string> seeds;
  std::string mode = "real_oval";
  std::string center = "0";
  double radius = 1.0;
  int turns = 1;
  int steps = 512;
  std::string path;
  double newton_tol = 1e-12;
  double closure_tol = 1e-8;
  double critical_tol = 1e-6;
  int order = 12;
  double residual_tol = 1e-6;
};

void add_numeric_flags(CLI::App* app, NumericFlags& f)
{
  app->add_option("--t", f.t, "level value(s); complex as a+bi")->allow_extra_args(false);
  app->add_option("--seed", f.seeds, "seed point(s) X,Y")->allow_extra_args(false);
  app->add_option("--mode", f.mode, "cycle mode")->check(CLI::IsMember({"real_oval", "x_loop"}));
  app->add_option("--center", f.center, "x_loop center");
  app->add_option("--radius", f.radius, "x_loop radius");
  app->add_option("--turns", f.turns, "x_loop turns");
  app->add_option("--steps-per-turn", f.steps, "x_loop samples per turn");
  app->add_option("--path", f.path, "x_loop polygon vertices X1;X2;... (overrides the circle)");
  app->add_option("--newton-tol", f.newton_tol, "Newton tolerance");
  app->add_option("--closure-tol", f.closure_tol, "cycle closure tolerance");
  app->add_option("--critical-tol", f.critical_tol, "distance from critical values");
  app->add_option("--order", f.order, "Gauss-Legendre nodes per segment");
  app->add_option("--residual-tol", f.residual_tol, "accepted system residual");
}

CycleMode make_mode(const NumericFlags& f)
{
  if (f.mode != "x_loop") return RealOval{};
  XLoop L{parse_complex(f.center), f.radius, f.turns, f.steps, {}};
  std::stringstream ss(f.path);
  for (std::string v; std::getline(ss, v, ';');)
    if (!v.empty()) L.path.push_back(parse_complex(v));
  return L;
}

TraceOptions make_trace_options(const NumericFlags& f, const PFSystem* sys)
{
  TraceOptions o;
  o.newton_tol = f.newton_tol;
  o.closure_tol = f.closure_tol;
  o.critical_tol = f.critical_tol;
  if (sys && !sys->critical_points.empty()) {
    std::vector<cplx> cv;
    for (const CriticalPoint& cp : sys->critical_points) cv.push_back(cp.t);
    o.critical_values = cv;
  }
  return o;
}

/// x_loop without a seed: try every lift of the start point until one closes.
Cycle trace_with_fallback(const RatBiPoly& H, cplx t, const std::optional<CurvePoint>& seed, const NumericFlags& f,
                          const TraceOptions& o)
{
  CycleMode mode = make_mode(f);
  if (seed) return trace_cycle(H, t, *seed, mode, o);
  if (f.mode != "x_loop") throw PreconditionError("real_oval mode needs --seed");
  const XLoop& L = std::get<XLoop>(mode);
  cplx x0 = L.start();
  std::string last = "no lift of the loop start";
  for (cplx y : fiber(H, t, x0)) {
    try {
      return trace_cycle(H, t, {x0, y}, mode, o);
    } catch (const NotClosed& e) {
      last = e.what();
    }
  }
  throw NotClosed(last);
}

int cmd_check(const RatBiPoly& H, bool as_json)
{
  RegularityReport r = check_regular_at_infinity(H);
  if (as_json) {
    json j{{"degree", r.degree_H}, {"n", r.n}, {"mu", r.mu}, {"regular", r.regular}, {"reason", r.reason}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "degree " << r.degree_H << "\nn " << r.n << "\nmu " << r.mu << "\nregular "
              << (r.regular ? "yes" : "no") << "\n";
  }
  if (!r.regular) return report_error("NotRegular", r.reason, kInputError);
  return kOk;
}

int cmd_basis(const RatBiPoly& H, Format fmt, const std::string& out)
{
  MilnorBasis b = monomial_basis(H);
  std::ostringstream os;
  if (fmt == Format::json) {
    json j;
    j["hamiltonian"] = H.to_string();
    j["n"] = b.n;
    j["mu"] = b.mu;
    j["standard_grid"] = b.standard_grid;
    j["basis"] = json::array();
    for (int i = 0; i < b.mu; ++i)
      j["basis"].push_back({{"monomial", b.monomials[i].to_string()},
                            {"exponents", {b.monomials[i].a, b.monomials[i].b}},
                            {"form_degree", b.form_degree(i)},
                            {"primitive", {b.primitives[i].P.to_string(), b.primitives[i].Q.to_string()}}});
    os << j.dump(2) << "\n";
  } else {
    os << "H = " << H.to_string() << "\nmu = " << b.mu << (b.standard_grid ? " (standard grid)" : " (greedy)")
       << "\n";
    for (int i = 0; i < b.mu; ++i)
      os << "w" << i << "  d = " << b.monomials[i].to_string() << " dx^dy   deg " << b.form_degree(i) << "   ("
         << b.primitives[i].P.to_string() << ") dx + (" << b.primitives[i].Q.to_string() << ") dy\n";
  }
  emit(os.str(), out);
  return kOk;
}

int cmd_system(const RatBiPoly& H, Format fmt, const std::string& out)
{
  PFSystem sys = build_system(H);
  emit(serialize_system(sys, fmt), out);
  return kOk;
}

int cmd_reduce(const RatBiPoly& H, const std::string& form, Format fmt, const std::string& out)
{
  OneForm w = parse_one_form(form);
  MilnorBasis b = monomial_basis(H);
  PetrovDecomposition dec = petrov_decompose(w, b);
  OneForm res = petrov_certificate_residual(w, dec, b);
  bool ok = res.P.is_zero() && res.Q.is_zero();
  std::ostringstream os;
  if (fmt == Format::json) {
    json j;
    j["hamiltonian"] = H.to_string();
    j["form"] = {w.P.to_string(), w.Q.to_string()};
    j["coefficients"] = json::array();
    for (int i = 0; i < b.mu; ++i)
      j["coefficients"].push_back({{"monomial", b.monomials[i].to_string()}, {"p", dec.coeff_polys[i].to_string()}});
    j["g"] = dec.witness_g.to_string();
    j["f"] = dec.witness_f.to_string();
    j["certificate_ok"] = ok;
    os << j.dump(2) << "\n";
  } else {
    os << "w = (" << w.P.to_string() << ") dx + (" << w.Q.to_string() << ") dy\n";
    for (int i = 0; i < b.mu; ++i)
      if (!dec.coeff_polys[i].is_zero())
        os << "p" << i << "(t) = " << dec.coeff_polys[i].to_string() << "    [d w" << i << " = "
           << b.monomials[i].to_string() << " dx^dy]\n";
    os << "g = " << dec.witness_g.to_string() << "\nf = " << dec.witness_f.to_string() << "\ncertificate "
       << (ok ? "ok" : "FAILED") << "\n";
  }
  emit(os.str(), out);
  return ok ? kOk : kValidationFailure;
}

int cmd_verify(const RatBiPoly& H, bool numeric, const NumericFlags& f, const ValidationOptions& vo, bool as_json)
{
  PFSystem sys = build_system(H);
  ValidationReport r = validate_system(sys, vo);
  json j;
  j["hamiltonian"] = H.to_string();
  j["identity_ok"] = r.identity_ok;
  j["spectrum_ok"] = r.spectrum_ok;
  j["spectrum_distance"] = r.spectrum_distance;
  j["eigenvector_ok"] = r.eigenvector_ok;
  j["eigenvector_residual"] = r.eigenvector_residual;
  j["b0_triangular_ok"] = r.b0_triangular_ok;
  j["b0_diagonal_ok"] = r.b0_diagonal_ok;
  j["b1_triangular_ok"] = r.b1_triangular_ok;
  j["b1_square_zero_ok"] = r.b1_square_zero_ok;
  j["b_invertible_ok"] = r.b_invertible_ok;
  j["det_B"] = r.det_B.to_string();
  if (!r.details.empty()) j["details"] = r.details;
  if (!sys.numeric_note.empty()) j["numeric_note"] = sys.numeric_note;
  bool ok = r.all_ok();

  if (numeric) {
    if (f.t.empty()) throw PreconditionError("--numeric needs at least one --t");
    if (f.seeds.empty() && f.mode != "x_loop") throw PreconditionError("--numeric real_oval needs --seed");
    TraceOptions o = make_trace_options(f, &sys);
    QuadratureOptions q{f.order};
    j["numeric"] = json::array();
    for (const std::string& ts : f.t) {
      cplx t = parse_complex(ts);
      std::vector<std::optional<CurvePoint>> seeds;
      for (const std::string& s : f.seeds) seeds.emplace_back(parse_point(s));
      if (seeds.empty()) seeds.emplace_back(std::nullopt);
      for (const auto& seed : seeds) {
        Cycle c = trace_with_fallback(H, t, seed, f, o);
        PeriodSample s = system_residual(sys, c, q);
        bool pass = s.residual < f.residual_tol;
        ok = ok && pass;
        j["numeric"].push_back({{"t", cjson(t)},
                                {"samples", c.points.size()},
                                {"closure_error", c.closure_error},
                                {"residual", s.residual},
                                {"pass", pass}});
      }
    }
  }
  j["ok"] = ok;

  if (as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    for (const char* k : {"identity_ok", "spectrum_ok", "eigenvector_ok", "b0_triangular_ok", "b0_diagonal_ok",
                          "b1_triangular_ok", "b1_square_zero_ok", "b_invertible_ok"})
      std::cout << k << " " << (j[k].get<bool>() ? "yes" : "no") << "\n";
    std::cout << "spectrum_distance " << r.spectrum_distance << "\ndet(B0 + t B1) = " << r.det_B.to_string() << "\n";
    if (!r.details.empty()) std::cout << r.details << "\n";
    if (j.contains("numeric"))
      for (const auto& e : j["numeric"])
        std::cout << "t = " << e["t"][0].get<double>() << (e["t"][1].get<double>() < 0 ? "" : "+")
                  << e["t"][1].get<double>() << "i  residual " << e["residual"].get<double>() << "  "
                  << (e["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
    std::cout << (ok ? "verified" : "FAILED") << "\n";
  }
  return ok ? kOk : kValidationFailure;
}

int cmd_periods(const RatBiPoly& H, const NumericFlags& f, const std::string& cycle_in, const std::string& cycle_out,
                const std::string& out)
{
  PFSystem sys = build_system(H);
  Cycle c;
  if (!cycle_in.empty()) {
    c = cycle_from_json(read_file(cycle_in), H);
  } else {
    if (f.t.size() != 1) throw PreconditionError("periods needs exactly one --t");
    if (f.seeds.size() > 1) throw PreconditionError("periods takes at most one --seed");
    std::optional<CurvePoint> seed;
    if (!f.seeds.empty()) seed = parse_point(f.seeds[0]);
    c = trace_with_fallback(H, parse_complex(f.t[0]), seed, f, make_trace_options(f, &sys));
  }
  if (!cycle_out.empty()) emit(cycle_to_json(c) + "\n", cycle_out);
  PeriodSample s = system_residual(sys, c, QuadratureOptions{f.order});
  emit(period_sample_to_json(s) + "\n", out);
  return s.residual < f.residual_tol ? kOk : kValidationFailure;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Picard-Fuchs systems for Abelian integrals of polynomial Hamiltonians"};
  app.require_subcommand(1);
  app.add_flag("--json-errors", g_json_errors, "machine-readable errors on stderr");

  std::string hamiltonian, format = "text", out, form, cycle_in, cycle_out;
  bool as_json = false, numeric = false;
  NumericFlags nf;
  ValidationOptions vo;

  auto add_h = [&](CLI::App* s) {
    s->add_option("hamiltonian", hamiltonian, "polynomial in x, y")->required();
    s->add_flag("--json-errors", g_json_errors, "machine-readable errors on stderr");
  };
  auto add_fmt = [&](CLI::App* s) {
    s->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "latex", "text"}));
    s->add_option("--out", out, "write output to FILE");
  };

  CLI::App* check = app.add_subcommand("check", "regularity at infinity");
  add_h(check);
  check->add_flag("--json", as_json, "JSON report");

  CLI::App* basis = app.add_subcommand("basis", "monomial basis of the Milnor algebra");
  add_h(basis);
  add_fmt(basis);

  CLI::App* system = app.add_subcommand("system", "build (t - A) X' = (B0 + B1 t) X");
  add_h(system);
  add_fmt(system);

  CLI::App* reduce = app.add_subcommand("reduce", "Petrov decomposition of a 1-form");
  add_h(reduce);
  add_fmt(reduce);
  reduce->add_option("--form", form, "P,Q for P dx + Q dy")->required();

  CLI::App* verify = app.add_subcommand("verify", "exact and optional numeric validation");
  add_h(verify);
  verify->add_flag("--json", as_json, "JSON report");
  verify->add_flag("--numeric", numeric, "trace cycles and check the system residual");
  verify->add_option("--spectrum-tol", vo.spectrum_tol, "spectrum vs critical values");
  verify->add_option("--eigenvector-tol", vo.eigenvector_tol, "A v = t v residual");
  add_numeric_flags(verify, nf);

  CLI::App* periods = app.add_subcommand("periods", "periods and Gelfand-Leray derivatives on one cycle");
  add_h(periods);
  periods->add_option("--out", out, "write the sample to FILE");
  periods->add_option("--cycle", cycle_in, "read the cycle from a JSON file instead of tracing");
  periods->add_option("--export-cycle", cycle_out, "write the traced cycle as JSON");
  add_numeric_flags(periods, nf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("UsageError", e.what(), kInputError);
  }

  try {
    RatBiPoly H = parse_polynomial(hamiltonian);
    Format fmt = parse_format(format);
    if (*check) return cmd_check(H, as_json);
    if (*basis) return cmd_basis(H, fmt, out);
    if (*system) return cmd_system(H, fmt, out);
    if (*reduce) return cmd_reduce(H, form, fmt, out);
    if (*verify) return cmd_verify(H, numeric, nf, vo, as_json);
    if (*periods) return cmd_periods(H, nf, cycle_in, cycle_out, out);
  } catch (const InternalRankError& e) {
    return report_error(e.kind(), e.what(), kValidationFailure);
  } catch (const ParseError& e) {
    if (g_json_errors) {
      json j{{"error", e.kind()}, {"message", e.what()}, {"position", e.position}, {"exit_code", kInputError}};
      std::cerr << j.dump() << "\n";
      return kInputError;
    }
    return report_error(e.kind(), e.what(), kInputError);
  } catch (const Error& e) {
    return report_error(e.kind(), e.what(), kInputError);
  } catch (const std::exception& e) {
    return report_error("Error", e.what(), kInputError);
  }
  return kInputError;
}
