#include "pf/picard_fuchs.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "pf/errors.hpp"
#include "pf/linalg.hpp"
#include "pf/parallel.hpp"
#include "pf/parse.hpp"

namespace pf {

PFSystem build_system(const RatBiPoly& H)
{
  return build_system(monomial_basis(H));
}

PFSystem build_system(const MilnorBasis& basis)
{
  PFSystem sys;
  sys.basis = basis;
  const int mu = basis.mu;
  sys.A = RatMatrix::Zero(mu, mu);
  sys.B0 = RatMatrix::Zero(mu, mu);
  sys.B1 = RatMatrix::Zero(mu, mu);
  sys.etas.resize(mu);
  sys.petrov.resize(mu);
  for (int i = 0; i < mu; ++i) sys.D.push_back(Rational(basis.form_degree(i), basis.n + 1));

  PetrovDecomposer decomposer(basis);
  std::vector<RatVector> a_rows(mu);
  parallel_for(mu, [&](std::size_t i) {
    const auto division = divide_two_form(TwoForm{basis.H.shifted(basis.monomials[i])}, basis);
    a_rows[i] = division.coeffs;
    sys.etas[i] = division.eta;
    sys.petrov[i] = decomposer.decompose(division.eta);
  });

  for (int i = 0; i < mu; ++i) {
    sys.A.row(i) = a_rows[i].transpose();
    for (int j = 0; j < mu; ++j) {
      const auto& p = sys.petrov[i].coeff_polys[j];
      if (p.degree() > 1) throw InternalRankError("Petrov coefficient of degree > 1 in eta_" + std::to_string(i));
      sys.B0(i, j) = p.coeff(0);
      sys.B1(i, j) = p.coeff(1);
    }
  }

  try {
    sys.critical_points = critical_points_numeric(basis.H);
  } catch (const NumericalFailure& e) {
    sys.numeric_note = e.what();
  }
  return sys;
}

std::vector<Root> critical_values(const PFSystem& sys, double merge_tol)
{
  std::vector<Root> out;
  for (const auto& p : sys.critical_points) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Root& r) {
      return std::abs(r.value - p.t) <= merge_tol * std::max(1.0, std::abs(p.t));
    });
    if (it == out.end()) out.push_back({p.t, p.multiplicity});
    else it->multiplicity += p.multiplicity;
  }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return out;
}

std::vector<Root> spectrum(const RatMatrix& A)
{
  return complex_roots(characteristic_polynomial(A));
}

namespace {

Eigen::MatrixXd to_double(const RatMatrix& m)
{
  Eigen::MatrixXd d(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) d(i, j) = m(i, j).to_double();
  return d;
}

bool check_identities(const PFSystem& sys, std::ostringstream& log)
{
  const auto& b = sys.basis;
  bool ok = true;
  for (int i = 0; i < b.mu; ++i) {
    // H dw_i - dH ^ eta_i - sum_j A_ij dw_j
    TwoForm r{b.H.shifted(b.monomials[i])};
    r -= wedge_with_dH(b.H, sys.etas[i]);
    for (int j = 0; j < b.mu; ++j) r -= sys.A(i, j) * TwoForm{RatBiPoly::term(Rational(1), b.monomials[j].a, b.monomials[j].b)};
    if (!r.is_zero()) {
      ok = false;
      log << "division identity fails for row " << i << "\n";
    }
    if (sys.etas[i].degree() > b.form_degree(i)) {
      ok = false;
      log << "deg eta_" << i << " exceeds deg w_" << i << "\n";
    }
    if (!petrov_certificate_residual(sys.etas[i], sys.petrov[i], b).is_zero()) {
      ok = false;
      log << "Petrov certificate fails for row " << i << "\n";
    }
    for (int j = 0; j < b.mu; ++j) {
      const auto& p = sys.petrov[i].coeff_polys[j];
      if (p.degree() > 1 || p.coeff(0) != sys.B0(i, j) || p.coeff(1) != sys.B1(i, j)) {
        ok = false;
        log << "B0/B1 entry (" << i << "," << j << ") disagrees with its certificate\n";
      }
    }
  }
  return ok;
}

} // namespace

ValidationReport validate_system(const PFSystem& sys, const ValidationOptions& opts)
{
  ValidationReport rep;
  std::ostringstream log;
  const auto& b = sys.basis;
  const int mu = b.mu;

  rep.identity_ok = check_identities(sys, log);

  // Spectrum of A against the resultant oracle.
  if (sys.critical_points.empty()) {
    log << "no numeric critical points: " << sys.numeric_note << "\n";
  } else {
    std::vector<cplx> values;
    for (const auto& p : sys.critical_points)
      for (int k = 0; k < p.multiplicity; ++k) values.push_back(p.t);
    const auto eig = expand(spectrum(sys.A));
    double scale = 1.0;
    for (const auto& v : values) scale = std::max(scale, std::abs(v));
    rep.spectrum_distance = multiset_distance(eig, values);
    rep.spectrum_ok = rep.spectrum_distance <= opts.spectrum_tol * scale;
    if (!rep.spectrum_ok) log << "spectrum mismatch: distance " << rep.spectrum_distance << "\n";

    // A v_j = t_j v_j with v_j = (m_i(x_j, y_j))_i at every simple critical point.
    const Eigen::MatrixXcd a = to_double(sys.A).cast<cplx>();
    const double a_norm = std::max(1.0, a.cwiseAbs().rowwise().sum().maxCoeff());
    rep.eigenvector_ok = true;
    for (const auto& p : sys.critical_points) {
      if (p.multiplicity != 1) continue;
      Eigen::VectorXcd v(mu);
      for (int i = 0; i < mu; ++i)
        v(i) = std::pow(p.x, b.monomials[i].a) * std::pow(p.y, b.monomials[i].b);
      const double res = (a * v - p.t * v).cwiseAbs().maxCoeff() / (a_norm * v.cwiseAbs().maxCoeff());
      rep.eigenvector_residual = std::max(rep.eigenvector_residual, res);
    }
    if (rep.eigenvector_residual > opts.eigenvector_tol) {
      rep.eigenvector_ok = false;
      log << "eigenvector residual " << rep.eigenvector_residual << "\n";
    }
  }

  // Triangularity in degree order.
  rep.b0_triangular_ok = rep.b0_diagonal_ok = rep.b1_triangular_ok = true;
  for (int i = 0; i < mu; ++i) {
    for (int j = 0; j < mu; ++j) {
      const int di = b.form_degree(i), dj = b.form_degree(j);
      if (i == j) {
        if (sys.B0(i, i) != sys.D[i]) {
          rep.b0_diagonal_ok = false;
          log << "B0(" << i << "," << i << ") = " << sys.B0(i, i) << " != " << sys.D[i] << "\n";
        }
      } else if (!sys.B0(i, j).is_zero() && (dj >= di || j > i)) {
        rep.b0_triangular_ok = false;
        log << "B0(" << i << "," << j << ") nonzero above the degree diagonal\n";
      }
      if (!sys.B1(i, j).is_zero() && (di - dj < b.n + 1 || j >= i)) {
        rep.b1_triangular_ok = false;
        log << "B1(" << i << "," << j << ") nonzero with degree gap " << di - dj << "\n";
      }
    }
  }
  rep.b1_square_zero_ok = is_zero(RatMatrix(sys.B1 * sys.B1));
  if (!rep.b1_square_zero_ok) log << "B1^2 != 0\n";

  std::vector<std::vector<RatUPoly>> pencil(mu, std::vector<RatUPoly>(mu));
  for (int i = 0; i < mu; ++i)
    for (int j = 0; j < mu; ++j) pencil[i][j] = RatUPoly(std::vector<Rational>{sys.B0(i, j), sys.B1(i, j)});
  rep.det_B = determinant(pencil);
  rep.b_invertible_ok = rep.det_B.degree() == 0;
  if (!rep.b_invertible_ok) log << "det(B0 + t B1) = " << rep.det_B.to_string() << " is not a nonzero constant\n";

  rep.details = log.str();
  return rep;
}

SingularityClassification classify_singularities(const PFSystem& sys)
{
  SingularityClassification c;
  c.minimal_polynomial = minimal_polynomial(sys.A);
  c.finite_fuchsian = is_squarefree(c.minimal_polynomial);
  c.infinity_fuchsian_form = is_zero(sys.B1);
  std::ostringstream os;
  os << "minimal polynomial of A: " << c.minimal_polynomial.to_string() << " ("
     << (c.finite_fuchsian ? "squarefree, A diagonalizable" : "repeated factor, A not diagonalizable") << "); ";
  if (c.infinity_fuchsian_form) {
    os << "B1 = 0";
  } else {
    int nonzero = 0;
    for (Eigen::Index i = 0; i < sys.B1.rows(); ++i)
      for (Eigen::Index j = 0; j < sys.B1.cols(); ++j) nonzero += !sys.B1(i, j).is_zero();
    os << "B1 has " << nonzero << " nonzero entries, infinity is not Fuchsian";
  }
  c.details = os.str();
  return c;
}

namespace {

using nlohmann::json;

json matrix_json(const RatMatrix& m)
{
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

RatMatrix matrix_from_json(const json& j)
{
  const Eigen::Index r = static_cast<Eigen::Index>(j.size());
  const Eigen::Index c = r == 0 ? 0 : static_cast<Eigen::Index>(j[0].size());
  RatMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != c) throw DegenerateInput("ragged matrix in JSON");
    for (Eigen::Index k = 0; k < c; ++k) m(i, k) = Rational::from_string(j[i][k].get<std::string>());
  }
  return m;
}

std::string latex_rational(const Rational& r)
{
  if (r.is_integer()) return r.to_string();
  std::string s = r.sign() < 0 ? "-" : "";
  return s + "\\frac{" + abs(r).numerator().get_str() + "}{" + r.denominator().get_str() + "}";
}

std::string latex_matrix(const RatMatrix& m)
{
  std::ostringstream os;
  os << "\\begin{pmatrix}\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? " & " : "") << latex_rational(m(i, j));
    os << (i + 1 < m.rows() ? " \\\\\n" : "\n");
  }
  os << "\\end{pmatrix}";
  return os.str();
}

std::string latex_poly(const RatBiPoly& p)
{
  std::string s = p.to_string();
  std::string out;
  for (char ch : s)
    if (ch != '*') out += ch;
  return out;
}

std::string text_matrix(const std::string& name, const RatMatrix& m)
{
  std::vector<std::size_t> width(m.cols(), 1);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) width[j] = std::max(width[j], m(i, j).to_string().size());
  std::ostringstream os;
  os << name << " =\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << "  [";
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      os << (j ? " " : "") << std::setw(static_cast<int>(width[j])) << m(i, j).to_string();
    os << "]\n";
  }
  return os.str();
}

} // namespace

std::string serialize_system(const PFSystem& sys, Format format)
{
  const auto& b = sys.basis;
  const auto cls = classify_singularities(sys);
  const auto rep = validate_system(sys);

  if (format == Format::json) {
    json j;
    j["hamiltonian"] = b.H.to_string();
    j["n"] = b.n;
    j["mu"] = b.mu;
    j["basis"] = json::array();
    for (int i = 0; i < b.mu; ++i)
      j["basis"].push_back({{"a", b.monomials[i].a}, {"b", b.monomials[i].b}, {"deg_form", b.form_degree(i)}});
    j["A"] = matrix_json(sys.A);
    j["B0"] = matrix_json(sys.B0);
    j["B1"] = matrix_json(sys.B1);
    j["D"] = json::array();
    for (const auto& d : sys.D) j["D"].push_back(d.to_string());
    j["critical_values"] = json::array();
    for (const auto& cv : critical_values(sys))
      j["critical_values"].push_back({{"re", cv.value.real()}, {"im", cv.value.imag()}, {"mult", cv.multiplicity}});
    j["classification"] = {{"finite_fuchsian", cls.finite_fuchsian},
                           {"infinity_fuchsian_form", cls.infinity_fuchsian_form}};
    j["validation"] = {{"identity_ok", rep.identity_ok},
                       {"spectrum_ok", rep.spectrum_ok},
                       {"eigenvector_ok", rep.eigenvector_ok},
                       {"b0_triangular_ok", rep.b0_triangular_ok},
                       {"b0_diagonal_ok", rep.b0_diagonal_ok},
                       {"b1_triangular_ok", rep.b1_triangular_ok},
                       {"b1_square_zero_ok", rep.b1_square_zero_ok},
                       {"b_invertible_ok", rep.b_invertible_ok}};
    return j.dump(2) + "\n";
  }

  std::ostringstream os;
  if (format == Format::latex) {
    os << "% Picard--Fuchs system for H = " << b.H.to_string() << "\n";
    os << "% basis forms: d\\omega_i = m_i\\,dx\\wedge dy, m = (";
    for (int i = 0; i < b.mu; ++i) os << (i ? ", " : "") << latex_poly(RatBiPoly::term(Rational(1), b.monomials[i].a, b.monomials[i].b));
    os << ")\n";
    os << "\\[\n  (t - A)\\dot X(t) = (B_0 + B_1 t) X(t), \\qquad H = " << latex_poly(b.H) << "\n\\]\n";
    os << "\\[\nA = " << latex_matrix(sys.A) << "\n\\]\n";
    os << "\\[\nB_0 = " << latex_matrix(sys.B0) << "\n\\]\n";
    os << "\\[\nB_1 = " << latex_matrix(sys.B1) << "\n\\]\n";
    return os.str();
  }

  os << "H = " << b.H.to_string() << "\n";
  os << "n = " << b.n << ", mu = " << b.mu << (b.standard_grid ? " (standard grid basis)" : " (greedy basis)") << "\n";
  os << "basis:";
  for (int i = 0; i < b.mu; ++i) os << " " << b.monomials[i].to_string();
  os << "\nD =";
  for (const auto& d : sys.D) os << " " << d;
  os << "\n" << text_matrix("A", sys.A) << text_matrix("B0", sys.B0) << text_matrix("B1", sys.B1);
  os << "critical values:";
  for (const auto& cv : critical_values(sys))
    os << " " << cv.value.real() << (cv.value.imag() < 0 ? "-" : "+") << std::abs(cv.value.imag()) << "i"
       << (cv.multiplicity > 1 ? "(x" + std::to_string(cv.multiplicity) + ")" : "");
  os << "\nclassification: " << cls.details << "\n";
  os << "validation: " << (rep.all_ok() ? "all checks pass" : "FAILED") << "\n";
  if (!rep.details.empty()) os << rep.details;
  return os.str();
}

SerializedSystem parse_system_json(const std::string& text)
{
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DegenerateInput(std::string("invalid system JSON: ") + e.what());
  }
  SerializedSystem s;
  s.hamiltonian = parse_polynomial(j.at("hamiltonian").get<std::string>());
  s.n = j.at("n").get<int>();
  s.mu = j.at("mu").get<int>();
  for (const auto& m : j.at("basis")) s.basis.push_back({m.at("a").get<int>(), m.at("b").get<int>()});
  s.A = matrix_from_json(j.at("A"));
  s.B0 = matrix_from_json(j.at("B0"));
  s.B1 = matrix_from_json(j.at("B1"));
  for (const auto& d : j.at("D")) s.D.push_back(Rational::from_string(d.get<std::string>()));
  return s;
}

} // namespace pf
