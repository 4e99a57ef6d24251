#include "pf/linalg.hpp"

#include <numeric>

#include "pf/errors.hpp"

namespace pf {

namespace {

mpz_class row_denominator_lcm(const RatMatrix& m, Eigen::Index r)
{
  mpz_class l = 1;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const mpz_class d = m(r, c).denominator();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  return l;
}

mpz_class scaled_entry(const Rational& v, const mpz_class& scale)
{
  return exact_div(v.numerator() * scale, v.denominator());
}

RatUPoly lcm(const RatUPoly& p, const RatUPoly& q)
{
  return exact_div(p * q, gcd(p, q)).monic();
}

RatVector apply(const RatUPoly& p, const RatMatrix& m, const RatVector& v)
{
  RatVector acc = RatVector::Zero(v.size());
  for (int k = p.degree(); k >= 0; --k) {
    acc = (m * acc).eval();
    acc += p.coeff(k) * v;
  }
  return acc;
}

} // namespace

ExactFactorization::ExactFactorization(const RatMatrix& m) : rows_(m.rows()), cols_(m.cols())
{
  const Eigen::Index width = cols_ + rows_;
  std::vector<std::vector<mpz_class>> w(rows_, std::vector<mpz_class>(width, 0));
  row_scale_.resize(rows_);
  for (Eigen::Index r = 0; r < rows_; ++r) {
    row_scale_[r] = row_denominator_lcm(m, r);
    for (Eigen::Index c = 0; c < cols_; ++c) w[r][c] = scaled_entry(m(r, c), row_scale_[r]);
    w[r][cols_ + r] = 1;
  }

  mpz_class prev = 1;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols_ && r < rows_; ++c) {
    Eigen::Index p = r;
    while (p < rows_ && sgn(w[p][c]) == 0) ++p;
    if (p == rows_) continue;
    std::swap(w[p], w[r]);
    const mpz_class& piv = w[r][c];
    for (Eigen::Index i = r + 1; i < rows_; ++i) {
      const mpz_class f = w[i][c];
      for (Eigen::Index j = c + 1; j < width; ++j) {
        mpz_class t = piv * w[i][j];
        if (sgn(f) != 0) t -= f * w[r][j];
        w[i][j] = exact_div(t, prev);
      }
      w[i][c] = 0;
    }
    prev = piv;
    pivots_.push_back(c);
    ++r;
  }

  echelon_.resize(rows_);
  transform_.resize(rows_);
  for (Eigen::Index i = 0; i < rows_; ++i) {
    echelon_[i].assign(w[i].begin(), w[i].begin() + cols_);
    transform_[i].assign(w[i].begin() + cols_, w[i].end());
  }
}

std::optional<RatVector> ExactFactorization::solve(const RatVector& rhs) const
{
  if (rhs.size() != rows_) throw DegenerateInput("exact_solve: dimension mismatch");
  std::vector<Rational> scaled(rows_);
  for (Eigen::Index j = 0; j < rows_; ++j) scaled[j] = Rational(row_scale_[j]) * rhs(j);

  std::vector<Rational> y(rows_);
  for (Eigen::Index i = 0; i < rows_; ++i) {
    Rational acc(0);
    for (Eigen::Index j = 0; j < rows_; ++j)
      if (sgn(transform_[i][j]) != 0 && !scaled[j].is_zero()) acc += Rational(transform_[i][j]) * scaled[j];
    y[i] = acc;
  }
  for (Eigen::Index i = rank(); i < rows_; ++i)
    if (!y[i].is_zero()) return std::nullopt;

  RatVector x = RatVector::Zero(cols_);
  for (Eigen::Index i = rank() - 1; i >= 0; --i) {
    const Eigen::Index pc = pivots_[i];
    Rational acc = y[i];
    for (Eigen::Index k = i + 1; k < rank(); ++k) {
      const Eigen::Index c = pivots_[k];
      if (sgn(echelon_[i][c]) != 0) acc -= Rational(echelon_[i][c]) * x(c);
    }
    x(pc) = acc / Rational(echelon_[i][pc]);
  }
  return x;
}

std::vector<RatVector> ExactFactorization::nullspace() const
{
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots_) is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (Eigen::Index f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    RatVector x = RatVector::Zero(cols_);
    x(f) = 1;
    for (Eigen::Index i = rank() - 1; i >= 0; --i) {
      const Eigen::Index pc = pivots_[i];
      Rational acc(0);
      for (Eigen::Index c = pc + 1; c < cols_; ++c)
        if (sgn(echelon_[i][c]) != 0 && !x(c).is_zero()) acc -= Rational(echelon_[i][c]) * x(c);
      x(pc) = acc / Rational(echelon_[i][pc]);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<RatVector> exact_solve(const RatMatrix& m, const RatVector& rhs)
{
  return ExactFactorization(m).solve(rhs);
}

Eigen::Index rank(const RatMatrix& m)
{
  return ExactFactorization(m).rank();
}

Rational determinant(const RatMatrix& m)
{
  if (m.rows() != m.cols()) throw DegenerateInput("determinant of a non-square matrix");
  std::vector<std::vector<mpz_class>> w(m.rows(), std::vector<mpz_class>(m.cols()));
  mpz_class scale_product = 1;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const mpz_class s = row_denominator_lcm(m, r);
    scale_product *= s;
    for (Eigen::Index c = 0; c < m.cols(); ++c) w[r][c] = scaled_entry(m(r, c), s);
  }
  return Rational(bareiss_determinant(std::move(w)), scale_product);
}

RatUPoly determinant(const std::vector<std::vector<RatUPoly>>& m)
{
  for (const auto& row : m)
    if (row.size() != m.size()) throw DegenerateInput("determinant of a non-square matrix");
  return bareiss_determinant(m);
}

RatUPoly characteristic_polynomial(const RatMatrix& m)
{
  if (m.rows() != m.cols()) throw DegenerateInput("characteristic polynomial of a non-square matrix");
  const Eigen::Index n = m.rows();
  RatMatrix h = m;

  // Similarity reduction to upper Hessenberg form.
  for (Eigen::Index j = 0; j + 2 < n; ++j) {
    Eigen::Index i = j + 1;
    while (i < n && h(i, j).is_zero()) ++i;
    if (i == n) continue;
    if (i != j + 1) {
      h.row(i).swap(h.row(j + 1));
      h.col(i).swap(h.col(j + 1));
    }
    for (Eigen::Index k = j + 2; k < n; ++k) {
      if (h(k, j).is_zero()) continue;
      const Rational u = h(k, j) / h(j + 1, j);
      for (Eigen::Index c = 0; c < n; ++c) h(k, c) -= u * h(j + 1, c);
      for (Eigen::Index r = 0; r < n; ++r) h(r, j + 1) += u * h(r, k);
    }
  }

  const RatUPoly t = RatUPoly::variable();
  std::vector<RatUPoly> p(n + 1);
  p[0] = RatUPoly(Rational(1));
  for (Eigen::Index mm = 1; mm <= n; ++mm) {
    p[mm] = (t - RatUPoly(h(mm - 1, mm - 1))) * p[mm - 1];
    Rational prod(1);
    for (Eigen::Index i = mm - 1; i >= 1; --i) {
      prod *= h(i, i - 1);
      if (prod.is_zero()) break;
      p[mm] -= (h(i - 1, mm - 1) * prod) * p[i - 1];
    }
  }
  return p[n];
}

RatUPoly minimal_polynomial(const RatMatrix& m)
{
  if (m.rows() != m.cols()) throw DegenerateInput("minimal polynomial of a non-square matrix");
  const Eigen::Index n = m.rows();
  RatUPoly acc(Rational(1));
  for (Eigen::Index k = 0; k < n; ++k) {
    RatVector e = RatVector::Zero(n);
    e(k) = 1;
    if (is_zero(apply(acc, m, e))) continue;

    std::vector<RatVector> krylov{e};
    while (true) {
      RatVector next = m * krylov.back();
      RatMatrix basis(n, static_cast<Eigen::Index>(krylov.size()));
      for (std::size_t c = 0; c < krylov.size(); ++c) basis.col(c) = krylov[c];
      if (auto coeffs = exact_solve(basis, next)) {
        std::vector<Rational> c(krylov.size() + 1);
        for (std::size_t i = 0; i < krylov.size(); ++i) c[i] = -(*coeffs)(i);
        c.back() = 1;
        acc = lcm(acc, RatUPoly(std::move(c)));
        break;
      }
      krylov.push_back(std::move(next));
    }
  }
  return acc;
}

RatMatrix evaluate(const RatUPoly& p, const RatMatrix& m)
{
  const Eigen::Index n = m.rows();
  RatMatrix acc = RatMatrix::Zero(n, n);
  for (int k = p.degree(); k >= 0; --k) {
    acc = (acc * m).eval();
    for (Eigen::Index i = 0; i < n; ++i) acc(i, i) += p.coeff(k);
  }
  return acc;
}

bool is_zero(const RatMatrix& m)
{
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

} // namespace pf
