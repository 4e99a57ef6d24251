#include <doctest.h>

#include "pf/errors.hpp"
#include "pf/linalg.hpp"
#include "pf/resultant.hpp"
#include "pf/roots.hpp"
#include "support.hpp"

using namespace pf;
using namespace pf::test;

namespace {

RatMatrix mat(std::initializer_list<std::initializer_list<int>> rows)
{
  RatMatrix m(rows.size(), rows.begin()->size());
  int i = 0;
  for (auto r : rows) {
    int j = 0;
    for (int v : r) m(i, j++) = Rational(v);
    ++i;
  }
  return m;
}

RatVector vec(std::initializer_list<Rational> v)
{
  RatVector r(v.size());
  int i = 0;
  for (const Rational& x : v) r(i++) = x;
  return r;
}

RatUPoly upoly(std::initializer_list<int> c)
{
  std::vector<Rational> v;
  for (int x : c) v.emplace_back(x);
  return RatUPoly(v);
}

} // namespace

TEST_CASE("rational canonical form")
{
  Rational r(6, -4);
  CHECK(r.numerator() == -3);
  CHECK(r.denominator() == 2);
  CHECK(Rational(0, 7).denominator() == 1);
  CHECK(Rational::from_string("10/4") == Rational(5, 2));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK((Rational(2, 3) * Rational(3, 4)).to_string() == "1/2");
  CHECK_THROWS_AS(Rational(1) / Rational(0), DegenerateInput);
}

TEST_CASE("canonical after every operation")
{
  std::mt19937 rng(7);
  for (int k = 0; k < 200; ++k) {
    Rational a = random_rational(rng, 50, 30), b = random_rational(rng, 50, 30);
    for (Rational r : {a + b, a - b, a * b}) {
      CHECK(r.denominator() > 0);
      CHECK(gcd(r.numerator(), r.denominator()) == 1);
    }
  }
}

TEST_CASE("polynomial ring operations")
{
  CHECK(P("x+y") * P("x-y") == P("x^2-y^2"));
  CHECK(P("x^3 - 2/3 x y") + RatBiPoly() == P("x^3 - 2/3 x y"));
  CHECK(P("x^5+y^5+x^2*y^2+x+y")(Rational(1), Rational(1)) == Rational(5));
  cplx v = P("x^2+y^2")(cplx(0, 1), cplx(1, 0));
  CHECK(std::abs(v) < 1e-15);
  CHECK(P("x - x").is_zero());
  CHECK(RatBiPoly().degree() == kZeroDegree);
}

TEST_CASE("partial derivatives")
{
  CHECK(partial_derivative(P("x^5+y^5+x^2*y^2+x+y"), Var::x) == P("5x^4+2x y^2+1"));
  CHECK(partial_derivative(P("7/3"), Var::y).is_zero());
  CHECK(partial_derivative(P("x^3+y^3-3xy"), Var::x) == P("3x^2-3y"));
}

TEST_CASE("highest homogeneous part")
{
  CHECK(highest_homogeneous_part(P("x^5+y^5+x^2*y^2+x+y")) == P("x^5+y^5"));
  CHECK(highest_homogeneous_part(P("y^2+x^3-x")) == P("x^3"));
  CHECK(highest_homogeneous_part(P("x^2 y - 4 y^3")) == P("x^2 y - 4 y^3"));
  CHECK_THROWS_AS(highest_homogeneous_part(RatBiPoly()), ZeroPolynomial);
}

TEST_CASE("resultants")
{
  CHECK(resultant(P("y^2-x"), P("y-1"), Var::y) == upoly({1, -1}));
  RatUPoly r = resultant(P("3x^2-3y"), P("3y^2-3x"), Var::y);
  RatUPoly expected = upoly({0, -27, 0, 0, 27});
  CHECK(r.degree() == 4);
  CHECK((r.leading() * expected - expected.leading() * r).is_zero());
  CHECK(resultant(P("x^2+x y+1"), P("x^2+x y+1"), Var::x).is_zero());
  CHECK_THROWS_AS(resultant(P("y"), P("y^2"), Var::x), DegenerateInput);
}

TEST_CASE("resultant vanishes iff common factor")
{
  std::mt19937 rng(11);
  for (int k = 0; k < 20; ++k) {
    RatBiPoly f = random_poly(rng, 2) + P("y");
    RatBiPoly g = random_poly(rng, 2) + P("y^2");
    RatBiPoly h = random_poly(rng, 1) + P("y");
    CHECK(resultant(f * h, g * h, Var::y).is_zero());
    RatBiPoly a = P("y - x"), b = P("y + x + 1");
    CHECK_FALSE(resultant(a, b, Var::y).is_zero());
  }
  CHECK_FALSE(resultant(P("y^2 - x"), P("y^2 + x - 2"), Var::y).is_zero());
}

TEST_CASE("exact_solve")
{
  RatMatrix I = RatMatrix::Identity(3, 3);
  RatVector b = vec({Rational(1, 2), Rational(-3), Rational(7, 5)});
  CHECK(*exact_solve(I, b) == b);
  CHECK_FALSE(exact_solve(mat({{1, 1}, {2, 2}}), vec({1, 3})).has_value());
  CHECK(*exact_solve(mat({{2, 0}, {0, 4}}), vec({1, 1})) == vec({Rational(1, 2), Rational(1, 4)}));
  // underdetermined: leftmost pivots, free variables zero
  auto s = exact_solve(mat({{1, 2, 3}, {0, 0, 1}}), vec({4, 1}));
  REQUIRE(s);
  CHECK(*s == vec({1, 0, 1}));
}

TEST_CASE("exact_solve substitution property")
{
  std::mt19937 rng(3);
  for (int k = 0; k < 30; ++k) {
    int rows = 2 + k % 5, cols = 2 + (k * 3) % 6;
    RatMatrix M = random_matrix(rng, rows, cols);
    if (k % 3 == 0) M.row(rows - 1) = M.row(0) * Rational(2);
    RatVector x = random_matrix(rng, cols, 1).col(0);
    RatVector rhs = M * x;
    auto s = exact_solve(M, rhs);
    REQUIRE(s);
    CHECK(M * *s == rhs);
    ExactFactorization F(M);
    for (const RatVector& v : F.nullspace()) CHECK(is_zero(RatMatrix(M * v)));
    CHECK(F.rank() + static_cast<Eigen::Index>(F.nullspace().size()) == cols);
  }
}

TEST_CASE("characteristic and minimal polynomials")
{
  RatMatrix Z = RatMatrix::Zero(3, 3);
  CHECK(characteristic_polynomial(Z) == RatUPoly::monomial(Rational(1), 3));
  CHECK(minimal_polynomial(Z) == RatUPoly::variable());
  RatMatrix D = mat({{1, 0}, {0, 2}});
  CHECK(characteristic_polynomial(D) == upoly({2, -3, 1}));
  CHECK(minimal_polynomial(D) == upoly({2, -3, 1}));
  RatMatrix B = mat({{0, -1}, {0, -1}});
  CHECK(characteristic_polynomial(B) == upoly({0, 1, 1}));
  CHECK(minimal_polynomial(B) == upoly({0, 1, 1}));
  RatMatrix J = mat({{2, 1}, {0, 2}});
  CHECK(minimal_polynomial(J) == upoly({4, -4, 1}));
  CHECK_FALSE(is_squarefree(minimal_polynomial(J)));
}

TEST_CASE("Cayley-Hamilton on random matrices")
{
  std::mt19937 rng(5);
  for (int k = 0; k < 15; ++k) {
    int n = 1 + k % 6;
    RatMatrix M = random_matrix(rng, n, n);
    RatUPoly chi = characteristic_polynomial(M);
    CHECK(chi.degree() == n);
    CHECK(is_zero(evaluate(chi, M)));
    RatUPoly mp = minimal_polynomial(M);
    CHECK(is_zero(evaluate(mp, M)));
    CHECK(divmod(chi, mp).second.is_zero());
    CHECK(determinant(M) == (n % 2 ? -chi.coeff(0) : chi.coeff(0)));
  }
}

TEST_CASE("squarefree decomposition and roots")
{
  RatUPoly p = upoly({-1, 1}) * upoly({-1, 1}) * upoly({2, 0, 1});
  auto parts = squarefree_decomposition(p);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == upoly({2, 0, 1}));
  CHECK(parts[1] == upoly({-1, 1}));
  auto roots = complex_roots(p);
  std::vector<cplx> want{1.0, 1.0, cplx(0, std::sqrt(2.0)), cplx(0, -std::sqrt(2.0))};
  CHECK(multiset_distance(expand(roots), want) < 1e-12);
}
