#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "jacring/poly.hpp"

using namespace jacring;
using testing_util::poly;
using testing_util::random_form;

TEST_CASE("arithmetic examples") {
  const auto x0 = HomogPoly::variable(3, 0), x1 = HomogPoly::variable(3, 1);
  CHECK((x0 * x1).degree() == 2);
  CHECK((x0 * x1).size() == 1);
  CHECK((x0 + x1) * (x0 - x1) == poly("x0^2 - x1^2", 2));
  CHECK((HomogPoly(3, 1) * x0).is_zero());
  CHECK(poly("x0 + x1", 2).scaled(0).is_zero());
  CHECK_THROWS((x0 * x1) + x0);
}

TEST_CASE("partial derivatives") {
  CHECK(partial(poly("x0^3", 2), 0) == poly("3*x0^2", 2));
  CHECK(partial(poly("x0^3", 2), 1).is_zero());
  CHECK(euler_identity_holds(poly("x0^3 + x1^3 + x2^3", 2)));
}

TEST_CASE("grevlex order of the degree-2 monomials in three variables") {
  const auto mons = monomials_of_degree(3, 2);
  std::vector<std::string> names;
  for (const auto& e : mons) names.push_back(to_string(HomogPoly::monomial(e)));
  CHECK(names == std::vector<std::string>{"x0^2", "x0*x1", "x1^2", "x0*x2", "x1*x2", "x2^2"});
  CHECK(monomials_of_degree(4, 3).size() == 20);
  CHECK(monomials_of_degree(3, -1).empty());
}

TEST_CASE("determinant examples") {
  CHECK(derivative_determinant({poly("x0^2", 1), poly("x1^2", 1)}) == poly("4*x0*x1", 1));
  CHECK(derivative_determinant({poly("x0^2+x1^2+x2^2", 2), poly("x0", 2), poly("x1", 2)}) == poly("2*x2", 2));
  const auto f = poly("x0^2 + x1*x2", 2);
  CHECK(derivative_determinant({f, f, poly("x1", 2)}).is_zero());
}

TEST_CASE("identity (*) examples") {
  CHECK(verify_identity_star({poly("x0^2", 1), poly("x1^2", 1)}));
  const auto rep = expand_identity_star({poly("x0^2", 1), poly("x1^2", 1)});
  CHECK(rep.lhs == poly("4*x0^2*x1", 1));
  CHECK(rep.holds);
  CHECK(verify_identity_star({poly("x0^3+x1^3+x2^3", 2), poly("x0", 2), poly("x1", 2)}));
  CHECK_THROWS(verify_identity_star({poly("x0^2", 1)}));
}

TEST_CASE("properties on random forms") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 1 + trial % 3;
    const auto f = random_form(rng, n, 1 + trial % 3);
    const auto g = random_form(rng, n, 1 + (trial + 1) % 3);
    const auto h = random_form(rng, n, f.degree());
    CHECK(euler_identity_holds(f));
    CHECK(euler_identity_holds(f * g));
    for (std::size_t k = 0; k <= static_cast<std::size_t>(n); ++k) {
      CHECK(partial(f * g, k) == partial(f, k) * g + f * partial(g, k));
      CHECK(partial(f + h, k) == partial(f, k) + partial(h, k));
    }
    std::vector<HomogPoly> forms;
    for (int i = 0; i <= n; ++i) forms.push_back(random_form(rng, n, 1 + (trial + i) % 2));
    CHECK(verify_identity_star(forms));
    auto swapped = forms;
    std::swap(swapped[0], swapped[1]);
    CHECK(derivative_determinant(swapped) == -derivative_determinant(forms));
  }
}

TEST_CASE("determinant of generic 7x7 constant matrix matches elimination") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::vector<std::vector<HomogPoly>> m(7, std::vector<HomogPoly>(7));
  std::vector<std::vector<mpq_class>> a(7, std::vector<mpq_class>(7));
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      a[i][j] = coeff(rng);
      m[i][j] = HomogPoly::constant(2, a[i][j]);
    }
  mpq_class det = 1;
  for (int c = 0; c < 7; ++c) {
    int piv = -1;
    for (int r = c; r < 7; ++r)
      if (a[r][c] != 0) piv = r;
    if (piv < 0) {
      det = 0;
      break;
    }
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < 7; ++r) {
      const mpq_class f = a[r][c] / a[c][c];
      for (int k = c; k < 7; ++k) a[r][k] -= f * a[c][k];
    }
  }
  const auto d = polynomial_determinant(m);
  CHECK(d.coeff(Exponent(2)) == det);
}
