#pragma once

// Homogeneous polynomials in x0..xn with rational coefficients.

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace jacring {

/// Exponent vector of a monomial in x0..xn.
class Exponent {
 public:
  Exponent() = default;
  explicit Exponent(std::size_t nvars) : e_(nvars, 0) {}
  explicit Exponent(std::vector<int> e);

  static Exponent unit(std::size_t nvars, std::size_t k);

  std::size_t size() const { return e_.size(); }
  int total() const { return total_; }
  int operator[](std::size_t i) const { return e_[i]; }
  const std::vector<int>& values() const { return e_; }

  void increment(std::size_t i, int by = 1);

  Exponent operator*(const Exponent& o) const;
  bool divides(const Exponent& o) const;

  bool operator==(const Exponent& o) const { return e_ == o.e_; }

 private:
  std::vector<int> e_;
  int total_ = 0;
};

/// Graded reverse lexicographic order with x0 > x1 > ... > xn.
bool grevlex_less(const Exponent& a, const Exponent& b);

/// Orders a map so that iteration visits the largest monomial first.
struct TermOrderDesc {
  bool operator()(const Exponent& a, const Exponent& b) const { return grevlex_less(b, a); }
};

struct ExponentHash {
  std::size_t operator()(const Exponent& e) const;
};

/// All exponents of total degree `degree` in `nvars` variables, largest first.
std::vector<Exponent> monomials_of_degree(std::size_t nvars, int degree);

class HomogPoly {
 public:
  using Terms = std::map<Exponent, mpq_class, TermOrderDesc>;

  HomogPoly() = default;
  /// Zero polynomial carrying a nominal degree.
  HomogPoly(std::size_t nvars, int degree) : nvars_(nvars), degree_(degree) {}

  static HomogPoly monomial(const Exponent& e, mpq_class c = 1);
  static HomogPoly variable(std::size_t nvars, std::size_t k);
  static HomogPoly constant(std::size_t nvars, mpq_class c);

  std::size_t nvars() const { return nvars_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }
  mpq_class coeff(const Exponent& e) const;

  /// Adds c * x^e; exponent total must match the degree.
  void add_term(const Exponent& e, const mpq_class& c);

  HomogPoly operator+(const HomogPoly& o) const;
  HomogPoly operator-(const HomogPoly& o) const;
  HomogPoly operator-() const;
  HomogPoly operator*(const HomogPoly& o) const;
  HomogPoly scaled(const mpq_class& c) const;

  bool operator==(const HomogPoly& o) const;

 private:
  void check_compatible(const HomogPoly& o, const char* op) const;

  std::size_t nvars_ = 0;
  int degree_ = 0;
  Terms terms_;
};

/// Formal partial derivative with respect to x_k.
HomogPoly partial(const HomogPoly& p, std::size_t k);

/// Canonical text: terms largest first, e.g. "x0^3 - 1/2*x1*x2^2".
std::string to_string(const HomogPoly& p);

/// Determinant of a square matrix of polynomials. Cofactor expansion with
/// memoized minors over column subsets.
HomogPoly polynomial_determinant(const std::vector<std::vector<HomogPoly>>& m);

/// det(d forms[i] / d x_k), i, k = 0..n, for exactly n+1 forms.
HomogPoly derivative_determinant(const std::vector<HomogPoly>& forms);

/// Jacobian determinant of h_1..h_n with respect to x_1..x_n (x_0 excluded).
HomogPoly affine_jacobian(const std::vector<HomogPoly>& forms);

struct IdentityStarReport {
  HomogPoly lhs;
  HomogPoly rhs;
  bool holds = false;
};

/// Expands x0 * det(grad F) and sum_v (-1)^(v-1) deg(F_v) F_v J(F_1..^F_v..F_(n+1))
/// for n+1 forms and compares them.
IdentityStarReport expand_identity_star(const std::vector<HomogPoly>& forms);
bool verify_identity_star(const std::vector<HomogPoly>& forms);

/// sum_k x_k dF/dx_k == deg(F) F
bool euler_identity_holds(const HomogPoly& f);

}  // namespace jacring
