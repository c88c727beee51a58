#pragma once

// The bigraded algebra A = P[mu_1..mu_r, lambda_1..lambda_s].
//
// A monomial mu^a lambda^b x^m has bidegree (q, l) with q = |a| + |b| and
// l = deg(m) - (a.d + b.e). Basis order: (a, b) lexicographically
// descending, then x^m in descending grevlex.

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "jacring/field.hpp"
#include "jacring/poly.hpp"
#include "jacring/ring_spec.hpp"

namespace jacring {

struct Bidegree {
  int q = 0;
  int l = 0;
  bool operator==(const Bidegree&) const = default;
  Bidegree operator+(const Bidegree& o) const { return {q + o.q, l + o.l}; }
  Bidegree operator-(const Bidegree& o) const { return {q - o.q, l - o.l}; }
};

std::string to_string(const Bidegree& b);

struct MultiIndex {
  std::vector<int> a;
  std::vector<int> b;

  int total() const;
  /// a.d + b.e
  int weight(const std::vector<int>& d, const std::vector<int>& e) const;
  MultiIndex operator+(const MultiIndex& o) const;
  bool operator==(const MultiIndex&) const = default;
};

/// All multi-indices with |a| + |b| = q, lexicographically descending.
std::vector<MultiIndex> multi_indices(int r, int s, int q);

struct AMonomial {
  MultiIndex mi;
  Exponent x;

  AMonomial operator*(const AMonomial& o) const { return {mi + o.mi, x * o.x}; }
  bool operator==(const AMonomial&) const = default;
};

struct AMonomialHash {
  std::size_t operator()(const AMonomial& m) const;
};

/// Strict weak order matching the basis order (true when a comes first).
struct AMonomialOrder {
  bool operator()(const AMonomial& a, const AMonomial& b) const;
};

Bidegree bidegree_of(const RingSpec& spec, const AMonomial& m);

/// e.g. "x0^2*x1*mu1*lambda2"; the unit monomial prints as "1".
std::string to_string(const AMonomial& m);

class GradedBasis {
 public:
  GradedBasis(Bidegree deg, std::vector<AMonomial> monomials);

  Bidegree bidegree() const { return deg_; }
  std::size_t size() const { return monomials_.size(); }
  bool empty() const { return monomials_.empty(); }
  const AMonomial& operator[](std::size_t i) const { return monomials_[i]; }
  const std::vector<AMonomial>& monomials() const { return monomials_; }
  /// -1 when the monomial does not belong to this piece.
  long index_of(const AMonomial& m) const;

 private:
  Bidegree deg_;
  std::vector<AMonomial> monomials_;
  std::unordered_map<AMonomial, std::size_t, AMonomialHash> index_;
};

/// Monomial basis of A_q(l); empty for q < 0.
GradedBasis enumerate_basis(const RingSpec& spec, int q, int l);

/// Homogeneous element of A over a field.
template <class Field>
struct AElement {
  using Element = typename Field::Element;
  Bidegree deg;
  std::map<AMonomial, Element, AMonomialOrder> terms;

  bool is_zero() const { return terms.empty(); }
};

template <class Field>
void add_term(const Field& field, AElement<Field>& x, const AMonomial& m, const typename Field::Element& c) {
  if (field.is_zero(c)) return;
  auto [it, inserted] = x.terms.try_emplace(m, c);
  if (!inserted) {
    it->second = field.add(it->second, c);
    if (field.is_zero(it->second)) x.terms.erase(it);
  }
}

/// p * mu^a lambda^b, coefficients mapped into the field.
template <class Field>
AElement<Field> lift_poly(const Field& field, const RingSpec& spec, const HomogPoly& p, const MultiIndex& mi) {
  AElement<Field> out;
  out.deg = {mi.total(), p.degree() - mi.weight(spec.d(), spec.e())};
  for (const auto& [e, c] : p.terms()) add_term(field, out, AMonomial{mi, e}, field.from_rational(c));
  return out;
}

template <class Field>
AElement<Field> a_multiply(const Field& field, const AElement<Field>& x, const AElement<Field>& y) {
  AElement<Field> out;
  out.deg = x.deg + y.deg;
  for (const auto& [m1, c1] : x.terms)
    for (const auto& [m2, c2] : y.terms) {
      if (m1.mi.a.size() != m2.mi.a.size() || m1.mi.b.size() != m2.mi.b.size() || m1.x.size() != m2.x.size())
        throw std::invalid_argument("a_multiply: elements belong to different rings");
      add_term(field, out, m1 * m2, field.mul(c1, c2));
    }
  return out;
}

template <class Field>
AElement<Field> a_add(const Field& field, const AElement<Field>& x, const AElement<Field>& y) {
  if (!(x.deg == y.deg) && !x.is_zero() && !y.is_zero())
    throw std::invalid_argument("a_add: bidegree mismatch");
  AElement<Field> out = x.is_zero() ? y : x;
  if (x.is_zero()) return out;
  for (const auto& [m, c] : y.terms) add_term(field, out, m, c);
  return out;
}

template <class Field>
AElement<Field> a_scale(const Field& field, const AElement<Field>& x, const typename Field::Element& c) {
  AElement<Field> out;
  out.deg = x.deg;
  for (const auto& [m, v] : x.terms) add_term(field, out, m, field.mul(c, v));
  return out;
}

template <class Field>
std::string to_string(const Field& field, const AElement<Field>& x) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : x.terms) {
    if (!first) out += " + ";
    first = false;
    std::string mono = to_string(m);
    if (field.is_one(c)) {
      out += mono;
    } else {
      out += "(" + field.to_string(c) + ")";
      if (mono != "1") out += "*" + mono;
    }
  }
  return out;
}

}  // namespace jacring
