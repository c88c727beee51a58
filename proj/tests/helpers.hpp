#pragma once

#include <random>
#include <string>
#include <vector>

#include "jacring/parse.hpp"
#include "jacring/ring.hpp"
#include "jacring/specfile.hpp"

namespace testing_util {

inline jacring::RingSpec spec_of(const std::string& text) { return jacring::parse_spec(text); }

inline jacring::HomogPoly poly(const std::string& text, int n) { return jacring::parse_poly(text, n); }

/// Random form with small integer coefficients.
inline jacring::HomogPoly random_form(std::mt19937_64& rng, int n, int degree) {
  std::uniform_int_distribution<int> coeff(-5, 5);
  jacring::HomogPoly p(static_cast<std::size_t>(n) + 1, degree);
  for (const auto& e : jacring::monomials_of_degree(static_cast<std::size_t>(n) + 1, degree)) {
    const int c = coeff(rng);
    if (c != 0) p.add_term(e, c);
  }
  return p;
}

template <class Field>
jacring::BElement<Field> random_b(const jacring::JacobianRing<Field>& ring, int q, int l, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> coeff(-7, 7);
  auto x = ring.zero(q, l);
  for (auto& c : x.coords) c = ring.field().from_int(coeff(rng));
  return x;
}

inline const std::vector<std::string>& smooth_presets() {
  static const std::vector<std::string> names{
      "fermat-quartic",     "fermat-quintic",       "elliptic-line",      "conic-two-lines",
      "cubic-three-lines",  "quartic-curve",        "quartic-curve-line", "quadric-two-planes",
      "quadric-three-planes", "cubic-surface-plane", "conic-four-lines", "random"};
  return names;
}

inline const std::vector<std::string>& singular_presets() {
  static const std::vector<std::string> names{"nodal-cubic", "triangle", "tangent-line"};
  return names;
}

}  // namespace testing_util
