#pragma once

// Geometric read-outs of the Jacobian ring: log Hodge numbers, the Torelli
// multiplication criterion, and the degree-bound predicates for families with
// a user-supplied generality defect c.

#include <string>
#include <vector>

#include "jacring/ring.hpp"

namespace jacring {

struct HodgeEntry {
  /// Cohomological degree; the entry is h^{n-r-q, q}.
  int q = 0;
  int form_degree = 0;
  Bidegree piece;
  std::size_t primitive = 0;
  std::size_t full = 0;
};

struct HodgeTable {
  int l = 0;
  std::vector<HodgeEntry> rows;
  /// s = l = 0 and n - r even: the middle entry gains the hyperplane class.
  bool middle_correction_applied = false;
};

/// Rows q = 0..n-r of dim B_q(d+e-n-1+l). Requires l >= 0 and r <= n.
template <class Field>
HodgeTable hodge_table(const JacobianRing<Field>& ring, int l);

struct TorelliReport {
  int q = 0;
  bool predicate = false;
  /// d - n - 1 >= 0, so the multiplication map computes the dual of the
  /// Torelli map; without it the map is reported but never flagged.
  bool identified = false;
  bool surjective = false;
  Bidegree left, right, target;
  std::size_t left_dim = 0, right_dim = 0, target_dim = 0;
  std::size_t rank = 0;
  bool violation() const { return predicate && identified && !surjective; }
};

/// Surjectivity of B_{n-r-q}(d+e-n-1) (x) B_{q-1}(d-n-1) -> B_{n-r-1}(2(d-n-1)+e)
/// for 1 <= q <= n - r.
template <class Field>
TorelliReport torelli_check(const JacobianRing<Field>& ring, int q);

bool torelli_predicate(const RingSpec& spec, int q);

struct BoundInput {
  int n = 0;
  int r = 0;
  int s = 0;
  std::vector<int> d;
  std::vector<int> e;
  int t = 0;
  int c = 0;

  static BoundInput from_spec(const RingSpec& spec, int t, int c);
  int bold_d() const;
  int delta_min() const;
  int d_max() const;
};

struct NoriBound {
  bool open_case_vanishing = false;
  bool relative_case_vanishing = false;
};

/// Throws InputError when n - r < 2.
NoriBound nori_bound(const BoundInput& in);

struct FamilyConditions {
  bool applicable = false;
  bool i = false;
  bool ii = false;
  bool iii = false;
  bool iv = false;
  bool any() const { return applicable && (i || ii || iii || iv); }
  std::string label() const;
};

/// Conditions (i)-(iv) for the family complex with a + b = n - r; applicable
/// when n - r >= 2 and (a < n-r-1 or r+s <= n).
FamilyConditions family_conditions(const BoundInput& in, int a, int q);

/// Conditions (i)-(iii) of the relative case; applicable when n - r >= 2
/// and s = 1 (iv stays false).
FamilyConditions relative_conditions(const BoundInput& in, int a, int q);

}  // namespace jacring
