#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jacring/field.hpp"
#include "jacring/poly.hpp"

namespace jacring {

/// Input datum of a Jacobian ring: forms F_1..F_r cutting out X in P^n and
/// forms G_1..G_s cutting out the boundary components, plus the ground field.
struct RingSpec {
  int n = 2;
  std::vector<HomogPoly> F;
  std::vector<HomogPoly> G;
  FieldDesc field;
  bool assume_smooth = false;
  std::uint64_t seed = 0;

  /// Checks n >= 2, r + s >= 1, that every form lives in x0..xn, is nonzero
  /// and has positive degree. Throws InputError.
  void validate() const;

  int r() const { return static_cast<int>(F.size()); }
  int s() const { return static_cast<int>(G.size()); }
  std::size_t nvars() const { return static_cast<std::size_t>(n) + 1; }

  std::vector<int> d() const;
  std::vector<int> e() const;
  int bold_d() const;
  int bold_e() const;
  /// Minimum over all d_i and e_j.
  int delta_min() const;
  /// 0 when r = 0.
  int d_max() const;
  /// 0 when s = 0.
  int e_max() const;

  /// Bidegree twist of the socle, 2(d - n - 1) + e.
  int socle_twist() const { return 2 * (bold_d() - n - 1) + bold_e(); }
  int dim_x() const { return n - r(); }
};

}  // namespace jacring
