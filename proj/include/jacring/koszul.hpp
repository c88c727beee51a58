#pragma once

// Koszul complexes of a subspace V of B_1(0):
//   B_p(l) (x) wedge^{q+1} V -> B_{p+1}(l) (x) wedge^q V -> B_{p+2}(l) (x) wedge^{q-1} V
// with x (x) (v_0 ^ ... ^ v_q) |-> sum_i (-1)^i (x v_i) (x) (v_0 ^ ..^v_i.. ^ v_q).
// Tensor coordinates are laid out as wedge_index * dim B + basis_index, wedge
// tuples in lexicographic order. Matrices store the image of source basis
// vector i as row i.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "jacring/ring.hpp"

namespace jacring {

/// Echelonized basis of V inside B_1(0).
template <class Field>
struct Subspace {
  std::vector<BElement<Field>> basis;
  std::size_t ambient_dim = 0;
  std::size_t codim() const { return ambient_dim - basis.size(); }
};

/// Row-reduces the spanning set; every vector must live in B_1(0).
template <class Field>
Subspace<Field> make_subspace(const JacobianRing<Field>& ring, const std::vector<BElement<Field>>& spanning);

template <class Field>
Subspace<Field> full_subspace(const JacobianRing<Field>& ring);

/// Random subspace of codimension c with coefficients drawn from -9..9.
template <class Field>
Subspace<Field> random_subspace(const JacobianRing<Field>& ring, std::size_t codim, std::uint64_t seed);

/// Strictly increasing k-tuples of {0..m-1} in lexicographic order.
std::vector<std::vector<int>> wedge_tuples(int m, int k);

struct KoszulConditions {
  bool applicable = false;
  bool i = false;
  bool ii = false;
  bool iii = false;
  bool remark_regime = false;
  bool any() const { return applicable && (i || ii || iii); }
  std::string label() const;
};

KoszulConditions koszul_conditions(const RingSpec& spec, int p, int q, int l, std::size_t codim);

template <class Field>
struct KoszulInstance {
  const JacobianRing<Field>* ring = nullptr;
  Subspace<Field> V;
  int p = 0;
  int q = 0;
  int l = 0;
};

/// stage 1: first map, stage 2: second map.
template <class Field>
SparseMatrix<Field> koszul_differential(const KoszulInstance<Field>& inst, int stage);

struct KoszulReport {
  int p = 0;
  int q = 0;
  int l = 0;
  std::size_t codim = 0;
  std::size_t dim_v = 0;
  std::size_t dims[3] = {0, 0, 0};
  std::size_t rank_first = 0;
  std::size_t rank_second = 0;
  std::size_t middle_homology = 0;
  bool composite_zero = false;
  KoszulConditions conditions;
  /// A listed condition holds but the middle homology is not zero.
  bool violation = false;
  std::string v_label;
};

template <class Field>
KoszulReport middle_homology(const KoszulInstance<Field>& inst);

struct SweepRange {
  int p_min = 0, p_max = 0;
  int q_min = 0, q_max = 0;
  int l_min = 0, l_max = 0;
};

struct VChoice {
  std::string label;
  std::size_t codim = 0;
  bool full = false;
  std::uint64_t seed = 0;
};

template <class Field>
std::vector<KoszulReport> symmetrizer_sweep(const JacobianRing<Field>& ring, const SweepRange& range,
                                            const std::vector<VChoice>& choices);

}  // namespace jacring
