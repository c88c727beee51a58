#pragma once

// Jacobian ideal J(F, G) and ring B = A / J.
//
// J is generated by
//   eta_k = sum_i dF_i/dx_k mu_i + sum_j dG_j/dx_k lambda_j   in A_1(-1),
//   F_i                                                      in A_0(d_i),
//   G_j lambda_j                                             in A_1(0).
// Each piece B_q(l) is presented by the canonical RREF of J cap A_q(l) in the
// monomial basis of A_q(l); the non-pivot monomials form its standard basis.

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "jacring/field.hpp"
#include "jacring/graded.hpp"
#include "jacring/linalg.hpp"
#include "jacring/ring_spec.hpp"

namespace jacring {

/// The socle piece does not have dimension 1: the forms are probably not
/// transversal.
class SocleError : public InputError {
 public:
  using InputError::InputError;
};

template <class Field>
struct Generator {
  AElement<Field> element;
  std::string label;
};

template <class Field>
struct IdealPiece {
  Bidegree deg;
  std::shared_ptr<const GradedBasis> ambient;
  SparseMatrix<Field> span_matrix;
  std::size_t rank = 0;
};

/// Element of B_q(l) in coordinates of the standard basis.
template <class Field>
struct BElement {
  Bidegree deg;
  std::vector<typename Field::Element> coords;
};

template <class Field>
class QuotientPiece {
 public:
  using Element = typename Field::Element;

  QuotientPiece(const Field& field, std::shared_ptr<const GradedBasis> ambient, RowEchelon<Field> echelon);

  Bidegree bidegree() const { return ambient_->bidegree(); }
  std::size_t dim() const { return standard_.size(); }
  std::size_t ambient_dim() const { return ambient_->size(); }
  std::size_t ideal_rank() const { return echelon_.rank(); }
  const GradedBasis& ambient() const { return *ambient_; }
  const RowEchelon<Field>& echelon() const { return echelon_; }

  /// Ambient indices of the standard monomials, ascending.
  const std::vector<std::uint32_t>& standard() const { return standard_; }
  const AMonomial& standard_monomial(std::size_t i) const { return (*ambient_)[standard_[i]]; }
  /// Position among the standard monomials, or -1 for a pivot monomial.
  long standard_index(std::size_t ambient_col) const { return standard_index_[ambient_col]; }
  bool is_pivot(std::size_t ambient_col) const { return standard_index_[ambient_col] < 0; }

  /// Normal form of an ambient coordinate list. Entries may repeat and
  /// appear in any order.
  std::vector<Element> normal_form(const std::vector<std::pair<std::uint32_t, Element>>& ambient_coords) const;

  /// Normal form of a single ambient monomial: sparse coordinates over the
  /// standard basis.
  const std::vector<std::pair<std::uint32_t, Element>>& monomial_normal_form(std::size_t ambient_col) const {
    return tails_[ambient_col];
  }

 private:
  Field field_;
  std::shared_ptr<const GradedBasis> ambient_;
  RowEchelon<Field> echelon_;
  std::vector<std::uint32_t> standard_;
  std::vector<long> standard_index_;
  std::vector<std::vector<std::pair<std::uint32_t, Element>>> tails_;
};

template <class Field>
struct TraceFunctional {
  Bidegree socle;
  std::shared_ptr<const QuotientPiece<Field>> piece;
  /// Multiplies the coordinate functional; 1 by default.
  typename Field::Element scale;

  typename Field::Element operator()(const Field& field, const BElement<Field>& x) const;
};

struct TransversalityReport {
  bool applicable = false;
  Bidegree socle;
  std::size_t socle_dim = 0;
  /// dim B_{n-r+1}(socle twist)
  std::size_t above_dim = 0;
  /// dim B_{n-r}(socle twist + 1)
  std::size_t beyond_dim = 0;
  bool pass = false;
  std::string reason;
};

template <class Field>
class JacobianRing {
 public:
  using Element = typename Field::Element;
  using A = AElement<Field>;
  using B = BElement<Field>;

  JacobianRing(RingSpec spec, Field field);

  const RingSpec& spec() const { return spec_; }
  const Field& field() const { return field_; }

  /// n+1 elements eta_k, then F_1..F_r, then G_1 lambda_1..G_s lambda_s.
  const std::vector<Generator<Field>>& generators() const { return generators_; }

  std::shared_ptr<const GradedBasis> basis(int q, int l) const;
  IdealPiece<Field> ideal_piece(int q, int l) const;
  /// Memoized; q < 0 yields the zero piece.
  std::shared_ptr<const QuotientPiece<Field>> piece(int q, int l) const;
  std::size_t dim(int q, int l) const { return piece(q, l)->dim(); }

  A lift_poly(const HomogPoly& p, const MultiIndex& mi) const;
  A monomial(const AMonomial& m) const;

  /// Class of a homogeneous element of A; throws on inconsistent bidegrees.
  B reduce(const A& x) const;
  /// Representative supported on standard monomials.
  A lift(const B& x) const;
  B multiply(const B& x, const B& y) const;
  /// Class of (standard monomial i of x's piece) * y for a lifted y.
  B multiply_standard(Bidegree deg, std::size_t i, const A& y) const;

  B zero(int q, int l) const;
  B basis_element(int q, int l, std::size_t i) const;
  B one() const { return basis_element(0, 0, 0); }

  /// Trace functional on B_{n-r}(2(d-n-1)+e); throws SocleError if that
  /// piece is not one-dimensional and InputError when n - r < 1.
  TraceFunctional<Field> trace() const;

  /// Socle test: dim of the socle is 1 and the pieces directly above it
  /// vanish.
  TransversalityReport transversality() const;
  /// Runs the heuristic unless spec().assume_smooth is set; throws
  /// SocleError on failure.
  void require_smooth() const;

 private:
  IdealPiece<Field> ideal_span(int q, int l) const;
  std::shared_ptr<const QuotientPiece<Field>> compute_piece(int q, int l) const;

  RingSpec spec_;
  Field field_;
  std::vector<Generator<Field>> generators_;

  mutable std::shared_mutex mutex_;
  mutable std::map<std::pair<int, int>, std::shared_ptr<const GradedBasis>> basis_cache_;
  mutable std::map<std::pair<int, int>, std::shared_ptr<const QuotientPiece<Field>>> piece_cache_;
};

/// Ring with G_1 moved into the F-list (lambda_1 becomes mu_{r+1}).
RingSpec absorb_first_boundary(const RingSpec& spec);
/// Ring with G_1 and lambda_1 deleted, i.e. B / lambda_1 B.
RingSpec drop_first_boundary(const RingSpec& spec);

/// Rank-nullity checks of the two exact sequences relating B to the rings
/// with the first boundary component absorbed (B') or deleted (Bbar):
///   B'_{q-1}(d'-n-1+l) --lambda_1--> B_q(d-n-1+l) --> Bbar_q(d-n-1+l) --> 0
///   Bbar_{n-r-q}(l'-e_1) --G_1--> B_{n-r-q}(l') --> B'_{n-r-q}(l') --> 0
/// with l' = d+e-n-1-l.
struct LadderReport {
  int q = 0;
  int l = 0;
  std::size_t dim_b = 0;
  std::size_t rank_lambda = 0;
  std::size_t dim_bbar = 0;
  bool first_holds = false;
  std::size_t dim_b_dual = 0;
  std::size_t rank_g = 0;
  std::size_t dim_bprime_dual = 0;
  bool second_holds = false;
};

template <class Field>
LadderReport ladder(const JacobianRing<Field>& ring, int q, int l);

/// Sum_k x_k eta_k == sum_i d_i F_i mu_i + sum_j e_j G_j lambda_j in A.
template <class Field>
bool euler_relation_holds(const JacobianRing<Field>& ring);

extern template class QuotientPiece<Rationals>;
extern template class QuotientPiece<PrimeField>;
extern template class JacobianRing<Rationals>;
extern template class JacobianRing<PrimeField>;

}  // namespace jacring
