#pragma once

// Exact sparse linear algebra over Q and GF(p).
//
// Matrices are stored by rows. Elimination always produces the canonical
// reduced row echelon form with respect to the natural column order, so every
// derived object (standard monomials, kernel bases) is reproducible no matter
// which rows are used as pivots along the way.

#include <cstddef>
#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

#include "jacring/field.hpp"

namespace jacring {

inline bool element_is_zero(const mpq_class& v) { return sgn(v) == 0; }
inline bool element_is_zero(std::uint64_t v) { return v == 0; }

/// Sorted by column, no stored zeros.
template <class Field>
using SparseRow = std::vector<std::pair<std::uint32_t, typename Field::Element>>;

template <class Field>
class SparseMatrix {
 public:
  using Element = typename Field::Element;
  using Row = SparseRow<Field>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  /// Builds from (row, col, value) triplets; rejects duplicates and
  /// out-of-range coordinates, drops explicit zeros.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols,
                                    std::vector<std::tuple<std::size_t, std::size_t, Element>> entries);
  static SparseMatrix from_dense(const std::vector<std::vector<Element>>& dense, std::size_t cols);
  static SparseMatrix identity(std::size_t n, const Field& field);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const;

  const Row& row(std::size_t i) const { return rows_[i]; }
  const std::vector<Row>& row_data() const { return rows_; }
  /// Validates ordering and range.
  void set_row(std::size_t i, Row r);
  void push_row(Row r);

  SparseMatrix transpose() const;
  std::vector<std::vector<Element>> to_dense(const Field& field) const;

  /// M * v for a dense column vector v.
  std::vector<Element> apply(const Field& field, const std::vector<Element>& v) const;

 private:
  void check_row(const Row& r) const;

  std::size_t cols_ = 0;
  std::vector<Row> rows_;
};

/// Canonical RREF of a row space.
template <class Field>
class RowEchelon {
 public:
  using Element = typename Field::Element;
  using Row = SparseRow<Field>;

  RowEchelon(const Field& field, std::size_t cols) : field_(field), cols_(cols), pivot_row_(cols, -1) {}

  const Field& field() const { return field_; }

  static RowEchelon build(const Field& field, const SparseMatrix<Field>& m);
  static RowEchelon build(const Field& field, std::size_t cols, std::vector<Row> rows);

  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  /// Pivot columns in ascending order.
  const std::vector<std::uint32_t>& pivots() const { return pivots_; }
  /// k-th row of the RREF; leading entry 1 at pivots()[k].
  const Row& row(std::size_t k) const { return rows_[k]; }
  int pivot_row_of(std::size_t col) const { return pivot_row_[col]; }
  bool is_pivot(std::size_t col) const { return pivot_row_[col] >= 0; }

  /// Remainder of v modulo the row space; supported on non-pivot columns.
  Row reduce(const Row& v) const;
  bool contains(const Row& v) const { return reduce(v).empty(); }

  /// Null space basis: one vector per free column, in ascending free-column
  /// order, with a 1 at the free column.
  std::vector<Row> kernel_basis() const;

 private:
  Field field_;
  std::size_t cols_;
  std::vector<Row> rows_;
  std::vector<std::uint32_t> pivots_;
  std::vector<int> pivot_row_;
};

template <class Field>
struct RankKernel {
  std::size_t rank = 0;
  std::vector<SparseRow<Field>> kernel;
};

/// Rank of M and a basis of {v : M v = 0}.
template <class Field>
RankKernel<Field> rank_and_kernel(const Field& field, const SparseMatrix<Field>& m);

template <class Field>
std::size_t rank(const Field& field, const SparseMatrix<Field>& m);

/// True iff v lies in the row span of M. Throws std::invalid_argument on a
/// length mismatch.
template <class Field>
bool in_span(const Field& field, const SparseMatrix<Field>& m, const std::vector<typename Field::Element>& v);

template <class Field>
SparseRow<Field> to_sparse(const std::vector<typename Field::Element>& dense);

template <class Field>
std::vector<typename Field::Element> to_dense(const Field& field, const SparseRow<Field>& row, std::size_t len);

struct ModularRankProbe {
  std::size_t rank = 0;
  bool agree = true;
  std::vector<std::size_t> ranks;
  std::vector<std::uint64_t> primes;
  std::size_t discarded = 0;
};

/// Lower bound of the rational rank of M from its ranks modulo `trials`
/// random primes in (2^50, 2^62). A prime dividing some denominator of M is
/// discarded and resampled.
ModularRankProbe modular_rank_probe(const SparseMatrix<Rationals>& m, std::size_t trials, std::uint64_t seed);

/// Reduces a rational matrix into GF(p); throws DenominatorError.
SparseMatrix<PrimeField> reduce_mod(const PrimeField& field, const SparseMatrix<Rationals>& m);

inline constexpr std::uint64_t kProbePrimeLow = std::uint64_t{1} << 50;

extern template class SparseMatrix<Rationals>;
extern template class SparseMatrix<PrimeField>;
extern template class RowEchelon<Rationals>;
extern template class RowEchelon<PrimeField>;

}  // namespace jacring
