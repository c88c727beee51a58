#include "jacring/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace jacring {

namespace {

/// Dense scatter/gather workspace for sparse linear combinations.
template <class Field>
class Accumulator {
 public:
  using Element = typename Field::Element;

  Accumulator(const Field& field, std::size_t cols) : field_(field), acc_(cols), mark_(cols, 0) {}

  void add(std::uint32_t col, const Element& v) {
    if (!mark_[col]) {
      mark_[col] = 1;
      touched_.push_back(col);
      acc_[col] = v;
    } else {
      acc_[col] = field_.add(acc_[col], v);
    }
  }

  /// acc += f * row, skipping column `skip`.
  void addmul(const Element& f, const SparseRow<Field>& row, std::int64_t skip = -1) {
    for (const auto& [c, v] : row) {
      if (static_cast<std::int64_t>(c) == skip) continue;
      if (!mark_[c]) {
        mark_[c] = 1;
        touched_.push_back(c);
        acc_[c] = field_.mul(f, v);
      } else {
        field_.addmul(acc_[c], f, v);
      }
    }
  }

  SparseRow<Field> gather() {
    std::sort(touched_.begin(), touched_.end());
    SparseRow<Field> out;
    out.reserve(touched_.size());
    for (auto c : touched_) {
      if (!field_.is_zero(acc_[c])) out.emplace_back(c, std::move(acc_[c]));
      acc_[c] = field_.zero();
      mark_[c] = 0;
    }
    touched_.clear();
    return out;
  }

 private:
  const Field& field_;
  std::vector<Element> acc_;
  std::vector<char> mark_;
  std::vector<std::uint32_t> touched_;
};

/// r - f * p, where both share the leading column, which cancels.
template <class Field>
SparseRow<Field> eliminate_lead(const Field& field, const SparseRow<Field>& r, const SparseRow<Field>& p) {
  const auto& f = r.front().second;
  SparseRow<Field> out;
  out.reserve(r.size() + p.size());
  std::size_t i = 1, j = 1;
  while (i < r.size() || j < p.size()) {
    if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
      out.push_back(r[i++]);
    } else if (i == r.size() || p[j].first < r[i].first) {
      out.emplace_back(p[j].first, field.neg(field.mul(f, p[j].second)));
      ++j;
    } else {
      auto v = r[i].second;
      field.submul(v, f, p[j].second);
      if (!field.is_zero(v)) out.emplace_back(r[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

template <class Field>
void normalize(const Field& field, SparseRow<Field>& r) {
  if (field.is_one(r.front().second)) return;
  auto inv = field.inv(r.front().second);
  for (auto& [c, v] : r) v = field.mul(v, inv);
}

}  // namespace

// ---------------------------------------------------------------- SparseMatrix

template <class Field>
void SparseMatrix<Field>::check_row(const Row& r) const {
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (r[k].first >= cols_) throw std::out_of_range("sparse row: column out of range");
    if (k > 0 && r[k - 1].first >= r[k].first)
      throw std::invalid_argument("sparse row: columns must be strictly increasing");
    if (element_is_zero(r[k].second)) throw std::invalid_argument("sparse row: stored zero");
  }
}

template <class Field>
SparseMatrix<Field> SparseMatrix<Field>::from_triplets(
    std::size_t rows, std::size_t cols, std::vector<std::tuple<std::size_t, std::size_t, Element>> entries) {
  SparseMatrix m(rows, cols);
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });
  for (std::size_t k = 0; k < entries.size(); ++k) {
    auto& [i, j, v] = entries[k];
    if (i >= rows || j >= cols) throw std::out_of_range("triplet out of range");
    if (k > 0 && std::get<0>(entries[k - 1]) == i && std::get<1>(entries[k - 1]) == j)
      throw std::invalid_argument("duplicate triplet coordinate");
    if (!element_is_zero(v)) m.rows_[i].emplace_back(static_cast<std::uint32_t>(j), std::move(v));
  }
  return m;
}

template <class Field>
SparseMatrix<Field> SparseMatrix<Field>::from_dense(const std::vector<std::vector<Element>>& dense,
                                                    std::size_t cols) {
  SparseMatrix m(dense.size(), cols);
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i].size() != cols) throw std::invalid_argument("from_dense: ragged rows");
    m.rows_[i] = to_sparse<Field>(dense[i]);
  }
  return m;
}

template <class Field>
SparseMatrix<Field> SparseMatrix<Field>::identity(std::size_t n, const Field& field) {
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.rows_[i].emplace_back(static_cast<std::uint32_t>(i), field.one());
  return m;
}

template <class Field>
std::size_t SparseMatrix<Field>::nnz() const {
  std::size_t total = 0;
  for (const auto& r : rows_) total += r.size();
  return total;
}

template <class Field>
void SparseMatrix<Field>::set_row(std::size_t i, Row r) {
  check_row(r);
  rows_.at(i) = std::move(r);
}

template <class Field>
void SparseMatrix<Field>::push_row(Row r) {
  check_row(r);
  rows_.push_back(std::move(r));
}

template <class Field>
SparseMatrix<Field> SparseMatrix<Field>::transpose() const {
  SparseMatrix t(cols_, rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (const auto& [c, v] : rows_[i]) t.rows_[c].emplace_back(static_cast<std::uint32_t>(i), v);
  return t;
}

template <class Field>
std::vector<std::vector<typename Field::Element>> SparseMatrix<Field>::to_dense(const Field& field) const {
  std::vector<std::vector<Element>> d(rows_.size(), std::vector<Element>(cols_, field.zero()));
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (const auto& [c, v] : rows_[i]) d[i][c] = v;
  return d;
}

template <class Field>
std::vector<typename Field::Element> SparseMatrix<Field>::apply(const Field& field,
                                                                const std::vector<Element>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
  std::vector<Element> out(rows_.size(), field.zero());
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (const auto& [c, x] : rows_[i]) field.addmul(out[i], x, v[c]);
  return out;
}

// ------------------------------------------------------------------ RowEchelon

template <class Field>
RowEchelon<Field> RowEchelon<Field>::build(const Field& field, const SparseMatrix<Field>& m) {
  return build(field, m.cols(), m.row_data());
}

template <class Field>
RowEchelon<Field> RowEchelon<Field>::build(const Field& field, std::size_t cols, std::vector<Row> rows) {
  RowEchelon e(field, cols);
  // Bucket rows by leading column; within a bucket the sparsest row becomes
  // the pivot (Markowitz-style row choice), lowest insertion index on ties.
  struct Pending {
    std::size_t id;
    Row row;
  };
  std::vector<std::vector<Pending>> bucket(cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].empty()) continue;
    auto lead = rows[i].front().first;
    bucket[lead].push_back({i, std::move(rows[i])});
  }
  std::vector<Row> forward;
  for (std::size_t col = 0; col < cols; ++col) {
    auto& b = bucket[col];
    if (b.empty()) continue;
    std::size_t best = 0;
    for (std::size_t k = 1; k < b.size(); ++k) {
      if (b[k].row.size() < b[best].row.size() ||
          (b[k].row.size() == b[best].row.size() && b[k].id < b[best].id))
        best = k;
    }
    Row pivot = std::move(b[best].row);
    normalize(field, pivot);
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (k == best) continue;
      Row reduced = eliminate_lead(field, b[k].row, pivot);
      if (!reduced.empty()) {
        auto lead = reduced.front().first;
        bucket[lead].push_back({b[k].id, std::move(reduced)});
      }
    }
    std::vector<Pending>().swap(b);
    e.pivot_row_[col] = static_cast<int>(forward.size());
    e.pivots_.push_back(static_cast<std::uint32_t>(col));
    forward.push_back(std::move(pivot));
  }
  // Back substitution, last pivot first. Rows below are already fully
  // reduced, so subtracting them only touches non-pivot columns.
  Accumulator<Field> acc(field, cols);
  for (std::size_t k = forward.size(); k-- > 0;) {
    Row& r = forward[k];
    bool needs = false;
    for (std::size_t t = 1; t < r.size(); ++t)
      if (e.pivot_row_[r[t].first] >= 0) {
        needs = true;
        break;
      }
    if (!needs) continue;
    for (std::size_t t = 0; t < r.size(); ++t) {
      auto c = r[t].first;
      int pr = e.pivot_row_[c];
      if (t == 0 || pr < 0) {
        acc.add(c, r[t].second);
      } else {
        acc.addmul(field.neg(r[t].second), forward[pr], static_cast<std::int64_t>(c));
      }
    }
    r = acc.gather();
  }
  e.rows_ = std::move(forward);
  return e;
}

template <class Field>
SparseRow<Field> RowEchelon<Field>::reduce(const Row& v) const {
  Accumulator<Field> acc(field_, cols_);
  for (const auto& [c, x] : v) {
    if (c >= cols_) throw std::out_of_range("reduce: column out of range");
    int pr = pivot_row_[c];
    if (pr < 0) {
      acc.add(c, x);
    } else {
      acc.addmul(field_.neg(x), rows_[pr], static_cast<std::int64_t>(c));
    }
  }
  return acc.gather();
}

template <class Field>
std::vector<SparseRow<Field>> RowEchelon<Field>::kernel_basis() const {
  // Column f of the RREF, read down the pivot rows.
  std::vector<Row> column_entries(cols_);
  for (std::size_t k = 0; k < rows_.size(); ++k)
    for (std::size_t t = 1; t < rows_[k].size(); ++t)
      column_entries[rows_[k][t].first].emplace_back(pivots_[k], field_.neg(rows_[k][t].second));
  std::vector<Row> basis;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (pivot_row_[f] >= 0) continue;
    Row v = std::move(column_entries[f]);
    v.emplace_back(static_cast<std::uint32_t>(f), field_.one());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    basis.push_back(std::move(v));
  }
  return basis;
}

// ------------------------------------------------------------------ functions

template <class Field>
RankKernel<Field> rank_and_kernel(const Field& field, const SparseMatrix<Field>& m) {
  auto e = RowEchelon<Field>::build(field, m);
  RankKernel<Field> out;
  out.rank = e.rank();
  out.kernel = e.kernel_basis();
  if (out.rank + out.kernel.size() != m.cols()) throw std::logic_error("rank-nullity violated");
  return out;
}

template <class Field>
std::size_t rank(const Field& field, const SparseMatrix<Field>& m) {
  return RowEchelon<Field>::build(field, m).rank();
}

template <class Field>
bool in_span(const Field& field, const SparseMatrix<Field>& m, const std::vector<typename Field::Element>& v) {
  if (v.size() != m.cols())
    throw std::invalid_argument("in_span: vector has " + std::to_string(v.size()) + " entries, matrix has " +
                                std::to_string(m.cols()) + " columns");
  auto e = RowEchelon<Field>::build(field, m);
  return e.contains(to_sparse<Field>(v));
}

template <class Field>
SparseRow<Field> to_sparse(const std::vector<typename Field::Element>& dense) {
  SparseRow<Field> r;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (!element_is_zero(dense[i])) r.emplace_back(static_cast<std::uint32_t>(i), dense[i]);
  return r;
}

template <class Field>
std::vector<typename Field::Element> to_dense(const Field& field, const SparseRow<Field>& row, std::size_t len) {
  std::vector<typename Field::Element> d(len, field.zero());
  for (const auto& [c, v] : row) d.at(c) = v;
  return d;
}

SparseMatrix<PrimeField> reduce_mod(const PrimeField& field, const SparseMatrix<Rationals>& m) {
  SparseMatrix<PrimeField> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    SparseRow<PrimeField> r;
    for (const auto& [c, v] : m.row(i)) {
      auto x = field.from_rational(v);
      if (x != 0) r.emplace_back(c, x);
    }
    out.set_row(i, std::move(r));
  }
  return out;
}

ModularRankProbe modular_rank_probe(const SparseMatrix<Rationals>& m, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("modular_rank_probe: trials must be >= 1");
  std::mt19937_64 rng(seed);
  ModularRankProbe out;
  while (out.ranks.size() < trials) {
    std::uint64_t p = random_prime(rng, kProbePrimeLow, kMaxPrime);
    PrimeField field(p);
    SparseMatrix<PrimeField> reduced;
    try {
      reduced = reduce_mod(field, m);
    } catch (const DenominatorError&) {
      ++out.discarded;
      continue;
    }
    out.primes.push_back(p);
    out.ranks.push_back(rank(field, reduced));
  }
  out.rank = *std::max_element(out.ranks.begin(), out.ranks.end());
  out.agree = std::all_of(out.ranks.begin(), out.ranks.end(), [&](std::size_t r) { return r == out.rank; });
  return out;
}

template class SparseMatrix<Rationals>;
template class SparseMatrix<PrimeField>;
template class RowEchelon<Rationals>;
template class RowEchelon<PrimeField>;

#define JACRING_INSTANTIATE(F)                                                                  \
  template RankKernel<F> rank_and_kernel<F>(const F&, const SparseMatrix<F>&);                 \
  template std::size_t rank<F>(const F&, const SparseMatrix<F>&);                              \
  template bool in_span<F>(const F&, const SparseMatrix<F>&, const std::vector<F::Element>&); \
  template SparseRow<F> to_sparse<F>(const std::vector<F::Element>&);                          \
  template std::vector<F::Element> to_dense<F>(const F&, const SparseRow<F>&, std::size_t);
JACRING_INSTANTIATE(Rationals)
JACRING_INSTANTIATE(PrimeField)
#undef JACRING_INSTANTIATE

}  // namespace jacring
