#include <doctest.h>

#include <random>

#include "jacring/field.hpp"
#include "jacring/linalg.hpp"

using namespace jacring;

namespace {

using QMat = SparseMatrix<Rationals>;

QMat qmat(const std::vector<std::vector<long>>& rows, std::size_t cols) {
  std::vector<std::vector<mpq_class>> dense;
  for (const auto& r : rows) {
    std::vector<mpq_class> row;
    for (long v : r) row.emplace_back(v);
    dense.push_back(row);
  }
  return QMat::from_dense(dense, cols);
}

template <class Field>
void check_rank_nullity(const Field& field, const SparseMatrix<Field>& m) {
  const auto rk = rank_and_kernel(field, m);
  CHECK(rk.rank + rk.kernel.size() == m.cols());
  for (const auto& v : rk.kernel) {
    const auto image = m.apply(field, to_dense(field, v, m.cols()));
    for (const auto& x : image) CHECK(field.is_zero(x));
  }
  for (std::size_t i = 0; i < m.rows(); ++i) CHECK(in_span(field, m, to_dense(field, m.row(i), m.cols())));
}

}  // namespace

TEST_CASE("fields") {
  Rationals q;
  CHECK(q.inv(mpq_class(2, 3)) == mpq_class(3, 2));
  CHECK_THROWS(q.inv(q.zero()));
  PrimeField f(7);
  CHECK(f.mul(f.inv(3), 3) == 1);
  CHECK(f.from_int(-1) == 6);
  CHECK(f.from_rational(mpq_class(1, 2)) == 4);
  CHECK_THROWS_AS(f.from_rational(mpq_class(1, 7)), DenominatorError);
  CHECK(is_prime(2));
  CHECK(is_prime(1000000007));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(561));
  std::mt19937_64 rng(5);
  const auto p = random_prime(rng, std::uint64_t{1} << 50, std::uint64_t{1} << 51);
  CHECK(is_prime(p));
  CHECK(p > (std::uint64_t{1} << 50));
  PrimeField big(p);
  CHECK(big.mul(big.inv(12345), 12345) == 1);
  CHECK(FieldDesc::rationals().to_string() == "Q");
  CHECK(FieldDesc::prime_field(7).to_string() == "gfp 7");
}

TEST_CASE("rank and kernel examples") {
  Rationals q;
  QMat empty(0, 0);
  CHECK(rank_and_kernel(q, empty).rank == 0);
  CHECK(rank_and_kernel(q, empty).kernel.empty());

  const auto id = QMat::identity(3, q);
  CHECK(rank(q, id) == 3);
  CHECK(rank_and_kernel(q, id).kernel.empty());

  const auto m = qmat({{1, 2, 3}, {2, 4, 6}}, 3);
  const auto rk = rank_and_kernel(q, m);
  CHECK(rk.rank == 1);
  CHECK(rk.kernel.size() == 2);
  check_rank_nullity(q, m);
}

TEST_CASE("in_span examples") {
  Rationals q;
  const auto m = qmat({{1, 1, 0}}, 3);
  CHECK(in_span(q, m, {0, 0, 0}));
  CHECK_FALSE(in_span(q, m, {0, 0, 1}));
  CHECK(in_span(q, m, {mpq_class(-5, 2), mpq_class(-5, 2), 0}));
  const auto id = QMat::identity(3, q);
  CHECK(in_span(q, id, {7, mpq_class(1, 3), -2}));
}

TEST_CASE("echelon form is canonical") {
  Rationals q;
  const auto a = RowEchelon<Rationals>::build(q, qmat({{1, 2, 0, 1}, {0, 1, 1, 1}}, 4));
  const auto b = RowEchelon<Rationals>::build(q, qmat({{1, 3, 1, 2}, {2, 3, -1, 1}, {3, 6, 0, 3}}, 4));
  REQUIRE(a.rank() == b.rank());
  for (std::size_t k = 0; k < a.rank(); ++k) CHECK(a.row(k) == b.row(k));
  CHECK(a.pivots() == b.pivots());
  CHECK(a.contains(to_sparse<Rationals>({1, 1, -1, 0})));
  CHECK_FALSE(a.contains(to_sparse<Rationals>({0, 0, 0, 1})));
}

TEST_CASE("random matrices: rank-nullity and span membership") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> coeff(-3, 3);
  std::uniform_int_distribution<int> size(1, 9);
  Rationals q;
  PrimeField f(1000003);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t rows = static_cast<std::size_t>(size(rng)), cols = static_cast<std::size_t>(size(rng));
    std::vector<std::vector<long>> dense(rows, std::vector<long>(cols));
    for (auto& r : dense)
      for (auto& v : r) v = trial % 3 == 0 && coeff(rng) > 0 ? 0 : coeff(rng);
    const auto m = qmat(dense, cols);
    check_rank_nullity(q, m);
    const auto mp = reduce_mod(f, m);
    check_rank_nullity(f, mp);
  }
}

TEST_CASE("rank mod p can drop; the probe reports agreement otherwise") {
  Rationals q;
  const auto m = qmat({{1, 1}, {1, 8}}, 2);
  CHECK(rank(q, m) == 2);
  PrimeField f(7);
  CHECK(rank(f, reduce_mod(f, m)) == 1);

  const auto id4 = QMat::identity(4, q);
  const auto probe = modular_rank_probe(id4, 2, 1);
  CHECK(probe.rank == 4);
  CHECK(probe.agree);
  const auto zero = QMat(3, 3);
  CHECK(modular_rank_probe(zero, 2, 1).rank == 0);
  CHECK(modular_rank_probe(zero, 2, 1).agree);

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> coeff(-20, 20);
  std::vector<std::vector<long>> dense(6, std::vector<long>(7));
  for (auto& r : dense)
    for (auto& v : r) v = coeff(rng);
  dense[5] = dense[0];
  for (std::size_t j = 0; j < 7; ++j) dense[4][j] = dense[1][j] - 3 * dense[2][j];
  const auto mm = qmat(dense, 7);
  const auto pr = modular_rank_probe(mm, 3, 9);
  CHECK(pr.agree);
  CHECK(pr.rank == rank(q, mm));
}

TEST_CASE("sparse matrix plumbing") {
  Rationals q;
  const auto m = QMat::from_triplets(2, 3, {{0, 2, mpq_class(5)}, {1, 0, mpq_class(-1)}, {0, 0, mpq_class(2)}});
  const auto t = m.transpose();
  CHECK(t.rows() == 3);
  CHECK(t.cols() == 2);
  const auto d = t.to_dense(q);
  CHECK(d[2][0] == 5);
  CHECK(d[0][1] == -1);
  CHECK(d[1][0] == 0);
  CHECK(m.apply(q, {1, 1, 1}) == std::vector<mpq_class>{7, -1});
}
