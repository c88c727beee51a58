#include "jacring/koszul.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

namespace jacring {

template <class Field>
Subspace<Field> make_subspace(const JacobianRing<Field>& ring, const std::vector<BElement<Field>>& spanning) {
  const Bidegree deg{1, 0};
  Subspace<Field> out;
  out.ambient_dim = ring.dim(1, 0);
  SparseMatrix<Field> m(0, out.ambient_dim);
  for (const auto& v : spanning) {
    if (!(v.deg == deg) || v.coords.size() != out.ambient_dim)
      throw InputError("subspace vectors must lie in B(1,0)");
    m.push_row(to_sparse<Field>(v.coords));
  }
  auto ech = RowEchelon<Field>::build(ring.field(), m);
  for (std::size_t k = 0; k < ech.rank(); ++k)
    out.basis.push_back({deg, to_dense(ring.field(), ech.row(k), out.ambient_dim)});
  return out;
}

template <class Field>
Subspace<Field> full_subspace(const JacobianRing<Field>& ring) {
  std::vector<BElement<Field>> span;
  for (std::size_t i = 0; i < ring.dim(1, 0); ++i) span.push_back(ring.basis_element(1, 0, i));
  return make_subspace(ring, span);
}

template <class Field>
Subspace<Field> random_subspace(const JacobianRing<Field>& ring, std::size_t codim, std::uint64_t seed) {
  const std::size_t dim = ring.dim(1, 0);
  if (codim > dim)
    throw InputError("codimension " + std::to_string(codim) + " exceeds dim B(1,0) = " + std::to_string(dim));
  const std::size_t want = dim - codim;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-9, 9);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<BElement<Field>> span;
    for (std::size_t k = 0; k < want; ++k) {
      BElement<Field> v{{1, 0}, {}};
      for (std::size_t i = 0; i < dim; ++i) v.coords.push_back(ring.field().from_int(coeff(rng)));
      span.push_back(std::move(v));
    }
    auto sub = make_subspace(ring, span);
    if (sub.basis.size() == want) return sub;
  }
  throw std::runtime_error("could not draw a random subspace of full rank");
}

std::vector<std::vector<int>> wedge_tuples(int m, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > m) return out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int next) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int v = next; v < m; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

std::string KoszulConditions::label() const {
  if (!applicable) return "n/a";
  std::string out;
  auto add = [&](bool b, const char* name) {
    if (!b) return;
    if (!out.empty()) out += ",";
    out += name;
  };
  add(i, "i");
  add(ii, "ii");
  add(iii, "iii");
  return out.empty() ? "none" : out;
}

KoszulConditions koszul_conditions(const RingSpec& spec, int p, int q, int l, std::size_t codim) {
  KoszulConditions k;
  const int n = spec.n;
  const int r = spec.r();
  const int s = spec.s();
  const int d = spec.bold_d();
  const int dm = spec.delta_min();
  const int c = static_cast<int>(codim);
  k.applicable = s >= 1 && p >= 0 && q >= 0;
  k.i = q == 0 && dm * p + l >= c;
  k.ii = q == 1 && dm * p + l >= 1 + c && dm * (p + 1) + l >= spec.d_max() + c;
  k.iii = dm * (r + p) + l >= d + q + c && d + spec.e_max() - n - 1 > l && l >= d - n - 1 &&
          (r + s <= n + 2 || p <= n - r - q / 2);
  k.remark_regime = q >= 2 && l == d - n - 1 && r + s > n + 2 && p == n - r - 1;
  return k;
}

namespace {

// Multiplication by each basis vector of V as a dim B_p(l) x dim B_{p+1}(l)
// matrix (dense rows).
template <class Field>
std::vector<std::vector<std::vector<typename Field::Element>>> multiplication_maps(const JacobianRing<Field>& ring,
                                                                                  const Subspace<Field>& V, int p,
                                                                                  int l) {
  std::vector<std::vector<std::vector<typename Field::Element>>> out;
  const std::size_t src = ring.dim(p, l);
  for (const auto& v : V.basis) {
    auto y = ring.lift(v);
    std::vector<std::vector<typename Field::Element>> rows;
    for (std::size_t i = 0; i < src; ++i) rows.push_back(ring.multiply_standard({p, l}, i, y).coords);
    out.push_back(std::move(rows));
  }
  return out;
}

}  // namespace

template <class Field>
SparseMatrix<Field> koszul_differential(const KoszulInstance<Field>& inst, int stage) {
  if (stage != 1 && stage != 2) throw std::invalid_argument("koszul_differential: stage must be 1 or 2");
  const auto& ring = *inst.ring;
  const Field& field = ring.field();
  const int m = static_cast<int>(inst.V.basis.size());
  const int p = inst.p + stage - 1;
  const int k = inst.q + 2 - stage;
  const std::size_t src_b = p < 0 ? 0 : ring.dim(p, inst.l);
  const std::size_t tgt_b = p + 1 < 0 ? 0 : ring.dim(p + 1, inst.l);
  auto src_t = wedge_tuples(m, k);
  auto tgt_t = wedge_tuples(m, k - 1);
  std::map<std::vector<int>, std::size_t> tgt_index;
  for (std::size_t w = 0; w < tgt_t.size(); ++w) tgt_index.emplace(tgt_t[w], w);

  SparseMatrix<Field> out(0, tgt_t.size() * tgt_b);
  if (src_t.empty() || src_b == 0) {
    for (std::size_t i = 0; i < src_t.size() * src_b; ++i) out.push_row({});
    return out;
  }
  auto mult = tgt_t.empty() || tgt_b == 0 ? decltype(multiplication_maps(ring, inst.V, p, inst.l)){}
                                          : multiplication_maps(ring, inst.V, p, inst.l);
  for (const auto& tuple : src_t) {
    for (std::size_t i = 0; i < src_b; ++i) {
      SparseRow<Field> row;
      if (!mult.empty()) {
        for (int t = 0; t < k; ++t) {
          std::vector<int> rest = tuple;
          rest.erase(rest.begin() + t);
          const std::size_t base = tgt_index.at(rest) * tgt_b;
          const auto& img = mult[tuple[t]][i];
          for (std::size_t j = 0; j < tgt_b; ++j) {
            if (field.is_zero(img[j])) continue;
            row.emplace_back(static_cast<std::uint32_t>(base + j), t % 2 ? field.neg(img[j]) : img[j]);
          }
        }
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      }
      out.push_row(std::move(row));
    }
  }
  return out;
}

template <class Field>
KoszulReport middle_homology(const KoszulInstance<Field>& inst) {
  const auto& ring = *inst.ring;
  const Field& field = ring.field();
  KoszulReport rep;
  rep.p = inst.p;
  rep.q = inst.q;
  rep.l = inst.l;
  rep.codim = inst.V.codim();
  rep.dim_v = inst.V.basis.size();
  auto d1 = koszul_differential(inst, 1);
  auto d2 = koszul_differential(inst, 2);
  rep.dims[0] = d1.rows();
  rep.dims[1] = d1.cols();
  rep.dims[2] = d2.cols();
  if (d2.rows() != rep.dims[1]) throw std::logic_error("koszul: inconsistent middle term");
  rep.rank_first = rank(field, d1);
  rep.rank_second = rank(field, d2);
  rep.middle_homology = rep.dims[1] - rep.rank_second - rep.rank_first;

  rep.composite_zero = true;
  std::vector<typename Field::Element> acc(rep.dims[2], field.zero());
  for (std::size_t i = 0; i < d1.rows() && rep.composite_zero; ++i) {
    std::fill(acc.begin(), acc.end(), field.zero());
    for (const auto& [c, v] : d1.row(i))
      for (const auto& [c2, v2] : d2.row(c)) field.addmul(acc[c2], v, v2);
    for (const auto& x : acc)
      if (!field.is_zero(x)) rep.composite_zero = false;
  }

  rep.conditions = koszul_conditions(ring.spec(), inst.p, inst.q, inst.l, rep.codim);
  rep.violation =
      !rep.composite_zero || (rep.conditions.any() && !rep.conditions.remark_regime && rep.middle_homology != 0);
  return rep;
}

template <class Field>
std::vector<KoszulReport> symmetrizer_sweep(const JacobianRing<Field>& ring, const SweepRange& range,
                                            const std::vector<VChoice>& choices) {
  std::vector<KoszulReport> out;
  if (range.p_min > range.p_max || range.q_min > range.q_max || range.l_min > range.l_max) return out;
  for (const auto& choice : choices) {
    KoszulInstance<Field> inst;
    inst.ring = &ring;
    if (choice.full) {
      inst.V = full_subspace(ring);
    } else {
      if (choice.codim > ring.dim(1, 0)) continue;
      inst.V = random_subspace(ring, choice.codim, choice.seed);
    }
    for (int p = range.p_min; p <= range.p_max; ++p)
      for (int q = range.q_min; q <= range.q_max; ++q)
        for (int l = range.l_min; l <= range.l_max; ++l) {
          inst.p = p;
          inst.q = q;
          inst.l = l;
          auto rep = middle_homology(inst);
          rep.v_label = choice.label;
          out.push_back(std::move(rep));
        }
  }
  return out;
}

#define JACRING_INSTANTIATE(Field)                                                                       \
  template Subspace<Field> make_subspace(const JacobianRing<Field>&, const std::vector<BElement<Field>>&); \
  template Subspace<Field> full_subspace(const JacobianRing<Field>&);                                    \
  template Subspace<Field> random_subspace(const JacobianRing<Field>&, std::size_t, std::uint64_t);      \
  template SparseMatrix<Field> koszul_differential(const KoszulInstance<Field>&, int);                   \
  template KoszulReport middle_homology(const KoszulInstance<Field>&);                                   \
  template std::vector<KoszulReport> symmetrizer_sweep(const JacobianRing<Field>&, const SweepRange&,    \
                                                       const std::vector<VChoice>&);

JACRING_INSTANTIATE(Rationals)
JACRING_INSTANTIATE(PrimeField)

}  // namespace jacring
