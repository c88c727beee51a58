#include "jacring/geom.hpp"

#include <algorithm>

namespace jacring {

template <class Field>
HodgeTable hodge_table(const JacobianRing<Field>& ring, int l) {
  const RingSpec& spec = ring.spec();
  if (l < 0) throw InputError("the Hodge table needs l >= 0");
  if (spec.dim_x() < 0) throw InputError("the Hodge table needs r <= n");
  HodgeTable t;
  t.l = l;
  const int dx = spec.dim_x();
  const int twist = spec.bold_d() + spec.bold_e() - spec.n - 1 + l;
  for (int q = 0; q <= dx; ++q) {
    HodgeEntry e;
    e.q = q;
    e.form_degree = dx - q;
    e.piece = {q, twist};
    e.primitive = e.full = ring.dim(q, twist);
    if (spec.s() == 0 && l == 0 && 2 * q == dx) {
      e.full += 1;
      t.middle_correction_applied = true;
    }
    t.rows.push_back(e);
  }
  return t;
}

bool torelli_predicate(const RingSpec& spec, int q) {
  const int dm = spec.delta_min();
  const int n = spec.n;
  return dm * (spec.dim_x() - q) + spec.bold_d() + spec.bold_e() >= n - 1 && dm * (q - 1) + spec.bold_d() >= n - 1;
}

template <class Field>
TorelliReport torelli_check(const JacobianRing<Field>& ring, int q) {
  const RingSpec& spec = ring.spec();
  const int dx = spec.dim_x();
  if (q < 1 || q > dx) throw InputError("torelli: q must satisfy 1 <= q <= n - r = " + std::to_string(dx));
  const int n = spec.n;
  const int d = spec.bold_d();
  const int e = spec.bold_e();
  TorelliReport rep;
  rep.q = q;
  rep.predicate = torelli_predicate(spec, q);
  rep.identified = d - n - 1 >= 0;
  rep.left = {dx - q, d + e - n - 1};
  rep.right = {q - 1, d - n - 1};
  rep.target = {dx - 1, 2 * (d - n - 1) + e};
  auto lp = ring.piece(rep.left.q, rep.left.l);
  auto rp = ring.piece(rep.right.q, rep.right.l);
  auto tp = ring.piece(rep.target.q, rep.target.l);
  rep.left_dim = lp->dim();
  rep.right_dim = rp->dim();
  rep.target_dim = tp->dim();
  SparseMatrix<Field> m(0, rep.target_dim);
  if (rep.target_dim > 0) {
    for (std::size_t i = 0; i < rep.left_dim; ++i)
      for (std::size_t j = 0; j < rep.right_dim; ++j) {
        long idx = tp->ambient().index_of(lp->standard_monomial(i) * rp->standard_monomial(j));
        m.push_row(tp->monomial_normal_form(static_cast<std::size_t>(idx)));
      }
  }
  rep.rank = rank(ring.field(), m);
  rep.surjective = rep.rank == rep.target_dim;
  return rep;
}

BoundInput BoundInput::from_spec(const RingSpec& spec, int t, int c) {
  return {spec.n, spec.r(), spec.s(), spec.d(), spec.e(), t, c};
}

int BoundInput::bold_d() const {
  int s = 0;
  for (int v : d) s += v;
  return s;
}

int BoundInput::delta_min() const {
  int m = 0;
  bool first = true;
  for (const auto* list : {&d, &e})
    for (int v : *list) {
      m = first ? v : std::min(m, v);
      first = false;
    }
  return m;
}

int BoundInput::d_max() const {
  int m = 0;
  for (int v : d) m = std::max(m, v);
  return m;
}

NoriBound nori_bound(const BoundInput& in) {
  if (in.n - in.r < 2) throw InputError("the degree bounds need n - r >= 2");
  if (static_cast<int>(in.d.size()) != in.r || static_cast<int>(in.e.size()) != in.s)
    throw InputError("degree lists do not match r and s");
  NoriBound b;
  const int dm = in.delta_min();
  b.open_case_vanishing = in.s <= in.n - in.r + 2 && dm * in.r >= in.t + in.r + 1 + in.c;
  b.relative_case_vanishing = in.s == 1 && dm * in.r + in.e[0] >= in.t + in.r + 1 + in.c;
  return b;
}

std::string FamilyConditions::label() const {
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
  add(iv, "iv");
  return out.empty() ? "none" : out;
}

FamilyConditions family_conditions(const BoundInput& in, int a, int q) {
  FamilyConditions f;
  const int n = in.n;
  const int r = in.r;
  const int c = in.c;
  const int d = in.bold_d();
  const int dm = in.delta_min();
  f.applicable = n - r >= 2 && (a < n - r - 1 || r + in.s <= n) && a >= 0;
  f.i = q == 0 && dm * a + d >= c + n + 1;
  f.ii = q == 1 && dm * a + d >= c + n + 2 && dm * (a + 1) + d >= c + n + 1 + in.d_max();
  f.iii = dm * (r + a) >= q + c + n + 1 && r + in.s <= n + 2;
  f.iv = dm * (r + a) >= q + c + n + 1 && 2 * a < 2 * (n - r) - q;
  return f;
}

FamilyConditions relative_conditions(const BoundInput& in, int a, int q) {
  FamilyConditions f;
  const int n = in.n;
  const int r = in.r;
  const int c = in.c;
  const int d = in.bold_d();
  const int dm = in.delta_min();
  f.applicable = n - r >= 2 && in.s == 1 && a >= 0;
  const int e = in.e.empty() ? 0 : in.e[0];
  f.i = q == 0 && dm * a + d + e >= c + n + 1;
  f.ii = q == 1 && dm * a + d + e >= c + n + 2 && dm * (a + 1) + d + e >= c + n + 1 + in.d_max();
  f.iii = dm * (r + a) + e >= q + c + n + 1;
  return f;
}

template HodgeTable hodge_table(const JacobianRing<Rationals>&, int);
template HodgeTable hodge_table(const JacobianRing<PrimeField>&, int);
template TorelliReport torelli_check(const JacobianRing<Rationals>&, int);
template TorelliReport torelli_check(const JacobianRing<PrimeField>&, int);

}  // namespace jacring
