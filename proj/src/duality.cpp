#include "jacring/duality.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <stdexcept>

namespace jacring {

std::string to_string(PairingCase c) {
  switch (c) {
    case PairingCase::II2i: return "II-2-i";
    case PairingCase::II2ii: return "II-2-ii";
    case PairingCase::II2iii: return "II-2-iii";
    case PairingCase::II3Injective: return "II-3-injective";
    case PairingCase::Uncovered: return "uncovered";
  }
  return "uncovered";
}

PairingCase classify_pairing(const RingSpec& spec, int p, int l) {
  const int n = spec.n;
  const int r = spec.r();
  const int s = spec.s();
  const int dx = n - r;
  const int emax = spec.e_max();
  if (r > n || p < 0 || p > dx) return PairingCase::Uncovered;
  if (s >= 1 && p < dx && l < emax) return PairingCase::II2i;
  if (s >= 1 && 0 <= l && l <= emax && r + s <= n) return PairingCase::II2ii;
  if (s == 0 && l == 0 && (dx >= 1 || (dx == 0 && p == 0))) return PairingCase::II2iii;
  if (s >= 1 && p == dx && l < emax) return PairingCase::II3Injective;
  return PairingCase::Uncovered;
}

bool case_claims_perfect(PairingCase c) {
  return c == PairingCase::II2i || c == PairingCase::II2ii || c == PairingCase::II2iii;
}

long binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  long out = 1;
  for (long i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

namespace {

template <class Field>
std::vector<std::vector<typename Field::Element>> dense_rows(const Field& field,
                                                             const std::vector<SparseRow<Field>>& rows,
                                                             std::size_t len) {
  std::vector<std::vector<typename Field::Element>> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(to_dense(field, r, len));
  return out;
}

}  // namespace

template <class Field>
PairingReport<Field> pairing(const JacobianRing<Field>& ring, int p, int l,
                             std::optional<typename Field::Element> scale) {
  const RingSpec& spec = ring.spec();
  const Field& k = ring.field();
  const int n = spec.n;
  const int dx = spec.dim_x();
  PairingReport<Field> rep;
  rep.p = p;
  rep.l = l;
  rep.left_deg = {p, spec.bold_d() - n - 1 + l};
  rep.right_deg = {dx - p, spec.bold_d() + spec.bold_e() - n - 1 - l};
  rep.pairing_case = classify_pairing(spec, p, l);
  if (spec.r() <= n && (p < 0 || p > dx))
    throw InputError("pairing index p must satisfy 0 <= p <= n - r = " + std::to_string(dx));
  rep.left_dim = ring.dim(rep.left_deg.q, rep.left_deg.l);
  rep.right_dim = ring.dim(rep.right_deg.q, rep.right_deg.l);
  rep.matrix.assign(rep.left_dim, std::vector<typename Field::Element>(rep.right_dim, k.zero()));

  if (spec.r() > n) {
    rep.zero_by_convention = true;
  } else {
    auto tr = ring.trace();
    if (scale) tr.scale = *scale;
    auto left = ring.piece(rep.left_deg.q, rep.left_deg.l);
    auto right = ring.piece(rep.right_deg.q, rep.right_deg.l);
    const auto& socle = *tr.piece;
    for (std::size_t j = 0; j < rep.right_dim; ++j) {
      const AMonomial& y = right->standard_monomial(j);
      for (std::size_t i = 0; i < rep.left_dim; ++i) {
        long idx = socle.ambient().index_of(left->standard_monomial(i) * y);
        if (idx < 0) throw std::logic_error("pairing: product outside the socle piece");
        for (const auto& [si, v] : socle.monomial_normal_form(static_cast<std::size_t>(idx)))
          if (si == 0) rep.matrix[i][j] = k.mul(tr.scale, v);
      }
    }
  }

  auto gram = SparseMatrix<Field>::from_dense(rep.matrix, rep.right_dim);
  auto right_rk = rank_and_kernel(k, gram);
  auto left_rk = rank_and_kernel(k, gram.transpose());
  rep.rank = right_rk.rank;
  rep.right_kernel = dense_rows(k, right_rk.kernel, rep.right_dim);
  rep.left_kernel = dense_rows(k, left_rk.kernel, rep.left_dim);
  return rep;
}

template <class Field>
DualityDefect duality_defect(const JacobianRing<Field>& ring, int p, int l) {
  auto rep = pairing(ring, p, l);
  return {rep.left_dim - rep.rank, rep.right_dim - rep.rank};
}

std::vector<WedgeGenerator> wedge_generators(const RingSpec& spec) {
  std::vector<WedgeGenerator> out;
  const int s = spec.s();
  const int m = spec.dim_x() + 1;
  if (m < 1 || s < m) return out;
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int next) {
    if (static_cast<int>(pick.size()) == m) {
      std::vector<HomogPoly> forms = spec.F;
      for (int j : pick) forms.push_back(spec.G[j - 1]);
      WedgeGenerator w;
      w.indices = pick;
      w.A = derivative_determinant(forms);
      w.A_prime = w.A;
      for (int j = 1; j <= s; ++j)
        if (std::find(pick.begin(), pick.end(), j) == pick.end()) w.A_prime = w.A_prime * spec.G[j - 1];
      out.push_back(std::move(w));
      return;
    }
    for (int j = next; j <= s; ++j) {
      pick.push_back(j);
      rec(j + 1);
      pick.pop_back();
    }
  };
  rec(1);
  return out;
}

template <class Field>
KernelReport<Field> verify_wedge_kernel(const JacobianRing<Field>& ring) {
  const RingSpec& spec = ring.spec();
  if (spec.dim_x() < 1) throw InputError("the wedge kernel needs n - r >= 1");
  if (spec.s() < 1) throw InputError("the wedge kernel needs s >= 1");
  const Field& k = ring.field();
  KernelReport<Field> rep;
  auto pr = pairing(ring, spec.dim_x(), 0);
  rep.kernel_dim = pr.right_kernel.size();
  rep.kernel_basis = pr.right_kernel;
  rep.expected_dim = static_cast<std::size_t>(binomial(spec.s() - 1, spec.dim_x()));

  const MultiIndex none{std::vector<int>(spec.r(), 0), std::vector<int>(spec.s(), 0)};
  SparseMatrix<Field> span(0, pr.right_dim);
  rep.wedge_in_kernel = true;
  for (const auto& w : wedge_generators(spec)) {
    auto cls = ring.reduce(ring.lift_poly(w.A_prime, none));
    for (std::size_t i = 0; i < pr.left_dim; ++i) {
      auto acc = k.zero();
      for (std::size_t j = 0; j < pr.right_dim; ++j) k.addmul(acc, pr.matrix[i][j], cls.coords[j]);
      if (!k.is_zero(acc)) rep.wedge_in_kernel = false;
    }
    span.push_row(to_sparse<Field>(cls.coords));
    rep.wedge_classes.push_back(std::move(cls));
  }
  rep.wedge_span_dim = rank(k, span);
  rep.equal = rep.wedge_in_kernel && rep.wedge_span_dim == rep.kernel_dim;
  return rep;
}

template <class Field>
std::vector<MembershipCheck> wedge_membership(const JacobianRing<Field>& ring) {
  const RingSpec& spec = ring.spec();
  const int r = spec.r();
  const int s = spec.s();
  std::vector<MembershipCheck> out;
  for (const auto& w : wedge_generators(spec)) {
    for (int slot = 0; slot < r + s; ++slot) {
      MultiIndex mi{std::vector<int>(r, 0), std::vector<int>(s, 0)};
      MembershipCheck c;
      c.indices = w.indices;
      if (slot < r) {
        mi.a[slot] = 1;
        c.multiplier = "mu" + std::to_string(slot + 1);
      } else {
        mi.b[slot - r] = 1;
        c.multiplier = "lambda" + std::to_string(slot - r + 1);
      }
      auto cls = ring.reduce(ring.lift_poly(w.A_prime, mi));
      c.member = true;
      for (const auto& v : cls.coords)
        if (!ring.field().is_zero(v)) c.member = false;
      out.push_back(std::move(c));
    }
  }
  return out;
}

template <class Field>
bool verify_wedge_membership(const JacobianRing<Field>& ring) {
  for (const auto& c : wedge_membership(ring))
    if (!c.member) return false;
  return true;
}

template <class Field>
std::size_t graded_quotient_dimension(const Field& field, std::size_t nvars, const std::vector<HomogPoly>& forms,
                                      int degree) {
  if (degree < 0) return 0;
  auto monos = monomials_of_degree(nvars, degree);
  std::unordered_map<Exponent, std::size_t, ExponentHash> index;
  for (std::size_t i = 0; i < monos.size(); ++i) index.emplace(monos[i], i);
  SparseMatrix<Field> m(0, monos.size());
  for (const auto& f : forms) {
    if (f.nvars() != nvars) throw InputError("graded_quotient_dimension: form in the wrong number of variables");
    if (f.is_zero() || f.degree() > degree) continue;
    for (const auto& mult : monomials_of_degree(nvars, degree - f.degree())) {
      SparseRow<Field> row;
      for (const auto& [e, c] : f.terms()) row.emplace_back(static_cast<std::uint32_t>(index.at(e * mult)), field.from_rational(c));
      std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      m.push_row(std::move(row));
    }
  }
  return monos.size() - rank(field, m);
}

std::size_t macaulay_socle_dimension(const std::vector<HomogPoly>& F, const std::vector<HomogPoly>& G) {
  if (F.empty()) throw InputError("need at least one form F");
  const std::size_t nvars = F[0].nvars();
  const int n = static_cast<int>(nvars) - 1;
  if (static_cast<int>(F.size()) != n) throw InputError("need exactly n forms F");
  if (G.empty()) throw InputError("need at least one form G");
  int deg = -n - 1;
  for (const auto& f : F) deg += f.degree();
  for (const auto& g : G) deg += g.degree();
  std::vector<HomogPoly> forms = F;
  forms.push_back(G[0]);
  return graded_quotient_dimension(Rationals{}, nvars, forms, deg);
}

#define JACRING_INSTANTIATE(Field)                                                                       \
  template struct PairingReport<Field>;                                                                  \
  template PairingReport<Field> pairing(const JacobianRing<Field>&, int, int,                           \
                                        std::optional<typename Field::Element>);                         \
  template DualityDefect duality_defect(const JacobianRing<Field>&, int, int);                           \
  template KernelReport<Field> verify_wedge_kernel(const JacobianRing<Field>&);                          \
  template std::vector<MembershipCheck> wedge_membership(const JacobianRing<Field>&);                    \
  template bool verify_wedge_membership(const JacobianRing<Field>&);                                     \
  template std::size_t graded_quotient_dimension(const Field&, std::size_t, const std::vector<HomogPoly>&, \
                                                 int);

JACRING_INSTANTIATE(Rationals)
JACRING_INSTANTIATE(PrimeField)

}  // namespace jacring
