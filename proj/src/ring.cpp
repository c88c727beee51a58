#include "jacring/ring.hpp"

#include <algorithm>
#include <stdexcept>

namespace jacring {

// ------------------------------------------------------------------ RingSpec

void RingSpec::validate() const {
  if (n < 2) throw InputError("n must be at least 2, got " + std::to_string(n));
  if (F.size() + G.size() == 0) throw InputError("need at least one form (r + s >= 1)");
  auto check = [&](const HomogPoly& p, const std::string& name) {
    if (p.nvars() != nvars())
      throw InputError(name + " is a form in " + std::to_string(p.nvars()) + " variables, expected " +
                       std::to_string(nvars()));
    if (p.is_zero()) throw InputError(name + " is the zero polynomial");
    if (p.degree() < 1) throw InputError(name + " must have positive degree");
  };
  for (std::size_t i = 0; i < F.size(); ++i) check(F[i], "F" + std::to_string(i + 1));
  for (std::size_t j = 0; j < G.size(); ++j) check(G[j], "G" + std::to_string(j + 1));
  if (!field.is_rational()) FieldDesc::prime_field(field.prime);
}

std::vector<int> RingSpec::d() const {
  std::vector<int> out;
  for (const auto& f : F) out.push_back(f.degree());
  return out;
}

std::vector<int> RingSpec::e() const {
  std::vector<int> out;
  for (const auto& g : G) out.push_back(g.degree());
  return out;
}

int RingSpec::bold_d() const {
  int t = 0;
  for (const auto& f : F) t += f.degree();
  return t;
}

int RingSpec::bold_e() const {
  int t = 0;
  for (const auto& g : G) t += g.degree();
  return t;
}

int RingSpec::delta_min() const {
  int m = 0;
  bool first = true;
  for (const auto* list : {&F, &G})
    for (const auto& p : *list) {
      m = first ? p.degree() : std::min(m, p.degree());
      first = false;
    }
  return m;
}

int RingSpec::d_max() const {
  int m = 0;
  for (const auto& f : F) m = std::max(m, f.degree());
  return m;
}

int RingSpec::e_max() const {
  int m = 0;
  for (const auto& g : G) m = std::max(m, g.degree());
  return m;
}

// -------------------------------------------------------------- QuotientPiece

template <class Field>
QuotientPiece<Field>::QuotientPiece(const Field& field, std::shared_ptr<const GradedBasis> ambient,
                                    RowEchelon<Field> echelon)
    : field_(field), ambient_(std::move(ambient)), echelon_(std::move(echelon)) {
  const std::size_t n = ambient_->size();
  standard_index_.assign(n, -1);
  for (std::size_t c = 0; c < n; ++c) {
    if (echelon_.is_pivot(c)) continue;
    standard_index_[c] = static_cast<long>(standard_.size());
    standard_.push_back(static_cast<std::uint32_t>(c));
  }
  tails_.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    if (!echelon_.is_pivot(c)) {
      tails_[c].emplace_back(static_cast<std::uint32_t>(standard_index_[c]), field_.one());
      continue;
    }
    const auto& row = echelon_.row(static_cast<std::size_t>(echelon_.pivot_row_of(c)));
    for (const auto& [col, v] : row) {
      if (col == c) continue;
      tails_[c].emplace_back(static_cast<std::uint32_t>(standard_index_[col]), field_.neg(v));
    }
  }
}

template <class Field>
std::vector<typename Field::Element> QuotientPiece<Field>::normal_form(
    const std::vector<std::pair<std::uint32_t, Element>>& ambient_coords) const {
  std::vector<Element> out(dim(), field_.zero());
  for (const auto& [col, v] : ambient_coords) {
    if (col >= tails_.size()) throw std::out_of_range("normal_form: column out of range");
    for (const auto& [si, t] : tails_[col]) field_.addmul(out[si], v, t);
  }
  return out;
}

template <class Field>
typename Field::Element TraceFunctional<Field>::operator()(const Field& field, const BElement<Field>& x) const {
  if (!(x.deg == socle) || x.coords.size() != 1)
    throw std::invalid_argument("trace: argument is not in the socle piece " + to_string(socle));
  return field.mul(scale, x.coords[0]);
}

// --------------------------------------------------------------- JacobianRing

template <class Field>
JacobianRing<Field>::JacobianRing(RingSpec spec, Field field) : spec_(std::move(spec)), field_(std::move(field)) {
  spec_.validate();
  const int r = spec_.r();
  const int s = spec_.s();
  const std::size_t nv = spec_.nvars();
  auto unit = [&](int slot) {
    MultiIndex mi{std::vector<int>(r, 0), std::vector<int>(s, 0)};
    if (slot < r)
      mi.a[slot] = 1;
    else
      mi.b[slot - r] = 1;
    return mi;
  };
  for (std::size_t k = 0; k < nv; ++k) {
    A eta;
    eta.deg = {1, -1};
    for (int i = 0; i < r; ++i) eta = a_add(field_, eta, lift_poly(partial(spec_.F[i], k), unit(i)));
    for (int j = 0; j < s; ++j) eta = a_add(field_, eta, lift_poly(partial(spec_.G[j], k), unit(r + j)));
    eta.deg = {1, -1};
    generators_.push_back({std::move(eta), "eta" + std::to_string(k)});
  }
  const MultiIndex none{std::vector<int>(r, 0), std::vector<int>(s, 0)};
  for (int i = 0; i < r; ++i) generators_.push_back({lift_poly(spec_.F[i], none), "F" + std::to_string(i + 1)});
  for (int j = 0; j < s; ++j)
    generators_.push_back(
        {lift_poly(spec_.G[j], unit(r + j)), "G" + std::to_string(j + 1) + "*lambda" + std::to_string(j + 1)});
}

template <class Field>
std::shared_ptr<const GradedBasis> JacobianRing<Field>::basis(int q, int l) const {
  const auto key = std::make_pair(q, l);
  {
    std::shared_lock lock(mutex_);
    if (auto it = basis_cache_.find(key); it != basis_cache_.end()) return it->second;
  }
  auto b = std::make_shared<const GradedBasis>(enumerate_basis(spec_, q, l));
  std::unique_lock lock(mutex_);
  return basis_cache_.emplace(key, std::move(b)).first->second;
}

template <class Field>
IdealPiece<Field> JacobianRing<Field>::ideal_piece(int q, int l) const {
  IdealPiece<Field> out = ideal_span(q, l);
  out.rank = RowEchelon<Field>::build(field_, out.span_matrix).rank();
  return out;
}

template <class Field>
IdealPiece<Field> JacobianRing<Field>::ideal_span(int q, int l) const {
  IdealPiece<Field> out;
  out.deg = {q, l};
  out.ambient = basis(q, l);
  const GradedBasis& amb = *out.ambient;
  out.span_matrix = SparseMatrix<Field>(0, amb.size());
  if (amb.empty()) return out;
  for (const auto& gen : generators_) {
    const Bidegree rest = Bidegree{q, l} - gen.element.deg;
    if (rest.q < 0 || gen.element.is_zero()) continue;
    auto mult = basis(rest.q, rest.l);
    for (const auto& m : mult->monomials()) {
      SparseRow<Field> row;
      row.reserve(gen.element.terms.size());
      for (const auto& [t, c] : gen.element.terms) {
        long idx = amb.index_of(t * m);
        if (idx < 0) throw std::logic_error("ideal_piece: product outside the ambient basis");
        row.emplace_back(static_cast<std::uint32_t>(idx), c);
      }
      std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      out.span_matrix.push_row(std::move(row));
    }
  }
  return out;
}

template <class Field>
std::shared_ptr<const QuotientPiece<Field>> JacobianRing<Field>::compute_piece(int q, int l) const {
  IdealPiece<Field> ip = ideal_span(q, l);
  auto ech = RowEchelon<Field>::build(field_, ip.span_matrix);
  return std::make_shared<const QuotientPiece<Field>>(field_, ip.ambient, std::move(ech));
}

template <class Field>
std::shared_ptr<const QuotientPiece<Field>> JacobianRing<Field>::piece(int q, int l) const {
  const auto key = std::make_pair(q, l);
  {
    std::shared_lock lock(mutex_);
    if (auto it = piece_cache_.find(key); it != piece_cache_.end()) return it->second;
  }
  auto p = compute_piece(q, l);
  std::unique_lock lock(mutex_);
  return piece_cache_.emplace(key, std::move(p)).first->second;
}

template <class Field>
AElement<Field> JacobianRing<Field>::lift_poly(const HomogPoly& p, const MultiIndex& mi) const {
  return jacring::lift_poly(field_, spec_, p, mi);
}

template <class Field>
AElement<Field> JacobianRing<Field>::monomial(const AMonomial& m) const {
  A out;
  out.deg = bidegree_of(spec_, m);
  add_term(field_, out, m, field_.one());
  return out;
}

template <class Field>
BElement<Field> JacobianRing<Field>::reduce(const A& x) const {
  auto pc = piece(x.deg.q, x.deg.l);
  std::vector<std::pair<std::uint32_t, Element>> coords;
  coords.reserve(x.terms.size());
  for (const auto& [m, c] : x.terms) {
    long idx = pc->ambient().index_of(m);
    if (idx < 0)
      throw std::invalid_argument("reduce: term " + to_string(m) + " does not have bidegree " + to_string(x.deg));
    coords.emplace_back(static_cast<std::uint32_t>(idx), c);
  }
  return {x.deg, pc->normal_form(coords)};
}

template <class Field>
AElement<Field> JacobianRing<Field>::lift(const B& x) const {
  auto pc = piece(x.deg.q, x.deg.l);
  if (x.coords.size() != pc->dim()) throw std::invalid_argument("lift: coordinate vector has the wrong length");
  A out;
  out.deg = x.deg;
  for (std::size_t i = 0; i < x.coords.size(); ++i) add_term(field_, out, pc->standard_monomial(i), x.coords[i]);
  return out;
}

template <class Field>
BElement<Field> JacobianRing<Field>::multiply(const B& x, const B& y) const {
  auto px = piece(x.deg.q, x.deg.l);
  auto py = piece(y.deg.q, y.deg.l);
  if (x.coords.size() != px->dim() || y.coords.size() != py->dim())
    throw std::invalid_argument("multiply: coordinate vector has the wrong length");
  const Bidegree deg = x.deg + y.deg;
  auto target = piece(deg.q, deg.l);
  std::vector<std::pair<std::uint32_t, Element>> coords;
  if (target->dim() > 0) {
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
      if (field_.is_zero(x.coords[i])) continue;
      for (std::size_t j = 0; j < y.coords.size(); ++j) {
        if (field_.is_zero(y.coords[j])) continue;
        long idx = target->ambient().index_of(px->standard_monomial(i) * py->standard_monomial(j));
        coords.emplace_back(static_cast<std::uint32_t>(idx), field_.mul(x.coords[i], y.coords[j]));
      }
    }
  }
  return {deg, target->normal_form(coords)};
}

template <class Field>
BElement<Field> JacobianRing<Field>::multiply_standard(Bidegree deg, std::size_t i, const A& y) const {
  auto px = piece(deg.q, deg.l);
  const AMonomial& m = px->standard_monomial(i);
  const Bidegree out_deg = deg + y.deg;
  auto target = piece(out_deg.q, out_deg.l);
  std::vector<std::pair<std::uint32_t, Element>> coords;
  if (target->dim() > 0) {
    for (const auto& [t, c] : y.terms) {
      long idx = target->ambient().index_of(m * t);
      if (idx < 0) throw std::invalid_argument("multiply_standard: inconsistent bidegree");
      coords.emplace_back(static_cast<std::uint32_t>(idx), c);
    }
  }
  return {out_deg, target->normal_form(coords)};
}

template <class Field>
BElement<Field> JacobianRing<Field>::zero(int q, int l) const {
  return {{q, l}, std::vector<Element>(dim(q, l), field_.zero())};
}

template <class Field>
BElement<Field> JacobianRing<Field>::basis_element(int q, int l, std::size_t i) const {
  B x = zero(q, l);
  if (i >= x.coords.size()) throw std::out_of_range("basis_element: index out of range");
  x.coords[i] = field_.one();
  return x;
}

template <class Field>
TraceFunctional<Field> JacobianRing<Field>::trace() const {
  if (spec_.dim_x() < 1) throw InputError("the trace needs n - r >= 1");
  const Bidegree socle{spec_.dim_x(), spec_.socle_twist()};
  auto pc = piece(socle.q, socle.l);
  if (pc->dim() != 1)
    throw SocleError("socle piece B" + to_string(socle) + " has dimension " + std::to_string(pc->dim()) +
                     ", expected 1; the forms are probably not transversal");
  return {socle, pc, field_.one()};
}

template <class Field>
TransversalityReport JacobianRing<Field>::transversality() const {
  TransversalityReport rep;
  const int dx = spec_.dim_x();
  rep.socle = {dx, spec_.socle_twist()};
  if (dx < 1) {
    rep.reason = "n - r < 1: no socle test available";
    return rep;
  }
  rep.applicable = true;
  rep.socle_dim = dim(dx, rep.socle.l);
  rep.above_dim = dim(dx + 1, rep.socle.l);
  rep.beyond_dim = dim(dx, rep.socle.l + 1);
  if (rep.socle_dim != 1) {
    rep.reason = "socle dimension " + std::to_string(rep.socle_dim) + " != 1";
  } else if (rep.above_dim != 0) {
    rep.reason = "B" + to_string(Bidegree{dx + 1, rep.socle.l}) + " has dimension " + std::to_string(rep.above_dim);
  } else if (rep.beyond_dim != 0) {
    rep.reason = "B" + to_string(Bidegree{dx, rep.socle.l + 1}) + " has dimension " + std::to_string(rep.beyond_dim);
  } else {
    rep.pass = true;
    rep.reason = "ok";
  }
  return rep;
}

template <class Field>
void JacobianRing<Field>::require_smooth() const {
  if (spec_.assume_smooth) return;
  auto rep = transversality();
  if (!rep.pass) throw SocleError("transversality heuristic failed: " + rep.reason);
}

// ------------------------------------------------------------------- ladders

RingSpec absorb_first_boundary(const RingSpec& spec) {
  if (spec.s() < 1) throw InputError("no boundary component to absorb");
  RingSpec out = spec;
  out.F.push_back(spec.G[0]);
  out.G.erase(out.G.begin());
  return out;
}

RingSpec drop_first_boundary(const RingSpec& spec) {
  if (spec.s() < 1) throw InputError("no boundary component to drop");
  RingSpec out = spec;
  out.G.erase(out.G.begin());
  if (out.r() + out.s() == 0) throw InputError("dropping the only form leaves an empty datum");
  return out;
}

namespace {

// Monomial of the absorbed ring (mu_{r+1} standing for lambda_1) as a monomial
// of the original ring.
AMonomial from_absorbed(const AMonomial& m, int r) {
  AMonomial out;
  out.x = m.x;
  out.mi.a.assign(m.mi.a.begin(), m.mi.a.begin() + r);
  out.mi.b.push_back(m.mi.a[r]);
  out.mi.b.insert(out.mi.b.end(), m.mi.b.begin(), m.mi.b.end());
  return out;
}

AMonomial from_dropped(const AMonomial& m) {
  AMonomial out = m;
  out.mi.b.insert(out.mi.b.begin(), 0);
  return out;
}

}  // namespace

template <class Field>
LadderReport ladder(const JacobianRing<Field>& ring, int q, int l) {
  const RingSpec& spec = ring.spec();
  if (spec.s() < 1) throw InputError("the ladder needs s >= 1");
  RingSpec sp_prime = absorb_first_boundary(spec);
  RingSpec sp_bar = drop_first_boundary(spec);
  sp_prime.assume_smooth = sp_bar.assume_smooth = true;
  JacobianRing<Field> bprime(sp_prime, ring.field());
  JacobianRing<Field> bbar(sp_bar, ring.field());
  const Field& k = ring.field();
  const int n = spec.n;
  const int r = spec.r();
  const int d = spec.bold_d();
  const int e1 = spec.G[0].degree();

  LadderReport rep;
  rep.q = q;
  rep.l = l;

  // Sequence one: multiplication by lambda_1.
  const Bidegree tgt1{q, d - n - 1 + l};
  rep.dim_b = ring.dim(tgt1.q, tgt1.l);
  rep.dim_bbar = bbar.dim(tgt1.q, tgt1.l);
  {
    SparseMatrix<Field> m(0, rep.dim_b);
    if (q >= 1) {
      auto src = bprime.piece(q - 1, d + e1 - n - 1 + l);
      AMonomial lam;
      lam.x = Exponent(spec.nvars());
      lam.mi.a.assign(r, 0);
      lam.mi.b.assign(spec.s(), 0);
      lam.mi.b[0] = 1;
      for (std::size_t i = 0; i < src->dim(); ++i) {
        auto img = ring.reduce(ring.monomial(from_absorbed(src->standard_monomial(i), r) * lam));
        m.push_row(to_sparse<Field>(img.coords));
      }
    }
    rep.rank_lambda = rank(k, m);
  }
  rep.first_holds = rep.dim_b == rep.rank_lambda + rep.dim_bbar;

  // Sequence two: multiplication by G_1.
  const int lp = d + spec.bold_e() - n - 1 - l;
  const int qq = spec.dim_x() - q;
  rep.dim_b_dual = ring.dim(qq, lp);
  rep.dim_bprime_dual = bprime.dim(qq, lp);
  {
    SparseMatrix<Field> m(0, rep.dim_b_dual);
    if (qq >= 0) {
      auto src = bbar.piece(qq, lp - e1);
      const MultiIndex none{std::vector<int>(r, 0), std::vector<int>(spec.s(), 0)};
      auto g1 = ring.lift_poly(spec.G[0], none);
      for (std::size_t i = 0; i < src->dim(); ++i) {
        auto x = ring.monomial(from_dropped(src->standard_monomial(i)));
        auto img = ring.reduce(a_multiply(k, x, g1));
        m.push_row(to_sparse<Field>(img.coords));
      }
    }
    rep.rank_g = rank(k, m);
  }
  rep.second_holds = rep.dim_b_dual == rep.rank_g + rep.dim_bprime_dual;
  return rep;
}

template <class Field>
bool euler_relation_holds(const JacobianRing<Field>& ring) {
  const RingSpec& spec = ring.spec();
  const Field& k = ring.field();
  const int r = spec.r();
  const int s = spec.s();
  AElement<Field> lhs, rhs;
  lhs.deg = rhs.deg = {1, 0};
  const MultiIndex none{std::vector<int>(r, 0), std::vector<int>(s, 0)};
  for (std::size_t kx = 0; kx < spec.nvars(); ++kx) {
    auto xk = ring.lift_poly(HomogPoly::variable(spec.nvars(), kx), none);
    lhs = a_add(k, lhs, a_multiply(k, xk, ring.generators()[kx].element));
  }
  for (int i = 0; i < r; ++i) {
    MultiIndex mi = none;
    mi.a[i] = 1;
    rhs = a_add(k, rhs, ring.lift_poly(spec.F[i].scaled(spec.F[i].degree()), mi));
  }
  for (int j = 0; j < s; ++j) {
    MultiIndex mi = none;
    mi.b[j] = 1;
    rhs = a_add(k, rhs, ring.lift_poly(spec.G[j].scaled(spec.G[j].degree()), mi));
  }
  if (lhs.terms.size() != rhs.terms.size()) return false;
  for (auto it = lhs.terms.begin(), jt = rhs.terms.begin(); it != lhs.terms.end(); ++it, ++jt)
    if (!(it->first == jt->first) || !k.equal(it->second, jt->second)) return false;
  return true;
}

template class QuotientPiece<Rationals>;
template class QuotientPiece<PrimeField>;
template class JacobianRing<Rationals>;
template class JacobianRing<PrimeField>;
template struct TraceFunctional<Rationals>;
template struct TraceFunctional<PrimeField>;
template LadderReport ladder(const JacobianRing<Rationals>&, int, int);
template LadderReport ladder(const JacobianRing<PrimeField>&, int, int);
template bool euler_relation_holds(const JacobianRing<Rationals>&);
template bool euler_relation_holds(const JacobianRing<PrimeField>&);

}  // namespace jacring
