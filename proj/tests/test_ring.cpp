#include <doctest.h>

#include <random>
#include <thread>

#include "helpers.hpp"
#include "jacring/ring.hpp"
#include "oracles.hpp"

using namespace jacring;
using testing_util::random_b;
using testing_util::spec_of;

namespace {

using QRing = JacobianRing<Rationals>;

QRing preset_ring(const std::string& name) { return QRing(make_preset(name), Rationals()); }

const char* kConic = "n 2\nF 2: x0^2 + x1^2 + x2^2\nG 1: x0\nG 1: x1\n";

template <class Field>
bool b_equal(const Field& f, const BElement<Field>& a, const BElement<Field>& b) {
  if (!(a.deg == b.deg) || a.coords.size() != b.coords.size()) return false;
  for (std::size_t i = 0; i < a.coords.size(); ++i)
    if (!f.equal(a.coords[i], b.coords[i])) return false;
  return true;
}

template <class Field>
bool b_is_zero(const Field& f, const BElement<Field>& a) {
  for (const auto& c : a.coords)
    if (!f.is_zero(c)) return false;
  return true;
}

}  // namespace

TEST_CASE("generators of the conic with two lines") {
  const QRing ring(spec_of(kConic), Rationals());
  const auto& gens = ring.generators();
  REQUIRE(gens.size() == 6);
  CHECK(to_string(ring.field(), gens[0].element) == "(2)*x0*mu1 + lambda1");
  CHECK(to_string(ring.field(), gens[1].element) == "(2)*x1*mu1 + lambda2");
  CHECK(to_string(ring.field(), gens[2].element) == "(2)*x2*mu1");
  CHECK(gens[3].label == "F1");
  CHECK(gens[4].element.deg == Bidegree{1, 0});
  CHECK(gens[0].element.deg == Bidegree{1, -1});
  CHECK(gens[3].element.deg == Bidegree{0, 2});
  const auto piece = ring.ideal_piece(1, -1);
  CHECK(piece.span_matrix.rows() == 3);
  CHECK(piece.rank == 3);
  CHECK(ring.dim(1, -1) == 2);
}

TEST_CASE("Fermat quartic generators and pieces") {
  const auto ring = preset_ring("fermat-quartic");
  const auto& gens = ring.generators();
  REQUIRE(gens.size() == 5);
  CHECK(to_string(ring.field(), gens[0].element) == "(4)*x0^3*mu1");
  CHECK(ring.ideal_piece(1, 0).rank == 16);
  CHECK(ring.dim(0, 0) == 1);
  CHECK(ring.dim(1, 0) == 19);
  CHECK(ring.dim(2, 0) == 1);
  CHECK(ring.trace().socle == Bidegree{2, 0});
  CHECK(ring.dim(-1, 5) == 0);
  CHECK(ring.dim(1, -100) == 0);
}

TEST_CASE("Fermat pieces agree with the Milnor-algebra Hilbert series") {
  for (auto [n, d] : std::vector<std::pair<int, int>>{{2, 3}, {2, 4}, {3, 3}, {3, 4}, {4, 5}}) {
    std::string text = "n " + std::to_string(n) + "\nF " + std::to_string(d) + ": ";
    for (int k = 0; k <= n; ++k) text += (k ? " + x" : "x") + std::to_string(k) + "^" + std::to_string(d);
    const QRing ring(spec_of(text + "\n"), Rationals());
    for (int q = 1; q <= n - 1; ++q)
      for (int l = -2; l <= 1; ++l)
        CHECK(static_cast<std::int64_t>(ring.dim(q, l)) == oracle::fermat_piece(n, d, q, l));
  }
}

TEST_CASE("elliptic curve with a line") {
  const auto ring = preset_ring("elliptic-line");
  CHECK(ring.dim(0, 1) == 3);
  CHECK(ring.dim(1, 0) == 3);
  CHECK(ring.dim(1, 1) == 1);
  const auto tr = ring.trace();
  CHECK(tr.socle == Bidegree{1, 1});
  const auto socle = ring.basis_element(1, 1, 0);
  CHECK(tr(ring.field(), socle) == 1);
  for (std::size_t i = 0; i < ring.dim(1, 0); ++i) {
    const auto prod = ring.multiply(ring.basis_element(1, 0, i), socle);
    CHECK(prod.coords.empty());
  }
}

TEST_CASE("reduce: ideal elements vanish") {
  const QRing ring(spec_of(kConic), Rationals());
  const auto& f = ring.field();
  for (const auto& g : ring.generators())
    for (int dq = 0; dq <= 1; ++dq)
      for (int dl = 0; dl <= 2; ++dl) {
        const auto b = ring.basis(dq, dl);
        for (const auto& m : b->monomials()) {
          const auto x = a_multiply(f, g.element, ring.monomial(m));
          CHECK(b_is_zero(f, ring.reduce(x)));
        }
      }
  const auto x2l1 = parse_a_element("x2*lambda1", ring.spec());
  AElement<Rationals> y = x2l1;
  CHECK(b_is_zero(f, ring.reduce(y)));
  CHECK(ring.reduce(AElement<Rationals>{{1, 0}, {}}).coords.size() == ring.dim(1, 0));
}

TEST_CASE("multiplication is well defined, commutative, associative, unital") {
  std::mt19937_64 rng(99);
  for (const char* name : {"conic-two-lines", "cubic-three-lines", "quadric-two-planes"}) {
    const auto ring = preset_ring(name);
    const auto& f = ring.field();
    const std::vector<Bidegree> degs{{0, 1}, {1, -1}, {1, 0}, {0, 0}};
    for (const auto& a : degs)
      for (const auto& b : degs) {
        const auto x = random_b(ring, a.q, a.l, rng), y = random_b(ring, b.q, b.l, rng);
        CHECK(b_equal(f, ring.multiply(x, y), ring.multiply(y, x)));
        const auto z = random_b(ring, 0, 1, rng);
        CHECK(b_equal(f, ring.multiply(ring.multiply(x, y), z), ring.multiply(x, ring.multiply(y, z))));
        CHECK(b_equal(f, ring.multiply(ring.one(), x), x));
        auto lift = ring.lift(x);
        const auto& gen = ring.generators()[rng() % ring.generators().size()];
        const Bidegree rest = a - gen.element.deg;
        if (rest.q >= 0) {
          const auto basis = ring.basis(rest.q, rest.l);
          if (!basis->empty()) {
            const auto noise = a_multiply(f, gen.element, ring.monomial((*basis)[rng() % basis->size()]));
            lift = a_add(f, lift, noise);
          }
        }
        CHECK(b_equal(f, ring.reduce(a_multiply(f, lift, ring.lift(y))), ring.multiply(x, y)));
      }
  }
}

TEST_CASE("Euler relation in A") {
  for (const auto& name : testing_util::smooth_presets()) CHECK(euler_relation_holds(preset_ring(name)));
}

TEST_CASE("trace and transversality") {
  for (const auto& name : testing_util::smooth_presets()) {
    const auto ring = preset_ring(name);
    const auto t = ring.transversality();
    CHECK_MESSAGE(t.pass, name);
    CHECK(t.socle_dim == 1);
    CHECK_NOTHROW(ring.require_smooth());
  }
  for (const auto& name : testing_util::singular_presets()) {
    const auto ring = preset_ring(name);
    CHECK_FALSE_MESSAGE(ring.transversality().pass, name);
    CHECK_THROWS_AS(ring.require_smooth(), SocleError);
  }
  CHECK_THROWS_AS(preset_ring("triangle").trace(), SocleError);
  const QRing points(spec_of("n 2\nF 2: x0^2 + x1^2 + x2^2\nF 1: x0 + 2*x1 + 3*x2\n"), Rationals());
  CHECK_THROWS_AS(points.trace(), InputError);
  auto smooth_override = make_preset("triangle");
  smooth_override.assume_smooth = true;
  CHECK_NOTHROW(QRing(smooth_override, Rationals()).require_smooth());
}

TEST_CASE("curve sum rule against genus and boundary degree") {
  for (const char* name : {"elliptic-line", "conic-two-lines", "cubic-three-lines", "quartic-curve-line"}) {
    const auto ring = preset_ring(name);
    const auto& s = ring.spec();
    const int tw = s.bold_d() + s.bold_e() - 3;
    CHECK_MESSAGE(static_cast<int>(ring.dim(0, tw) + ring.dim(1, tw)) == oracle::open_curve_betti(s.bold_d(), s.e()),
                  name);
  }
}

TEST_CASE("ladder through the first boundary component") {
  const auto ring = preset_ring("conic-two-lines");
  const auto absorbed = absorb_first_boundary(ring.spec());
  CHECK(absorbed.r() == 2);
  CHECK(absorbed.s() == 1);
  const auto dropped = drop_first_boundary(ring.spec());
  CHECK(dropped.r() == 1);
  CHECK(dropped.s() == 1);
  const int base = ring.spec().bold_d() - ring.spec().n - 1;
  for (int q = 0; q <= 1; ++q)
    for (int l = 0; l <= 1; ++l) {
      const auto r = ladder(ring, q, l);
      CHECK(r.first_holds);
      CHECK(r.second_holds);
      CHECK(r.dim_b == ring.dim(q, base + l));
      CHECK(r.dim_b == r.rank_lambda + r.dim_bbar);
    }
  CHECK_THROWS_AS(absorb_first_boundary(make_preset("quartic-curve")), InputError);
}

TEST_CASE("dimensions agree over Q and large primes") {
  std::mt19937_64 rng(2);
  for (const char* name : {"conic-two-lines", "cubic-three-lines", "quadric-three-planes", "fermat-quartic"}) {
    const auto ring = preset_ring(name);
    for (int k = 0; k < 2; ++k) {
      const auto p = random_prime(rng, std::uint64_t{1} << 50, std::uint64_t{1} << 62);
      const JacobianRing<PrimeField> mod(ring.spec(), PrimeField(p));
      for (int q = 0; q <= 3; ++q)
        for (int l = -2; l <= 3; ++l) CHECK(mod.dim(q, l) == ring.dim(q, l));
    }
  }
}

TEST_CASE("concurrent piece computation is consistent") {
  const auto ring = preset_ring("cubic-three-lines");
  std::vector<std::size_t> dims(8);
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t)
    threads.emplace_back([&, t] { dims[static_cast<std::size_t>(t)] = ring.dim(1 + t % 2, 2); });
  for (auto& th : threads) th.join();
  for (int t = 0; t < 8; ++t) CHECK(dims[static_cast<std::size_t>(t)] == ring.dim(1 + t % 2, 2));
}
