#pragma once

// Multiplication pairings
//   h_p(l): B_p(d-n-1+l) x B_{n-r-p}(d+e-n-1-l) -> socle --trace--> k,
// their perfectness cases, and the determinant classes A' that span the
// kernel of h_{n-r}(0)*.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "jacring/ring.hpp"

namespace jacring {

enum class PairingCase { II2i, II2ii, II2iii, II3Injective, Uncovered };

std::string to_string(PairingCase c);

/// Which hypothesis of the duality theorem covers (p, l); perfect cases win
/// over the injectivity case.
PairingCase classify_pairing(const RingSpec& spec, int p, int l);
bool case_claims_perfect(PairingCase c);

template <class Field>
struct PairingReport {
  using Element = typename Field::Element;
  int p = 0;
  int l = 0;
  Bidegree left_deg;
  Bidegree right_deg;
  std::size_t left_dim = 0;
  std::size_t right_dim = 0;
  /// left_dim rows, right_dim columns; entry (i, j) = trace(x_i y_j).
  std::vector<std::vector<Element>> matrix;
  std::size_t rank = 0;
  std::vector<std::vector<Element>> left_kernel;
  std::vector<std::vector<Element>> right_kernel;
  PairingCase pairing_case = PairingCase::Uncovered;
  bool zero_by_convention = false;

  bool perfect() const { return left_dim == right_dim && rank == left_dim; }
  bool injective() const { return rank == left_dim; }
};

/// Requires 0 <= p <= n - r unless r > n (then the map is zero). `scale`
/// multiplies the trace functional.
template <class Field>
PairingReport<Field> pairing(const JacobianRing<Field>& ring, int p, int l,
                             std::optional<typename Field::Element> scale = std::nullopt);

struct DualityDefect {
  std::size_t left_kernel_dim = 0;
  std::size_t right_cokernel_dim = 0;
};

template <class Field>
DualityDefect duality_defect(const JacobianRing<Field>& ring, int p, int l);

struct WedgeGenerator {
  /// 1-based, strictly increasing.
  std::vector<int> indices;
  HomogPoly A;
  HomogPoly A_prime;
};

/// One generator per index set of size n-r+1 in {1..s}; empty when
/// s <= n - r.
std::vector<WedgeGenerator> wedge_generators(const RingSpec& spec);

template <class Field>
struct KernelReport {
  using Element = typename Field::Element;
  std::size_t kernel_dim = 0;
  std::size_t wedge_span_dim = 0;
  std::size_t expected_dim = 0;
  /// Every A' class lies in the kernel.
  bool wedge_in_kernel = false;
  bool equal = false;
  std::vector<std::vector<Element>> kernel_basis;
  std::vector<BElement<Field>> wedge_classes;
};

/// Kernel of the dual pairing B_0(d+e-n-1) -> B_{n-r}(d-n-1)* against the
/// span of the A' classes. Requires n - r >= 1 and s >= 1.
template <class Field>
KernelReport<Field> verify_wedge_kernel(const JacobianRing<Field>& ring);

struct MembershipCheck {
  std::vector<int> indices;
  std::string multiplier;
  bool member = false;
};

/// A' mu_i and A' lambda_j in J for every generator; vacuous when s <= n-r.
template <class Field>
std::vector<MembershipCheck> wedge_membership(const JacobianRing<Field>& ring);

template <class Field>
bool verify_wedge_membership(const JacobianRing<Field>& ring);

/// dim of the degree `degree` piece of k[x_0..x_{nvars-1}] / (forms).
template <class Field>
std::size_t graded_quotient_dimension(const Field& field, std::size_t nvars, const std::vector<HomogPoly>& forms,
                                      int degree);

/// dim S^{d+e-n-1} / (F_1..F_n, G_1) for n forms F and s >= 1 forms G in
/// n+1 variables.
std::size_t macaulay_socle_dimension(const std::vector<HomogPoly>& F, const std::vector<HomogPoly>& G);

long binomial(long n, long k);

extern template struct PairingReport<Rationals>;
extern template struct PairingReport<PrimeField>;

}  // namespace jacring
