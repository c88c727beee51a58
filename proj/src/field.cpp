#include "jacring/field.hpp"

namespace jacring {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace

FieldDesc FieldDesc::prime_field(std::uint64_t p) {
  if (p >= kMaxPrime || !is_prime(p))
    throw InputError("field modulus " + std::to_string(p) + " is not a prime below 2^62");
  FieldDesc d;
  d.kind = Kind::PrimeField;
  d.prime = p;
  return d;
}

std::string FieldDesc::to_string() const {
  return is_rational() ? "Q" : "gfp " + std::to_string(prime);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are a deterministic witness set for all n < 2^64.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t random_prime(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  if (hi <= lo + 2) throw std::invalid_argument("random_prime: empty interval");
  std::uniform_int_distribution<std::uint64_t> dist(lo + 1, hi - 1);
  for (;;) {
    std::uint64_t c = dist(rng) | 1;
    if (c < hi && is_prime(c)) return c;
  }
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p >= kMaxPrime || !is_prime(p))
    throw InputError("field modulus " + std::to_string(p) + " is not a prime below 2^62");
}

PrimeField::Element PrimeField::from_int(long v) const {
  long long r = static_cast<long long>(v) % static_cast<long long>(p_);
  if (r < 0) r += static_cast<long long>(p_);
  return static_cast<Element>(r);
}

PrimeField::Element PrimeField::from_rational(const mpq_class& v) const {
  mpz_class modulus(static_cast<unsigned long>(p_));
  mpz_class num = v.get_num() % modulus;
  if (num < 0) num += modulus;
  mpz_class den = v.get_den() % modulus;
  if (den == 0) throw DenominatorError("prime " + std::to_string(p_) + " divides a denominator");
  Element n = num.get_ui();
  Element d = den.get_ui();
  return mul(n, inv(d));
}

PrimeField::Element PrimeField::inv(Element a) const {
  if (a == 0) throw std::domain_error("division by zero in GF(p)");
  return powmod(a, p_ - 2, p_);
}

}  // namespace jacring
