#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace jacring {

/// Raised for malformed user input and violated preconditions. The CLI maps
/// it to exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a rational cannot be mapped into a prime field.
class DenominatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FieldDesc {
  enum class Kind { Rationals, PrimeField };
  Kind kind = Kind::Rationals;
  std::uint64_t prime = 0;

  static FieldDesc rationals() { return {}; }
  static FieldDesc prime_field(std::uint64_t p);

  bool is_rational() const { return kind == Kind::Rationals; }
  std::string to_string() const;
  bool operator==(const FieldDesc&) const = default;
};

/// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime(std::uint64_t n);

/// Uniform random prime in the open interval (lo, hi).
std::uint64_t random_prime(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi);

inline constexpr std::uint64_t kMaxPrime = std::uint64_t{1} << 62;

/// The field of rational numbers; elements are GMP rationals kept canonical.
class Rationals {
 public:
  using Element = mpq_class;

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(long v) const { return Element(v); }
  Element from_rational(const mpq_class& v) const { return v; }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element inv(const Element& a) const {
    if (sgn(a) == 0) throw std::domain_error("division by zero in Q");
    return 1 / a;
  }
  /// x -= f * y
  void submul(Element& x, const Element& f, const Element& y) const { x -= f * y; }
  void addmul(Element& x, const Element& f, const Element& y) const { x += f * y; }
  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool is_one(const Element& a) const { return a == 1; }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  std::string to_string(const Element& a) const { return a.get_str(); }

  FieldDesc desc() const { return FieldDesc::rationals(); }
};

/// Z/pZ for a prime p < 2^62, residues in [0, p).
class PrimeField {
 public:
  using Element = std::uint64_t;

  explicit PrimeField(std::uint64_t p);

  std::uint64_t prime() const { return p_; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(long v) const;
  /// Throws DenominatorError when p divides the denominator.
  Element from_rational(const mpq_class& v) const;

  Element add(Element a, Element b) const {
    Element s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element mul(Element a, Element b) const {
    return static_cast<Element>((static_cast<unsigned __int128>(a) * b) % p_);
  }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element inv(Element a) const;
  void submul(Element& x, Element f, Element y) const { x = sub(x, mul(f, y)); }
  void addmul(Element& x, Element f, Element y) const { x = add(x, mul(f, y)); }
  bool is_zero(Element a) const { return a == 0; }
  bool is_one(Element a) const { return a == 1; }
  bool equal(Element a, Element b) const { return a == b; }
  std::string to_string(Element a) const { return std::to_string(a); }

  FieldDesc desc() const { return FieldDesc::prime_field(p_); }

 private:
  std::uint64_t p_;
};

}  // namespace jacring
