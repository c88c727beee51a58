#pragma once

// Command-line front end. Exit codes: 0 success, 1 input error (bad syntax,
// bad arguments, non-transversal input), 2 a computed result contradicts a
// theorem whose hypotheses hold.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "jacring/ring_spec.hpp"

namespace jacring {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitViolation = 2;

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

struct VerifyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// The full invariant suite; `seed` chooses the comparison primes.
std::vector<VerifyCheck> verify_suite(const RingSpec& spec, const FieldDesc& field, std::uint64_t seed);

}  // namespace jacring
