#pragma once

// Spec files:
//   field Q | field gfp <p>
//   n <N>
//   F <degree>: <expr>
//   G <degree>: <expr>
//   option assume-smooth
//   option seed <u64>
// A document whose first non-blank character is '{' is read as JSON with the
// keys field, n, F, G, assume_smooth, seed; F and G are lists of expressions
// or of {"degree": d, "expr": "..."} objects.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "jacring/ring_spec.hpp"

namespace jacring {

RingSpec parse_spec(std::string_view text);

/// Canonical text; parse_spec(emit_spec(s)) reproduces s.
std::string emit_spec(const RingSpec& spec);

/// SHA-256 of the canonical text, lowercase hex.
std::string spec_hash(const RingSpec& spec);
std::string sha256_hex(std::string_view data);

struct PresetInfo {
  std::string name;
  std::string description;
  bool smooth = true;
};

const std::vector<PresetInfo>& preset_catalog();

/// Built-in example; `random` draws coefficients from -9..9 without 0 and
/// retries up to 32 times until the socle test passes. Throws InputError for
/// unknown names.
RingSpec make_preset(const std::string& name, std::uint64_t seed = 0);

}  // namespace jacring
