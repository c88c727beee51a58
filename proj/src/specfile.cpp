#include "jacring/specfile.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include <openssl/evp.h>

#include "jacring/parse.hpp"
#include "jacring/ring.hpp"
#include "json.hpp"

namespace jacring {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

struct Location {
  std::size_t line = 0;
  std::size_t column = 0;
  std::size_t byte = 0;
  std::string str() const {
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + " (byte " + std::to_string(byte) +
           ")";
  }
};

[[noreturn]] void fail(const Location& at, const std::string& msg) { throw InputError(at.str() + ": " + msg); }

FieldDesc parse_field(const std::string& value, const Location& at) {
  std::istringstream in(value);
  std::string kind;
  in >> kind;
  if (kind == "Q") {
    std::string extra;
    if (in >> extra) fail(at, "unexpected text after 'field Q'");
    return FieldDesc::rationals();
  }
  if (kind == "gfp") {
    std::string p;
    if (!(in >> p) || p.find_first_not_of("0123456789") != std::string::npos)
      fail(at, "expected 'gfp <prime>'");
    std::string extra;
    if (in >> extra) fail(at, "unexpected text after the prime");
    try {
      return FieldDesc::prime_field(std::stoull(p));
    } catch (const std::out_of_range&) {
      fail(at, "prime out of range");
    } catch (const InputError& e) {
      fail(at, e.what());
    }
  }
  fail(at, "field must be 'Q' or 'gfp <prime>'");
}

std::optional<std::string> unreducible_coefficient(const HomogPoly& p, const FieldDesc& field) {
  if (field.is_rational()) return std::nullopt;
  for (const auto& [e, c] : p.terms()) {
    const mpz_class rem = c.get_den() % mpz_class(std::to_string(field.prime));
    if (rem == 0) return "coefficient " + c.get_str() + " is undefined over " + field.to_string();
  }
  return std::nullopt;
}

struct FormLine {
  char kind;
  int degree;
  std::string expr;
  Location expr_at;
};

HomogPoly parse_form(const FormLine& f, int n) {
  HomogPoly p;
  try {
    p = parse_poly(f.expr, n);
  } catch (const ParseError& e) {
    Location at = f.expr_at;
    at.column += e.offset();
    at.byte += e.offset();
    fail(at, e.detail());
  }
  if (p.is_zero()) fail(f.expr_at, std::string(1, f.kind) + " is the zero polynomial");
  if (p.degree() != f.degree)
    fail(f.expr_at, "declared degree " + std::to_string(f.degree) + " but the expression has degree " +
                        std::to_string(p.degree()));
  return p;
}

long parse_int(const std::string& s, const Location& at, const char* what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    fail(at, std::string("expected a nonnegative integer for ") + what);
  try {
    return std::stol(s);
  } catch (const std::out_of_range&) {
    fail(at, std::string(what) + " out of range");
  }
}

RingSpec parse_text(std::string_view text) {
  RingSpec spec;
  std::optional<int> n;
  bool have_field = false;
  std::vector<FormLine> forms;
  std::size_t line_no = 0;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t eol = text.find('\n', offset);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view raw = text.substr(offset, eol - offset);
    ++line_no;
    std::size_t hash = raw.find('#');
    std::string_view body = hash == std::string_view::npos ? raw : raw.substr(0, hash);
    std::size_t lead = 0;
    while (lead < body.size() && std::isspace(static_cast<unsigned char>(body[lead]))) ++lead;
    Location at{line_no, lead + 1, offset + lead};
    std::string line = trim(body);
    const std::size_t line_start = offset;
    offset = eol + 1;
    if (line.empty()) continue;

    std::size_t sp = line.find_first_of(" \t");
    std::string key = line.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : trim(line.substr(sp));
    if (key == "field") {
      if (have_field) fail(at, "duplicate 'field' line");
      spec.field = parse_field(rest, at);
      have_field = true;
    } else if (key == "n") {
      if (n) fail(at, "duplicate 'n' line");
      long v = parse_int(rest, at, "n");
      if (v < 2 || v > 64) fail(at, "n must lie in 2..64");
      n = static_cast<int>(v);
    } else if (key == "F" || key == "G") {
      std::size_t colon = line.find(':');
      if (colon == std::string::npos) fail(at, "expected '" + key + " <degree>: <expression>'");
      std::string deg = trim(line.substr(1, colon - 1));
      long d = parse_int(deg, at, "the degree");
      if (d < 1 || d > 1000) fail(at, "degree must lie in 1..1000");
      std::size_t expr_pos = body.find(':') + 1;
      Location expr_at{line_no, expr_pos + 1, line_start + expr_pos};
      forms.push_back({key[0], static_cast<int>(d), std::string(body.substr(expr_pos)), expr_at});
    } else if (key == "option") {
      std::istringstream in(rest);
      std::string name, value, extra;
      in >> name;
      if (name == "assume-smooth") {
        if (in >> extra) fail(at, "unexpected text after 'assume-smooth'");
        spec.assume_smooth = true;
      } else if (name == "seed") {
        if (!(in >> value)) fail(at, "expected 'option seed <integer>'");
        if (value.find_first_not_of("0123456789") != std::string::npos) fail(at, "seed must be a nonnegative integer");
        try {
          spec.seed = std::stoull(value);
        } catch (const std::out_of_range&) {
          fail(at, "seed out of range");
        }
        if (in >> extra) fail(at, "unexpected text after the seed");
      } else {
        fail(at, "unknown option '" + name + "'");
      }
    } else {
      fail(at, "unknown keyword '" + key + "'");
    }
  }
  if (!n) throw InputError("end of input (byte " + std::to_string(text.size()) + "): missing 'n' line");
  spec.n = *n;
  for (const auto& f : forms) {
    HomogPoly p = parse_form(f, spec.n);
    if (auto bad = unreducible_coefficient(p, spec.field)) fail(f.expr_at, *bad);
    (f.kind == 'F' ? spec.F : spec.G).push_back(std::move(p));
  }
  try {
    spec.validate();
  } catch (const InputError& e) {
    throw InputError("end of input (byte " + std::to_string(text.size()) + "): " + e.what());
  }
  return spec;
}

RingSpec parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("JSON spec (byte 0): the document must be an object");
  RingSpec spec;
  const Location nowhere{0, 0, 0};
  try {
    if (!doc.contains("n") || !doc["n"].is_number_integer()) throw InputError("JSON spec needs an integer 'n'");
    spec.n = doc["n"].get<int>();
    if (spec.n < 2 || spec.n > 64) throw InputError("n must lie in 2..64");
    if (doc.contains("field")) {
      if (!doc["field"].is_string()) throw InputError("'field' must be a string");
      try {
        spec.field = parse_field(doc["field"].get<std::string>(), nowhere);
      } catch (const InputError& e) {
        std::string msg = e.what();
        throw InputError("field: " + msg.substr(msg.find(": ") + 2));
      }
    }
    auto read_forms = [&](const char* key, std::vector<HomogPoly>& out) {
      if (!doc.contains(key)) return;
      if (!doc[key].is_array()) throw InputError(std::string("'") + key + "' must be a list");
      std::size_t idx = 0;
      for (const auto& item : doc[key]) {
        ++idx;
        std::string where = std::string(key) + "[" + std::to_string(idx) + "]";
        std::string expr;
        std::optional<int> declared;
        if (item.is_string()) {
          expr = item.get<std::string>();
        } else if (item.is_object() && item.contains("expr") && item["expr"].is_string()) {
          expr = item["expr"].get<std::string>();
          if (item.contains("degree")) {
            if (!item["degree"].is_number_integer()) throw InputError(where + ": degree must be an integer");
            declared = item["degree"].get<int>();
          }
        } else {
          throw InputError(where + ": expected a string or {\"degree\", \"expr\"}");
        }
        HomogPoly p;
        try {
          p = parse_poly(expr, spec.n);
        } catch (const ParseError& e) {
          throw InputError(where + ", byte " + std::to_string(e.offset()) + ": " + e.detail());
        }
        if (p.is_zero()) throw InputError(where + " is the zero polynomial");
        if (auto bad = unreducible_coefficient(p, spec.field)) throw InputError(where + ": " + *bad);
        if (declared && *declared != p.degree())
          throw InputError(where + ": declared degree " + std::to_string(*declared) + " but the expression has degree " +
                           std::to_string(p.degree()));
        out.push_back(std::move(p));
      }
    };
    read_forms("F", spec.F);
    read_forms("G", spec.G);
    if (doc.contains("assume_smooth")) {
      if (!doc["assume_smooth"].is_boolean()) throw InputError("'assume_smooth' must be a boolean");
      spec.assume_smooth = doc["assume_smooth"].get<bool>();
    }
    if (doc.contains("seed")) {
      if (!doc["seed"].is_number_unsigned()) throw InputError("'seed' must be a nonnegative integer");
      spec.seed = doc["seed"].get<std::uint64_t>();
    }
    for (const auto& [key, value] : doc.items())
      if (key != "n" && key != "field" && key != "F" && key != "G" && key != "assume_smooth" && key != "seed")
        throw InputError("unknown key '" + key + "'");
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("invalid JSON spec: ") + e.what());
  }
  try {
    spec.validate();
  } catch (const InputError& e) {
    throw InputError(std::string("JSON spec: ") + e.what());
  }
  return spec;
}

}  // namespace

RingSpec parse_spec(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i < text.size() && text[i] == '{') return parse_json(text);
  return parse_text(text);
}

std::string emit_spec(const RingSpec& spec) {
  std::string out = "field " + spec.field.to_string() + "\n";
  out += "n " + std::to_string(spec.n) + "\n";
  for (const auto& f : spec.F) out += "F " + std::to_string(f.degree()) + ": " + to_string(f) + "\n";
  for (const auto& g : spec.G) out += "G " + std::to_string(g.degree()) + ": " + to_string(g) + "\n";
  if (spec.assume_smooth) out += "option assume-smooth\n";
  if (spec.seed != 0) out += "option seed " + std::to_string(spec.seed) + "\n";
  return out;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string spec_hash(const RingSpec& spec) { return sha256_hex(emit_spec(spec)); }

const std::vector<PresetInfo>& preset_catalog() {
  static const std::vector<PresetInfo> catalog = {
      {"fermat-quartic", "Fermat quartic surface in P^3 (alias quartic-k3)", true},
      {"fermat-quintic", "Fermat quintic threefold in P^4", true},
      {"elliptic-line", "Fermat plane cubic with the line x0 = 0", true},
      {"conic-two-lines", "plane conic with the lines x0 = 0 and x1 = 0", true},
      {"cubic-three-lines", "Fermat plane cubic with the three coordinate lines", true},
      {"conic-four-lines", "plane conic with the coordinate lines and x0 + x1 + x2 = 0", true},
      {"quartic-curve", "Fermat plane quartic", true},
      {"quartic-curve-line", "Fermat plane quartic with the line x0 = 0", true},
      {"quadric-two-planes", "quadric surface in P^3 with the planes x0 = 0 and x1 = 0", true},
      {"quadric-three-planes", "quadric surface in P^3 with three coordinate planes", true},
      {"cubic-surface-plane", "Fermat cubic surface with the plane x0 = 0", true},
      {"nodal-cubic", "plane cubic with a node at (0:0:1)", false},
      {"triangle", "the coordinate triangle x0*x1*x2 as a single cubic", false},
      {"tangent-line", "smooth conic with a tangent line", false},
      {"random", "random plane cubic with two random lines (uses --seed)", true},
  };
  return catalog;
}

namespace {

RingSpec plane(int n, std::vector<std::string> F, std::vector<std::string> G) {
  RingSpec spec;
  spec.n = n;
  for (const auto& f : F) spec.F.push_back(parse_poly(f, n));
  for (const auto& g : G) spec.G.push_back(parse_poly(g, n));
  spec.validate();
  return spec;
}

HomogPoly random_form(std::mt19937_64& rng, int n, int degree) {
  std::uniform_int_distribution<int> pick(1, 18);
  HomogPoly p(static_cast<std::size_t>(n) + 1, degree);
  for (const auto& e : monomials_of_degree(static_cast<std::size_t>(n) + 1, degree)) {
    int v = pick(rng);
    p.add_term(e, v <= 9 ? v - 10 : v - 9);
  }
  return p;
}

}  // namespace

RingSpec make_preset(const std::string& name, std::uint64_t seed) {
  if (name == "fermat-quartic" || name == "quartic-k3") return plane(3, {"x0^4 + x1^4 + x2^4 + x3^4"}, {});
  if (name == "fermat-quintic") return plane(4, {"x0^5 + x1^5 + x2^5 + x3^5 + x4^5"}, {});
  if (name == "elliptic-line") return plane(2, {"x0^3 + x1^3 + x2^3"}, {"x0"});
  if (name == "conic-two-lines") return plane(2, {"x0^2 + x1^2 + x2^2"}, {"x0", "x1"});
  if (name == "cubic-three-lines") return plane(2, {"x0^3 + x1^3 + x2^3"}, {"x0", "x1", "x2"});
  if (name == "conic-four-lines") return plane(2, {"x0^2 + x1^2 + x2^2"}, {"x0", "x1", "x2", "x0 + x1 + x2"});
  if (name == "quartic-curve") return plane(2, {"x0^4 + x1^4 + x2^4"}, {});
  if (name == "quartic-curve-line") return plane(2, {"x0^4 + x1^4 + x2^4"}, {"x0"});
  if (name == "quadric-two-planes") return plane(3, {"x0^2 + x1^2 + x2^2 + x3^2"}, {"x0", "x1"});
  if (name == "quadric-three-planes") return plane(3, {"x0^2 + x1^2 + x2^2 + x3^2"}, {"x0", "x1", "x2"});
  if (name == "cubic-surface-plane") return plane(3, {"x0^3 + x1^3 + x2^3 + x3^3"}, {"x0"});
  if (name == "nodal-cubic") return plane(2, {"x0^3 + x1^3 - x0*x1*x2"}, {});
  if (name == "triangle") return plane(2, {"x0*x1*x2"}, {});
  if (name == "tangent-line") return plane(2, {"x0*x2 - x1^2"}, {"x0"});
  if (name == "random") {
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 32; ++attempt) {
      RingSpec spec;
      spec.n = 2;
      spec.seed = seed;
      spec.F.push_back(random_form(rng, 2, 3));
      spec.G.push_back(random_form(rng, 2, 1));
      spec.G.push_back(random_form(rng, 2, 1));
      JacobianRing<Rationals> ring(spec, Rationals{});
      if (ring.transversality().pass) return spec;
    }
    throw InputError("no transversal random datum found in 32 attempts for seed " + std::to_string(seed));
  }
  throw InputError("unknown preset '" + name + "'");
}

}  // namespace jacring
