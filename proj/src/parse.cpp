#include "jacring/parse.hpp"

#include <cctype>

namespace jacring {

int ParsedTerm::degree() const {
  int t = 0;
  for (int v : x) t += v;
  return t;
}

namespace {

constexpr int kMaxExponent = 1000;

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& opt) : s_(text), opt_(opt) {}

  std::vector<ParsedTerm> run() {
    std::vector<ParsedTerm> terms;
    skip();
    if (at_end()) throw ParseError("empty expression", pos_);
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
      skip();
    }
    for (;;) {
      ParsedTerm t = term();
      if (negative) t.coeff = -t.coeff;
      terms.push_back(std::move(t));
      skip();
      if (at_end()) break;
      char c = peek();
      if (c != '+' && c != '-') throw ParseError(describe(c) + ", expected '+', '-', '*' or end of input", pos_);
      negative = c == '-';
      ++pos_;
      skip();
      if (at_end()) throw ParseError("expected a term after '" + std::string(1, c) + "'", pos_);
    }
    return terms;
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }

  static std::string describe(char c) {
    if (std::isprint(static_cast<unsigned char>(c))) return "unexpected character '" + std::string(1, c) + "'";
    return "unexpected byte 0x" + std::to_string(static_cast<unsigned char>(c));
  }

  void skip() {
    while (!at_end()) {
      char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  mpz_class integer() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw ParseError("expected an integer", pos_);
    return mpz_class(std::string(s_.substr(start, pos_ - start)), 10);
  }

  int small_integer(const char* what) {
    std::size_t start = pos_;
    mpz_class v = integer();
    if (v > kMaxExponent) throw ParseError(std::string(what) + " too large", start);
    return static_cast<int>(v.get_si());
  }

  bool match_word(std::string_view w) {
    if (s_.substr(pos_, w.size()) != w) return false;
    pos_ += w.size();
    return true;
  }

  ParsedTerm term() {
    ParsedTerm t;
    t.x.assign(opt_.n + 1, 0);
    t.mu.assign(opt_.r, 0);
    t.lambda.assign(opt_.s, 0);
    t.begin = pos_;
    for (;;) {
      factor(t);
      t.end = pos_;
      skip();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip();
        if (at_end()) throw ParseError("expected a factor after '*'", pos_);
        continue;
      }
      break;
    }
    return t;
  }

  void factor(ParsedTerm& t) {
    if (at_end()) throw ParseError("expected a factor", pos_);
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = integer();
      mpz_class den = 1;
      skip();
      if (!at_end() && peek() == '/') {
        ++pos_;
        skip();
        std::size_t at = pos_;
        den = integer();
        if (den == 0) throw ParseError("division by zero", at);
      }
      mpq_class q(num, den);
      q.canonicalize();
      t.coeff *= q;
      return;
    }
    std::size_t start = pos_;
    std::vector<int>* slot = nullptr;
    int limit = 0;
    int base = 0;
    std::string name;
    if (match_word("lambda")) {
      slot = &t.lambda;
      limit = opt_.s;
      base = 1;
      name = "lambda";
    } else if (match_word("mu")) {
      slot = &t.mu;
      limit = opt_.r;
      base = 1;
      name = "mu";
    } else if (match_word("x")) {
      slot = &t.x;
      limit = opt_.n + 1;
      base = 0;
      name = "x";
    } else {
      throw ParseError(describe(c) + ", expected a coefficient or a variable", pos_);
    }
    if (slot != &t.x && limit == 0) throw ParseError("variable '" + name + "' is not allowed here", start);
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
      throw ParseError("expected an index after '" + name + "'", pos_);
    std::size_t idx_at = pos_;
    int idx = small_integer("variable index");
    if (idx < base || idx >= base + limit) {
      std::string range = slot == &t.x ? "x0..x" + std::to_string(opt_.n)
                                       : name + std::to_string(base) + ".." + name + std::to_string(base + limit - 1);
      throw ParseError("variable " + name + std::to_string(idx) + " out of range " + range, idx_at - name.size());
    }
    skip();
    int power = 1;
    if (!at_end() && peek() == '^') {
      ++pos_;
      skip();
      power = small_integer("exponent");
    }
    (*slot)[idx - base] += power;
  }

  std::string_view s_;
  ParseOptions opt_;
  std::size_t pos_ = 0;
};

std::string snippet(std::string_view text, const ParsedTerm& t) {
  return std::string(text.substr(t.begin, t.end - t.begin));
}

}  // namespace

std::vector<ParsedTerm> parse_terms(std::string_view text, const ParseOptions& opt) {
  if (opt.n < 0) throw InputError("negative n");
  return Parser(text, opt).run();
}

HomogPoly parse_poly(std::string_view text, int n) {
  auto terms = parse_terms(text, {n, 0, 0});
  const ParsedTerm* first = nullptr;
  for (const auto& t : terms) {
    if (sgn(t.coeff) == 0) continue;
    if (!first) {
      first = &t;
      continue;
    }
    if (t.degree() != first->degree())
      throw ParseError("inhomogeneous expression: term '" + snippet(text, *first) + "' (bytes " +
                           std::to_string(first->begin) + ".." + std::to_string(first->end) + ") has degree " +
                           std::to_string(first->degree()) + " but term '" + snippet(text, t) + "' (bytes " +
                           std::to_string(t.begin) + ".." + std::to_string(t.end) + ") has degree " +
                           std::to_string(t.degree()),
                       t.begin);
  }
  HomogPoly p(static_cast<std::size_t>(n) + 1, first ? first->degree() : 0);
  for (const auto& t : terms) {
    if (sgn(t.coeff) == 0) continue;
    p.add_term(Exponent(t.x), t.coeff);
  }
  return p;
}

AElement<Rationals> parse_a_element(std::string_view text, const RingSpec& spec) {
  auto terms = parse_terms(text, {spec.n, spec.r(), spec.s()});
  const Rationals k;
  AElement<Rationals> out;
  const ParsedTerm* first = nullptr;
  for (const auto& t : terms) {
    if (sgn(t.coeff) == 0) continue;
    AMonomial m{{t.mu, t.lambda}, Exponent(t.x)};
    Bidegree b = bidegree_of(spec, m);
    if (!first) {
      first = &t;
      out.deg = b;
    } else if (!(b == out.deg)) {
      throw ParseError("term '" + snippet(text, t) + "' has bidegree " + to_string(b) + " but term '" +
                           snippet(text, *first) + "' has bidegree " + to_string(out.deg),
                       t.begin);
    }
    add_term(k, out, m, t.coeff);
  }
  return out;
}

}  // namespace jacring
