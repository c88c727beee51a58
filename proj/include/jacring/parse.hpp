#pragma once

// Polynomial expressions:
//   expr   ::= ['+'|'-'] term (('+'|'-') term)*
//   term   ::= factor ('*' factor)*
//   factor ::= integer ['/' integer] | var ['^' integer]
//   var    ::= 'x' index            (plus 'mu' index, 'lambda' index when enabled)
// Whitespace is ignored and '#' starts a comment running to the end of line.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "jacring/field.hpp"
#include "jacring/graded.hpp"
#include "jacring/poly.hpp"

namespace jacring {

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : InputError("at byte " + std::to_string(offset) + ": " + what), detail_(what), offset_(offset) {}
  std::size_t offset() const { return offset_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  std::size_t offset_;
};

struct ParsedTerm {
  mpq_class coeff = 1;
  std::vector<int> x;
  std::vector<int> mu;
  std::vector<int> lambda;
  std::size_t begin = 0;
  std::size_t end = 0;
  int degree() const;
};

struct ParseOptions {
  int n = 2;
  /// Number of mu and lambda variables accepted; 0 rejects them.
  int r = 0;
  int s = 0;
};

std::vector<ParsedTerm> parse_terms(std::string_view text, const ParseOptions& opt);

/// Homogeneous form in x0..xn. The zero expression gets degree 0.
HomogPoly parse_poly(std::string_view text, int n);

/// Element of A; all terms must share one bidegree.
AElement<Rationals> parse_a_element(std::string_view text, const RingSpec& spec);

}  // namespace jacring
