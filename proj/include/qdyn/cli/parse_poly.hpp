#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qdyn/polydyn/int_poly.hpp"

namespace qdyn {

class parse_error : public std::invalid_argument {
 public:
  parse_error(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Integer polynomial in x from a small grammar:
//   expr  := term (('+' | '-') term)*
//   term  := unary ('*' unary)*
//   unary := ('+' | '-') unary | power
//   power := atom ('^' integer)?
//   atom  := integer | 'x' | '(' expr ')'
// Whitespace is ignored. Juxtaposition such as "10x" is an error.
IntPoly parse_poly(std::string_view text);

inline constexpr unsigned long kMaxParsedExponent = 4096;

}  // namespace qdyn
