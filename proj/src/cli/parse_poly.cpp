#include "qdyn/cli/parse_poly.hpp"

#include <cctype>

namespace qdyn {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  IntPoly run() {
    skip();
    if (pos_ == s_.size()) throw parse_error("empty expression", pos_);
    IntPoly out = expr();
    if (pos_ != s_.size()) unexpected();
    return out;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])) != 0) ++pos_;
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  [[noreturn]] void unexpected() const {
    const char c = peek();
    if (c == '\0') throw parse_error("unexpected end of input", pos_);
    if (c == '.' || c == '/') throw parse_error("non-integer coefficient", pos_);
    if (std::isdigit(static_cast<unsigned char>(c)) != 0 || c == 'x' || c == '(') {
      throw parse_error("missing operator (write 10*x, not 10x)", pos_);
    }
    throw parse_error(std::string("unexpected '") + c + "'", pos_);
  }

  IntPoly expr() {
    IntPoly acc = term();
    for (;;) {
      const char c = peek();
      if (c != '+' && c != '-') return acc;
      ++pos_;
      skip();
      IntPoly rhs = term();
      if (c == '+') {
        acc += rhs;
      } else {
        acc -= rhs;
      }
    }
  }

  IntPoly term() {
    IntPoly acc = unary();
    while (peek() == '*') {
      ++pos_;
      skip();
      acc *= unary();
    }
    return acc;
  }

  IntPoly unary() {
    const char c = peek();
    if (c == '-' || c == '+') {
      ++pos_;
      skip();
      IntPoly inner = unary();
      return c == '-' ? -inner : inner;
    }
    return power();
  }

  IntPoly power() {
    IntPoly base = atom();
    if (peek() != '^') return base;
    ++pos_;
    skip();
    const std::size_t at = pos_;
    if (std::isdigit(static_cast<unsigned char>(peek())) == 0) {
      if (peek() == '-') throw parse_error("negative exponent", pos_);
      throw parse_error("exponent must be a nonnegative integer", pos_);
    }
    const mpz_class e = integer();
    if (e > kMaxParsedExponent) throw parse_error("exponent too large", at);
    return pow(base, static_cast<unsigned>(e.get_ui()));
  }

  IntPoly atom() {
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) return IntPoly::constant(integer());
    if (c == 'x') {
      ++pos_;
      skip();
      return IntPoly::identity();
    }
    if (c == '(') {
      ++pos_;
      skip();
      IntPoly inner = expr();
      if (peek() != ')') {
        if (peek() == '\0') throw parse_error("missing ')'", pos_);
        unexpected();
      }
      ++pos_;
      skip();
      return inner;
    }
    unexpected();
  }

  mpz_class integer() {
    const std::size_t begin = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek())) != 0) ++pos_;
    mpz_class v(std::string(s_.substr(begin, pos_ - begin)), 10);
    skip();
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

IntPoly parse_poly(std::string_view text) { return Parser(text).run(); }

}  // namespace qdyn
