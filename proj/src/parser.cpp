#include <cctype>
#include <map>

#include "qpoincare/suite.hpp"

namespace qpoincare {

ParseError::ParseError(std::size_t position, const std::string &message)
    : std::invalid_argument("position " + std::to_string(position) + ": " + message), position_(position) {}

namespace {

const std::string kDagger = "\xE2\x80\xA0"; // U+2020

struct Sugar {
  std::map<std::string, NCPoly> table;
};

const Sugar &sugar() {
  static const Sugar s = [] {
    Sugar out;
    OpMatrix2 w = define_W();
    OpMatrix2 om = define_omega();
    for (int r = 1; r <= 2; ++r)
      for (int c = 1; c <= 2; ++c) {
        std::string rc = std::to_string(r) + std::to_string(c);
        out.table["W" + rc] = w(r, c);
        out.table["O" + rc] = om(r, c);
      }
    for (const auto &[k, v] : define_omega_and_K())
      if (k[0] == 'K')
        out.table[k] = v;
    for (const auto &[k, v] : define_casimirs())
      out.table[k] = v;
    out.table["C2"] = out.table.at("C2a");
    return out;
  }();
  return s;
}

class Parser {
public:
  Parser(const std::string &text, const ParseOptions &opt) : s_(text), opt_(opt) {}

  NCPoly parse() {
    NCPoly v = expr();
    skip();
    if (pos_ < s_.size())
      fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

private:
  [[noreturn]] void fail(const std::string &msg) const { throw ParseError(pos_, msg); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c))
      return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c))
      fail(std::string("expected '") + c + "'");
  }
  bool accept_dagger() {
    skip();
    if (s_.compare(pos_, kDagger.size(), kDagger) == 0) {
      pos_ += kDagger.size();
      return true;
    }
    return false;
  }

  NCPoly expr() {
    NCPoly v;
    if (accept('-'))
      v = -term();
    else {
      accept('+');
      v = term();
    }
    for (;;) {
      if (accept('+'))
        v += term();
      else if (accept('-'))
        v -= term();
      else
        return v;
    }
  }

  NCPoly term() {
    NCPoly v = unary();
    for (;;) {
      if (accept('*'))
        v = v * unary();
      else if (peek('/')) {
        std::size_t at = pos_++;
        NCPoly d = unary();
        v = v.scaled(scalar_of(d, at, "divisor").inverse());
      } else
        return v;
    }
  }

  NCPoly unary() {
    if (accept('-'))
      return -unary();
    return factor();
  }

  Scalar scalar_of(const NCPoly &x, std::size_t at, const char *what) {
    if (!x.is_scalar()) {
      pos_ = at;
      fail(std::string(what) + " must be a parameter expression");
    }
    Scalar c = x.is_zero() ? Scalar(0) : x.terms()[0].second;
    if (c.is_zero()) {
      pos_ = at;
      fail(std::string(what) + " is zero");
    }
    return c;
  }

  // Exponent as a multiple of 1/2: returns (numerator, halves?).
  std::pair<long, bool> exponent() {
    bool paren = accept('(');
    bool neg = accept('-');
    long n = integer();
    bool half = false;
    if (paren && accept('/')) {
      if (integer() != 2)
        fail("only half-integer fractional exponents are supported");
      half = true;
    }
    if (paren)
      expect(')');
    return {neg ? -n : n, half};
  }

  long integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (start == pos_)
      fail("expected an integer");
    if (pos_ - start > 9)
      fail("integer too large");
    return std::stol(s_.substr(start, pos_ - start));
  }

  NCPoly factor() {
    bool is_q = false;
    NCPoly v = atom(is_q);
    for (;;) {
      if (accept_dagger()) {
        v = dagger(v);
        is_q = false;
      } else if (peek('^')) {
        std::size_t at = pos_++;
        auto [n, half] = exponent();
        if (half) {
          if (!is_q) {
            pos_ = at;
            fail("half-integer exponents apply to q only");
          }
          v = NCPoly(Scalar::q_half_power(static_cast<int>(n)));
        } else if (n >= 0) {
          NCPoly base = v;
          v = NCPoly(1);
          for (long k = 0; k < n; ++k)
            v = v * base;
        } else {
          v = NCPoly(scalar_of(v, at, "base of a negative power").pow(static_cast<int>(n)));
        }
        is_q = false;
      } else
        return v;
    }
  }

  NCPoly atom(bool &is_q) {
    skip();
    if (pos_ >= s_.size())
      fail("unexpected end of input");
    char c = s_[pos_];
    if (accept('(')) {
      NCPoly v = expr();
      expect(')');
      return v;
    }
    if (accept('[')) {
      NCPoly a = expr();
      expect(',');
      NCPoly b = expr();
      expect(']');
      return commutator(a, b);
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
      return NCPoly(Scalar(integer()));
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      return name(s_.substr(start, pos_ - start), start, is_q);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NCPoly name(const std::string &id, std::size_t at, bool &is_q) {
    if (id == "i")
      return NCPoly(Scalar::i());
    if (auto p = param_from_name(id)) {
      is_q = *p == Param::q;
      return NCPoly(Scalar::param(*p));
    }
    if (opt_.expand_sugar) {
      const auto &t = sugar().table;
      if (auto it = t.find(id); it != t.end())
        return it->second;
    }
    if (auto g = Alphabet::standard().find(id))
      return NCPoly::gen(*g);
    pos_ = at;
    fail("unknown symbol '" + id + "'");
  }

  const std::string &s_;
  ParseOptions opt_;
  std::size_t pos_ = 0;
};

} // namespace

NCPoly parse_expression(const std::string &text, const ParseOptions &options) {
  return Parser(text, options).parse();
}

} // namespace qpoincare
