#include "weylham/expr.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace weylham {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
 public:
  Parser(std::string_view s, const AlphabetPtr& a, const Bindings* b = nullptr) : s_(s), a_(a), b_(b) {}

  RationalFunction parse() {
    auto r = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("parse error at " + std::to_string(i_) + " in '" + std::string(s_) + "': " + msg);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  bool eat_pow() {
    skip();
    if (i_ < s_.size() && s_[i_] == '^') return ++i_, true;
    if (i_ + 1 < s_.size() && s_[i_] == '*' && s_[i_ + 1] == '*') return i_ += 2, true;
    return false;
  }
  bool peek_mul() {
    skip();
    return i_ < s_.size() && s_[i_] == '*' && !(i_ + 1 < s_.size() && s_[i_ + 1] == '*');
  }

  RationalFunction expr() {
    RationalFunction r = term();
    for (;;) {
      if (eat('+'))
        r = r + term();
      else if (eat('-'))
        r = r - term();
      else
        return r;
    }
  }
  RationalFunction term() {
    RationalFunction r = unary();
    for (;;) {
      if (peek_mul()) {
        ++i_;
        r = r * unary();
      } else if (eat('/')) {
        RationalFunction d = unary();
        if (d.is_zero()) fail("division by zero");
        r = r / d;
      } else {
        return r;
      }
    }
  }
  RationalFunction unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  RationalFunction power() {
    RationalFunction b = atom();
    if (eat_pow()) {
      long e = exponent();
      if (e < 0 && b.is_zero()) fail("zero to a negative power");
      b = b.pow(static_cast<int>(e));
    }
    return b;
  }
  long exponent() {
    bool neg = false;
    if (eat('(')) {
      long e = exponent();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (eat('-')) neg = true;
    skip();
    std::size_t st = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (st == i_) fail("expected integer exponent");
    long e = std::stol(std::string(s_.substr(st, i_ - st)));
    if (e > 1000) fail("exponent too large");
    return neg ? -e : e;
  }
  RationalFunction atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      auto r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return RationalFunction(Polynomial(a_, BigRational(BigInt(std::string(s_.substr(st, i_ - st)), 10))));
    }
    if (ident_start(c)) {
      std::size_t st = i_;
      while (i_ < s_.size() && ident_char(s_[i_])) ++i_;
      std::string name(s_.substr(st, i_ - st));
      if (b_) {
        auto it = b_->find(name);
        if (it != b_->end()) return it->second.rebased(a_);
      }
      if (!a_ || !a_->contains(name)) fail("unknown symbol '" + name + "'");
      return RationalFunction(Polynomial::symbol(a_, name));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  const AlphabetPtr& a_;
  const Bindings* b_;
  std::size_t i_ = 0;
};

}  // namespace

RationalFunction parse_expr(std::string_view text, const AlphabetPtr& alphabet) {
  auto r = Parser(text, alphabet).parse();
  return r.rebased(alphabet);
}

RationalFunction evaluate_expr(std::string_view text, const AlphabetPtr& alphabet, const Bindings& bindings) {
  return Parser(text, alphabet, &bindings).parse().rebased(alphabet);
}

Polynomial parse_poly(std::string_view text, const AlphabetPtr& alphabet) {
  auto r = parse_expr(text, alphabet);
  if (!r.is_polynomial()) throw std::invalid_argument("expression is not a polynomial: '" + std::string(text) + "'");
  return r.as_polynomial();
}

std::vector<std::string> expr_symbols(std::string_view text) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < text.size();) {
    if (ident_start(text[i])) {
      std::size_t st = i;
      while (i < text.size() && ident_char(text[i])) ++i;
      std::string n(text.substr(st, i - st));
      if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
    } else if (std::isdigit(static_cast<unsigned char>(text[i]))) {
      while (i < text.size() && ident_char(text[i])) ++i;
    } else {
      ++i;
    }
  }
  return out;
}

}  // namespace weylham
