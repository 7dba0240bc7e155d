#include "weylham/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace weylham {

namespace {

bool is_int_literal(std::string_view s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

BigInt parse_int(std::string_view s) {
  if (!is_int_literal(s)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  if (s[0] == '+') s.remove_prefix(1);
  return BigInt(std::string(s), 10);
}

}  // namespace

BigRational parse_rational(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return BigRational(parse_int(s));
  BigInt n = parse_int(s.substr(0, slash));
  BigInt d = parse_int(s.substr(slash + 1));
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
  BigRational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_fraction_string(const BigRational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double to_double(const BigRational& r) { return r.get_d(); }

BigRational parse_decimal_or_fraction(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.find('/') != std::string_view::npos || is_int_literal(s)) return parse_rational(s);

  // [sign] digits [. digits] [e [sign] digits]
  std::string str(s);
  std::size_t i = 0;
  bool neg = false;
  if (i < str.size() && (str[i] == '-' || str[i] == '+')) neg = str[i++] == '-';
  std::string digits;
  long exp10 = 0;
  bool any = false, dot = false;
  for (; i < str.size(); ++i) {
    char c = str[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      any = true;
      if (dot) --exp10;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!any) throw std::invalid_argument("not a number: '" + str + "'");
  if (i < str.size() && (str[i] == 'e' || str[i] == 'E')) {
    std::string e = str.substr(i + 1);
    if (!is_int_literal(e)) throw std::invalid_argument("bad exponent in '" + str + "'");
    exp10 += std::stol(e);
    i = str.size();
  }
  if (i != str.size()) throw std::invalid_argument("not a number: '" + str + "'");
  BigInt mant(digits, 10);
  if (neg) mant = -mant;
  BigInt p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  BigRational r = exp10 < 0 ? BigRational(mant, p10) : BigRational(mant * p10);
  r.canonicalize();
  return r;
}

}  // namespace weylham
