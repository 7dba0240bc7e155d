#pragma once

#include <map>
#include <ostream>
#include <string>
#include <string_view>

#include "weylham/polynomial.hpp"

namespace weylham {

// num/den with gcd(num, den) = 1 and den monic under grlex.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(Polynomial p) : num_(std::move(p)), den_(BigRational(1)) { adopt(); }  // NOLINT
  RationalFunction(BigRational c) : num_(std::move(c)), den_(BigRational(1)) {}          // NOLINT
  RationalFunction(long c) : num_(c), den_(BigRational(1)) {}                             // NOLINT
  RationalFunction(Polynomial num, Polynomial den);

  // trusted constructor: caller guarantees the invariants
  static RationalFunction from_normalized(Polynomial num, Polynomial den);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  const AlphabetPtr& alphabet() const { return num_.alphabet() ? num_.alphabet() : den_.alphabet(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return den_.is_constant() && num_.is_constant(); }
  Polynomial as_polynomial() const;  // throws if not a polynomial
  bool depends_on(std::string_view sym) const { return num_.depends_on(sym) || den_.depends_on(sym); }
  std::vector<std::string> free_symbols() const;

  RationalFunction operator-() const { return from_normalized(-num_, den_); }
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction& operator+=(const RationalFunction& b) { return *this = *this + b; }
  RationalFunction& operator-=(const RationalFunction& b) { return *this = *this - b; }
  RationalFunction& operator*=(const RationalFunction& b) { return *this = *this * b; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  RationalFunction pow(int k) const;
  RationalFunction inverse() const;

  RationalFunction derivative(std::string_view sym) const;
  RationalFunction substitute(const std::map<std::string, RationalFunction>& bindings) const;
  RationalFunction rebased(const AlphabetPtr& target) const {
    return from_normalized(num_.rebased(target), den_.rebased(target));
  }

  std::string to_string() const;

 private:
  void adopt();
  Polynomial num_, den_;
};

using Bindings = std::map<std::string, RationalFunction>;

// P / L^k in canonical form; cheaper than a full gcd with L^k when L is small
RationalFunction over_power(const Polynomial& p, const Polynomial& l, unsigned k);

// Bound values over one squarefree base B: x -> N_x / B^e_x. Keeps substituted
// expressions far smaller than a plain lcm of the denominators would.
struct BaseBindings {
  AlphabetPtr target;
  Polynomial base;
  std::map<std::string, std::pair<Polynomial, unsigned>> values;
};
BaseBindings over_common_base(const Bindings& bindings);

// p(bindings) = num / base^power
struct PowerFraction {
  Polynomial num;
  unsigned power = 0;
};
PowerFraction substitute_over_base(const Polynomial& p, const BaseBindings& b);

// squarefree part, primitive
Polynomial squarefree_part(const Polynomial& d);

RationalFunction substitute_poly(const Polynomial& p, const Bindings& bindings);

// Unnormalized num/den pair. Identity tests only need the numerator of a
// difference to vanish, so they skip the gcd that canonical form would cost.
struct Fraction {
  Polynomial num, den;

  static Fraction of(const RationalFunction& f) { return {f.num(), f.den()}; }
  bool is_zero() const { return num.is_zero(); }
  RationalFunction normalized() const { return RationalFunction(num, den); }
};

Fraction operator+(const Fraction& a, const Fraction& b);
Fraction operator-(const Fraction& a, const Fraction& b);
Fraction operator*(const Fraction& a, const Fraction& b);

// substitution without the final gcd
Fraction substitute_lazy(const Polynomial& p, const Bindings& bindings);
Fraction substitute_lazy(const RationalFunction& f, const Bindings& bindings);
Fraction substitute_lazy(const RationalFunction& f, const BaseBindings& bindings);

// polynomial-only substitution (parameter elimination) in num and den;
// throws std::domain_error if the denominator vanishes identically
Fraction reduce(const Fraction& f, const std::map<std::string, Polynomial>& bindings);

struct LaurentSplit {
  RationalFunction polynomial_part;
  RationalFunction principal_part;
};

// f = polynomial_part + principal_part, principal part holding exactly the negative
// powers of sym. Throws std::domain_error (non-Laurent) if the denominator has a
// sym-dependent factor other than a power of sym.
LaurentSplit laurent_split(const RationalFunction& f, std::string_view sym);

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const RationalFunction& f) { return os << f.to_string(); }

}  // namespace weylham
