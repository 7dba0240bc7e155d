#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "weylham/alphabet.hpp"
#include "weylham/detail/sparse_poly.hpp"
#include "weylham/rational.hpp"

namespace weylham {

// Exact multivariate polynomial over Q on a fixed alphabet. Terms are canonical
// (sorted graded lex, no zeros), so structural equality is mathematical equality.
//
// A polynomial built without an alphabet is a bare constant; it adopts the
// alphabet of whatever it is combined with.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(BigRational c) : p_(std::move(c)) {}  // NOLINT: implicit constants are convenient
  Polynomial(long c) : p_(BigRational(c)) {}       // NOLINT
  Polynomial(AlphabetPtr a, BigRational c) : alpha_(std::move(a)), p_(std::move(c)) { check_size(); }
  Polynomial(AlphabetPtr a, detail::QPoly p) : alpha_(std::move(a)), p_(std::move(p)) { check_size(); }

  static Polynomial symbol(const AlphabetPtr& a, std::string_view name);

  const AlphabetPtr& alphabet() const { return alpha_; }
  const detail::QPoly& raw() const { return p_; }
  const auto& terms() const { return p_.terms(); }
  std::size_t num_terms() const { return p_.size(); }

  bool is_zero() const { return p_.is_zero(); }
  bool is_constant() const { return p_.is_constant(); }
  BigRational constant_value() const;  // throws if not constant
  BigRational leading_coefficient() const { return is_zero() ? BigRational(0) : p_.lead().c; }
  unsigned total_degree() const { return p_.total_degree(); }
  unsigned degree_in(std::string_view sym) const;
  bool depends_on(std::string_view sym) const;
  std::vector<std::string> free_symbols() const;

  Polynomial operator-() const { return {alpha_, -p_}; }
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
  Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }
  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial pow(unsigned k) const;
  Polynomial scaled(const BigRational& c) const { return {alpha_, p_.scaled(c)}; }

  Polynomial derivative(std::string_view sym) const;
  Polynomial derivative(std::size_t index) const { return {alpha_, p_.derivative(index)}; }

  // coefficient list in sym; element k multiplies sym^k
  std::vector<Polynomial> coefficients_in(std::string_view sym) const;

  // simultaneous substitution; unbound symbols are carried over by name into
  // the bindings' alphabet
  Polynomial substitute(const std::map<std::string, Polynomial>& bindings) const;

  // the same polynomial on another alphabet (symbols matched by name)
  Polynomial rebased(const AlphabetPtr& target) const;

  // exact quotient; throws std::domain_error if d does not divide *this
  Polynomial divided_by(const Polynomial& d) const;
  bool divisible_by(const Polynomial& d) const;

  // integer-coefficient primitive associate with positive leading coefficient
  Polynomial primitive() const;
  Polynomial monic() const;

  std::string to_string() const;

 private:
  void check_size() const;
  AlphabetPtr alpha_;
  detail::QPoly p_;
};

// resolves the common alphabet of two operands; throws on mismatch
AlphabetPtr common_alphabet(const AlphabetPtr& a, const AlphabetPtr& b);

// monic gcd (zero only if both are zero)
Polynomial gcd(const Polynomial& a, const Polynomial& b);

// resultant in sym, content-normalized: primitive over Z, leading coefficient positive
Polynomial resultant(const Polynomial& f, const Polynomial& g, std::string_view sym);

}  // namespace weylham
