#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "weylham/dynsys.hpp"

namespace weylham {

// 2x2 matrix of polynomials in the phase variables and a spectral symbol
class MatrixPencil {
 public:
  MatrixPencil() = default;
  MatrixPencil(std::array<Polynomial, 4> entries, std::string spectral = "T");
  // row-major grid of expressions
  static MatrixPencil parse(const std::array<std::string, 4>& grid, const AlphabetPtr& alphabet,
                            std::string spectral = "T");

  const Polynomial& operator()(int i, int j) const { return e_[static_cast<std::size_t>(2 * i + j)]; }
  const std::array<Polynomial, 4>& entries() const { return e_; }
  const std::string& spectral() const { return spectral_; }
  AlphabetPtr alphabet() const;
  unsigned spectral_degree() const;
  bool is_zero() const;
  Polynomial determinant() const;
  MatrixPencil rebased(const AlphabetPtr& target) const;
  MatrixPencil derivative(const std::string& sym) const;
  MatrixPencil map(const std::function<Polynomial(const Polynomial&)>& f) const;
  std::string to_string() const;

  friend MatrixPencil operator+(const MatrixPencil& a, const MatrixPencil& b);
  friend MatrixPencil operator-(const MatrixPencil& a, const MatrixPencil& b);
  friend MatrixPencil operator*(const MatrixPencil& a, const MatrixPencil& b);
  MatrixPencil operator-() const;
  MatrixPencil scaled(const BigRational& c) const;

 private:
  std::array<Polynomial, 4> e_;
  std::string spectral_ = "T";
};

// d_time A along the flow - delta T d_T B + A B - B A, reduced modulo the
// system's constraints
MatrixPencil zero_curvature_residual(const MatrixPencil& A, const MatrixPencil& B, const TotalSystem& sys,
                                     const std::string& time, const BigRational& delta);

// Solves the residual's spectral coefficients, which are affine in the unknown
// derivatives of `variables`, exactly. Throws std::runtime_error naming the
// conflicting coefficients when the system is inconsistent or underdetermined.
std::vector<RationalFunction> extract_flow(const MatrixPencil& A, const MatrixPencil& B,
                                           const std::vector<std::string>& variables, const BigRational& delta);

struct NamedCoefficient {
  std::string name;
  unsigned power;
  BigRational scale;  // coefficient of T^power = scale * expr
  Polynomial expr;
};

struct SpectralInvariants {
  Polynomial det;
  std::vector<Polynomial> coefficients;  // by spectral power
  std::vector<NamedCoefficient> named;
  Polynomial reconstruct(const std::string& spectral = "T") const;
  const Polynomial& operator[](const std::string& name) const;
};

// det(A) split by powers of T. The degree 4..1 coefficients are named K3, K4,
// K2, K1 with scales -32, -8, 4, 1; the constant term is "eps".
SpectralInvariants det_expansion(const MatrixPencil& A);

// a = scale * b + constant, with the constant free of `variables`
struct AffineMatch {
  BigRational scale;
  Polynomial constant;
};
std::optional<AffineMatch> affine_match(const Polynomial& a, const Polynomial& b,
                                        const std::vector<std::string>& variables);

// term-by-term comparison; empty when equal, else one line per differing monomial
std::vector<std::string> coefficient_differences(const Polynomial& computed, const Polynomial& printed,
                                                 std::size_t limit = 20);

struct Surface {
  Polynomial F;  // primitive resultant
  unsigned degree = 0;  // total degree in the kept variables
};
Surface surface_from_integrals(const Polynomial& f1, const Polynomial& f2, const std::string& eliminate,
                               const std::vector<std::string>& kept);

// F = c * G for a rational c
std::optional<BigRational> proportional(const Polynomial& F, const Polynomial& G);

}  // namespace weylham
