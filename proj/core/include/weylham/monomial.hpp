#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <functional>
#include <stdexcept>
#include <string_view>

namespace weylham {

inline constexpr std::size_t kMaxSymbols = 32;

// Dense exponent vector over a fixed alphabet. Order is graded lex with the
// first alphabet symbol most significant.
class Monomial {
 public:
  Monomial() = default;

  std::uint8_t operator[](std::size_t i) const { return e_[i]; }
  unsigned degree() const { return deg_; }
  bool is_one() const { return deg_ == 0; }

  void set(std::size_t i, unsigned v) {
    if (v > 255) throw std::overflow_error("monomial exponent exceeds 255");
    deg_ = static_cast<std::uint16_t>(deg_ - e_[i] + v);
    e_[i] = static_cast<std::uint8_t>(v);
  }

  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < kMaxSymbols; ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxSymbols; ++i) {
      unsigned v = unsigned(a.e_[i]) + b.e_[i];
      if (v > 255) throw std::overflow_error("monomial exponent exceeds 255");
      r.e_[i] = static_cast<std::uint8_t>(v);
    }
    r.deg_ = static_cast<std::uint16_t>(a.deg_ + b.deg_);
    return r;
  }

  // caller guarantees b divides a
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxSymbols; ++i) r.e_[i] = a.e_[i] - b.e_[i];
    r.deg_ = static_cast<std::uint16_t>(a.deg_ - b.deg_);
    return r;
  }

  static Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    unsigned d = 0;
    for (std::size_t i = 0; i < kMaxSymbols; ++i) {
      r.e_[i] = a.e_[i] < b.e_[i] ? a.e_[i] : b.e_[i];
      d += r.e_[i];
    }
    r.deg_ = static_cast<std::uint16_t>(d);
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.deg_ == b.deg_ && std::memcmp(a.e_.data(), b.e_.data(), kMaxSymbols) == 0;
  }

  // <0, 0, >0 under grlex
  friend int compare(const Monomial& a, const Monomial& b) {
    if (a.deg_ != b.deg_) return a.deg_ < b.deg_ ? -1 : 1;
    return std::memcmp(a.e_.data(), b.e_.data(), kMaxSymbols);
  }

  std::size_t hash() const {
    return std::hash<std::string_view>{}(
        std::string_view(reinterpret_cast<const char*>(e_.data()), kMaxSymbols));
  }

 private:
  std::array<std::uint8_t, kMaxSymbols> e_{};
  std::uint16_t deg_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

// sorts leading (largest) first
struct GrlexDesc {
  bool operator()(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }
};

}  // namespace weylham
