#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "weylham/monomial.hpp"

namespace weylham::detail {

template <class C>
struct Term {
  Monomial m;
  C c;
};

inline void canonicalize(mpq_class& c) { c.canonicalize(); }
inline void canonicalize(mpz_class&) {}

inline bool exact_quotient(const mpq_class& a, const mpq_class& b, mpq_class& q) {
  q = a / b;
  return true;
}

inline bool exact_quotient(const mpz_class& a, const mpz_class& b, mpz_class& q) {
  if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) return false;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return true;
}

// Terms kept sorted by descending grlex, no zero coefficients.
template <class C>
class SparsePoly {
 public:
  using TermT = Term<C>;

  SparsePoly() = default;
  explicit SparsePoly(C c) {
    canonicalize(c);
    if (sgn(c) != 0) terms_.push_back({Monomial{}, std::move(c)});
  }
  SparsePoly(Monomial m, C c) {
    canonicalize(c);
    if (sgn(c) != 0) terms_.push_back({m, std::move(c)});
  }

  static SparsePoly from_sorted(std::vector<TermT> t) {
    SparsePoly p;
    p.terms_ = std::move(t);
    return p;
  }

  // arbitrary order, duplicates allowed
  static SparsePoly from_terms(std::vector<TermT> t) {
    for (auto& x : t) canonicalize(x.c);
    std::sort(t.begin(), t.end(),
              [](const TermT& a, const TermT& b) { return compare(a.m, b.m) > 0; });
    std::vector<TermT> out;
    out.reserve(t.size());
    for (auto& x : t) {
      if (!out.empty() && out.back().m == x.m)
        out.back().c += x.c;
      else {
        if (!out.empty() && sgn(out.back().c) == 0) out.pop_back();
        out.push_back(std::move(x));
      }
    }
    if (!out.empty() && sgn(out.back().c) == 0) out.pop_back();
    return from_sorted(std::move(out));
  }

  const std::vector<TermT>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
  const TermT& lead() const { return terms_.front(); }
  C constant_term() const {
    if (!terms_.empty() && terms_.back().m.is_one()) return terms_.back().c;
    return C(0);
  }

  unsigned total_degree() const { return terms_.empty() ? 0 : terms_.front().m.degree(); }
  unsigned degree_in(std::size_t v) const {
    unsigned d = 0;
    for (auto& t : terms_) d = std::max<unsigned>(d, t.m[v]);
    return d;
  }
  bool depends_on(std::size_t v) const {
    for (auto& t : terms_)
      if (t.m[v]) return true;
    return false;
  }

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].m == b.terms_[i].m) || a.terms_[i].c != b.terms_[i].c) return false;
    return true;
  }

  SparsePoly operator-() const {
    SparsePoly r = *this;
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
  }

  friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) { return merge(a, b, false); }
  friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) { return merge(a, b, true); }

  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.size() < b.size()) return b * a;
    if (b.size() == 1) return a.mul_term(b.terms_[0].m, b.terms_[0].c);
    // accumulate rows of the smaller factor by repeated merge when small,
    // hash accumulation otherwise
    if (a.size() * b.size() <= 64) {
      SparsePoly r;
      for (auto& t : b.terms_) r = r + a.mul_term(t.m, t.c);
      return r;
    }
    std::unordered_map<Monomial, C, MonomialHash> acc;
    acc.reserve(a.size() * b.size() / 2 + 16);
    C tmp;
    for (auto& x : a.terms_)
      for (auto& y : b.terms_) {
        tmp = x.c * y.c;
        auto [it, fresh] = acc.try_emplace(x.m * y.m, tmp);
        if (!fresh) it->second += tmp;
      }
    std::vector<TermT> out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (sgn(c) != 0) out.push_back({m, std::move(c)});
    std::sort(out.begin(), out.end(),
              [](const TermT& p, const TermT& q) { return compare(p.m, q.m) > 0; });
    return from_sorted(std::move(out));
  }

  SparsePoly mul_term(const Monomial& m, const C& c) const {
    if (sgn(c) == 0) return {};
    SparsePoly r;
    r.terms_.reserve(terms_.size());
    for (auto& t : terms_) r.terms_.push_back({t.m * m, t.c * c});
    return r;
  }

  SparsePoly scaled(const C& c) const { return mul_term(Monomial{}, c); }

  SparsePoly pow(unsigned k) const {
    SparsePoly r(C(1)), b = *this;
    while (k) {
      if (k & 1) r = r * b;
      k >>= 1;
      if (k) b = b * b;
    }
    return r;
  }

  SparsePoly derivative(std::size_t v) const {
    std::vector<TermT> out;
    for (auto& t : terms_) {
      unsigned e = t.m[v];
      if (!e) continue;
      Monomial m = t.m;
      m.set(v, e - 1);
      out.push_back({m, t.c * e});
    }
    return from_sorted(std::move(out));  // same shift on every surviving term keeps the order
  }

  // coefficient list with respect to variable v: result[k] multiplies v^k
  std::vector<SparsePoly> coefficients_in(std::size_t v) const {
    std::vector<std::vector<TermT>> buckets(degree_in(v) + 1);
    for (auto& t : terms_) {
      Monomial m = t.m;
      unsigned e = m[v];
      m.set(v, 0);
      buckets[e].push_back({m, t.c});
    }
    std::vector<SparsePoly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(from_sorted(std::move(b)));
    return out;
  }

  // substitute v := value
  SparsePoly eval_var(std::size_t v, const C& value) const {
    std::vector<C> pw{C(1)};
    std::vector<TermT> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      unsigned e = t.m[v];
      while (pw.size() <= e) pw.push_back(pw.back() * value);
      Monomial m = t.m;
      m.set(v, 0);
      out.push_back({m, t.c * pw[e]});
    }
    return from_terms(std::move(out));
  }

  Monomial monomial_content() const {
    if (terms_.empty()) return {};
    Monomial g = terms_[0].m;
    for (auto& t : terms_) g = Monomial::gcd(g, t.m);
    return g;
  }

  // exact division; nullopt if d does not divide *this
  std::optional<SparsePoly> divide_exact(const SparsePoly& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    if (is_zero()) return SparsePoly{};
    if (d.size() == 1) {
      const auto& [dm, dc] = d.terms_[0];
      std::vector<TermT> out;
      out.reserve(terms_.size());
      C q;
      for (auto& t : terms_) {
        if (!dm.divides(t.m) || !exact_quotient(t.c, dc, q)) return std::nullopt;
        out.push_back({t.m / dm, q});
      }
      return from_sorted(std::move(out));
    }
    if (d.total_degree() > total_degree()) return std::nullopt;
    const Monomial& lm = d.lead().m;
    const C& lc = d.lead().c;
    std::map<Monomial, C, GrlexDesc> rem;
    for (auto& t : terms_) rem.emplace(t.m, t.c);
    std::vector<TermT> quot;
    C qc, tmp;
    while (!rem.empty()) {
      auto it = rem.begin();
      if (!lm.divides(it->first) || !exact_quotient(it->second, lc, qc)) return std::nullopt;
      Monomial qm = it->first / lm;
      rem.erase(it);
      for (std::size_t i = 1; i < d.terms_.size(); ++i) {
        tmp = d.terms_[i].c * qc;
        Monomial m = d.terms_[i].m * qm;
        auto [jt, fresh] = rem.try_emplace(m);
        jt->second -= tmp;
        if (sgn(jt->second) == 0) rem.erase(jt);
      }
      quot.push_back({qm, qc});
    }
    return from_sorted(std::move(quot));
  }

 private:
  static SparsePoly merge(const SparsePoly& a, const SparsePoly& b, bool negate_b) {
    std::vector<TermT> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      int c = compare(a.terms_[i].m, b.terms_[j].m);
      if (c > 0) {
        out.push_back(a.terms_[i++]);
      } else if (c < 0) {
        out.push_back(b.terms_[j++]);
        if (negate_b) out.back().c = -out.back().c;
      } else {
        C s = negate_b ? C(a.terms_[i].c - b.terms_[j].c) : C(a.terms_[i].c + b.terms_[j].c);
        if (sgn(s) != 0) out.push_back({a.terms_[i].m, std::move(s)});
        ++i, ++j;
      }
    }
    for (; i < a.size(); ++i) out.push_back(a.terms_[i]);
    for (; j < b.size(); ++j) {
      out.push_back(b.terms_[j]);
      if (negate_b) out.back().c = -out.back().c;
    }
    return from_sorted(std::move(out));
  }

  std::vector<TermT> terms_;
};

using QPoly = SparsePoly<mpq_class>;
using ZPoly = SparsePoly<mpz_class>;

}  // namespace weylham::detail
