#include "weylham/json_io.hpp"

#include <stdexcept>

namespace weylham {

nlohmann::json poly_to_json(const Polynomial& p) {
  auto j = nlohmann::json::array();
  std::size_t n = p.alphabet() ? p.alphabet()->size() : 0;
  for (auto& t : p.terms()) {
    std::vector<int> e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = t.m[i];
    j.push_back({{"exponents", e}, {"coeff", to_fraction_string(t.c)}});
  }
  return j;
}

Polynomial poly_from_json(const nlohmann::json& j, const AlphabetPtr& alphabet) {
  if (!j.is_array()) throw std::invalid_argument("polynomial JSON must be an array of terms");
  std::vector<detail::QPoly::TermT> terms;
  for (auto& t : j) {
    auto& e = t.at("exponents");
    if (e.size() != alphabet->size()) throw std::invalid_argument("exponent vector length differs from alphabet size");
    Monomial m;
    for (std::size_t i = 0; i < e.size(); ++i) {
      int v = e[i].get<int>();
      if (v < 0) throw std::invalid_argument("negative exponent");
      m.set(i, static_cast<unsigned>(v));
    }
    terms.push_back({m, parse_rational(t.at("coeff").get<std::string>())});
  }
  return {alphabet, detail::QPoly::from_terms(std::move(terms))};
}

nlohmann::json ratfunc_to_json(const RationalFunction& f) {
  return {{"num", poly_to_json(f.num())}, {"den", poly_to_json(f.den())}};
}

RationalFunction ratfunc_from_json(const nlohmann::json& j, const AlphabetPtr& alphabet) {
  return RationalFunction(poly_from_json(j.at("num"), alphabet), poly_from_json(j.at("den"), alphabet));
}

}  // namespace weylham
