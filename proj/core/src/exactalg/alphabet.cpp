#include "weylham/alphabet.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "weylham/monomial.hpp"

namespace weylham {

AlphabetPtr Alphabet::make(std::vector<std::string> names) {
  std::unordered_set<std::string> seen;
  for (auto& n : names) {
    if (n.empty()) throw std::invalid_argument("empty symbol name");
    if (!seen.insert(n).second) throw std::invalid_argument("duplicate symbol '" + n + "'");
  }
  if (names.size() > kMaxSymbols)
    throw std::length_error("alphabet has " + std::to_string(names.size()) + " symbols, limit is " +
                            std::to_string(kMaxSymbols));
  return AlphabetPtr(new Alphabet(std::move(names)));
}

std::optional<std::size_t> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::size_t Alphabet::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw std::out_of_range("unknown symbol '" + std::string(name) + "'");
}

AlphabetPtr Alphabet::extended(const std::vector<std::string>& extra) const {
  std::vector<std::string> all = names_;
  for (auto& n : extra)
    if (!contains(n) && std::find(all.begin(), all.end(), n) == all.end()) all.push_back(n);
  return make(std::move(all));
}

bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

}  // namespace weylham
