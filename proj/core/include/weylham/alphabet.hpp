#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace weylham {

class Alphabet;
using AlphabetPtr = std::shared_ptr<const Alphabet>;

// Ordered, immutable list of symbol names. Symbol order fixes the monomial order.
class Alphabet {
 public:
  static AlphabetPtr make(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index(std::string_view name) const;  // throws on unknown symbol
  bool contains(std::string_view name) const { return find(name).has_value(); }

  // this alphabet followed by the names it does not already contain
  AlphabetPtr extended(const std::vector<std::string>& extra) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }

 private:
  explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {}
  std::vector<std::string> names_;
};

bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b);

}  // namespace weylham
