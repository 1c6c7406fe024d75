#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace supercap {

using ClassIndex = std::size_t;

/// Bijection between caption tokens and classifier classes. Index 0 is the
/// end-of-sentence class; indices 1.. hold corpus tokens in strict byte order.
class Vocabulary {
 public:
  static constexpr std::string_view kEos = "</s>";
  static constexpr ClassIndex kEosIndex = 0;

  /// Vocabulary holding only the EOS class.
  Vocabulary();

  /// `tokens` is the full class list including EOS at index 0. Throws
  /// InvalidArgument if the ordering or uniqueness invariants are violated.
  static Vocabulary from_class_list(std::vector<std::string> tokens);

  std::size_t size() const noexcept { return tokens_.size(); }
  const std::string& token_at(ClassIndex index) const;
  std::optional<ClassIndex> index_of(std::string_view token) const;
  bool contains(std::string_view token) const { return index_of(token).has_value(); }
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }

  /// One token per line; the 0-based line number is the class index.
  void write(std::ostream& out) const;
  static Vocabulary read(std::istream& in);

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.tokens_ == b.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, ClassIndex> index_;
};

}  // namespace supercap
