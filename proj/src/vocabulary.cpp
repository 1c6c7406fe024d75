#include "supercap/vocabulary.hpp"

#include <istream>
#include <ostream>

#include "supercap/errors.hpp"

namespace supercap {

Vocabulary::Vocabulary() : tokens_{std::string(kEos)}, index_{{std::string(kEos), kEosIndex}} {}

Vocabulary Vocabulary::from_class_list(std::vector<std::string> tokens) {
  if (tokens.empty() || tokens.front() != kEos) {
    throw InvalidArgument("vocabulary: class 0 must be '" + std::string(kEos) + "'");
  }
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    if (tokens[i].empty()) {
      throw InvalidArgument("vocabulary: empty token at index " + std::to_string(i));
    }
    if (tokens[i] == kEos) throw InvalidArgument("vocabulary: EOS token repeated");
    if (i > 1 && !(tokens[i - 1] < tokens[i])) {
      throw InvalidArgument("vocabulary: tokens not in strict byte order at index " +
                            std::to_string(i) + " ('" + tokens[i] + "')");
    }
  }
  Vocabulary v;
  v.tokens_ = std::move(tokens);
  v.index_.clear();
  v.index_.reserve(v.tokens_.size());
  for (std::size_t i = 0; i < v.tokens_.size(); ++i) v.index_.emplace(v.tokens_[i], i);
  return v;
}

const std::string& Vocabulary::token_at(ClassIndex index) const {
  if (index >= tokens_.size()) {
    throw IndexOutOfRange("class index " + std::to_string(index) + " outside vocabulary of " +
                          std::to_string(tokens_.size()));
  }
  return tokens_[index];
}

std::optional<ClassIndex> Vocabulary::index_of(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Vocabulary::write(std::ostream& out) const {
  for (const std::string& t : tokens_) out << t << '\n';
}

Vocabulary Vocabulary::read(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    tokens.push_back(std::move(line));
  }
  // A trailing blank line is tolerated; blank lines elsewhere are not.
  if (!tokens.empty() && tokens.back().empty()) tokens.pop_back();
  return from_class_list(std::move(tokens));
}

}  // namespace supercap
