#include "supercap/decoder.hpp"

#include <string>

#include "supercap/canvas.hpp"
#include "supercap/errors.hpp"
#include "supercap/log.hpp"

namespace supercap {

const char* to_string(Termination t) noexcept {
  switch (t) {
    case Termination::kEos:
      return "eos";
    case Termination::kCutLength:
      return "cut-length";
  }
  return "unknown";
}

DecodeResult generate_caption(const Image& image, ClassifierPort& classifier,
                              const Vocabulary& vocab, const CompositionConfig& config,
                              const GlyphFont& font) {
  config.validate();
  const auto cut = static_cast<std::size_t>(config.cut_length);
  DecodeResult result;
  while (true) {
    const Canvas canvas = compose(image, result.tokens, config, font);
    const ClassIndex index = classifier.predict(canvas);
    ++result.steps;
    if (index >= vocab.size()) {
      throw IndexOutOfRange("classifier returned class " + std::to_string(index) +
                            " at step " + std::to_string(result.steps) + ", vocabulary has " +
                            std::to_string(vocab.size()) + " classes");
    }
    if (index == Vocabulary::kEosIndex) {
      result.terminated_by = Termination::kEos;
      break;
    }
    result.tokens.push_back(vocab.token_at(index));
    if (result.tokens.size() == cut) {
      result.terminated_by = Termination::kCutLength;
      break;
    }
  }
  if (result.tokens.empty()) log().warn("classifier predicted EOS first; caption is empty");
  return result;
}

}  // namespace supercap
