#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "supercap/classifier.hpp"
#include "supercap/composition_config.hpp"
#include "supercap/font.hpp"
#include "supercap/image.hpp"
#include "supercap/vocabulary.hpp"

namespace supercap {

enum class Termination { kEos, kCutLength };

const char* to_string(Termination t) noexcept;

struct DecodeResult {
  std::vector<std::string> tokens;
  Termination terminated_by = Termination::kEos;
  /// Classifier calls made.
  std::size_t steps = 0;
};

/// Greedy caption generation. Starting from an empty caption, compose the
/// canvas, ask the classifier for the next word and append it; stop on EOS or
/// once the caption holds cut_length words.
///
/// Classifier errors propagate. An index outside the vocabulary throws
/// IndexOutOfRange.
DecodeResult generate_caption(const Image& image, ClassifierPort& classifier,
                              const Vocabulary& vocab, const CompositionConfig& config = {},
                              const GlyphFont& font = GlyphFont::builtin());

}  // namespace supercap
