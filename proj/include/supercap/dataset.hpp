#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "supercap/composition_config.hpp"
#include "supercap/font.hpp"
#include "supercap/vocabulary.hpp"

namespace supercap {

/// Captions filtered out when they have this many tokens or more.
inline constexpr std::size_t kMaxCaptionTokensExclusive = 14;

struct CaptionRecord {
  std::string image_id;
  std::vector<std::string> captions;
};

struct TrainingExample {
  std::string image_id;
  std::size_t prefix_len = 0;
  ClassIndex label_index = 0;
  std::string label_token;

  friend bool operator==(const TrainingExample&, const TrainingExample&) = default;
};

/// Splits on Unicode whitespace, then trims every character outside
/// [A-Za-z0-9'-] from both ends of each piece. Empty pieces are dropped and
/// case is kept.
std::vector<std::string> tokenize(std::string_view caption);

/// Of the captions with fewer than 14 tokens, the longest (first one wins a
/// tie). Empty when no caption qualifies and the image is dropped.
std::optional<std::vector<std::string>> select_caption(const CaptionRecord& record);

/// EOS plus the sorted distinct tokens. Throws InvalidArgument for an empty
/// corpus or a token equal to the EOS spelling.
Vocabulary build_vocab(const std::vector<std::vector<std::string>>& selected_captions);

/// One example per prefix length 0..tokens.size(); the last one is labelled
/// EOS. Throws OutOfVocabulary or InvalidArgument (caption not shorter than
/// cut_length).
std::vector<TrainingExample> generate_examples(const std::string& image_id,
                                               const std::vector<std::string>& tokens,
                                               const Vocabulary& vocab,
                                               std::size_t cut_length = 14);

/// Parses `<image_id>#<n>\t<caption>` lines. Records keep the order in which
/// their image ids first appear; captions keep file order. Blank lines are
/// ignored. Throws InvalidArgument naming the line on malformed input.
std::vector<CaptionRecord> parse_caption_file(std::istream& in);
std::vector<CaptionRecord> read_caption_file(const std::filesystem::path& path);

/// Filename of the canvas for one prefix of one image.
std::string canvas_filename(std::string_view image_id, std::size_t prefix_len);

/// One line of the labels file.
struct LabelRow {
  std::string canvas_filename;
  std::size_t prefix_len = 0;
  ClassIndex label_index = 0;
  std::string label_token;

  friend bool operator==(const LabelRow&, const LabelRow&) = default;
};

void write_labels(std::ostream& out, const std::vector<LabelRow>& rows);
std::vector<LabelRow> read_labels(std::istream& in);
std::vector<LabelRow> read_labels_file(const std::filesystem::path& path);

/// Layout of a generated dataset directory.
struct DatasetLayout {
  static constexpr std::string_view kLabelsFile = "labels.tsv";
  static constexpr std::string_view kVocabFile = "vocab.txt";
  static constexpr std::string_view kManifestFile = "manifest.json";
  static constexpr std::string_view kCanvasDir = "canvases";
};

struct DatasetOptions {
  CompositionConfig config;
  /// Worker threads for canvas generation; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct DatasetSummary {
  std::size_t images_total = 0;
  /// Records with a caption that passed the length filter.
  std::size_t images_kept = 0;
  /// Records with no caption under the length limit.
  std::size_t images_dropped = 0;
  /// Kept records whose image could not be read or decoded.
  std::size_t images_skipped = 0;
  std::size_t examples_written = 0;
  std::size_t vocab_size = 0;
  std::vector<std::string> warnings;
};

/// Locates the image for `image_id`: the id itself, then with .jpg, .jpeg
/// and .png appended.
std::optional<std::filesystem::path> resolve_image(const std::filesystem::path& images_dir,
                                                   std::string_view image_id);

/// Full generation: select captions, build the vocabulary, compose every
/// training canvas and write canvases/, labels.tsv, vocab.txt and
/// manifest.json under `out_dir`. Output is ordered by image id and is
/// byte-identical across reruns and thread counts. Unreadable images are
/// skipped with a warning.
DatasetSummary write_dataset(const std::vector<CaptionRecord>& records,
                             const std::filesystem::path& images_dir,
                             const std::filesystem::path& out_dir,
                             const DatasetOptions& options = {},
                             const GlyphFont& font = GlyphFont::builtin());

}  // namespace supercap
