#include "supercap/dataset.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "supercap/canvas.hpp"
#include "supercap/errors.hpp"
#include "supercap/fs_util.hpp"
#include "supercap/image_io.hpp"
#include "supercap/log.hpp"
#include "supercap/utf8.hpp"

namespace supercap {

namespace fs = std::filesystem;

namespace {

bool is_token_char(char32_t cp) noexcept {
  return (cp >= U'A' && cp <= U'Z') || (cp >= U'a' && cp <= U'z') || (cp >= U'0' && cp <= U'9') ||
         cp == U'\'' || cp == U'-';
}

bool parse_size(std::string_view text, std::size_t& value) {
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

void check_image_id(const std::string& id, std::size_t line_no) {
  if (id.empty() || id == "." || id == ".." || id.find('/') != std::string::npos ||
      id.find('\0') != std::string::npos) {
    throw InvalidArgument("caption file line " + std::to_string(line_no) + ": invalid image id '" +
                          id + "'");
  }
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view caption) {
  const std::u32string text = utf8::decode(caption);
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && utf8::is_space(text[i])) ++i;
    std::size_t end = i;
    while (end < text.size() && !utf8::is_space(text[end])) ++end;
    std::size_t lo = i;
    std::size_t hi = end;
    while (lo < hi && !is_token_char(text[lo])) ++lo;
    while (hi > lo && !is_token_char(text[hi - 1])) --hi;
    if (lo < hi) tokens.push_back(utf8::encode(std::u32string_view(text).substr(lo, hi - lo)));
    i = end;
  }
  return tokens;
}

std::optional<std::vector<std::string>> select_caption(const CaptionRecord& record) {
  std::optional<std::vector<std::string>> best;
  for (const std::string& caption : record.captions) {
    std::vector<std::string> tokens = tokenize(caption);
    if (tokens.size() >= kMaxCaptionTokensExclusive) continue;
    if (!best || tokens.size() > best->size()) best = std::move(tokens);
  }
  return best;
}

Vocabulary build_vocab(const std::vector<std::vector<std::string>>& selected_captions) {
  if (selected_captions.empty()) throw InvalidArgument("build_vocab: no captions");
  std::set<std::string> distinct;
  for (const auto& caption : selected_captions) {
    for (const std::string& token : caption) {
      if (token == Vocabulary::kEos) {
        throw InvalidArgument("build_vocab: corpus token collides with EOS spelling");
      }
      distinct.insert(token);
    }
  }
  std::vector<std::string> classes;
  classes.reserve(distinct.size() + 1);
  classes.emplace_back(Vocabulary::kEos);
  classes.insert(classes.end(), distinct.begin(), distinct.end());
  return Vocabulary::from_class_list(std::move(classes));
}

std::vector<TrainingExample> generate_examples(const std::string& image_id,
                                               const std::vector<std::string>& tokens,
                                               const Vocabulary& vocab, std::size_t cut_length) {
  if (tokens.size() >= cut_length) {
    throw InvalidArgument("generate_examples: caption for '" + image_id + "' has " +
                          std::to_string(tokens.size()) + " tokens; must be under " +
                          std::to_string(cut_length));
  }
  std::vector<TrainingExample> examples;
  examples.reserve(tokens.size() + 1);
  for (std::size_t k = 0; k <= tokens.size(); ++k) {
    if (k < tokens.size()) {
      const auto index = vocab.index_of(tokens[k]);
      if (!index) throw OutOfVocabulary(tokens[k]);
      examples.push_back({image_id, k, *index, tokens[k]});
    } else {
      examples.push_back({image_id, k, Vocabulary::kEosIndex, std::string(Vocabulary::kEos)});
    }
  }
  return examples;
}

std::vector<CaptionRecord> parse_caption_file(std::istream& in) {
  std::vector<CaptionRecord> records;
  std::unordered_map<std::string, std::size_t> position;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw InvalidArgument("caption file line " + std::to_string(line_no) +
                            ": expected '<image_id>#<n>\\t<caption>'");
    }
    const std::string key = line.substr(0, tab);
    const std::size_t hash = key.rfind('#');
    std::size_t caption_number = 0;
    if (hash == std::string::npos ||
        !parse_size(std::string_view(key).substr(hash + 1), caption_number)) {
      throw InvalidArgument("caption file line " + std::to_string(line_no) +
                            ": key '" + key + "' is not '<image_id>#<n>'");
    }
    std::string image_id = key.substr(0, hash);
    check_image_id(image_id, line_no);
    const auto [it, inserted] = position.try_emplace(image_id, records.size());
    if (inserted) records.push_back({std::move(image_id), {}});
    records[it->second].captions.push_back(line.substr(tab + 1));
  }
  if (in.bad()) throw IoError("error reading caption file");
  return records;
}

std::vector<CaptionRecord> read_caption_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open caption file " + path.string());
  return parse_caption_file(in);
}

std::string canvas_filename(std::string_view image_id, std::size_t prefix_len) {
  return std::string(image_id) + "_" + std::to_string(prefix_len) + ".png";
}

void write_labels(std::ostream& out, const std::vector<LabelRow>& rows) {
  for (const LabelRow& r : rows) {
    out << r.canvas_filename << '\t' << r.prefix_len << '\t' << r.label_index << '\t'
        << r.label_token << '\n';
  }
}

std::vector<LabelRow> read_labels(std::istream& in) {
  std::vector<LabelRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> f = split_tabs(line);
    LabelRow row;
    if (f.size() != 4 || f[0].empty() || !parse_size(f[1], row.prefix_len) ||
        !parse_size(f[2], row.label_index) || f[3].empty()) {
      throw InvalidArgument("labels file line " + std::to_string(line_no) +
                            ": expected '<canvas>\\t<prefix_len>\\t<label_index>\\t<label_token>'");
    }
    row.canvas_filename = f[0];
    row.label_token = f[3];
    rows.push_back(std::move(row));
  }
  if (in.bad()) throw IoError("error reading labels file");
  return rows;
}

std::vector<LabelRow> read_labels_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open labels file " + path.string());
  return read_labels(in);
}

std::optional<fs::path> resolve_image(const fs::path& images_dir, std::string_view image_id) {
  for (const char* suffix : {"", ".jpg", ".jpeg", ".png"}) {
    fs::path candidate = images_dir / (std::string(image_id) + suffix);
    std::error_code ec;
    if (fs::is_regular_file(candidate, ec)) return candidate;
  }
  return std::nullopt;
}

namespace {

struct Selected {
  const CaptionRecord* record = nullptr;
  std::vector<std::string> tokens;
};

struct ImageOutcome {
  std::vector<LabelRow> rows;
  std::optional<std::string> warning;
};

ImageOutcome generate_for_image(const Selected& sel, const Vocabulary& vocab,
                                const fs::path& images_dir, const fs::path& canvas_dir,
                                const DatasetOptions& options, const GlyphFont& font) {
  const std::string& id = sel.record->image_id;
  ImageOutcome outcome;
  const auto path = resolve_image(images_dir, id);
  if (!path) {
    outcome.warning = "image '" + id + "' not found under " + images_dir.string() + ", skipped";
    return outcome;
  }
  Image image;
  try {
    image = read_image(*path);
  } catch (const Error& e) {
    outcome.warning = "image '" + id + "' unreadable (" + e.what() + "), skipped";
    return outcome;
  }

  const auto cut = static_cast<std::size_t>(options.config.cut_length);
  const std::vector<TrainingExample> examples = generate_examples(id, sel.tokens, vocab, cut);
  std::vector<std::string> prefix;
  for (const TrainingExample& ex : examples) {
    prefix.assign(sel.tokens.begin(), sel.tokens.begin() + static_cast<std::ptrdiff_t>(ex.prefix_len));
    const Canvas canvas = compose(image, prefix, options.config, font);
    std::string name = canvas_filename(id, ex.prefix_len);
    write_png(canvas_dir / name, canvas);
    outcome.rows.push_back({std::move(name), ex.prefix_len, ex.label_index, ex.label_token});
  }
  return outcome;
}

}  // namespace

DatasetSummary write_dataset(const std::vector<CaptionRecord>& records, const fs::path& images_dir,
                             const fs::path& out_dir, const DatasetOptions& options,
                             const GlyphFont& font) {
  options.config.validate();

  std::vector<const CaptionRecord*> ordered;
  ordered.reserve(records.size());
  for (const CaptionRecord& r : records) ordered.push_back(&r);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const CaptionRecord* a, const CaptionRecord* b) { return a->image_id < b->image_id; });
  for (std::size_t i = 1; i < ordered.size(); ++i) {
    if (ordered[i - 1]->image_id == ordered[i]->image_id) {
      throw InvalidArgument("duplicate image id '" + ordered[i]->image_id + "'");
    }
  }

  DatasetSummary summary;
  summary.images_total = ordered.size();
  std::vector<Selected> selected;
  const auto cut = static_cast<std::size_t>(options.config.cut_length);
  for (const CaptionRecord* r : ordered) {
    auto tokens = select_caption(*r);
    if (tokens && tokens->size() < cut) {
      selected.push_back({r, std::move(*tokens)});
    } else {
      ++summary.images_dropped;
    }
  }
  summary.images_kept = selected.size();

  Vocabulary vocab;
  if (!selected.empty()) {
    std::vector<std::vector<std::string>> captions;
    captions.reserve(selected.size());
    for (const Selected& s : selected) captions.push_back(s.tokens);
    vocab = build_vocab(captions);
  }
  summary.vocab_size = vocab.size();

  const fs::path canvas_dir = out_dir / DatasetLayout::kCanvasDir;
  fs::create_directories(canvas_dir);

  std::vector<ImageOutcome> outcomes(selected.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= selected.size()) return;
      try {
        outcomes[i] = generate_for_image(selected[i], vocab, images_dir, canvas_dir, options, font);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = selected.size();
      }
    }
  };
  unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1U,
                                 static_cast<unsigned>(std::max<std::size_t>(selected.size(), 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<LabelRow> rows;
  for (ImageOutcome& o : outcomes) {
    if (o.warning) {
      log().warn("{}", *o.warning);
      summary.warnings.push_back(std::move(*o.warning));
      ++summary.images_skipped;
      continue;
    }
    summary.examples_written += o.rows.size();
    std::move(o.rows.begin(), o.rows.end(), std::back_inserter(rows));
  }

  std::ostringstream labels;
  write_labels(labels, rows);
  write_file_atomic(out_dir / DatasetLayout::kLabelsFile, labels.str());

  std::ostringstream vocab_text;
  vocab.write(vocab_text);
  write_file_atomic(out_dir / DatasetLayout::kVocabFile, vocab_text.str());

  const nlohmann::ordered_json manifest = {
      {"images_total", summary.images_total},
      {"images_kept", summary.images_kept},
      {"images_dropped", summary.images_dropped},
      {"images_skipped", summary.images_skipped},
      {"examples_written", summary.examples_written},
      {"vocab_size", summary.vocab_size},
      {"canvas_dir", std::string(DatasetLayout::kCanvasDir)},
      {"labels_file", std::string(DatasetLayout::kLabelsFile)},
      {"vocab_file", std::string(DatasetLayout::kVocabFile)},
  };
  write_file_atomic(out_dir / DatasetLayout::kManifestFile, manifest.dump(2) + "\n");
  return summary;
}

}  // namespace supercap
