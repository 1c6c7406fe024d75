#include "supercap/classifier.hpp"

#include <limits>
#include <string>

#include "supercap/dataset.hpp"
#include "supercap/errors.hpp"
#include "supercap/image_io.hpp"

namespace supercap {

FeatureVector featurize(const Canvas& canvas) {
  constexpr int kSide = kFeatureSide * kFeatureBlock;
  if (canvas.width() != kSide || canvas.height() != kSide) {
    throw InvalidArgument("featurize: expected a " + std::to_string(kSide) + "x" +
                          std::to_string(kSide) + " canvas, got " + std::to_string(canvas.width()) +
                          "x" + std::to_string(canvas.height()));
  }
  // Mean of (R+G+B)/3 over 64 pixels = channel sum / 192.
  constexpr std::uint32_t kDivisor = kFeatureBlock * kFeatureBlock * 3;
  FeatureVector feature{};
  const auto px = canvas.bytes();
  for (int by = 0; by < kFeatureSide; ++by) {
    for (int bx = 0; bx < kFeatureSide; ++bx) {
      std::uint32_t sum = 0;
      for (int y = by * kFeatureBlock; y < (by + 1) * kFeatureBlock; ++y) {
        const std::size_t row = (static_cast<std::size_t>(y) * kSide + bx * kFeatureBlock) * 3;
        for (std::size_t i = 0; i < kFeatureBlock * 3; ++i) sum += px[row + i];
      }
      feature[static_cast<std::size_t>(by * kFeatureSide + bx)] =
          static_cast<std::uint8_t>((2 * sum + kDivisor) / (2 * kDivisor));
    }
  }
  return feature;
}

std::uint64_t squared_distance(const FeatureVector& a, const FeatureVector& b) noexcept {
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < kFeatureSize; ++i) {
    const int diff = static_cast<int>(a[i]) - static_cast<int>(b[i]);
    d += static_cast<std::uint64_t>(diff * diff);
  }
  return d;
}

MemorizingModel MemorizingModel::train(std::span<const LabeledCanvas> examples) {
  if (examples.empty()) throw InvalidArgument("memorizing model: no training examples");
  std::vector<Entry> entries;
  entries.reserve(examples.size());
  for (const LabeledCanvas& ex : examples) entries.push_back({featurize(ex.canvas), ex.label});
  return MemorizingModel(std::move(entries));
}

MemorizingModel MemorizingModel::from_entries(std::vector<Entry> entries) {
  if (entries.empty()) throw InvalidArgument("memorizing model: no training examples");
  return MemorizingModel(std::move(entries));
}

ClassIndex MemorizingModel::predict(const Canvas& canvas) { return predict_feature(featurize(canvas)); }

ClassIndex MemorizingModel::predict_feature(const FeatureVector& feature) const {
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  ClassIndex label = 0;
  for (const Entry& e : entries_) {
    const std::uint64_t d = squared_distance(feature, e.feature);
    if (d < best) {
      best = d;
      label = e.label;
      if (d == 0) break;
    }
  }
  return label;
}

MemorizingModel load_memorizing_model(const std::filesystem::path& labels_path,
                                      const std::filesystem::path& canvas_dir,
                                      std::size_t vocab_size) {
  const std::vector<LabelRow> rows = read_labels_file(labels_path);
  std::vector<MemorizingModel::Entry> entries;
  entries.reserve(rows.size());
  for (const LabelRow& row : rows) {
    if (vocab_size != 0 && row.label_index >= vocab_size) {
      throw InvalidArgument("labels file: class " + std::to_string(row.label_index) +
                            " of " + row.canvas_filename + " exceeds vocabulary size " +
                            std::to_string(vocab_size));
    }
    entries.push_back({featurize(read_image(canvas_dir / row.canvas_filename)), row.label_index});
  }
  return MemorizingModel::from_entries(std::move(entries));
}

}  // namespace supercap
