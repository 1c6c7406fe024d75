#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "supercap/image.hpp"
#include "supercap/vocabulary.hpp"

namespace supercap {

/// Next-word classifier: canvas in, class index out.
class ClassifierPort {
 public:
  virtual ~ClassifierPort() = default;
  virtual ClassIndex predict(const Canvas& canvas) = 0;
};

inline constexpr int kFeatureSide = 28;
inline constexpr int kFeatureBlock = 8;
inline constexpr std::size_t kFeatureSize = kFeatureSide * kFeatureSide;

using FeatureVector = std::array<std::uint8_t, kFeatureSize>;

/// 28x28 grayscale thumbnail of a 224x224 canvas: each value is the mean of
/// (R+G+B)/3 over one 8x8 block, rounded half up. Throws InvalidArgument for
/// any other canvas size.
FeatureVector featurize(const Canvas& canvas);

std::uint64_t squared_distance(const FeatureVector& a, const FeatureVector& b) noexcept;

struct LabeledCanvas {
  Canvas canvas;
  ClassIndex label = 0;
};

/// Nearest-neighbour memorizer over canvas features. Immutable once built,
/// so concurrent predicts are safe.
class MemorizingModel final : public ClassifierPort {
 public:
  struct Entry {
    FeatureVector feature;
    ClassIndex label;
  };

  /// Throws InvalidArgument for an empty training set.
  static MemorizingModel train(std::span<const LabeledCanvas> examples);
  static MemorizingModel from_entries(std::vector<Entry> entries);

  /// Label of the closest entry by squared Euclidean distance; the earliest
  /// entry wins ties.
  ClassIndex predict(const Canvas& canvas) override;
  ClassIndex predict_feature(const FeatureVector& feature) const;

  std::span<const Entry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  explicit MemorizingModel(std::vector<Entry> entries) : entries_(std::move(entries)) {}

  std::vector<Entry> entries_;
};

/// Trains on a generated dataset: every row of `labels_path` paired with its
/// canvas under `canvas_dir`, in file order. Labels at or beyond
/// `vocab_size` (when non-zero) are rejected.
MemorizingModel load_memorizing_model(const std::filesystem::path& labels_path,
                                      const std::filesystem::path& canvas_dir,
                                      std::size_t vocab_size = 0);

}  // namespace supercap
