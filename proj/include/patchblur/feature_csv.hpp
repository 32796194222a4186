#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace patchblur {

/// Dense row-major feature matrix shared by the CSV layer, the trainer and
/// the evaluator.
struct FeatureMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * cols, cols};
  }
  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

struct FeatureTable {
  std::vector<int> labels;  // 0/1, or -1 for unlabeled rows
  FeatureMatrix X;
};

/// Feature CSV: header `label,f0,f1,...`, one row per image. Values are
/// written with shortest round-trip formatting, so write/read is lossless.
/// The write is atomic (temp file + rename).
void write_feature_csv(const std::filesystem::path& path,
                       const FeatureTable& table);

FeatureTable read_feature_csv(const std::filesystem::path& path);

}  // namespace patchblur
