#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <vector>

namespace patchblur {

struct DatasetEntry {
  std::filesystem::path path;
  int label;  // 0 = sharp, 1 = blur
};

struct DatasetManifest {
  std::vector<DatasetEntry> entries;
  std::array<std::size_t, 2> class_counts{0, 0};  // indexed by label

  bool single_class() const {
    return class_counts[0] == 0 || class_counts[1] == 0;
  }
};

/// Enumerates the labelled directory convention: files under `sharp/` get
/// label 0; files under `blur/`, `defocused_blurred/` or `motion_blurred/`
/// get label 1 (the two blur flavours are one class). Entries are sorted
/// lexicographically by path, independent of filesystem enumeration order.
///
/// Throws EmptyDataset when nothing decodable is found. When
/// require_both_classes is set, a single-class tree raises MissingClass;
/// otherwise callers can check manifest.single_class() and warn.
DatasetManifest scan_dataset(const std::filesystem::path& root,
                             bool require_both_classes = false);

/// Lists PNG/JPEG files directly inside dir (no labels), sorted
/// lexicographically. Throws EmptyDataset when none are found.
std::vector<std::filesystem::path> scan_images_flat(
    const std::filesystem::path& dir);

bool has_image_extension(const std::filesystem::path& path);

/// True when root looks like the labelled layout (has at least one of the
/// class subdirectories).
bool looks_like_labeled_dataset(const std::filesystem::path& root);

}  // namespace patchblur
