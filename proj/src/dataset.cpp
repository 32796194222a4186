#include "patchblur/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "patchblur/errors.hpp"

namespace patchblur {
namespace {

struct ClassDir {
  const char* name;
  int label;
};

constexpr ClassDir kClassDirs[] = {
    {"sharp", 0},
    {"blur", 1},
    {"defocused_blurred", 1},
    {"motion_blurred", 1},
};

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

void collect_dir(const std::filesystem::path& dir, int label,
                 std::vector<DatasetEntry>& out) {
  std::error_code ec;
  for (std::filesystem::directory_iterator it(dir, ec), end; !ec && it != end;
       it.increment(ec)) {
    if (!it->is_regular_file(ec)) continue;
    if (has_image_extension(it->path())) out.push_back({it->path(), label});
  }
}

}  // namespace

bool has_image_extension(const std::filesystem::path& path) {
  const std::string ext = lower_extension(path);
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

bool looks_like_labeled_dataset(const std::filesystem::path& root) {
  std::error_code ec;
  for (const ClassDir& cd : kClassDirs) {
    if (std::filesystem::is_directory(root / cd.name, ec)) return true;
  }
  return false;
}

DatasetManifest scan_dataset(const std::filesystem::path& root,
                             bool require_both_classes) {
  DatasetManifest manifest;
  for (const ClassDir& cd : kClassDirs) {
    const std::filesystem::path dir = root / cd.name;
    std::error_code ec;
    if (std::filesystem::is_directory(dir, ec)) {
      collect_dir(dir, cd.label, manifest.entries);
    }
  }
  if (manifest.entries.empty()) {
    raise(Errc::EmptyDataset, "no images found under " + root.string());
  }
  std::sort(manifest.entries.begin(), manifest.entries.end(),
            [](const DatasetEntry& a, const DatasetEntry& b) {
              return a.path.generic_string() < b.path.generic_string();
            });
  for (const DatasetEntry& e : manifest.entries) {
    manifest.class_counts[static_cast<std::size_t>(e.label)]++;
  }
  if (require_both_classes && manifest.single_class()) {
    raise(Errc::MissingClass,
          "dataset under " + root.string() + " contains only one class");
  }
  return manifest;
}

std::vector<std::filesystem::path> scan_images_flat(
    const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (std::filesystem::directory_iterator it(dir, ec), end; !ec && it != end;
       it.increment(ec)) {
    if (!it->is_regular_file(ec)) continue;
    if (has_image_extension(it->path())) files.push_back(it->path());
  }
  if (files.empty()) {
    raise(Errc::EmptyDataset, "no images found under " + dir.string());
  }
  std::sort(files.begin(), files.end(),
            [](const std::filesystem::path& a, const std::filesystem::path& b) {
              return a.generic_string() < b.generic_string();
            });
  return files;
}

}  // namespace patchblur
