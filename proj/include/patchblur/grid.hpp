#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "patchblur/features.hpp"
#include "patchblur/image.hpp"

namespace patchblur {

/// The feature-vector layouts the classifier consumes. Grid variants carry
/// one feature block per cell in row-major order; GridGlobalLbp appends the
/// whole-image LBP statistics after the per-cell blocks.
enum class Variant {
  Global,         // 4 features
  GlobalLbp,      // 6
  Grid,           // 4 g^2
  GridGlobalLbp,  // 4 g^2 + 2
  GridLbp,        // 6 g^2
};

const char* variant_name(Variant v);
std::optional<Variant> variant_from_name(std::string_view name);
bool variant_uses_grid(Variant v);
bool variant_uses_lbp(Variant v);

struct FeatureConfig {
  Variant variant = Variant::GridLbp;
  int grid = 7;  // in {1,3,5,7}; ignored for the Global variants
  FeatureParams params;

  std::size_t vector_length() const;
  void validate() const;

  /// Canonical identifier binding a vector or model to its extraction
  /// settings, e.g. "lbp-grid;g=7;t=0.016;w=21;eps=1e-12". Parseable, so a
  /// model file alone determines how to extract features for it.
  std::string config_id() const;
  static FeatureConfig from_id(const std::string& id);
};

struct FeatureVector {
  std::vector<double> values;
  std::string config_id;
};

/// Splits the image into g x g disjoint regions covering it exactly, in
/// row-major order. Cell widths are floor(width/g), with the remainder
/// going one pixel each to the last (width mod g) columns; same for rows.
std::vector<Region> split_grid(const GrayImage& img, int g);

/// Largest usable LBP window for a patch: the configured window, shrunk to
/// the largest odd value that fits min(width, height).
int effective_lbp_window(int configured, int width, int height);

/// Extracts the configured descriptor. Patch extractions are independent
/// and run across `threads` workers when asked; the output layout is
/// position-determined, so results are identical for any thread count.
FeatureVector extract_vector(const GrayImage& img, const FeatureConfig& cfg,
                             unsigned threads = 1);

}  // namespace patchblur
