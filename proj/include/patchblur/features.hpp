#pragma once

#include <cstdint>
#include <vector>

#include "patchblur/image.hpp"

namespace patchblur {

/// Rectangular window into a GrayImage. Must be fully contained in the host
/// image and at least 3x3 (the minimum a 3x3 stencil supports). Border
/// handling for all features reflects *within the region*, so a region's
/// features depend only on its own pixels.
struct Region {
  int x0 = 0;
  int y0 = 0;
  int width = 0;
  int height = 0;
};

struct FeatureParams {
  double lbp_threshold = 0.016;  // intensity delta on the [0,1] scale
  int lbp_window = 21;           // odd, >= 3
  double epsilon = 1e-12;        // division guard for NGLV

  void validate() const;
};

/// Sobel responses of a region (sx: horizontal gradient kernel, sy: its
/// transpose) and optionally the Laplacian response.
struct GradientMaps {
  int width = 0;
  int height = 0;
  std::vector<double> sx;
  std::vector<double> sy;
  std::vector<double> lap;
};

struct MeanVar {
  double mean = 0.0;
  double variance = 0.0;
};

struct SharpnessMap {
  int width = 0;
  int height = 0;
  std::vector<double> values;  // window fractions in [0,1]
};

/// Number of scalar features a region contributes (Table variants build on
/// this fixed order): laplacian mean, laplacian variance, tenengrad mean,
/// NGLV, then LBP sharpness mean and variance when enabled.
inline constexpr int kBaseFeatureCount = 4;
inline constexpr int kLbpFeatureCount = 2;

Region whole_image(const GrayImage& img);
void validate_region(const GrayImage& img, const Region& r);

GradientMaps sobel_maps(const GrayImage& img, const Region& r);

/// Mean over the region of sx^2 + sy^2.
double tenengrad_mean(const GrayImage& img, const Region& r);

/// Population mean and variance of the 4-neighbour Laplacian response.
MeanVar laplacian_stats(const GrayImage& img, const Region& r);

/// Population variance of intensities divided by (mean + epsilon).
double nglv(const GrayImage& img, const Region& r, const FeatureParams& p);

/// Per-pixel rotation-invariant uniform LBP codes in {0..9}.
std::vector<std::uint8_t> lbp_riu2_codes(const GrayImage& img, const Region& r,
                                         const FeatureParams& p);

/// Fraction of codes in {6,7,8,9} inside each lbp_window x lbp_window
/// window (stride 1, valid positions only). Computed with an integral image
/// so the cost does not depend on the window size.
SharpnessMap lbp_sharpness_map(const GrayImage& img, const Region& r,
                               const FeatureParams& p);

MeanVar lbp_sharpness_stats(const GrayImage& img, const Region& r,
                            const FeatureParams& p);

/// Sharpness-map statistics straight from a code raster. This is the
/// windowing step of lbp_sharpness_map exposed for callers that already
/// have codes.
SharpnessMap window_fraction_map(const std::uint8_t* codes, int w, int h,
                                 int window);

/// Writes the region's features in fixed order into out (4 values, 6 with
/// with_lbp). Returns the number written.
int extract_features(const GrayImage& img, const Region& r,
                     const FeatureParams& p, bool with_lbp, double* out);

std::vector<double> extract_features(const GrayImage& img, const Region& r,
                                     const FeatureParams& p, bool with_lbp);

}  // namespace patchblur
