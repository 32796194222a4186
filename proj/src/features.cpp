#include "patchblur/features.hpp"

#include <cmath>
#include <cstring>

#include "patchblur/errors.hpp"
#include "patchblur/kernels.hpp"

namespace patchblur {
namespace {

std::vector<double> crop(const GrayImage& img, const Region& r) {
  std::vector<double> out(static_cast<std::size_t>(r.width) * r.height);
  for (int y = 0; y < r.height; ++y) {
    const double* src =
        img.data.data() + static_cast<std::size_t>(r.y0 + y) * img.width + r.x0;
    std::memcpy(out.data() + static_cast<std::size_t>(y) * r.width, src,
                static_cast<std::size_t>(r.width) * sizeof(double));
  }
  return out;
}

/// Mean computed as x0 + sum(x - x0)/n. Exact for constant input, which is
/// what makes variance exactly zero there.
MeanVar mean_var(const double* x, std::size_t n) {
  const auto& k = kernels::active();
  const double shift = x[0];
  const double mean = shift + k.sum_shifted(x, n, shift) / static_cast<double>(n);
  const double ssd = k.sum_sq_dev(x, n, mean);
  return {mean, ssd / static_cast<double>(n)};
}

std::vector<std::uint8_t> codes_from_crop(const std::vector<double>& buf, int w,
                                          int h, double threshold) {
  std::vector<std::uint8_t> codes(buf.size());
  kernels::active().lbp_codes(buf.data(), w, h, threshold, codes.data());
  return codes;
}

SharpnessMap sharpness_from_codes(const std::uint8_t* codes, int w, int h,
                                  int window) {
  // Integral image over the {6..9} indicator; (w+1) x (h+1) with a zero
  // first row/column. Counts are integers, so sums stay exact.
  const int iw = w + 1;
  std::vector<double> integral(static_cast<std::size_t>(iw) * (h + 1), 0.0);
  for (int y = 0; y < h; ++y) {
    const std::uint8_t* row = codes + static_cast<std::size_t>(y) * w;
    const double* prev = integral.data() + static_cast<std::size_t>(y) * iw;
    double* cur = integral.data() + static_cast<std::size_t>(y + 1) * iw;
    double run = 0.0;
    for (int x = 0; x < w; ++x) {
      run += row[x] >= 6 ? 1.0 : 0.0;
      cur[x + 1] = prev[x + 1] + run;
    }
  }

  SharpnessMap map;
  map.width = w - window + 1;
  map.height = h - window + 1;
  map.values.resize(static_cast<std::size_t>(map.width) * map.height);
  kernels::active().box_fraction(integral.data(), iw, window, map.width,
                                 map.height, map.values.data());
  return map;
}

}  // namespace

void FeatureParams::validate() const {
  if (lbp_window < 3 || lbp_window % 2 == 0) {
    raise(Errc::InvalidArgument, "lbp_window must be odd and >= 3");
  }
  if (!(lbp_threshold >= 0.0)) {
    raise(Errc::InvalidArgument, "lbp_threshold must be >= 0");
  }
  if (!(epsilon > 0.0)) {
    raise(Errc::InvalidArgument, "epsilon must be > 0");
  }
}

Region whole_image(const GrayImage& img) {
  return {0, 0, img.width, img.height};
}

void validate_region(const GrayImage& img, const Region& r) {
  if (r.width < 3 || r.height < 3) {
    raise(Errc::RegionTooSmall, "regions must be at least 3x3");
  }
  if (r.x0 < 0 || r.y0 < 0 || r.x0 + r.width > img.width ||
      r.y0 + r.height > img.height) {
    raise(Errc::InvalidArgument, "region not contained in image");
  }
}

GradientMaps sobel_maps(const GrayImage& img, const Region& r) {
  validate_region(img, r);
  const std::vector<double> buf = crop(img, r);
  GradientMaps maps;
  maps.width = r.width;
  maps.height = r.height;
  maps.sx.resize(buf.size());
  maps.sy.resize(buf.size());
  kernels::active().sobel_pair(buf.data(), r.width, r.height, maps.sx.data(),
                               maps.sy.data());
  return maps;
}

double tenengrad_mean(const GrayImage& img, const Region& r) {
  validate_region(img, r);
  const std::vector<double> buf = crop(img, r);
  std::vector<double> sx(buf.size());
  std::vector<double> sy(buf.size());
  const auto& k = kernels::active();
  k.sobel_pair(buf.data(), r.width, r.height, sx.data(), sy.data());
  return k.sum_sq_pair(sx.data(), sy.data(), buf.size()) /
         static_cast<double>(buf.size());
}

MeanVar laplacian_stats(const GrayImage& img, const Region& r) {
  validate_region(img, r);
  const std::vector<double> buf = crop(img, r);
  std::vector<double> lap(buf.size());
  kernels::active().laplacian4(buf.data(), r.width, r.height, lap.data());
  return mean_var(lap.data(), lap.size());
}

double nglv(const GrayImage& img, const Region& r, const FeatureParams& p) {
  validate_region(img, r);
  p.validate();
  const std::vector<double> buf = crop(img, r);
  const MeanVar mv = mean_var(buf.data(), buf.size());
  return mv.variance / (mv.mean + p.epsilon);
}

std::vector<std::uint8_t> lbp_riu2_codes(const GrayImage& img, const Region& r,
                                         const FeatureParams& p) {
  validate_region(img, r);
  p.validate();
  const std::vector<double> buf = crop(img, r);
  return codes_from_crop(buf, r.width, r.height, p.lbp_threshold);
}

SharpnessMap window_fraction_map(const std::uint8_t* codes, int w, int h,
                                 int window) {
  if (window < 3 || window % 2 == 0) {
    raise(Errc::InvalidArgument, "lbp_window must be odd and >= 3");
  }
  if (window > w || window > h) {
    raise(Errc::WindowLargerThanRegion,
          "sharpness window exceeds the code raster");
  }
  return sharpness_from_codes(codes, w, h, window);
}

SharpnessMap lbp_sharpness_map(const GrayImage& img, const Region& r,
                               const FeatureParams& p) {
  validate_region(img, r);
  p.validate();
  if (p.lbp_window > r.width || p.lbp_window > r.height) {
    raise(Errc::WindowLargerThanRegion,
          "lbp_window exceeds the region dimensions");
  }
  const std::vector<double> buf = crop(img, r);
  const std::vector<std::uint8_t> codes =
      codes_from_crop(buf, r.width, r.height, p.lbp_threshold);
  return sharpness_from_codes(codes.data(), r.width, r.height, p.lbp_window);
}

MeanVar lbp_sharpness_stats(const GrayImage& img, const Region& r,
                            const FeatureParams& p) {
  const SharpnessMap map = lbp_sharpness_map(img, r, p);
  return mean_var(map.values.data(), map.values.size());
}

int extract_features(const GrayImage& img, const Region& r,
                     const FeatureParams& p, bool with_lbp, double* out) {
  validate_region(img, r);
  p.validate();
  const std::vector<double> buf = crop(img, r);
  const std::size_t n = buf.size();
  const auto& k = kernels::active();

  std::vector<double> a(n);
  std::vector<double> b(n);

  k.laplacian4(buf.data(), r.width, r.height, a.data());
  const MeanVar lap = mean_var(a.data(), n);
  out[0] = lap.mean;
  out[1] = lap.variance;

  k.sobel_pair(buf.data(), r.width, r.height, a.data(), b.data());
  out[2] = k.sum_sq_pair(a.data(), b.data(), n) / static_cast<double>(n);

  const MeanVar intensity = mean_var(buf.data(), n);
  out[3] = intensity.variance / (intensity.mean + p.epsilon);

  if (!with_lbp) return kBaseFeatureCount;

  if (p.lbp_window > r.width || p.lbp_window > r.height) {
    raise(Errc::WindowLargerThanRegion,
          "lbp_window exceeds the region dimensions");
  }
  const std::vector<std::uint8_t> codes =
      codes_from_crop(buf, r.width, r.height, p.lbp_threshold);
  const SharpnessMap map =
      sharpness_from_codes(codes.data(), r.width, r.height, p.lbp_window);
  const MeanVar sharp = mean_var(map.values.data(), map.values.size());
  out[4] = sharp.mean;
  out[5] = sharp.variance;
  return kBaseFeatureCount + kLbpFeatureCount;
}

std::vector<double> extract_features(const GrayImage& img, const Region& r,
                                     const FeatureParams& p, bool with_lbp) {
  std::vector<double> out(with_lbp ? kBaseFeatureCount + kLbpFeatureCount
                                   : kBaseFeatureCount);
  extract_features(img, r, p, with_lbp, out.data());
  return out;
}

}  // namespace patchblur
