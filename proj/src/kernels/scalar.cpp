// Scalar reference kernels. Every other backend is equivalence-tested against
// this translation unit, bit for bit.

#include <cstddef>
#include <cstdint>

#include "patchblur/kernels.hpp"
#include "stencil_detail.hpp"

namespace patchblur::kernels {
namespace {

using namespace detail;

void sobel_pair_scalar(const double* src, int w, int h, double* sx, double* sy) {
  for (int y = 0; y < h; ++y) {
    const double* r0 = src + static_cast<std::size_t>(reflect_lo(y - 1)) * w;
    const double* r1 = src + static_cast<std::size_t>(y) * w;
    const double* r2 = src + static_cast<std::size_t>(reflect_hi(y + 1, h)) * w;
    double* ox = sx + static_cast<std::size_t>(y) * w;
    double* oy = sy + static_cast<std::size_t>(y) * w;
    for (int c = 0; c < w; ++c) {
      const int cl = reflect_lo(c - 1);
      const int cr = reflect_hi(c + 1, w);
      ox[c] = sobel_x_at(r0, r1, r2, cl, cr);
      oy[c] = sobel_y_at(r0, r2, cl, c, cr);
    }
  }
}

void laplacian4_scalar(const double* src, int w, int h, double* out) {
  for (int y = 0; y < h; ++y) {
    const double* r0 = src + static_cast<std::size_t>(reflect_lo(y - 1)) * w;
    const double* r1 = src + static_cast<std::size_t>(y) * w;
    const double* r2 = src + static_cast<std::size_t>(reflect_hi(y + 1, h)) * w;
    double* o = out + static_cast<std::size_t>(y) * w;
    for (int c = 0; c < w; ++c) {
      const int cl = reflect_lo(c - 1);
      const int cr = reflect_hi(c + 1, w);
      o[c] = laplacian4_at(r0, r1, r2, cl, c, cr);
    }
  }
}

void lbp_codes_scalar(const double* src, int w, int h, double threshold,
                      std::uint8_t* codes) {
  for (int y = 0; y < h; ++y) {
    const double* r0 = src + static_cast<std::size_t>(reflect_lo(y - 1)) * w;
    const double* r1 = src + static_cast<std::size_t>(y) * w;
    const double* r2 = src + static_cast<std::size_t>(reflect_hi(y + 1, h)) * w;
    std::uint8_t* o = codes + static_cast<std::size_t>(y) * w;
    for (int c = 0; c < w; ++c) {
      const int cl = reflect_lo(c - 1);
      const int cr = reflect_hi(c + 1, w);
      o[c] = lbp_code_at(r0, r1, r2, cl, c, cr, threshold);
    }
  }
}

double sum_shifted_scalar(const double* x, std::size_t n, double shift) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t n4 = n & ~std::size_t{3};
  for (std::size_t i = 0; i < n4; i += 4) {
    lane[0] += x[i] - shift;
    lane[1] += x[i + 1] - shift;
    lane[2] += x[i + 2] - shift;
    lane[3] += x[i + 3] - shift;
  }
  double total = ((lane[0] + lane[1]) + lane[2]) + lane[3];
  for (std::size_t i = n4; i < n; ++i) total += x[i] - shift;
  return total;
}

double sum_sq_dev_scalar(const double* x, std::size_t n, double mean) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t n4 = n & ~std::size_t{3};
  for (std::size_t i = 0; i < n4; i += 4) {
    const double d0 = x[i] - mean;
    const double d1 = x[i + 1] - mean;
    const double d2 = x[i + 2] - mean;
    const double d3 = x[i + 3] - mean;
    lane[0] += d0 * d0;
    lane[1] += d1 * d1;
    lane[2] += d2 * d2;
    lane[3] += d3 * d3;
  }
  double total = ((lane[0] + lane[1]) + lane[2]) + lane[3];
  for (std::size_t i = n4; i < n; ++i) {
    const double d = x[i] - mean;
    total += d * d;
  }
  return total;
}

double sum_sq_pair_scalar(const double* a, const double* b, std::size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t n4 = n & ~std::size_t{3};
  for (std::size_t i = 0; i < n4; i += 4) {
    lane[0] += a[i] * a[i] + b[i] * b[i];
    lane[1] += a[i + 1] * a[i + 1] + b[i + 1] * b[i + 1];
    lane[2] += a[i + 2] * a[i + 2] + b[i + 2] * b[i + 2];
    lane[3] += a[i + 3] * a[i + 3] + b[i + 3] * b[i + 3];
  }
  double total = ((lane[0] + lane[1]) + lane[2]) + lane[3];
  for (std::size_t i = n4; i < n; ++i) total += a[i] * a[i] + b[i] * b[i];
  return total;
}

void box_fraction_scalar(const double* integral, int integral_w, int win,
                         int out_w, int out_h, double* out) {
  const double area = static_cast<double>(win) * static_cast<double>(win);
  for (int y = 0; y < out_h; ++y) {
    double* o = out + static_cast<std::size_t>(y) * out_w;
    for (int x = 0; x < out_w; ++x) {
      o[x] = box_fraction_at(integral, integral_w, win, area, x, y);
    }
  }
}

constexpr KernelTable kScalarTable = {
    sobel_pair_scalar, laplacian4_scalar, lbp_codes_scalar,
    sum_shifted_scalar, sum_sq_dev_scalar, sum_sq_pair_scalar,
    box_fraction_scalar,
};

}  // namespace

const KernelTable& detail::scalar_table() { return kScalarTable; }

}  // namespace patchblur::kernels
