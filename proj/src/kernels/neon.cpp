// NEON variants (aarch64). Two pixels per vector step; a pair of 2-lane
// accumulators reproduces the 4-lane reduction contract exactly.

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cstddef>
#include <cstdint>

#include "patchblur/kernels.hpp"
#include "stencil_detail.hpp"

namespace patchblur::kernels {
namespace {

using namespace detail;

inline double combine_lanes(float64x2_t acc01, float64x2_t acc23) {
  const double l0 = vgetq_lane_f64(acc01, 0);
  const double l1 = vgetq_lane_f64(acc01, 1);
  const double l2 = vgetq_lane_f64(acc23, 0);
  const double l3 = vgetq_lane_f64(acc23, 1);
  return ((l0 + l1) + l2) + l3;
}

void sobel_pair_neon(const double* src, int w, int h, double* sx, double* sy) {
  const float64x2_t two = vdupq_n_f64(2.0);
  for (int y = 0; y < h; ++y) {
    const double* r0 = src + static_cast<std::size_t>(reflect_lo(y - 1)) * w;
    const double* r1 = src + static_cast<std::size_t>(y) * w;
    const double* r2 = src + static_cast<std::size_t>(reflect_hi(y + 1, h)) * w;
    double* ox = sx + static_cast<std::size_t>(y) * w;
    double* oy = sy + static_cast<std::size_t>(y) * w;

    ox[0] = sobel_x_at(r0, r1, r2, reflect_lo(-1), reflect_hi(1, w));
    oy[0] = sobel_y_at(r0, r2, reflect_lo(-1), 0, reflect_hi(1, w));

    int c = 1;
    for (; c + 2 <= w - 1; c += 2) {
      const float64x2_t t0 = vsubq_f64(vld1q_f64(r0 + c + 1), vld1q_f64(r0 + c - 1));
      const float64x2_t t1 = vsubq_f64(vld1q_f64(r1 + c + 1), vld1q_f64(r1 + c - 1));
      const float64x2_t t2 = vsubq_f64(vld1q_f64(r2 + c + 1), vld1q_f64(r2 + c - 1));
      vst1q_f64(ox + c, vaddq_f64(vaddq_f64(t0, vmulq_f64(two, t1)), t2));

      const float64x2_t bottom = vaddq_f64(
          vaddq_f64(vld1q_f64(r2 + c - 1), vmulq_f64(two, vld1q_f64(r2 + c))),
          vld1q_f64(r2 + c + 1));
      const float64x2_t top = vaddq_f64(
          vaddq_f64(vld1q_f64(r0 + c - 1), vmulq_f64(two, vld1q_f64(r0 + c))),
          vld1q_f64(r0 + c + 1));
      vst1q_f64(oy + c, vsubq_f64(bottom, top));
    }
    for (; c < w - 1; ++c) {
      ox[c] = sobel_x_at(r0, r1, r2, c - 1, c + 1);
      oy[c] = sobel_y_at(r0, r2, c - 1, c, c + 1);
    }
    if (w - 1 > 0) {
      ox[w - 1] = sobel_x_at(r0, r1, r2, w - 2, reflect_hi(w, w));
      oy[w - 1] = sobel_y_at(r0, r2, w - 2, w - 1, reflect_hi(w, w));
    }
  }
}

void laplacian4_neon(const double* src, int w, int h, double* out) {
  const float64x2_t four = vdupq_n_f64(4.0);
  for (int y = 0; y < h; ++y) {
    const double* r0 = src + static_cast<std::size_t>(reflect_lo(y - 1)) * w;
    const double* r1 = src + static_cast<std::size_t>(y) * w;
    const double* r2 = src + static_cast<std::size_t>(reflect_hi(y + 1, h)) * w;
    double* o = out + static_cast<std::size_t>(y) * w;

    o[0] = laplacian4_at(r0, r1, r2, reflect_lo(-1), 0, reflect_hi(1, w));
    int c = 1;
    for (; c + 2 <= w - 1; c += 2) {
      const float64x2_t vert = vaddq_f64(vld1q_f64(r0 + c), vld1q_f64(r2 + c));
      const float64x2_t horiz =
          vaddq_f64(vld1q_f64(r1 + c - 1), vld1q_f64(r1 + c + 1));
      const float64x2_t center = vmulq_f64(four, vld1q_f64(r1 + c));
      vst1q_f64(o + c, vsubq_f64(vaddq_f64(vert, horiz), center));
    }
    for (; c < w - 1; ++c) o[c] = laplacian4_at(r0, r1, r2, c - 1, c, c + 1);
    if (w - 1 > 0) {
      o[w - 1] = laplacian4_at(r0, r1, r2, w - 2, w - 1, reflect_hi(w, w));
    }
  }
}

void lbp_codes_neon(const double* src, int w, int h, double threshold,
                    std::uint8_t* codes) {
  const float64x2_t thr = vdupq_n_f64(threshold);
  for (int y = 0; y < h; ++y) {
    const double* r0 = src + static_cast<std::size_t>(reflect_lo(y - 1)) * w;
    const double* r1 = src + static_cast<std::size_t>(y) * w;
    const double* r2 = src + static_cast<std::size_t>(reflect_hi(y + 1, h)) * w;
    std::uint8_t* o = codes + static_cast<std::size_t>(y) * w;

    o[0] = lbp_code_at(r0, r1, r2, reflect_lo(-1), 0, reflect_hi(1, w),
                       threshold);
    int c = 1;
    for (; c + 2 <= w - 1; c += 2) {
      const float64x2_t ref = vaddq_f64(vld1q_f64(r1 + c), thr);
      const double* neigh[8] = {r0 + c - 1, r0 + c, r0 + c + 1, r1 + c + 1,
                                r2 + c + 1, r2 + c, r2 + c - 1, r1 + c - 1};
      unsigned pattern[2] = {0, 0};
      for (int k = 0; k < 8; ++k) {
        const uint64x2_t gt = vcgtq_f64(vld1q_f64(neigh[k]), ref);
        pattern[0] |= static_cast<unsigned>(vgetq_lane_u64(gt, 0) & 1u) << k;
        pattern[1] |= static_cast<unsigned>(vgetq_lane_u64(gt, 1) & 1u) << k;
      }
      o[c] = kRiu2Table[pattern[0]];
      o[c + 1] = kRiu2Table[pattern[1]];
    }
    for (; c < w - 1; ++c) {
      o[c] = lbp_code_at(r0, r1, r2, c - 1, c, c + 1, threshold);
    }
    if (w - 1 > 0) {
      o[w - 1] = lbp_code_at(r0, r1, r2, w - 2, w - 1, reflect_hi(w, w),
                             threshold);
    }
  }
}

double sum_shifted_neon(const double* x, std::size_t n, double shift) {
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  const float64x2_t vshift = vdupq_n_f64(shift);
  const std::size_t n4 = n & ~std::size_t{3};
  for (std::size_t i = 0; i < n4; i += 4) {
    acc01 = vaddq_f64(acc01, vsubq_f64(vld1q_f64(x + i), vshift));
    acc23 = vaddq_f64(acc23, vsubq_f64(vld1q_f64(x + i + 2), vshift));
  }
  double total = combine_lanes(acc01, acc23);
  for (std::size_t i = n4; i < n; ++i) total += x[i] - shift;
  return total;
}

double sum_sq_dev_neon(const double* x, std::size_t n, double mean) {
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  const float64x2_t vmean = vdupq_n_f64(mean);
  const std::size_t n4 = n & ~std::size_t{3};
  for (std::size_t i = 0; i < n4; i += 4) {
    const float64x2_t d01 = vsubq_f64(vld1q_f64(x + i), vmean);
    const float64x2_t d23 = vsubq_f64(vld1q_f64(x + i + 2), vmean);
    acc01 = vaddq_f64(acc01, vmulq_f64(d01, d01));
    acc23 = vaddq_f64(acc23, vmulq_f64(d23, d23));
  }
  double total = combine_lanes(acc01, acc23);
  for (std::size_t i = n4; i < n; ++i) {
    const double d = x[i] - mean;
    total += d * d;
  }
  return total;
}

double sum_sq_pair_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  const std::size_t n4 = n & ~std::size_t{3};
  for (std::size_t i = 0; i < n4; i += 4) {
    const float64x2_t a01 = vld1q_f64(a + i);
    const float64x2_t b01 = vld1q_f64(b + i);
    const float64x2_t a23 = vld1q_f64(a + i + 2);
    const float64x2_t b23 = vld1q_f64(b + i + 2);
    acc01 = vaddq_f64(
        acc01, vaddq_f64(vmulq_f64(a01, a01), vmulq_f64(b01, b01)));
    acc23 = vaddq_f64(
        acc23, vaddq_f64(vmulq_f64(a23, a23), vmulq_f64(b23, b23)));
  }
  double total = combine_lanes(acc01, acc23);
  for (std::size_t i = n4; i < n; ++i) total += a[i] * a[i] + b[i] * b[i];
  return total;
}

void box_fraction_neon(const double* integral, int integral_w, int win,
                       int out_w, int out_h, double* out) {
  const double area = static_cast<double>(win) * static_cast<double>(win);
  const float64x2_t varea = vdupq_n_f64(area);
  for (int y = 0; y < out_h; ++y) {
    const double* top = integral + static_cast<std::size_t>(y) * integral_w;
    const double* bot =
        integral + static_cast<std::size_t>(y + win) * integral_w;
    double* o = out + static_cast<std::size_t>(y) * out_w;
    int x = 0;
    for (; x + 2 <= out_w; x += 2) {
      const float64x2_t count = vaddq_f64(
          vsubq_f64(vsubq_f64(vld1q_f64(bot + x + win), vld1q_f64(top + x + win)),
                    vld1q_f64(bot + x)),
          vld1q_f64(top + x));
      vst1q_f64(o + x, vdivq_f64(count, varea));
    }
    for (; x < out_w; ++x) {
      o[x] = box_fraction_at(integral, integral_w, win, area, x, y);
    }
  }
}

constexpr KernelTable kNeonTable = {
    sobel_pair_neon, laplacian4_neon, lbp_codes_neon,
    sum_shifted_neon, sum_sq_dev_neon, sum_sq_pair_neon,
    box_fraction_neon,
};

}  // namespace

const KernelTable* detail::neon_table() { return &kNeonTable; }

}  // namespace patchblur::kernels

#endif  // __aarch64__
