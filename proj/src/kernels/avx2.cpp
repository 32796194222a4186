// AVX2 variants. Same arithmetic, same order, four pixels per step; edge
// columns and reduction tails fall back to the shared per-pixel helpers so
// results stay bit-identical to the scalar reference.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cstddef>
#include <cstdint>

#include "patchblur/kernels.hpp"
#include "stencil_detail.hpp"

namespace patchblur::kernels {
namespace {

using namespace detail;

inline double combine_lanes(__m256d acc) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  return ((lane[0] + lane[1]) + lane[2]) + lane[3];
}

void sobel_pair_avx2(const double* src, int w, int h, double* sx, double* sy) {
  const __m256d two = _mm256_set1_pd(2.0);
  for (int y = 0; y < h; ++y) {
    const double* r0 = src + static_cast<std::size_t>(reflect_lo(y - 1)) * w;
    const double* r1 = src + static_cast<std::size_t>(y) * w;
    const double* r2 = src + static_cast<std::size_t>(reflect_hi(y + 1, h)) * w;
    double* ox = sx + static_cast<std::size_t>(y) * w;
    double* oy = sy + static_cast<std::size_t>(y) * w;

    ox[0] = sobel_x_at(r0, r1, r2, reflect_lo(-1), reflect_hi(1, w));
    oy[0] = sobel_y_at(r0, r2, reflect_lo(-1), 0, reflect_hi(1, w));

    int c = 1;
    for (; c + 4 <= w - 1; c += 4) {
      const __m256d t0 = _mm256_sub_pd(_mm256_loadu_pd(r0 + c + 1),
                                       _mm256_loadu_pd(r0 + c - 1));
      const __m256d t1 = _mm256_sub_pd(_mm256_loadu_pd(r1 + c + 1),
                                       _mm256_loadu_pd(r1 + c - 1));
      const __m256d t2 = _mm256_sub_pd(_mm256_loadu_pd(r2 + c + 1),
                                       _mm256_loadu_pd(r2 + c - 1));
      _mm256_storeu_pd(
          ox + c,
          _mm256_add_pd(_mm256_add_pd(t0, _mm256_mul_pd(two, t1)), t2));

      const __m256d bottom = _mm256_add_pd(
          _mm256_add_pd(_mm256_loadu_pd(r2 + c - 1),
                        _mm256_mul_pd(two, _mm256_loadu_pd(r2 + c))),
          _mm256_loadu_pd(r2 + c + 1));
      const __m256d top = _mm256_add_pd(
          _mm256_add_pd(_mm256_loadu_pd(r0 + c - 1),
                        _mm256_mul_pd(two, _mm256_loadu_pd(r0 + c))),
          _mm256_loadu_pd(r0 + c + 1));
      _mm256_storeu_pd(oy + c, _mm256_sub_pd(bottom, top));
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

void laplacian4_avx2(const double* src, int w, int h, double* out) {
  const __m256d four = _mm256_set1_pd(4.0);
  for (int y = 0; y < h; ++y) {
    const double* r0 = src + static_cast<std::size_t>(reflect_lo(y - 1)) * w;
    const double* r1 = src + static_cast<std::size_t>(y) * w;
    const double* r2 = src + static_cast<std::size_t>(reflect_hi(y + 1, h)) * w;
    double* o = out + static_cast<std::size_t>(y) * w;

    o[0] = laplacian4_at(r0, r1, r2, reflect_lo(-1), 0, reflect_hi(1, w));
    int c = 1;
    for (; c + 4 <= w - 1; c += 4) {
      const __m256d vert =
          _mm256_add_pd(_mm256_loadu_pd(r0 + c), _mm256_loadu_pd(r2 + c));
      const __m256d horiz = _mm256_add_pd(_mm256_loadu_pd(r1 + c - 1),
                                          _mm256_loadu_pd(r1 + c + 1));
      const __m256d center = _mm256_mul_pd(four, _mm256_loadu_pd(r1 + c));
      _mm256_storeu_pd(o + c,
                       _mm256_sub_pd(_mm256_add_pd(vert, horiz), center));
    }
    for (; c < w - 1; ++c) o[c] = laplacian4_at(r0, r1, r2, c - 1, c, c + 1);
    if (w - 1 > 0) {
      o[w - 1] = laplacian4_at(r0, r1, r2, w - 2, w - 1, reflect_hi(w, w));
    }
  }
}

void lbp_codes_avx2(const double* src, int w, int h, double threshold,
                    std::uint8_t* codes) {
  const __m256d thr = _mm256_set1_pd(threshold);
  for (int y = 0; y < h; ++y) {
    const double* r0 = src + static_cast<std::size_t>(reflect_lo(y - 1)) * w;
    const double* r1 = src + static_cast<std::size_t>(y) * w;
    const double* r2 = src + static_cast<std::size_t>(reflect_hi(y + 1, h)) * w;
    std::uint8_t* o = codes + static_cast<std::size_t>(y) * w;

    o[0] = lbp_code_at(r0, r1, r2, reflect_lo(-1), 0, reflect_hi(1, w),
                       threshold);
    int c = 1;
    for (; c + 4 <= w - 1; c += 4) {
      const __m256d ref = _mm256_add_pd(_mm256_loadu_pd(r1 + c), thr);
      // Neighbours in the circular bit order of kLbpOffsets.
      const double* neigh[8] = {r0 + c - 1, r0 + c, r0 + c + 1, r1 + c + 1,
                                r2 + c + 1, r2 + c, r2 + c - 1, r1 + c - 1};
      unsigned pattern[4] = {0, 0, 0, 0};
      for (int k = 0; k < 8; ++k) {
        const __m256d gt =
            _mm256_cmp_pd(_mm256_loadu_pd(neigh[k]), ref, _CMP_GT_OQ);
        const unsigned mask = static_cast<unsigned>(_mm256_movemask_pd(gt));
        pattern[0] |= (mask & 1u) << k;
        pattern[1] |= ((mask >> 1) & 1u) << k;
        pattern[2] |= ((mask >> 2) & 1u) << k;
        pattern[3] |= ((mask >> 3) & 1u) << k;
      }
      o[c] = kRiu2Table[pattern[0]];
      o[c + 1] = kRiu2Table[pattern[1]];
      o[c + 2] = kRiu2Table[pattern[2]];
      o[c + 3] = kRiu2Table[pattern[3]];
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

double sum_shifted_avx2(const double* x, std::size_t n, double shift) {
  __m256d acc = _mm256_setzero_pd();
  const __m256d vshift = _mm256_set1_pd(shift);
  const std::size_t n4 = n & ~std::size_t{3};
  for (std::size_t i = 0; i < n4; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_sub_pd(_mm256_loadu_pd(x + i), vshift));
  }
  double total = combine_lanes(acc);
  for (std::size_t i = n4; i < n; ++i) total += x[i] - shift;
  return total;
}

double sum_sq_dev_avx2(const double* x, std::size_t n, double mean) {
  __m256d acc = _mm256_setzero_pd();
  const __m256d vmean = _mm256_set1_pd(mean);
  const std::size_t n4 = n & ~std::size_t{3};
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), vmean);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double total = combine_lanes(acc);
  for (std::size_t i = n4; i < n; ++i) {
    const double d = x[i] - mean;
    total += d * d;
  }
  return total;
}

double sum_sq_pair_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t n4 = n & ~std::size_t{3};
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + i);
    const __m256d vb = _mm256_loadu_pd(b + i);
    acc = _mm256_add_pd(
        acc, _mm256_add_pd(_mm256_mul_pd(va, va), _mm256_mul_pd(vb, vb)));
  }
  double total = combine_lanes(acc);
  for (std::size_t i = n4; i < n; ++i) total += a[i] * a[i] + b[i] * b[i];
  return total;
}

void box_fraction_avx2(const double* integral, int integral_w, int win,
                       int out_w, int out_h, double* out) {
  const double area = static_cast<double>(win) * static_cast<double>(win);
  const __m256d varea = _mm256_set1_pd(area);
  for (int y = 0; y < out_h; ++y) {
    const double* top = integral + static_cast<std::size_t>(y) * integral_w;
    const double* bot =
        integral + static_cast<std::size_t>(y + win) * integral_w;
    double* o = out + static_cast<std::size_t>(y) * out_w;
    int x = 0;
    for (; x + 4 <= out_w; x += 4) {
      const __m256d count = _mm256_add_pd(
          _mm256_sub_pd(_mm256_sub_pd(_mm256_loadu_pd(bot + x + win),
                                      _mm256_loadu_pd(top + x + win)),
                        _mm256_loadu_pd(bot + x)),
          _mm256_loadu_pd(top + x));
      _mm256_storeu_pd(o + x, _mm256_div_pd(count, varea));
    }
    for (; x < out_w; ++x) {
      o[x] = box_fraction_at(integral, integral_w, win, area, x, y);
    }
  }
}

constexpr KernelTable kAvx2Table = {
    sobel_pair_avx2, laplacian4_avx2, lbp_codes_avx2,
    sum_shifted_avx2, sum_sq_dev_avx2, sum_sq_pair_avx2,
    box_fraction_avx2,
};

}  // namespace

const KernelTable* detail::avx2_table() {
  return __builtin_cpu_supports("avx2") ? &kAvx2Table : nullptr;
}

}  // namespace patchblur::kernels

#endif  // x86_64
