#pragma once

#include <array>
#include <cstdint>

// Canonical per-pixel formulas shared by every backend. The vector variants
// must evaluate the same operations in the same order, so these helpers are
// the single source of truth for what "the same" means. Compiled with
// -ffp-contract=off in all kernel translation units.

namespace patchblur::kernels::detail {

// reflect-101 for the only offsets a 3x3 stencil needs
inline int reflect_lo(int i) { return i < 0 ? -i : i; }
inline int reflect_hi(int i, int n) { return i >= n ? 2 * n - 2 - i : i; }

inline double sobel_x_at(const double* r0, const double* r1, const double* r2,
                         int cl, int cr) {
  const double t0 = r0[cr] - r0[cl];
  const double t1 = r1[cr] - r1[cl];
  const double t2 = r2[cr] - r2[cl];
  return (t0 + 2.0 * t1) + t2;
}

inline double sobel_y_at(const double* r0, const double* r2, int cl, int c,
                         int cr) {
  const double bottom = (r2[cl] + 2.0 * r2[c]) + r2[cr];
  const double top = (r0[cl] + 2.0 * r0[c]) + r0[cr];
  return bottom - top;
}

inline double laplacian4_at(const double* r0, const double* r1, const double* r2,
                            int cl, int c, int cr) {
  return ((r0[c] + r2[c]) + (r1[cl] + r1[cr])) - 4.0 * r1[c];
}

// Neighbour offsets in circular order (clockwise from top-left); bit k of an
// LBP pattern corresponds to entry k.
inline constexpr std::array<std::array<int, 2>, 8> kLbpOffsets = {{
    {-1, -1}, {-1, 0}, {-1, 1}, {0, 1}, {1, 1}, {1, 0}, {1, -1}, {0, -1},
}};

constexpr std::array<std::uint8_t, 256> make_riu2_table() {
  std::array<std::uint8_t, 256> table{};
  for (int pattern = 0; pattern < 256; ++pattern) {
    int transitions = 0;
    int bits = 0;
    for (int k = 0; k < 8; ++k) {
      const int b = (pattern >> k) & 1;
      const int next = (pattern >> ((k + 1) & 7)) & 1;
      transitions += b ^ next;
      bits += b;
    }
    table[static_cast<std::size_t>(pattern)] =
        static_cast<std::uint8_t>(transitions <= 2 ? bits : 9);
  }
  return table;
}

inline constexpr std::array<std::uint8_t, 256> kRiu2Table = make_riu2_table();

inline std::uint8_t lbp_code_at(const double* r0, const double* r1,
                                const double* r2, int cl, int c, int cr,
                                double threshold) {
  const double ref = r1[c] + threshold;
  const double n[8] = {r0[cl], r0[c], r0[cr], r1[cr],
                       r2[cr], r2[c], r2[cl], r1[cl]};
  unsigned pattern = 0;
  for (int k = 0; k < 8; ++k) pattern |= static_cast<unsigned>(n[k] > ref) << k;
  return kRiu2Table[pattern];
}

inline double box_fraction_at(const double* integral, int integral_w, int win,
                              double area, int x, int y) {
  const double* top = integral + static_cast<std::size_t>(y) * integral_w;
  const double* bot = integral + static_cast<std::size_t>(y + win) * integral_w;
  const double count = ((bot[x + win] - top[x + win]) - bot[x]) + top[x];
  return count / area;
}

}  // namespace patchblur::kernels::detail
