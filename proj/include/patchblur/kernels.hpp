#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace patchblur::kernels {

/// Instruction-set backends for the inner loops. Scalar is the reference;
/// the vector variants are required to produce bit-identical results and are
/// equivalence-tested against it.
enum class Backend {
  Scalar,
  Avx2,
  Neon,
};

/// Entry points for the data-parallel inner loops. All rasters are
/// contiguous row-major doubles; 3x3 stencils use reflect-101 borders
/// (mirror without repeating the edge pixel) and require w >= 3, h >= 3.
///
/// Reductions follow a fixed 4-lane contract: lane k accumulates the terms
/// with index i == k (mod 4) over the first n - n%4 elements, lanes combine
/// as ((l0 + l1) + l2) + l3, and the tail is added sequentially. Every
/// backend implements exactly this order, which is what makes bit-identical
/// cross-backend results possible.
struct KernelTable {
  /// Horizontal/vertical Sobel responses of the [[-1,0,1],[-2,0,2],[-1,0,1]]
  /// kernel and its transpose.
  void (*sobel_pair)(const double* src, int w, int h, double* sx, double* sy);

  /// 4-neighbour Laplacian [[0,1,0],[1,-4,1],[0,1,0]].
  void (*laplacian4)(const double* src, int w, int h, double* out);

  /// Rotation-invariant uniform LBP codes in {0..9}. Neighbour k is compared
  /// against center + threshold; uniform patterns map to their bit count,
  /// non-uniform ones to 9.
  void (*lbp_codes)(const double* src, int w, int h, double threshold,
                    std::uint8_t* codes);

  /// Lane-structured sum of (x[i] - shift).
  double (*sum_shifted)(const double* x, std::size_t n, double shift);

  /// Lane-structured sum of (x[i] - mean)^2.
  double (*sum_sq_dev)(const double* x, std::size_t n, double mean);

  /// Lane-structured sum of a[i]*a[i] + b[i]*b[i].
  double (*sum_sq_pair)(const double* a, const double* b, std::size_t n);

  /// Sliding-window mean of a 0/1 indicator from its (w+1)x(h+1) integral
  /// image: out[y][x] = window count / (win*win) for the win x win window
  /// whose top-left corner is (x, y).
  void (*box_fraction)(const double* integral, int integral_w, int win,
                       int out_w, int out_h, double* out);
};

/// Backends compiled in and usable on this machine, best first.
std::vector<Backend> available_backends();

/// The backend the dispatch table currently resolves to.
Backend active_backend();

/// The resolved kernel table. Picks the best available backend on first use.
const KernelTable& active();

/// Forces a specific backend (for tests and the --backend flag). Throws
/// Error(InvalidArgument) if the backend is not available on this machine.
void set_backend(Backend b);

/// Returns to automatic selection.
void reset_backend();

const char* backend_name(Backend b);
std::optional<Backend> backend_from_name(std::string_view name);

namespace detail {
const KernelTable& scalar_table();
#if defined(__x86_64__) || defined(_M_X64)
const KernelTable* avx2_table();  // null when unsupported at runtime
#endif
#if defined(__aarch64__)
const KernelTable* neon_table();
#endif
}  // namespace detail

}  // namespace patchblur::kernels
