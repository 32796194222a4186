#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "patchblur/gbdt.hpp"
#include "patchblur/grid.hpp"
#include "patchblur/image.hpp"

namespace patchblur {

struct BenchSize {
  int width = 0;
  int height = 0;
};

struct SizeTiming {
  int width = 0;
  int height = 0;
  std::size_t pixels = 0;
  int repeats = 0;
  double mean_ms = 0.0;
  double std_ms = 0.0;  // sample std across runs
  std::vector<double> runs_ms;
};

struct LinearFit {
  double slope_ms_per_pixel = 0.0;
  double intercept_ms = 0.0;
  double r_squared = 1.0;
};

struct TimingReport {
  unsigned threads = 1;
  std::vector<SizeTiming> per_size;
  LinearFit fit;
  double decode_ms = -1.0;  // >= 0 only when decode timing was requested
};

/// Times feature extraction + prediction per size. Images are resized up
/// front (resize and decode are never inside the timed section); one
/// warm-up run per size is discarded; a run processes every image once.
/// mean_ms is then fitted against pixel count by least squares.
TimingReport bench_inference(const GbdtModel& model, const FeatureConfig& cfg,
                             const std::vector<GrayImage>& images,
                             const std::vector<BenchSize>& sizes, int repeats,
                             unsigned threads = 1);

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

std::string timing_report_to_json(const TimingReport& report);

/// Raw per-run CSV for external plotting:
/// width,height,pixels,run_index,ms
std::string timing_runs_csv(const TimingReport& report);

std::string timing_report_text(const TimingReport& report);

}  // namespace patchblur
