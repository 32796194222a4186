#include "patchblur/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "patchblur/errors.hpp"

namespace patchblur {
namespace {

using Clock = std::chrono::steady_clock;

double run_once(const GbdtModel& model, const FeatureConfig& cfg,
                const std::vector<GrayImage>& images, unsigned threads,
                double& sink) {
  const auto start = Clock::now();
  for (const GrayImage& img : images) {
    const FeatureVector fv = extract_vector(img, cfg, threads);
    sink += predict_proba(model, fv.values);
  }
  const auto stop = Clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

}  // namespace

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  LinearFit fit;
  const std::size_t n = x.size();
  if (n != y.size() || n == 0) {
    raise(Errc::ShapeMismatch, "fit inputs do not line up");
  }
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);

  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }

  if (sxx == 0.0) {
    // all sizes identical: the horizontal line through the mean is exact
    fit.slope_ms_per_pixel = 0.0;
    fit.intercept_ms = mean_y;
    fit.r_squared = 1.0;
    return fit;
  }
  fit.slope_ms_per_pixel = sxy / sxx;
  fit.intercept_ms = mean_y - fit.slope_ms_per_pixel * mean_x;
  if (syy == 0.0) {
    fit.r_squared = 1.0;  // constant timings are fitted exactly
  } else {
    fit.r_squared = std::clamp((sxy * sxy) / (sxx * syy), 0.0, 1.0);
  }
  return fit;
}

TimingReport bench_inference(const GbdtModel& model, const FeatureConfig& cfg,
                             const std::vector<GrayImage>& images,
                             const std::vector<BenchSize>& sizes, int repeats,
                             unsigned threads) {
  if (repeats < 3) raise(Errc::InvalidArgument, "repeats must be >= 3");
  if (sizes.empty()) raise(Errc::InvalidArgument, "at least one size required");
  if (images.empty()) raise(Errc::InvalidArgument, "at least one image required");

  TimingReport report;
  report.threads = threads;
  double sink = 0.0;

  std::vector<double> xs;
  std::vector<double> ys;
  for (const BenchSize& size : sizes) {
    std::vector<GrayImage> resized;
    resized.reserve(images.size());
    for (const GrayImage& img : images) {
      resized.push_back(resize_bilinear(img, size.width, size.height));
    }

    SizeTiming timing;
    timing.width = size.width;
    timing.height = size.height;
    timing.pixels = static_cast<std::size_t>(size.width) * size.height;
    timing.repeats = repeats;

    run_once(model, cfg, resized, threads, sink);  // warm-up, discarded
    for (int r = 0; r < repeats; ++r) {
      timing.runs_ms.push_back(run_once(model, cfg, resized, threads, sink));
    }

    double total = 0.0;
    for (double ms : timing.runs_ms) total += ms;
    timing.mean_ms = total / static_cast<double>(repeats);
    double ssd = 0.0;
    for (double ms : timing.runs_ms) {
      const double d = ms - timing.mean_ms;
      ssd += d * d;
    }
    timing.std_ms = std::sqrt(ssd / static_cast<double>(repeats - 1));

    xs.push_back(static_cast<double>(timing.pixels));
    ys.push_back(timing.mean_ms);
    report.per_size.push_back(std::move(timing));
  }

  report.fit = fit_line(xs, ys);
  if (sink == 42.0) std::fputs("", stderr);  // keep the timed work observable
  return report;
}

std::string timing_report_to_json(const TimingReport& report) {
  nlohmann::json doc;
  doc["threads"] = report.threads;
  nlohmann::json sizes = nlohmann::json::array();
  for (const SizeTiming& t : report.per_size) {
    sizes.push_back({{"width", t.width},
                     {"height", t.height},
                     {"pixels", t.pixels},
                     {"repeats", t.repeats},
                     {"mean_ms", t.mean_ms},
                     {"std_ms", t.std_ms},
                     {"runs_ms", t.runs_ms}});
  }
  doc["per_size"] = std::move(sizes);
  doc["linear_fit"] = {{"slope_ms_per_pixel", report.fit.slope_ms_per_pixel},
                       {"intercept_ms", report.fit.intercept_ms},
                       {"r_squared", report.fit.r_squared}};
  if (report.decode_ms >= 0.0) doc["decode_ms"] = report.decode_ms;
  return doc.dump(2) + "\n";
}

std::string timing_runs_csv(const TimingReport& report) {
  std::string out = "width,height,pixels,run_index,ms\n";
  for (const SizeTiming& t : report.per_size) {
    for (std::size_t r = 0; r < t.runs_ms.size(); ++r) {
      out += std::to_string(t.width) + "," + std::to_string(t.height) + "," +
             std::to_string(t.pixels) + "," + std::to_string(r) + "," +
             format_fixed(t.runs_ms[r], 4) + "\n";
    }
  }
  return out;
}

std::string timing_report_text(const TimingReport& report) {
  std::string out = "size | pixels | mean ms | std ms\n";
  for (const SizeTiming& t : report.per_size) {
    out += std::to_string(t.width) + "x" + std::to_string(t.height) + " | " +
           std::to_string(t.pixels) + " | " + format_fixed(t.mean_ms, 3) +
           " | " + format_fixed(t.std_ms, 3) + "\n";
  }
  out += "linear fit: " +
         format_fixed(report.fit.slope_ms_per_pixel * 1e6, 4) +
         " ms per Mpixel, intercept " + format_fixed(report.fit.intercept_ms, 3) +
         " ms, r^2 " + format_fixed(report.fit.r_squared, 4) + "\n";
  if (report.decode_ms >= 0.0) {
    out += "decode (not timed above): " + format_fixed(report.decode_ms, 3) +
           " ms total\n";
  }
  return out;
}

}  // namespace patchblur
