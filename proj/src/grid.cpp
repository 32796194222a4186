#include "patchblur/grid.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "patchblur/errors.hpp"
#include "patchblur/parallel.hpp"

namespace patchblur {
namespace {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, const std::string& id) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    raise(Errc::InvalidArgument, "malformed config id: " + id);
  }
  return v;
}

int parse_int(std::string_view s, const std::string& id) {
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    raise(Errc::InvalidArgument, "malformed config id: " + id);
  }
  return v;
}

}  // namespace

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::Global: return "global";
    case Variant::GlobalLbp: return "global-lbp";
    case Variant::Grid: return "grid";
    case Variant::GridGlobalLbp: return "grid-global-lbp";
    case Variant::GridLbp: return "lbp-grid";
  }
  return "unknown";
}

std::optional<Variant> variant_from_name(std::string_view name) {
  if (name == "global") return Variant::Global;
  if (name == "global-lbp") return Variant::GlobalLbp;
  if (name == "grid") return Variant::Grid;
  if (name == "grid-global-lbp") return Variant::GridGlobalLbp;
  if (name == "lbp-grid") return Variant::GridLbp;
  return std::nullopt;
}

bool variant_uses_grid(Variant v) {
  return v == Variant::Grid || v == Variant::GridGlobalLbp ||
         v == Variant::GridLbp;
}

bool variant_uses_lbp(Variant v) {
  return v == Variant::GlobalLbp || v == Variant::GridGlobalLbp ||
         v == Variant::GridLbp;
}

std::size_t FeatureConfig::vector_length() const {
  const std::size_t g2 = static_cast<std::size_t>(grid) * grid;
  switch (variant) {
    case Variant::Global: return 4;
    case Variant::GlobalLbp: return 6;
    case Variant::Grid: return 4 * g2;
    case Variant::GridGlobalLbp: return 4 * g2 + 2;
    case Variant::GridLbp: return 6 * g2;
  }
  return 0;
}

void FeatureConfig::validate() const {
  params.validate();
  if (variant_uses_grid(variant) &&
      !(grid == 1 || grid == 3 || grid == 5 || grid == 7)) {
    raise(Errc::InvalidArgument, "grid must be one of 1, 3, 5, 7");
  }
}

std::string FeatureConfig::config_id() const {
  std::string id = variant_name(variant);
  if (variant_uses_grid(variant)) id += ";g=" + std::to_string(grid);
  if (variant_uses_lbp(variant)) {
    id += ";t=" + format_double(params.lbp_threshold);
    id += ";w=" + std::to_string(params.lbp_window);
  }
  id += ";eps=" + format_double(params.epsilon);
  return id;
}

FeatureConfig FeatureConfig::from_id(const std::string& id) {
  FeatureConfig cfg;
  std::size_t pos = id.find(';');
  const std::string head = id.substr(0, pos);
  const auto variant = variant_from_name(head);
  if (!variant) raise(Errc::InvalidArgument, "malformed config id: " + id);
  cfg.variant = *variant;
  cfg.grid = 1;
  bool saw_g = false;
  bool saw_t = false;
  bool saw_w = false;

  while (pos != std::string::npos) {
    const std::size_t start = pos + 1;
    pos = id.find(';', start);
    const std::string_view field =
        std::string_view(id).substr(start, pos == std::string::npos
                                               ? std::string::npos
                                               : pos - start);
    const std::size_t eq = field.find('=');
    if (eq == std::string_view::npos) {
      raise(Errc::InvalidArgument, "malformed config id: " + id);
    }
    const std::string_view key = field.substr(0, eq);
    const std::string_view value = field.substr(eq + 1);
    if (key == "g") {
      cfg.grid = parse_int(value, id);
      saw_g = true;
    } else if (key == "t") {
      cfg.params.lbp_threshold = parse_double(value, id);
      saw_t = true;
    } else if (key == "w") {
      cfg.params.lbp_window = parse_int(value, id);
      saw_w = true;
    } else if (key == "eps") {
      cfg.params.epsilon = parse_double(value, id);
    } else {
      raise(Errc::InvalidArgument, "malformed config id: " + id);
    }
  }
  if (variant_uses_grid(cfg.variant) && !saw_g) {
    raise(Errc::InvalidArgument, "config id missing grid: " + id);
  }
  if (variant_uses_lbp(cfg.variant) && (!saw_t || !saw_w)) {
    raise(Errc::InvalidArgument, "config id missing LBP parameters: " + id);
  }
  cfg.validate();
  return cfg;
}

std::vector<Region> split_grid(const GrayImage& img, int g) {
  if (g < 1) raise(Errc::InvalidArgument, "grid must be >= 1");
  if (img.width < 3 * g || img.height < 3 * g) {
    raise(Errc::ImageTooSmall, "image smaller than 3x3 per grid cell");
  }

  const int base_w = img.width / g;
  const int rem_w = img.width % g;
  const int base_h = img.height / g;
  const int rem_h = img.height % g;

  std::vector<Region> regions;
  regions.reserve(static_cast<std::size_t>(g) * g);
  int y0 = 0;
  for (int row = 0; row < g; ++row) {
    const int rh = base_h + (row >= g - rem_h ? 1 : 0);
    int x0 = 0;
    for (int col = 0; col < g; ++col) {
      const int rw = base_w + (col >= g - rem_w ? 1 : 0);
      regions.push_back({x0, y0, rw, rh});
      x0 += rw;
    }
    y0 += rh;
  }
  return regions;
}

int effective_lbp_window(int configured, int width, int height) {
  int fit = std::min(width, height);
  if (fit % 2 == 0) --fit;
  return std::min(configured, fit);
}

FeatureVector extract_vector(const GrayImage& img, const FeatureConfig& cfg,
                             unsigned threads) {
  cfg.validate();
  FeatureVector fv;
  fv.config_id = cfg.config_id();
  fv.values.resize(cfg.vector_length());

  if (!variant_uses_grid(cfg.variant)) {
    const bool with_lbp = variant_uses_lbp(cfg.variant);
    if (img.width < 3 || img.height < 3) {
      raise(Errc::ImageTooSmall, "image smaller than 3x3");
    }
    extract_features(img, whole_image(img), cfg.params, with_lbp,
                     fv.values.data());
    return fv;
  }

  const std::vector<Region> regions = split_grid(img, cfg.grid);
  const bool patch_lbp = cfg.variant == Variant::GridLbp;
  const int per_patch = patch_lbp ? 6 : 4;

  parallel_for(regions.size(), threads, [&](std::size_t i) {
    const Region& r = regions[i];
    FeatureParams p = cfg.params;
    if (patch_lbp) {
      p.lbp_window = effective_lbp_window(p.lbp_window, r.width, r.height);
    }
    extract_features(img, r, p, patch_lbp,
                     fv.values.data() + i * static_cast<std::size_t>(per_patch));
  });

  if (cfg.variant == Variant::GridGlobalLbp) {
    const MeanVar global = lbp_sharpness_stats(img, whole_image(img), cfg.params);
    fv.values[fv.values.size() - 2] = global.mean;
    fv.values[fv.values.size() - 1] = global.variance;
  }
  return fv;
}

}  // namespace patchblur
