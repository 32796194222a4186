#include "patchblur/feature_csv.hpp"

#include <charconv>
#include <string>
#include <string_view>

#include "patchblur/errors.hpp"
#include "patchblur/io_util.hpp"

namespace patchblur {
namespace {

void append_double(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

std::vector<std::string_view> split_line(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return cells;
}

}  // namespace

void write_feature_csv(const std::filesystem::path& path,
                       const FeatureTable& table) {
  if (table.labels.size() != table.X.rows) {
    raise(Errc::ShapeMismatch, "label count does not match feature rows");
  }
  std::string out = "label";
  for (std::size_t c = 0; c < table.X.cols; ++c) {
    out += ",f" + std::to_string(c);
  }
  out += '\n';
  for (std::size_t r = 0; r < table.X.rows; ++r) {
    out += std::to_string(table.labels[r]);
    const auto row = table.X.row(r);
    for (double v : row) {
      out += ',';
      append_double(out, v);
    }
    out += '\n';
  }
  atomic_write_text(path, out);
}

FeatureTable read_feature_csv(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);

  FeatureTable table;
  std::size_t line_start = 0;
  bool saw_header = false;
  std::size_t n_features = 0;
  std::size_t line_no = 0;

  while (line_start < text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string::npos) line_end = text.size();
    std::string_view line(text.data() + line_start, line_end - line_start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    line_start = line_end + 1;
    ++line_no;
    if (line.empty()) continue;

    const auto cells = split_line(line);
    if (!saw_header) {
      if (cells.empty() || cells[0] != "label") {
        raise(Errc::InvalidArgument,
              path.string() + ": feature CSV must start with a `label` header");
      }
      n_features = cells.size() - 1;
      saw_header = true;
      continue;
    }

    if (cells.size() != n_features + 1) {
      raise(Errc::InvalidArgument,
            path.string() + ": row " + std::to_string(line_no) +
                " has wrong column count");
    }
    int label = 0;
    {
      const auto res = std::from_chars(cells[0].data(),
                                       cells[0].data() + cells[0].size(), label);
      if (res.ec != std::errc{} || res.ptr != cells[0].data() + cells[0].size() ||
          label < -1 || label > 1) {
        raise(Errc::InvalidArgument,
              path.string() + ": bad label on row " + std::to_string(line_no));
      }
    }
    table.labels.push_back(label);
    for (std::size_t c = 1; c < cells.size(); ++c) {
      double v = 0.0;
      const auto res =
          std::from_chars(cells[c].data(), cells[c].data() + cells[c].size(), v);
      if (res.ec != std::errc{} || res.ptr != cells[c].data() + cells[c].size()) {
        raise(Errc::InvalidArgument,
              path.string() + ": bad value on row " + std::to_string(line_no));
      }
      table.X.values.push_back(v);
    }
  }

  if (!saw_header) {
    raise(Errc::InvalidArgument, path.string() + ": empty feature CSV");
  }
  table.X.rows = table.labels.size();
  table.X.cols = n_features;
  return table;
}

}  // namespace patchblur
