#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace patchblur {

/// Single-channel intensity raster. Row-major, every value in [0, 1].
/// Immutable by convention once built; safe to share across threads.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<double> data;  // width * height values

  double at(int y, int x) const {
    return data[static_cast<std::size_t>(y) * width + x];
  }
  double& at(int y, int x) {
    return data[static_cast<std::size_t>(y) * width + x];
  }
  std::size_t pixel_count() const { return data.size(); }
};

GrayImage make_constant_image(int width, int height, double value);

/// Decodes a PNG or JPEG file into a GrayImage. Colour inputs are reduced
/// with BT.601 luma (0.299 R + 0.587 G + 0.114 B); 8-bit values are scaled
/// to [0, 1] by dividing by 255. Alpha, when present, is ignored.
GrayImage load_gray(const std::filesystem::path& path);

/// Bilinear resize with edge-aligned sampling: output sample x maps to
/// source coordinate x * (src-1)/(dst-1), so the first and last samples
/// coincide with the first and last source pixels. Resizing to the source
/// dimensions reproduces the input bit for bit.
GrayImage resize_bilinear(const GrayImage& img, int w, int h);

/// 8-bit quantization used when writing a GrayImage back to disk.
std::vector<std::uint8_t> to_u8(const GrayImage& img);

void write_png_gray8(const std::filesystem::path& path, int width, int height,
                     const std::uint8_t* pixels);
void write_png_rgb8(const std::filesystem::path& path, int width, int height,
                    const std::uint8_t* pixels);
void write_jpeg_gray8(const std::filesystem::path& path, int width, int height,
                      const std::uint8_t* pixels, int quality = 95);
void write_jpeg_rgb8(const std::filesystem::path& path, int width, int height,
                     const std::uint8_t* pixels, int quality = 95);

}  // namespace patchblur
