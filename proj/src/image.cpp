#include "patchblur/image.hpp"

#include <jpeglib.h>
#include <png.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <memory>

#include "patchblur/errors.hpp"

namespace patchblur {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f != nullptr) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

enum class Format { Png, Jpeg };

Format sniff_format(const std::filesystem::path& path) {
  FilePtr f(std::fopen(path.string().c_str(), "rb"));
  if (!f) raise(Errc::UnreadableFile, "cannot open " + path.string());
  std::array<unsigned char, 8> magic{};
  const std::size_t got = std::fread(magic.data(), 1, magic.size(), f.get());
  static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
  if (got >= 8 && std::memcmp(magic.data(), png_sig, 8) == 0) return Format::Png;
  if (got >= 3 && magic[0] == 0xFF && magic[1] == 0xD8 && magic[2] == 0xFF) {
    return Format::Jpeg;
  }
  raise(Errc::UnsupportedFormat, "not a PNG or JPEG file: " + path.string());
}

GrayImage from_rgb_u8(int width, int height, const std::vector<std::uint8_t>& rgb) {
  GrayImage img;
  img.width = width;
  img.height = height;
  img.data.resize(static_cast<std::size_t>(width) * height);
  for (std::size_t i = 0; i < img.data.size(); ++i) {
    const std::uint8_t r = rgb[3 * i];
    const std::uint8_t g = rgb[3 * i + 1];
    const std::uint8_t b = rgb[3 * i + 2];
    double v;
    if (r == g && g == b) {
      v = static_cast<double>(r) / 255.0;  // achromatic pixels stay exact
    } else {
      v = (0.299 * r + 0.587 * g + 0.114 * b) / 255.0;
    }
    img.data[i] = std::clamp(v, 0.0, 1.0);
  }
  return img;
}

GrayImage load_png(const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (png_image_begin_read_from_file(&image, path.string().c_str()) == 0) {
    raise(Errc::UnreadableFile, "corrupt PNG: " + path.string());
  }
  image.format = PNG_FORMAT_RGBA;  // alpha requested then dropped, no compositing
  std::vector<std::uint8_t> rgba(PNG_IMAGE_SIZE(image));
  if (png_image_finish_read(&image, nullptr, rgba.data(), 0, nullptr) == 0) {
    png_image_free(&image);
    raise(Errc::UnreadableFile, "corrupt PNG: " + path.string());
  }
  const int w = static_cast<int>(image.width);
  const int h = static_cast<int>(image.height);
  std::vector<std::uint8_t> rgb(static_cast<std::size_t>(w) * h * 3);
  for (std::size_t i = 0; i < static_cast<std::size_t>(w) * h; ++i) {
    rgb[3 * i] = rgba[4 * i];
    rgb[3 * i + 1] = rgba[4 * i + 1];
    rgb[3 * i + 2] = rgba[4 * i + 2];
  }
  return from_rgb_u8(w, h, rgb);
}

struct JpegErrorMgr {
  jpeg_error_mgr base;
  std::jmp_buf jump;
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* mgr = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
  std::longjmp(mgr->jump, 1);
}

// The buffer lives in the caller's frame so longjmp cannot clobber it.
bool decode_jpeg_rgb(std::FILE* f, std::vector<std::uint8_t>& rgb, int& w,
                     int& h) {
  jpeg_decompress_struct cinfo;
  JpegErrorMgr err;
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_error_exit;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    return false;
  }
  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, f);
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  w = static_cast<int>(cinfo.output_width);
  h = static_cast<int>(cinfo.output_height);
  rgb.resize(static_cast<std::size_t>(w) * h * 3);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = rgb.data() + static_cast<std::size_t>(cinfo.output_scanline) * w * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return true;
}

GrayImage load_jpeg(const std::filesystem::path& path) {
  FilePtr f(std::fopen(path.string().c_str(), "rb"));
  if (!f) raise(Errc::UnreadableFile, "cannot open " + path.string());
  std::vector<std::uint8_t> rgb;
  int w = 0;
  int h = 0;
  if (!decode_jpeg_rgb(f.get(), rgb, w, h) || w <= 0 || h <= 0) {
    raise(Errc::UnreadableFile, "corrupt JPEG: " + path.string());
  }
  return from_rgb_u8(w, h, rgb);
}

void write_png(const std::filesystem::path& path, int width, int height,
               const std::uint8_t* pixels, png_uint_32 format, int channels) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = format;
  if (png_image_write_to_file(&image, path.string().c_str(), 0, pixels,
                              width * channels, nullptr) == 0) {
    raise(Errc::UnreadableFile, "cannot write PNG: " + path.string());
  }
}

bool encode_jpeg(std::FILE* f, int width, int height,
                 const std::uint8_t* pixels, int quality, bool rgb) {
  jpeg_compress_struct cinfo;
  JpegErrorMgr err;
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_error_exit;
  if (setjmp(err.jump)) {
    jpeg_destroy_compress(&cinfo);
    return false;
  }
  jpeg_create_compress(&cinfo);
  jpeg_stdio_dest(&cinfo, f);
  cinfo.image_width = static_cast<JDIMENSION>(width);
  cinfo.image_height = static_cast<JDIMENSION>(height);
  cinfo.input_components = rgb ? 3 : 1;
  cinfo.in_color_space = rgb ? JCS_RGB : JCS_GRAYSCALE;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, quality, TRUE);
  jpeg_start_compress(&cinfo, TRUE);
  const int stride = width * (rgb ? 3 : 1);
  while (cinfo.next_scanline < cinfo.image_height) {
    JSAMPROW row = const_cast<JSAMPROW>(
        pixels + static_cast<std::size_t>(cinfo.next_scanline) * stride);
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);
  return true;
}

void write_jpeg(const std::filesystem::path& path, int width, int height,
                const std::uint8_t* pixels, int quality, bool rgb) {
  FilePtr f(std::fopen(path.string().c_str(), "wb"));
  if (!f) raise(Errc::UnreadableFile, "cannot write JPEG: " + path.string());
  if (!encode_jpeg(f.get(), width, height, pixels, quality, rgb)) {
    raise(Errc::UnreadableFile, "cannot write JPEG: " + path.string());
  }
}

}  // namespace

GrayImage make_constant_image(int width, int height, double value) {
  if (width <= 0 || height <= 0) {
    raise(Errc::InvalidDimensions, "image dimensions must be positive");
  }
  GrayImage img;
  img.width = width;
  img.height = height;
  img.data.assign(static_cast<std::size_t>(width) * height, value);
  return img;
}

GrayImage load_gray(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec) || ec) {
    raise(Errc::UnreadableFile, "no such file: " + path.string());
  }
  switch (sniff_format(path)) {
    case Format::Png: return load_png(path);
    case Format::Jpeg: return load_jpeg(path);
  }
  raise(Errc::UnsupportedFormat, path.string());
}

GrayImage resize_bilinear(const GrayImage& img, int w, int h) {
  if (w <= 0 || h <= 0) {
    raise(Errc::InvalidDimensions, "resize target must be at least 1x1");
  }
  if (img.width <= 0 || img.height <= 0 ||
      img.data.size() != static_cast<std::size_t>(img.width) * img.height) {
    raise(Errc::InvalidDimensions, "malformed source image");
  }

  GrayImage out;
  out.width = w;
  out.height = h;
  out.data.resize(static_cast<std::size_t>(w) * h);

  const double x_ratio =
      w == 1 ? 0.0 : static_cast<double>(img.width - 1) / (w - 1);
  const double y_ratio =
      h == 1 ? 0.0 : static_cast<double>(img.height - 1) / (h - 1);
  const double x_base = w == 1 ? (img.width - 1) / 2.0 : 0.0;
  const double y_base = h == 1 ? (img.height - 1) / 2.0 : 0.0;

  for (int y = 0; y < h; ++y) {
    const double sy = y_base + y * y_ratio;
    int y0 = static_cast<int>(sy);
    y0 = std::min(y0, img.height - 1);
    const int y1 = std::min(y0 + 1, img.height - 1);
    const double fy = sy - y0;
    const double* row0 = img.data.data() + static_cast<std::size_t>(y0) * img.width;
    const double* row1 = img.data.data() + static_cast<std::size_t>(y1) * img.width;
    double* out_row = out.data.data() + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      const double sx = x_base + x * x_ratio;
      int x0 = static_cast<int>(sx);
      x0 = std::min(x0, img.width - 1);
      const int x1 = std::min(x0 + 1, img.width - 1);
      const double fx = sx - x0;
      // lerp as a + t*(b-a): exact for t = 0 and for b == a
      const double top = row0[x0] + fx * (row0[x1] - row0[x0]);
      const double bottom = row1[x0] + fx * (row1[x1] - row1[x0]);
      out_row[x] = std::clamp(top + fy * (bottom - top), 0.0, 1.0);
    }
  }
  return out;
}

std::vector<std::uint8_t> to_u8(const GrayImage& img) {
  std::vector<std::uint8_t> out(img.data.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double v = std::clamp(img.data[i], 0.0, 1.0);
    out[i] = static_cast<std::uint8_t>(std::lround(v * 255.0));
  }
  return out;
}

void write_png_gray8(const std::filesystem::path& path, int width, int height,
                     const std::uint8_t* pixels) {
  write_png(path, width, height, pixels, PNG_FORMAT_GRAY, 1);
}

void write_png_rgb8(const std::filesystem::path& path, int width, int height,
                    const std::uint8_t* pixels) {
  write_png(path, width, height, pixels, PNG_FORMAT_RGB, 3);
}

void write_jpeg_gray8(const std::filesystem::path& path, int width, int height,
                      const std::uint8_t* pixels, int quality) {
  write_jpeg(path, width, height, pixels, quality, false);
}

void write_jpeg_rgb8(const std::filesystem::path& path, int width, int height,
                     const std::uint8_t* pixels, int quality) {
  write_jpeg(path, width, height, pixels, quality, true);
}

}  // namespace patchblur
