#pragma once

#include <stdexcept>
#include <string>

namespace patchblur {

enum class Errc {
  UnreadableFile,
  UnsupportedFormat,
  InvalidDimensions,
  EmptyDataset,
  MissingClass,
  RegionTooSmall,
  WindowLargerThanRegion,
  ImageTooSmall,
  DegenerateLabels,
  ShapeMismatch,
  NonFiniteFeature,
  SingleClass,
  TooFewSamples,
  ConfigMismatch,
  InvalidArgument,
};

const char* errc_name(Errc code);

/// Contract/input error. The CLI maps these to exit code 2; anything else
/// that escapes is an internal failure (exit code 1).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace patchblur
