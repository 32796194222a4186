#include "patchblur/errors.hpp"

namespace patchblur {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::UnreadableFile: return "UnreadableFile";
    case Errc::UnsupportedFormat: return "UnsupportedFormat";
    case Errc::InvalidDimensions: return "InvalidDimensions";
    case Errc::EmptyDataset: return "EmptyDataset";
    case Errc::MissingClass: return "MissingClass";
    case Errc::RegionTooSmall: return "RegionTooSmall";
    case Errc::WindowLargerThanRegion: return "WindowLargerThanRegion";
    case Errc::ImageTooSmall: return "ImageTooSmall";
    case Errc::DegenerateLabels: return "DegenerateLabels";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::NonFiniteFeature: return "NonFiniteFeature";
    case Errc::SingleClass: return "SingleClass";
    case Errc::TooFewSamples: return "TooFewSamples";
    case Errc::ConfigMismatch: return "ConfigMismatch";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

}  // namespace patchblur
