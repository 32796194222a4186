#pragma once

#include <filesystem>
#include <string>

namespace patchblur {

/// Writes content to path atomically: a sibling temp file is written and
/// renamed over the target.
void atomic_write_text(const std::filesystem::path& path,
                       const std::string& content);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace patchblur
