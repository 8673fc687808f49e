#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace fraclap::io {

/// Writes through a sibling temporary file and renames it into place, so a
/// reader never observes a partial file. Creates missing parent directories.
void write_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace fraclap::io
