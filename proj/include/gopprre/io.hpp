#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace gopprre {

/// Whole-file read/write in binary mode. Throw Error(Io).
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace gopprre
