#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace sct {

std::string read_file(const std::filesystem::path& path);

// Writes via a temp file in the same directory followed by a rename, so
// partially written files are never observed at `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// Lowercase hex SHA-256 of the exact bytes.
std::string sha256_hex(std::string_view bytes);

std::vector<std::string> split_lines(std::string_view text);

std::string_view trim(std::string_view s);

// Turns an arbitrary record id into a safe filename stem. Ids that survive
// unchanged are used as-is; anything else gets a short hash suffix to stay
// collision-free.
std::string filename_stem_for_id(const std::string& id);

}  // namespace sct
