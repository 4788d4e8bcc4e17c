#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace riccinet {

// Shortest round-trip decimal form. All numeric file output goes through
// this, so values survive a CSV/JSON round trip bit-exactly.
std::string format_double(double value);

// Strict parsers: the whole field (after trimming ASCII whitespace) must be
// consumed. `context` names the offending field in the error message.
double parse_double(std::string_view field, const std::string& context);
std::uint64_t parse_uint(std::string_view field, const std::string& context);

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view line, char delim);

// Whole-file IO. Writes go to a temp file in the same directory followed by
// a rename, so readers never observe a half-written file.
std::string read_file(const std::filesystem::path& path);
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

} // namespace riccinet
