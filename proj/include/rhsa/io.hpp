#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace rhsa {

// Renders a double with 17 significant digits (round-trip exact).
std::string format_real(double value);

std::vector<std::string_view> split(std::string_view line, char sep);

// Parses a finite double occupying the whole field; throws Error{Parse}.
double parse_real(std::string_view field);
long long parse_int(std::string_view field);

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temp file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace rhsa
