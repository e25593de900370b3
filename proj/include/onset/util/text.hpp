#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace onset::text {

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);
std::vector<std::string> split_lines(std::string_view s);

/// Strict numeric parsing; throws std::invalid_argument on trailing junk.
double parse_double(std::string_view s);
long long parse_int(std::string_view s);

/// 17 significant digits (round-trips doubles).
std::string format_exact(double v);
/// Shortest text that parses back to the same double.
std::string format_shortest(double v);
/// Fixed-point formatting with the given number of decimals.
std::string format_fixed(double v, int decimals);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace onset::text
