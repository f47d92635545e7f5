// csv.hpp - locale-independent number formatting for CSV/text output

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lindosc {

/// Shortest round-trip representation, `%g`-style.
/// Infinity prints as `inf`, NaN as `nan`, both zeros as `0`.
std::string format_number(double v);

/// Joins already formatted cells with commas and appends a newline.
std::string csv_row(const std::vector<std::string>& cells);
std::string csv_row(const std::vector<double>& values);

void write_text_file(const std::string& path, std::string_view content);

} // namespace lindosc
