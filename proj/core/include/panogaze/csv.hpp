#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace panogaze::csv {

struct CsvError : std::runtime_error {
    std::size_t line;
    CsvError(const std::string& what, std::size_t line_no)
        : std::runtime_error(what + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

// RFC4180-style split: quoted fields with "" escapes; no embedded newlines.
std::vector<std::string> split_line(std::string_view line);

// Quotes a field only when it contains a comma, quote, or CR/LF.
std::string quote_field(std::string_view field);

// Locale-independent; throws CsvError naming line_no on garbage.
double parse_double(std::string_view field, std::size_t line_no);
long long parse_int(std::string_view field, std::size_t line_no);

// Deterministic fixed-point formatting (snprintf "%.*f", C locale semantics).
std::string format_fixed(double v, int precision);

void append_fixed(std::string& out, double v, int precision);

} // namespace panogaze::csv
