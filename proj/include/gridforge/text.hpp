#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace gridforge::text {

/// Shortest representation that round-trips through from_chars.
/// Locale-independent; integers print without a trailing ".0".
std::string format_real(double value);

/// Strict full-string parse. Throws std::invalid_argument on garbage.
double parse_real(std::string_view s);
std::int64_t parse_int(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

/// Decimal digits left-padded with zeros to at least `width`.
std::string zero_pad(int value, int width);

/// True iff every character is in [A-Za-z0-9_-] and s is nonempty.
/// Names in scenario and snapshot files are restricted to this set so the
/// '|' separator never needs escaping.
bool is_plain_name(std::string_view s);

struct Line {
    int number = 0;           // 1-based line number in the file
    std::vector<std::string> fields;
};

struct Section {
    std::string name;
    std::vector<Line> lines;
};

/// Parses a sectioned `|`-separated text file. `[name]` opens a section;
/// blank lines and lines starting with '#' are skipped.
std::vector<Section> parse_sections(std::string_view content);

std::string read_file(const std::filesystem::path& path);

/// Writes via a temp file in the same directory followed by a rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

} // namespace gridforge::text
