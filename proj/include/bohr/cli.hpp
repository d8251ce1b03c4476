#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace bohr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

enum class Format { Csv, JsonLines };

/// 12 significant digits, locale independent.
std::string format_real(double v);

void write_table(const Table& t, Format f, std::ostream& out);

/// Parses key=value lines ('#' comments, blank lines allowed) into option
/// tokens; throws std::runtime_error on malformed lines.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path);

/// Entry point without the program name; returns 0, 1 or 2.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace bohr::cli
