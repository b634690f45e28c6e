#pragma once

// Command-line front end. `run_cli` is the whole program minus process
// plumbing, so tests can drive it with string vectors and string streams.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace fptrace::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// %.15g
std::string format_value(double v);

/// A CSV document as emitted by the tool: `#` comment lines, one header row,
/// data rows. Fields never contain commas or quotes.
struct CsvTable {
    std::vector<std::string> comments;  // without the leading '#'
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable parse_csv(std::istream& in);
void write_csv(std::ostream& out, const CsvTable& table);

/// Flat key=value file; blank lines and lines starting with '#' are skipped.
/// Throws std::invalid_argument on unreadable files or malformed lines.
std::map<std::string, std::string> read_config(const std::string& path);

}  // namespace fptrace::cli
