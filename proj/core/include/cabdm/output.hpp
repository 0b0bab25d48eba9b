#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "cabdm/ca.hpp"

namespace cabdm {

using CsvValue = std::variant<std::int64_t, std::uint64_t, double, std::string>;
using CsvRow = std::vector<CsvValue>;

// `#`-prefixed echo lines, then the header, then rows. LF endings, reals with
// six fractional digits. Throws kParameter if a row's width differs from the
// schema.
std::string format_csv(const std::vector<std::string>& echo, const std::vector<std::string>& schema,
                       const std::vector<CsvRow>& rows);
void emit_csv(const std::vector<CsvRow>& rows, const std::vector<std::string>& schema,
              const std::filesystem::path& path, const std::vector<std::string>& echo = {});

// Plain PGM (P2) with maxval 2. Ternary -1 is written as 2.
std::string format_pgm(const Grid& image);
void emit_pgm(const Grid& image, const std::filesystem::path& path);
void emit_pgm(const Spacetime& st, const std::filesystem::path& path);
// Parses a P2 image written by format_pgm; the value 2 comes back as -1.
Grid parse_pgm(const std::string& text);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace cabdm
