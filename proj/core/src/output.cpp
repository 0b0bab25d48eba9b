#include "cabdm/output.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "cabdm/error.hpp"

namespace cabdm {
namespace {

std::string render(const CsvValue& value) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          std::string s = fmt::format("{:.6f}", v);
          return s == "-0.000000" ? "0.000000" : s;
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else {
          return fmt::format("{}", v);
        }
      },
      value);
}

}  // namespace

std::string format_csv(const std::vector<std::string>& echo, const std::vector<std::string>& schema,
                       const std::vector<CsvRow>& rows) {
  std::string out;
  for (const auto& line : echo) out += "# " + line + "\n";
  for (std::size_t i = 0; i < schema.size(); ++i) out += (i ? "," : "") + schema[i];
  out += "\n";
  for (const auto& row : rows) {
    if (row.size() != schema.size()) {
      throw Error(ErrorKind::kParameter, fmt::format("CSV row has {} fields, schema has {}",
                                                     row.size(), schema.size()));
    }
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + render(row[i]);
    out += "\n";
  }
  return out;
}

void emit_csv(const std::vector<CsvRow>& rows, const std::vector<std::string>& schema,
              const std::filesystem::path& path, const std::vector<std::string>& echo) {
  write_text(path, format_csv(echo, schema, rows));
}

std::string format_pgm(const Grid& image) {
  std::string out = fmt::format("P2\n{} {}\n2\n", image.width(), image.height());
  for (std::size_t r = 0; r < image.height(); ++r) {
    for (std::size_t c = 0; c < image.width(); ++c) {
      const Cell v = image.at(r, c);
      if (v < -1 || v > 1) {
        throw Error(ErrorKind::kParameter, fmt::format("cell value {} cannot be written", int{v}));
      }
      out += c ? " " : "";
      out += static_cast<char>(v == -1 ? '2' : '0' + v);
    }
    out += "\n";
  }
  return out;
}

void emit_pgm(const Grid& image, const std::filesystem::path& path) {
  write_text(path, format_pgm(image));
}

void emit_pgm(const Spacetime& st, const std::filesystem::path& path) { emit_pgm(st.rows, path); }

Grid parse_pgm(const std::string& text) {
  std::istringstream in(text);
  std::string magic;
  std::size_t width = 0;
  std::size_t height = 0;
  int maxval = 0;
  if (!(in >> magic >> width >> height >> maxval) || magic != "P2" || maxval != 2) {
    throw Error(ErrorKind::kParameter, "not a P2 image with maxval 2");
  }
  std::vector<Cell> cells;
  cells.reserve(width * height);
  bool ternary = false;
  for (std::size_t i = 0; i < width * height; ++i) {
    int v = 0;
    if (!(in >> v) || v < 0 || v > 2) throw Error(ErrorKind::kParameter, "bad PGM pixel");
    ternary = ternary || v == 2;
    cells.push_back(static_cast<Cell>(v == 2 ? -1 : v));
  }
  return Grid(height, width, std::move(cells), ternary ? Alphabet::kTernary : Alphabet::kBinary);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace cabdm
