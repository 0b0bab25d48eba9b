#include <unordered_map>

#include "cabdm/baselines.hpp"
#include "cabdm/error.hpp"

namespace cabdm {

LzwResult lzw_compress(std::span<const std::uint8_t> data) {
  LzwResult result;
  if (data.empty()) return result;

  // Dictionary entries are keyed by (prefix code, next byte).
  std::unordered_map<std::uint64_t, std::uint32_t> dictionary;
  dictionary.reserve(data.size());
  auto key = [](std::uint32_t prefix, std::uint8_t byte) {
    return (static_cast<std::uint64_t>(prefix) << 8) | byte;
  };

  std::uint32_t next_code = 256;
  std::uint32_t width = 9;
  std::uint32_t current = data[0];
  for (std::size_t i = 1; i < data.size(); ++i) {
    const auto found = dictionary.find(key(current, data[i]));
    if (found != dictionary.end()) {
      current = found->second;
      continue;
    }
    result.codes.push_back(current);
    result.compressed_bits += width;
    dictionary.emplace(key(current, data[i]), next_code++);
    if (next_code == (1u << width)) ++width;
    current = data[i];
  }
  result.codes.push_back(current);
  result.compressed_bits += width;
  result.compressed_bytes = (result.compressed_bits + 7) / 8;
  return result;
}

LzwResult lzw_compress(std::string_view data) {
  return lzw_compress(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
}

std::vector<std::uint8_t> lzw_decompress(std::span<const std::uint32_t> codes) {
  std::vector<std::uint8_t> out;
  if (codes.empty()) return out;

  std::vector<std::vector<std::uint8_t>> table(256);
  for (int b = 0; b < 256; ++b) table[b] = {static_cast<std::uint8_t>(b)};

  auto entry_for = [&](std::uint32_t code) -> const std::vector<std::uint8_t>& {
    if (code >= table.size()) throw Error(ErrorKind::kParameter, "invalid LZW code");
    return table[code];
  };

  std::vector<std::uint8_t> previous = entry_for(codes[0]);
  out.insert(out.end(), previous.begin(), previous.end());
  for (std::size_t i = 1; i < codes.size(); ++i) {
    std::vector<std::uint8_t> current;
    if (codes[i] == table.size()) {
      // The KwKwK case: the code being defined right now.
      current = previous;
      current.push_back(previous.front());
    } else {
      current = entry_for(codes[i]);
    }
    out.insert(out.end(), current.begin(), current.end());
    auto added = previous;
    added.push_back(current.front());
    table.push_back(std::move(added));
    previous = std::move(current);
  }
  return out;
}

std::string ascii_digits(const Grid& array) {
  std::string out;
  out.reserve(array.size());
  for (Cell v : array.cells()) out.push_back(v == -1 ? '2' : static_cast<char>('0' + v));
  return out;
}

std::uint64_t compressed_size(const Grid& array) {
  return lzw_compress(ascii_digits(array)).compressed_bytes;
}

std::uint64_t compressed_size(const Spacetime& st) { return compressed_size(st.rows); }

}  // namespace cabdm
