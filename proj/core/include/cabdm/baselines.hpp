#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cabdm/ca.hpp"

namespace cabdm {

struct LzwResult {
  std::vector<std::uint32_t> codes;
  std::uint64_t compressed_bits = 0;
  std::uint64_t compressed_bytes = 0;  // ceil(bits / 8)
};

// Classic LZW over bytes: 256 single-byte roots, longest-match parsing, no
// dictionary reset. Codes are 9 bits wide to start; the width grows by one
// each time the next code to be assigned reaches 2^width.
LzwResult lzw_compress(std::span<const std::uint8_t> data);
LzwResult lzw_compress(std::string_view data);
std::vector<std::uint8_t> lzw_decompress(std::span<const std::uint32_t> codes);

// Cells as ASCII digits, row-major: '0', '1', and '2' for -1.
std::string ascii_digits(const Grid& array);

std::uint64_t compressed_size(const Spacetime& st);
std::uint64_t compressed_size(const Grid& array);

// Entropy in bits of the empirical distribution of non-overlapping length-b
// blocks. A trailing partial block is ignored.
double shannon_block_entropy(std::string_view s, std::size_t block_length);

struct EntropyGrid {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<double> values;  // row-major

  double at(std::size_t row, std::size_t col) const { return values[row * width + col]; }
};

// Per-cell Shannon entropy of each cell's binary time series.
EntropyGrid temporal_cell_entropy(const GridStack& stack);

}  // namespace cabdm
