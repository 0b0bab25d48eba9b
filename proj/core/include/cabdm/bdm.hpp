#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cabdm/ca.hpp"
#include "cabdm/ctm.hpp"

namespace cabdm {

// One distinct block and how often it occurs. `rows` x `cols` is the block's
// shape in cells (rows = 1 for 1D input); `bits` is its flattened encoding.
struct BlockCount {
  std::string bits;
  std::size_t rows = 1;
  std::size_t cols = 0;
  std::uint64_t multiplicity = 0;

  friend bool operator==(const BlockCount&, const BlockCount&) = default;
};

struct BlockPartition {
  std::vector<BlockCount> blocks;  // unique, ordered by (bits short-lex, rows, cols)
  std::size_t block_size = 0;      // b in 1D, side d in 2D
  bool two_dimensional = false;
  std::size_t input_bits = 0;
  std::size_t remainder_bits = 0;  // bits that fell into shorter edge blocks
};

struct BdmValue {
  double value = 0.0;
  BlockPartition partition;
  CtmMetadata table;
};

// Non-overlapping length-b blocks, left to right; a shorter trailing block
// keeps the remainder.
BlockPartition partition_1d(std::string_view bits, std::size_t block_length);

// Non-overlapping d x d tiles; the right and bottom strips become smaller
// rectangles. Each tile is flattened row-major after binarizing its cells.
BlockPartition partition_2d(const Grid& array, std::size_t side);

// Sum over unique blocks of lookup(block) + log2(multiplicity), accumulated in
// ascending term order.
double bdm_value(const BlockPartition& partition, const CtmTable& table);

BdmValue bdm_1d(std::string_view bits, const CtmTable& table, std::size_t block_length);
BdmValue bdm_2d(const Grid& array, const CtmTable& table, std::size_t side);

// Cell encoding used wherever arrays meet the binary table: binary cells map
// to '0'/'1'; ternary cells map 0 -> "00", 1 -> "01", -1 -> "10".
void append_bits(std::string& out, Cell value, Alphabet alphabet);
std::string to_bits(std::span<const Cell> cells, Alphabet alphabet);

// Row-major bit string of a 1D evolution (initial row included).
std::string spacetime_bits(const Spacetime& st);

// BDM of a 1D evolution: bdm_1d over spacetime_bits.
double bdm_spacetime(const Spacetime& st, const CtmTable& table, std::size_t block_length);

}  // namespace cabdm
