#include "cabdm/bdm.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "cabdm/error.hpp"

namespace cabdm {
namespace {

struct BlockKeyLess {
  bool operator()(const BlockCount& a, const BlockCount& b) const noexcept {
    if (a.bits != b.bits) return ShortLex{}(a.bits, b.bits);
    return std::tie(a.rows, a.cols) < std::tie(b.rows, b.cols);
  }
};

std::vector<BlockCount> collect(std::map<BlockCount, std::uint64_t, BlockKeyLess>& counts) {
  std::vector<BlockCount> blocks;
  blocks.reserve(counts.size());
  for (auto& [key, n] : counts) {
    BlockCount block = key;
    block.multiplicity = n;
    blocks.push_back(std::move(block));
  }
  return blocks;
}

}  // namespace

void append_bits(std::string& out, Cell value, Alphabet alphabet) {
  if (!in_alphabet(value, alphabet)) {
    throw Error(ErrorKind::kAlphabet, "cell value " + std::to_string(int{value}) +
                                          " outside the declared alphabet");
  }
  if (alphabet == Alphabet::kBinary) {
    out.push_back(value ? '1' : '0');
    return;
  }
  switch (value) {
    case 0: out += "00"; break;
    case 1: out += "01"; break;
    default: out += "10"; break;
  }
}

std::string to_bits(std::span<const Cell> cells, Alphabet alphabet) {
  std::string out;
  out.reserve(cells.size() * (alphabet == Alphabet::kBinary ? 1 : 2));
  for (Cell v : cells) append_bits(out, v, alphabet);
  return out;
}

BlockPartition partition_1d(std::string_view bits, std::size_t block_length) {
  if (block_length < 1) throw Error(ErrorKind::kParameter, "block length must be >= 1");
  if (bits.empty()) throw Error(ErrorKind::kEmptyInput, "cannot partition an empty string");

  std::map<BlockCount, std::uint64_t, BlockKeyLess> counts;
  for (std::size_t pos = 0; pos < bits.size(); pos += block_length) {
    const auto piece = bits.substr(pos, block_length);
    ++counts[BlockCount{std::string(piece), 1, piece.size(), 0}];
  }
  BlockPartition partition;
  partition.blocks = collect(counts);
  partition.block_size = block_length;
  partition.input_bits = bits.size();
  partition.remainder_bits = bits.size() % block_length;
  return partition;
}

BlockPartition partition_2d(const Grid& array, std::size_t side) {
  if (side < 1) throw Error(ErrorKind::kParameter, "block side must be >= 1");
  if (array.size() == 0) throw Error(ErrorKind::kEmptyInput, "cannot partition an empty array");

  const std::size_t bits_per_cell = array.alphabet() == Alphabet::kBinary ? 1 : 2;
  std::map<BlockCount, std::uint64_t, BlockKeyLess> counts;
  std::string flat;
  for (std::size_t r0 = 0; r0 < array.height(); r0 += side) {
    const std::size_t rows = std::min(side, array.height() - r0);
    for (std::size_t c0 = 0; c0 < array.width(); c0 += side) {
      const std::size_t cols = std::min(side, array.width() - c0);
      flat.clear();
      for (std::size_t r = r0; r < r0 + rows; ++r)
        for (std::size_t c = c0; c < c0 + cols; ++c) append_bits(flat, array.at(r, c), array.alphabet());
      ++counts[BlockCount{flat, rows, cols, 0}];
    }
  }
  BlockPartition partition;
  partition.blocks = collect(counts);
  partition.block_size = side;
  partition.two_dimensional = true;
  partition.input_bits = array.size() * bits_per_cell;
  const std::size_t full = (array.height() / side) * (array.width() / side) * side * side;
  partition.remainder_bits = (array.size() - full) * bits_per_cell;
  return partition;
}

double bdm_value(const BlockPartition& partition, const CtmTable& table) {
  std::vector<double> terms;
  terms.reserve(partition.blocks.size());
  for (const auto& block : partition.blocks) {
    terms.push_back(lookup(table, block.bits) + std::log2(static_cast<double>(block.multiplicity)));
  }
  // Summing in value order makes the result depend only on the multiset of
  // terms, so relabelings such as complementation give bit-identical values.
  std::ranges::sort(terms);
  double total = 0.0;
  for (double t : terms) total += t;
  return total;
}

BdmValue bdm_1d(std::string_view bits, const CtmTable& table, std::size_t block_length) {
  BdmValue out;
  out.partition = partition_1d(bits, block_length);
  out.value = bdm_value(out.partition, table);
  out.table = table.metadata();
  return out;
}

BdmValue bdm_2d(const Grid& array, const CtmTable& table, std::size_t side) {
  BdmValue out;
  out.partition = partition_2d(array, side);
  out.value = bdm_value(out.partition, table);
  out.table = table.metadata();
  return out;
}

std::string spacetime_bits(const Spacetime& st) {
  return to_bits(st.rows.cells(), st.rows.alphabet());
}

double bdm_spacetime(const Spacetime& st, const CtmTable& table, std::size_t block_length) {
  return bdm_1d(spacetime_bits(st), table, block_length).value;
}

}  // namespace cabdm
