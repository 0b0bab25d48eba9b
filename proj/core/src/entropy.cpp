#include <cmath>
#include <map>

#include "cabdm/baselines.hpp"
#include "cabdm/error.hpp"

namespace cabdm {

double shannon_block_entropy(std::string_view s, std::size_t block_length) {
  if (block_length < 1) throw Error(ErrorKind::kParameter, "block length must be >= 1");
  if (s.size() < block_length) {
    throw Error(ErrorKind::kParameter, "string shorter than the block length");
  }
  std::map<std::string_view, std::uint64_t> counts;
  const std::size_t blocks = s.size() / block_length;
  for (std::size_t i = 0; i < blocks; ++i) ++counts[s.substr(i * block_length, block_length)];

  double h = 0.0;
  const auto n = static_cast<double>(blocks);
  for (const auto& [block, count] : counts) {
    const double p = static_cast<double>(count) / n;
    h -= p * std::log2(p);
  }
  return h == 0.0 ? 0.0 : h;  // normalise -0.0
}

EntropyGrid temporal_cell_entropy(const GridStack& stack) {
  if (stack.slices.size() < 2) {
    throw Error(ErrorKind::kParameter, "temporal entropy needs at least 2 slices");
  }
  const auto& first = stack.slices.front();
  std::vector<std::uint64_t> live(first.size(), 0);
  for (const auto& slice : stack.slices) {
    if (slice.size() != first.size()) throw Error(ErrorKind::kSize, "slices differ in shape");
    const auto cells = slice.cells();
    for (std::size_t i = 0; i < cells.size(); ++i) live[i] += cells[i] != 0;
  }
  const auto t = static_cast<double>(stack.slices.size());
  EntropyGrid entropy{first.height(), first.width(), std::vector<double>(first.size(), 0.0)};
  for (std::size_t i = 0; i < live.size(); ++i) {
    const double p = static_cast<double>(live[i]) / t;
    if (p > 0.0 && p < 1.0) entropy.values[i] = -p * std::log2(p) - (1 - p) * std::log2(1 - p);
  }
  return entropy;
}

}  // namespace cabdm
