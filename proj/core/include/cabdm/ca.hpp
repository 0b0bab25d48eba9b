#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cabdm {

using Cell = std::int8_t;

// Binary cells are {0,1}; ternary cells are {-1,0,1} (collision lattices).
enum class Alphabet : std::uint8_t { kBinary, kTernary };

bool in_alphabet(Cell value, Alphabet alphabet) noexcept;

// Radius-1 binary rule in Wolfram numbering: bit i of the number is the
// outcome for neighborhood value i = 4*left + 2*center + right.
class EcaRule {
 public:
  static EcaRule from_number(int number);

  int number() const noexcept { return number_; }
  Cell outcome(int neighborhood) const noexcept { return table_[neighborhood]; }
  Cell outcome(Cell left, Cell center, Cell right) const noexcept {
    return table_[4 * left + 2 * center + right];
  }
  const std::array<Cell, 8>& table() const noexcept { return table_; }

  // Rule obtained by reflecting every neighborhood left to right.
  EcaRule mirrored() const;

  friend bool operator==(const EcaRule&, const EcaRule&) = default;

 private:
  explicit EcaRule(int number);

  int number_ = 0;
  std::array<Cell, 8> table_{};
};

EcaRule rule_table(int number);

struct Configuration {
  std::vector<Cell> cells;
  Alphabet alphabet = Alphabet::kBinary;

  std::size_t width() const noexcept { return cells.size(); }
  // Throws kAlphabet if any cell is outside the declared alphabet.
  void validate() const;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

// Dense row-major 2D array of cells. Serves as a GoL grid, as the time x space
// image of a 1D evolution, and as the input to 2D block decomposition.
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t height, std::size_t width, Alphabet alphabet = Alphabet::kBinary);
  Grid(std::size_t height, std::size_t width, std::vector<Cell> cells,
       Alphabet alphabet = Alphabet::kBinary);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return cells_.size(); }
  Alphabet alphabet() const noexcept { return alphabet_; }

  Cell at(std::size_t row, std::size_t col) const noexcept { return cells_[row * width_ + col]; }
  Cell& at(std::size_t row, std::size_t col) noexcept { return cells_[row * width_ + col]; }

  std::span<const Cell> row(std::size_t r) const noexcept {
    return {cells_.data() + r * width_, width_};
  }
  std::span<const Cell> cells() const noexcept { return cells_; }
  std::span<Cell> cells() noexcept { return cells_; }

  Grid transposed() const;
  std::size_t live_count() const noexcept;
  void validate() const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  Alphabet alphabet_ = Alphabet::kBinary;
  std::vector<Cell> cells_;
};

// Time x space evolution of a 1D automaton; row 0 is the initial state.
struct Spacetime {
  Grid rows;
  std::optional<int> rule;
  std::optional<std::uint64_t> seed;

  std::size_t steps() const noexcept { return rows.height() == 0 ? 0 : rows.height() - 1; }
  std::size_t width() const noexcept { return rows.width(); }
  Configuration row(std::size_t t) const;

  friend bool operator==(const Spacetime&, const Spacetime&) = default;
};

// Successive Game of Life grids; slice 0 is the initial grid.
struct GridStack {
  std::vector<Grid> slices;

  // Slices stacked vertically into one (T*H) x W array (slice-major).
  Grid stacked() const;

  friend bool operator==(const GridStack&, const GridStack&) = default;
};

Configuration eca_step(const EcaRule& rule, const Configuration& current);
Spacetime evolve_eca(const EcaRule& rule, const Configuration& init, std::size_t steps);

// B3/S23 on a torus.
Grid gol_step(const Grid& current);
GridStack evolve_gol(const Grid& init, std::size_t steps);

// Each cell is 1 with probability `density`, drawn from Rng(seed).
Configuration random_config(std::uint64_t seed, std::size_t width, double density);
Grid random_grid(std::uint64_t seed, std::size_t height, std::size_t width, double density);

Configuration flip_cell(const Configuration& config, std::size_t index);
Grid flip_cell(const Grid& grid, std::size_t row, std::size_t col);

// A width-`width` binary configuration with a single 1 at width / 2.
Configuration single_cell(std::size_t width);

}  // namespace cabdm
