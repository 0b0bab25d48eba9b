#include "cabdm/ca.hpp"

#include <algorithm>
#include <string>

#include "cabdm/error.hpp"
#include "cabdm/rng.hpp"

namespace cabdm {

bool in_alphabet(Cell value, Alphabet alphabet) noexcept {
  if (alphabet == Alphabet::kBinary) return value == 0 || value == 1;
  return value >= -1 && value <= 1;
}

EcaRule::EcaRule(int number) : number_(number) {
  for (int i = 0; i < 8; ++i) table_[i] = static_cast<Cell>((number >> i) & 1);
}

EcaRule EcaRule::from_number(int number) {
  if (number < 0 || number > 255) {
    throw Error(ErrorKind::kInvalidRule, "ECA rule number " + std::to_string(number) +
                                             " outside [0,255]");
  }
  return EcaRule(number);
}

EcaRule EcaRule::mirrored() const {
  int mirrored = 0;
  for (int i = 0; i < 8; ++i) {
    const int left = (i >> 2) & 1;
    const int right = i & 1;
    const int reflected = (right << 2) | (i & 2) | left;
    mirrored |= table_[i] << reflected;
  }
  return EcaRule(mirrored);
}

EcaRule rule_table(int number) { return EcaRule::from_number(number); }

void Configuration::validate() const {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!in_alphabet(cells[i], alphabet)) {
      throw Error(ErrorKind::kAlphabet, "cell " + std::to_string(i) + " has value " +
                                            std::to_string(int{cells[i]}));
    }
  }
}

Grid::Grid(std::size_t height, std::size_t width, Alphabet alphabet)
    : height_(height), width_(width), alphabet_(alphabet), cells_(height * width, 0) {}

Grid::Grid(std::size_t height, std::size_t width, std::vector<Cell> cells, Alphabet alphabet)
    : height_(height), width_(width), alphabet_(alphabet), cells_(std::move(cells)) {
  if (cells_.size() != height_ * width_) {
    throw Error(ErrorKind::kSize, "grid expects " + std::to_string(height_ * width_) +
                                      " cells, got " + std::to_string(cells_.size()));
  }
}

Grid Grid::transposed() const {
  Grid out(width_, height_, alphabet_);
  for (std::size_t r = 0; r < height_; ++r)
    for (std::size_t c = 0; c < width_; ++c) out.at(c, r) = at(r, c);
  return out;
}

std::size_t Grid::live_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(cells_.begin(), cells_.end(),
                                                [](Cell v) { return v != 0; }));
}

void Grid::validate() const {
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (!in_alphabet(cells_[i], alphabet_)) {
      throw Error(ErrorKind::kAlphabet, "grid cell " + std::to_string(i) + " has value " +
                                            std::to_string(int{cells_[i]}));
    }
  }
}

Configuration Spacetime::row(std::size_t t) const {
  const auto r = rows.row(t);
  return Configuration{{r.begin(), r.end()}, rows.alphabet()};
}

Grid GridStack::stacked() const {
  if (slices.empty()) return Grid{};
  const std::size_t h = slices.front().height();
  const std::size_t w = slices.front().width();
  std::vector<Cell> cells;
  cells.reserve(slices.size() * h * w);
  for (const auto& slice : slices) {
    if (slice.height() != h || slice.width() != w) {
      throw Error(ErrorKind::kSize, "grid stack slices differ in shape");
    }
    const auto span = slice.cells();
    cells.insert(cells.end(), span.begin(), span.end());
  }
  return Grid(slices.size() * h, w, std::move(cells), slices.front().alphabet());
}

Configuration eca_step(const EcaRule& rule, const Configuration& current) {
  const std::size_t n = current.width();
  Configuration next{std::vector<Cell>(n), Alphabet::kBinary};
  for (std::size_t i = 0; i < n; ++i) {
    const Cell left = current.cells[(i + n - 1) % n];
    const Cell right = current.cells[(i + 1) % n];
    next.cells[i] = rule.outcome(left, current.cells[i], right);
  }
  return next;
}

Spacetime evolve_eca(const EcaRule& rule, const Configuration& init, std::size_t steps) {
  if (steps < 1) throw Error(ErrorKind::kParameter, "evolve_eca needs steps >= 1");
  if (init.width() == 0) throw Error(ErrorKind::kSize, "empty initial configuration");
  Configuration binary_view{init.cells, Alphabet::kBinary};
  binary_view.validate();

  const std::size_t n = init.width();
  Grid rows(steps + 1, n, Alphabet::kBinary);
  std::copy(init.cells.begin(), init.cells.end(), rows.cells().begin());
  for (std::size_t t = 0; t < steps; ++t) {
    const auto prev = rows.row(t);
    for (std::size_t i = 0; i < n; ++i) {
      rows.at(t + 1, i) = rule.outcome(prev[(i + n - 1) % n], prev[i], prev[(i + 1) % n]);
    }
  }
  return Spacetime{std::move(rows), rule.number(), std::nullopt};
}

Grid gol_step(const Grid& current) {
  const std::size_t h = current.height();
  const std::size_t w = current.width();
  Grid next(h, w, Alphabet::kBinary);
  for (std::size_t r = 0; r < h; ++r) {
    const std::size_t up = (r + h - 1) % h;
    const std::size_t down = (r + 1) % h;
    for (std::size_t c = 0; c < w; ++c) {
      const std::size_t lf = (c + w - 1) % w;
      const std::size_t rt = (c + 1) % w;
      const int neighbors = current.at(up, lf) + current.at(up, c) + current.at(up, rt) +
                            current.at(r, lf) + current.at(r, rt) +
                            current.at(down, lf) + current.at(down, c) + current.at(down, rt);
      const bool alive = current.at(r, c) != 0;
      next.at(r, c) = (neighbors == 3 || (alive && neighbors == 2)) ? 1 : 0;
    }
  }
  return next;
}

GridStack evolve_gol(const Grid& init, std::size_t steps) {
  if (init.height() < 3 || init.width() < 3) {
    throw Error(ErrorKind::kSize, "Game of Life grid must be at least 3x3");
  }
  if (steps < 1) throw Error(ErrorKind::kParameter, "evolve_gol needs steps >= 1");
  Grid binary_view(init.height(), init.width(), {init.cells().begin(), init.cells().end()},
                   Alphabet::kBinary);
  binary_view.validate();

  GridStack stack;
  stack.slices.reserve(steps + 1);
  stack.slices.push_back(std::move(binary_view));
  for (std::size_t t = 0; t < steps; ++t) stack.slices.push_back(gol_step(stack.slices.back()));
  return stack;
}

namespace {

void check_density(double density) {
  if (!(density >= 0.0 && density <= 1.0)) {
    throw Error(ErrorKind::kParameter, "density must lie in [0,1]");
  }
}

}  // namespace

Configuration random_config(std::uint64_t seed, std::size_t width, double density) {
  check_density(density);
  if (width < 1) throw Error(ErrorKind::kParameter, "width must be >= 1");
  Rng rng(seed);
  Configuration config{std::vector<Cell>(width), Alphabet::kBinary};
  for (auto& cell : config.cells) cell = rng.uniform() < density ? 1 : 0;
  return config;
}

Grid random_grid(std::uint64_t seed, std::size_t height, std::size_t width, double density) {
  check_density(density);
  Rng rng(seed);
  Grid grid(height, width, Alphabet::kBinary);
  for (auto& cell : grid.cells()) cell = rng.uniform() < density ? 1 : 0;
  return grid;
}

Configuration flip_cell(const Configuration& config, std::size_t index) {
  if (index >= config.width()) {
    throw Error(ErrorKind::kIndex, "flip index " + std::to_string(index) +
                                       " outside width " + std::to_string(config.width()));
  }
  if (config.alphabet != Alphabet::kBinary) {
    throw Error(ErrorKind::kAlphabet, "flip_cell requires a binary configuration");
  }
  Configuration out = config;
  out.cells[index] = static_cast<Cell>(1 - out.cells[index]);
  return out;
}

Grid flip_cell(const Grid& grid, std::size_t row, std::size_t col) {
  if (row >= grid.height() || col >= grid.width()) {
    throw Error(ErrorKind::kIndex, "flip position outside grid");
  }
  if (grid.alphabet() != Alphabet::kBinary) {
    throw Error(ErrorKind::kAlphabet, "flip_cell requires a binary grid");
  }
  Grid out = grid;
  out.at(row, col) = static_cast<Cell>(1 - out.at(row, col));
  return out;
}

Configuration single_cell(std::size_t width) {
  Configuration config{std::vector<Cell>(width, 0), Alphabet::kBinary};
  if (width > 0) config.cells[width / 2] = 1;
  return config;
}

}  // namespace cabdm
