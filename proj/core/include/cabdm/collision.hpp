#pragma once

// Two ECAs sharing one lattice over {-1, 0, 1}: rule A drives the 1 cells,
// rule B the -1 cells (embedded by relabeling 1 <-> -1), and a randomly
// sampled interaction rule decides every neighborhood where both meet.

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "cabdm/ca.hpp"
#include "cabdm/ctm.hpp"

namespace cabdm {

struct Neighborhood {
  Cell left = 0;
  Cell center = 0;
  Cell right = 0;

  // 9*(left+1) + 3*(center+1) + (right+1), in [0, 27).
  int index() const noexcept { return 9 * (left + 1) + 3 * (center + 1) + (right + 1); }
  static Neighborhood from_index(int index) noexcept;
  bool has(Cell v) const noexcept { return left == v || center == v || right == v; }

  friend bool operator==(const Neighborhood&, const Neighborhood&) = default;
};

// Neighborhoods containing at least one 1 and at least one -1 (there are 12).
std::vector<Neighborhood> mixed_neighborhoods();

class InteractionRule {
 public:
  // Every mixed neighborhood gets an independent uniform outcome in {-1,0,1}
  // from the seed's stream, drawn in ascending neighborhood index. If rule A
  // and relabeled rule B disagree on 000, that neighborhood is sampled too.
  static InteractionRule sample(const EcaRule& rule_a, const EcaRule& rule_b, std::uint64_t seed);

  Cell outcome(Cell left, Cell center, Cell right) const noexcept {
    return table_[static_cast<std::size_t>(Neighborhood{left, center, right}.index())];
  }

  const EcaRule& rule_a() const noexcept { return rule_a_; }
  const EcaRule& rule_b() const noexcept { return rule_b_; }
  std::uint64_t seed() const noexcept { return seed_; }
  bool zero_conflict() const noexcept { return zero_conflict_; }
  // Neighborhoods whose outcome was drawn, in draw order.
  const std::vector<Neighborhood>& sampled() const noexcept { return sampled_; }
  const std::array<Cell, 27>& table() const noexcept { return table_; }

 private:
  InteractionRule(EcaRule a, EcaRule b, std::uint64_t seed) : rule_a_(a), rule_b_(b), seed_(seed) {}

  EcaRule rule_a_;
  EcaRule rule_b_;
  std::uint64_t seed_ = 0;
  bool zero_conflict_ = false;
  std::vector<Neighborhood> sampled_;
  std::array<Cell, 27> table_{};
};

Spacetime evolve_interacting(const InteractionRule& rule, const Configuration& init,
                             std::size_t steps);

// Relabels 1 -> -1 in a binary evolution, giving a ternary spacetime.
Spacetime negate(const Spacetime& st);

struct CollisionLayout {
  std::size_t width = 0;      // gap + 2 + 2 * steps
  std::size_t pos_a = 0;      // the single 1
  std::size_t pos_b = 0;      // the single -1
  Configuration collision;    // ternary, both seeds
  Configuration isolated_a;   // binary, single 1 at pos_a
  Configuration isolated_b;   // binary, single 1 at pos_b (rule B's own frame)
};

CollisionLayout collision_layout(std::size_t gap, std::size_t steps);

struct CollisionOptions {
  int rule_a = 30;
  int rule_b = 22;
  std::size_t gap = 40;
  std::size_t steps = 100;
  std::uint64_t n_rules = 100;
  std::uint64_t first_seed = 0;
  std::size_t block_length = 6;
  unsigned workers = 1;
};

// Isolated evolutions are scored in the same ternary encoding as the collision
// (rule B's cells as -1), so every delta compares like with like.
struct CollisionReport {
  int rule_a = 0;
  int rule_b = 0;
  std::uint64_t interaction_seed = 0;
  double bdm_collision = 0.0;
  double bdm_a_iso = 0.0;
  double bdm_b_iso = 0.0;
  std::uint64_t lzw_collision = 0;
  std::uint64_t lzw_a_iso = 0;
  std::uint64_t lzw_b_iso = 0;

  double delta_bdm_a() const noexcept { return bdm_collision - bdm_a_iso; }
  double delta_bdm_b() const noexcept { return bdm_collision - bdm_b_iso; }
  std::int64_t delta_lzw_a() const noexcept {
    return static_cast<std::int64_t>(lzw_collision) - static_cast<std::int64_t>(lzw_a_iso);
  }
  std::int64_t delta_lzw_b() const noexcept {
    return static_cast<std::int64_t>(lzw_collision) - static_cast<std::int64_t>(lzw_b_iso);
  }

  friend bool operator==(const CollisionReport&, const CollisionReport&) = default;
};

// Isolated spacetimes in the ternary encoding used for scoring.
struct IsolatedRuns {
  Spacetime a;
  Spacetime b;
};
IsolatedRuns isolated_runs(const EcaRule& rule_a, const EcaRule& rule_b,
                           const CollisionLayout& layout, std::size_t steps);

// Reports ordered by interaction seed.
std::vector<CollisionReport> collision_experiment(const CollisionOptions& options,
                                                  const CtmTable& table);

}  // namespace cabdm
