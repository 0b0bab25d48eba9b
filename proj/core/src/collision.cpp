#include "cabdm/collision.hpp"

#include "cabdm/baselines.hpp"
#include "cabdm/bdm.hpp"
#include "cabdm/error.hpp"
#include "cabdm/rng.hpp"
#include "parallel.hpp"

namespace cabdm {

Neighborhood Neighborhood::from_index(int index) noexcept {
  return Neighborhood{static_cast<Cell>(index / 9 - 1), static_cast<Cell>((index / 3) % 3 - 1),
                      static_cast<Cell>(index % 3 - 1)};
}

std::vector<Neighborhood> mixed_neighborhoods() {
  std::vector<Neighborhood> out;
  for (int i = 0; i < 27; ++i) {
    const auto n = Neighborhood::from_index(i);
    if (n.has(1) && n.has(-1)) out.push_back(n);
  }
  return out;
}

InteractionRule InteractionRule::sample(const EcaRule& rule_a, const EcaRule& rule_b,
                                        std::uint64_t seed) {
  InteractionRule ir(rule_a, rule_b, seed);
  const Cell zero_a = rule_a.outcome(0, 0, 0);
  const auto zero_b = static_cast<Cell>(-rule_b.outcome(0, 0, 0));
  ir.zero_conflict_ = zero_a != zero_b;

  Rng rng = Rng::stream("interaction-rule", seed);
  for (int i = 0; i < 27; ++i) {
    const auto n = Neighborhood::from_index(i);
    const bool has_a = n.has(1);
    const bool has_b = n.has(-1);
    Cell& slot = ir.table_[static_cast<std::size_t>(i)];
    if (has_a && has_b) {
      slot = static_cast<Cell>(static_cast<int>(rng.below(3)) - 1);
      ir.sampled_.push_back(n);
    } else if (has_a) {
      slot = rule_a.outcome(n.left, n.center, n.right);
    } else if (has_b) {
      slot = static_cast<Cell>(-rule_b.outcome(-n.left, -n.center, -n.right));
    } else if (ir.zero_conflict_) {
      slot = static_cast<Cell>(static_cast<int>(rng.below(3)) - 1);
      ir.sampled_.push_back(n);
    } else {
      slot = zero_a;
    }
  }
  return ir;
}

Spacetime evolve_interacting(const InteractionRule& rule, const Configuration& init,
                             std::size_t steps) {
  if (steps < 1) throw Error(ErrorKind::kParameter, "evolve_interacting needs steps >= 1");
  if (init.width() == 0) throw Error(ErrorKind::kSize, "empty initial configuration");
  Configuration ternary{init.cells, Alphabet::kTernary};
  ternary.validate();

  const std::size_t n = init.width();
  Grid rows(steps + 1, n, Alphabet::kTernary);
  std::copy(init.cells.begin(), init.cells.end(), rows.cells().begin());
  for (std::size_t t = 0; t < steps; ++t) {
    const auto prev = rows.row(t);
    for (std::size_t i = 0; i < n; ++i) {
      rows.at(t + 1, i) = rule.outcome(prev[(i + n - 1) % n], prev[i], prev[(i + 1) % n]);
    }
  }
  return Spacetime{std::move(rows), std::nullopt, rule.seed()};
}

Spacetime negate(const Spacetime& st) {
  std::vector<Cell> cells(st.rows.cells().begin(), st.rows.cells().end());
  for (Cell& v : cells) v = static_cast<Cell>(-v);
  return Spacetime{Grid(st.rows.height(), st.rows.width(), std::move(cells), Alphabet::kTernary),
                   st.rule, st.seed};
}

CollisionLayout collision_layout(std::size_t gap, std::size_t steps) {
  CollisionLayout layout;
  layout.width = gap + 2 + 2 * steps;
  layout.pos_a = steps;
  layout.pos_b = steps + gap + 1;
  layout.collision = Configuration{std::vector<Cell>(layout.width, 0), Alphabet::kTernary};
  layout.collision.cells[layout.pos_a] = 1;
  layout.collision.cells[layout.pos_b] = -1;
  layout.isolated_a = Configuration{std::vector<Cell>(layout.width, 0), Alphabet::kBinary};
  layout.isolated_a.cells[layout.pos_a] = 1;
  layout.isolated_b = Configuration{std::vector<Cell>(layout.width, 0), Alphabet::kBinary};
  layout.isolated_b.cells[layout.pos_b] = 1;
  return layout;
}

IsolatedRuns isolated_runs(const EcaRule& rule_a, const EcaRule& rule_b,
                           const CollisionLayout& layout, std::size_t steps) {
  Spacetime a = evolve_eca(rule_a, layout.isolated_a, steps);
  a.rows = Grid(a.rows.height(), a.rows.width(), {a.rows.cells().begin(), a.rows.cells().end()},
                Alphabet::kTernary);
  return IsolatedRuns{std::move(a), negate(evolve_eca(rule_b, layout.isolated_b, steps))};
}

std::vector<CollisionReport> collision_experiment(const CollisionOptions& options,
                                                  const CtmTable& table) {
  if (options.n_rules < 1) throw Error(ErrorKind::kParameter, "n_rules must be >= 1");
  const EcaRule rule_a = EcaRule::from_number(options.rule_a);
  const EcaRule rule_b = EcaRule::from_number(options.rule_b);
  const CollisionLayout layout = collision_layout(options.gap, options.steps);
  const IsolatedRuns iso = isolated_runs(rule_a, rule_b, layout, options.steps);

  CollisionReport base;
  base.rule_a = rule_a.number();
  base.rule_b = rule_b.number();
  base.bdm_a_iso = bdm_spacetime(iso.a, table, options.block_length);
  base.bdm_b_iso = bdm_spacetime(iso.b, table, options.block_length);
  base.lzw_a_iso = compressed_size(iso.a);
  base.lzw_b_iso = compressed_size(iso.b);

  std::vector<CollisionReport> reports(options.n_rules, base);
  detail::parallel_for(reports.size(), options.workers, [&](std::size_t i) {
    const std::uint64_t seed = options.first_seed + i;
    const auto ir = InteractionRule::sample(rule_a, rule_b, seed);
    const Spacetime st = evolve_interacting(ir, layout.collision, options.steps);
    reports[i].interaction_seed = seed;
    reports[i].bdm_collision = bdm_spacetime(st, table, options.block_length);
    reports[i].lzw_collision = compressed_size(st);
  });
  return reports;
}

}  // namespace cabdm
