#include "cabdm/perturbation.hpp"

#include "cabdm/bdm.hpp"
#include "cabdm/error.hpp"
#include "cabdm/rng.hpp"
#include "parallel.hpp"

namespace cabdm {

Measures measure_spacetime(const Spacetime& st, const CtmTable& table, std::size_t block_length) {
  const std::string bits = spacetime_bits(st);
  Measures m;
  m.bdm = bdm_1d(bits, table, block_length).value;
  m.lzw_bytes = compressed_size(st);
  m.entropy = shannon_block_entropy(bits, block_length);
  return m;
}

DeltaReport compare_measures(const Measures& original, const Measures& perturbed) {
  DeltaReport report;
  report.original = original;
  report.perturbed = perturbed;
  report.delta_bdm = perturbed.bdm - original.bdm;
  report.delta_compressed_bytes =
      static_cast<std::int64_t>(perturbed.lzw_bytes) - static_cast<std::int64_t>(original.lzw_bytes);
  report.delta_entropy = perturbed.entropy - original.entropy;
  return report;
}

DeltaReport delta_measures(const EcaRule& rule, const Configuration& init,
                           std::optional<std::size_t> flip, std::size_t steps,
                           const CtmTable& table, std::size_t block_length) {
  const Configuration changed = flip ? flip_cell(init, *flip) : init;
  const Measures original = measure_spacetime(evolve_eca(rule, init, steps), table, block_length);
  const Measures perturbed =
      measure_spacetime(evolve_eca(rule, changed, steps), table, block_length);
  DeltaReport report = compare_measures(original, perturbed);
  report.rule = rule.number();
  report.flip_pos = flip;
  report.width = init.width();
  report.steps = steps;
  return report;
}

Configuration sweep_initial_state(std::uint64_t seed, std::size_t width, double density) {
  return random_config(derive_seed("perturbation-sweep", seed), width, density);
}

SweepResult perturbation_sweep(const SweepOptions& options, const CtmTable& table) {
  if (options.seeds < 1) throw Error(ErrorKind::kParameter, "sweep needs at least one seed");
  if (options.rules.empty()) throw Error(ErrorKind::kParameter, "sweep needs at least one rule");
  if (options.width < 1) throw Error(ErrorKind::kParameter, "width must be >= 1");
  std::vector<EcaRule> rules;
  for (int number : options.rules) rules.push_back(EcaRule::from_number(number));

  const std::size_t width = options.width;
  const std::size_t pairs = rules.size() * options.seeds;
  SweepResult result;
  result.rules = options.rules;
  result.width = width;
  result.seed_count = options.seeds;
  result.reports.resize(pairs * width);

  detail::parallel_for(pairs, options.workers, [&](std::size_t job) {
    const std::size_t rule_row = job / options.seeds;
    const std::uint64_t seed = options.first_seed + job % options.seeds;
    const EcaRule& rule = rules[rule_row];
    const Configuration init = sweep_initial_state(seed, width, options.density);
    const Measures original =
        measure_spacetime(evolve_eca(rule, init, options.steps), table, options.block_length);
    for (std::size_t pos = 0; pos < width; ++pos) {
      const Measures perturbed = measure_spacetime(
          evolve_eca(rule, flip_cell(init, pos), options.steps), table, options.block_length);
      DeltaReport& report = result.reports[job * width + pos];
      report = compare_measures(original, perturbed);
      report.rule = rule.number();
      report.seed = seed;
      report.flip_pos = pos;
      report.width = width;
      report.steps = options.steps;
    }
  });

  const std::size_t cells = rules.size() * width;
  result.mean_delta_bdm.assign(cells, 0.0);
  result.mean_delta_lzw_bytes.assign(cells, 0.0);
  result.mean_delta_entropy.assign(cells, 0.0);
  for (std::size_t i = 0; i < result.reports.size(); ++i) {
    const std::size_t rule_row = i / (options.seeds * width);
    const std::size_t cell = rule_row * width + i % width;
    const DeltaReport& r = result.reports[i];
    result.mean_delta_bdm[cell] += r.delta_bdm;
    result.mean_delta_lzw_bytes[cell] += static_cast<double>(r.delta_compressed_bytes);
    result.mean_delta_entropy[cell] += r.delta_entropy;
  }
  const auto n = static_cast<double>(options.seeds);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    result.mean_delta_bdm[cell] /= n;
    result.mean_delta_lzw_bytes[cell] /= n;
    result.mean_delta_entropy[cell] /= n;
  }
  return result;
}

SensitivityCounts sensitivity_counts(const std::vector<DeltaReport>& reports) {
  SensitivityCounts counts;
  counts.total = reports.size();
  for (const auto& r : reports) {
    if (r.delta_compressed_bytes == 0 && r.delta_bdm != 0.0) ++counts.bdm_only;
    if (r.delta_bdm == 0.0 && r.delta_compressed_bytes != 0) ++counts.lzw_only;
  }
  return counts;
}

LongRunResult long_run(const LongRunOptions& options, const CtmTable& table) {
  const EcaRule rule = EcaRule::from_number(options.rule);
  const Configuration init = sweep_initial_state(options.seed, options.width, options.density);
  const std::size_t pos = options.flip_pos.value_or(options.width / 2);

  LongRunResult out;
  out.original = evolve_eca(rule, init, options.steps);
  out.perturbed = evolve_eca(rule, flip_cell(init, pos), options.steps);
  out.original.seed = out.perturbed.seed = options.seed;

  out.report = compare_measures(measure_spacetime(out.original, table, options.block_length),
                                measure_spacetime(out.perturbed, table, options.block_length));
  out.report.rule = rule.number();
  out.report.seed = options.seed;
  out.report.flip_pos = pos;
  out.report.width = options.width;
  out.report.steps = options.steps;

  const std::string original_bits = spacetime_bits(out.original);
  const std::string perturbed_bits = spacetime_bits(out.perturbed);
  out.delta_bdm_trace.reserve(options.steps + 1);
  for (std::size_t t = 0; t <= options.steps; ++t) {
    const std::size_t prefix = (t + 1) * options.width;
    const std::string_view a(original_bits.data(), prefix);
    const std::string_view b(perturbed_bits.data(), prefix);
    out.delta_bdm_trace.push_back(bdm_1d(b, table, options.block_length).value -
                                  bdm_1d(a, table, options.block_length).value);
  }
  return out;
}

Grid gol_initial_grid(const GolOptions& options) {
  return random_grid(derive_seed("game-of-life", options.seed), options.height, options.width,
                     options.density);
}

GolRun gol_perturbation(const GolOptions& options, const CtmTable& table) {
  if (options.post_steps < 1) throw Error(ErrorKind::kParameter, "post_steps must be >= 1");
  if (options.height < 3 || options.width < 3) {
    throw Error(ErrorKind::kSize, "Game of Life grid must be at least 3x3");
  }
  Grid state = gol_initial_grid(options);
  for (std::size_t t = 0; t < options.pre_steps; ++t) state = gol_step(state);

  GolRun run;
  GolReport& report = run.report;
  report.seed = options.seed;
  report.flip_row = options.height / 2;
  report.flip_col = options.width / 2;
  run.original = evolve_gol(state, options.post_steps);
  run.perturbed = evolve_gol(flip_cell(state, report.flip_row, report.flip_col), options.post_steps);

  auto bytes_delta = [](std::uint64_t after, std::uint64_t before) {
    return static_cast<std::int64_t>(after) - static_cast<std::int64_t>(before);
  };

  const Grid& final_original = run.original.slices.back();
  const Grid& final_perturbed = run.perturbed.slices.back();
  report.bdm_original = bdm_2d(final_original, table, options.block_side).value;
  report.bdm_perturbed = bdm_2d(final_perturbed, table, options.block_side).value;
  report.delta_bdm = report.bdm_perturbed - report.bdm_original;
  report.lzw_original = compressed_size(final_original);
  report.lzw_perturbed = compressed_size(final_perturbed);
  report.delta_compressed_bytes = bytes_delta(report.lzw_perturbed, report.lzw_original);

  const Grid volume_original = run.original.stacked();
  const Grid volume_perturbed = run.perturbed.stacked();
  report.bdm_volume_original = bdm_2d(volume_original, table, options.block_side).value;
  report.bdm_volume_perturbed = bdm_2d(volume_perturbed, table, options.block_side).value;
  report.delta_bdm_volume = report.bdm_volume_perturbed - report.bdm_volume_original;
  report.lzw_volume_original = compressed_size(volume_original);
  report.lzw_volume_perturbed = compressed_size(volume_perturbed);
  report.delta_lzw_volume = bytes_delta(report.lzw_volume_perturbed, report.lzw_volume_original);

  const EntropyGrid before = temporal_cell_entropy(run.original);
  EntropyGrid diff = temporal_cell_entropy(run.perturbed);
  auto mean = [](const EntropyGrid& g) {
    double sum = 0.0;
    for (double v : g.values) sum += v;
    return sum / static_cast<double>(g.values.size());
  };
  report.entropy_original = mean(before);
  report.entropy_perturbed = mean(diff);
  report.delta_entropy = report.entropy_perturbed - report.entropy_original;
  for (std::size_t i = 0; i < diff.values.size(); ++i) diff.values[i] -= before.values[i];
  report.entropy_difference = std::move(diff);
  return run;
}

}  // namespace cabdm
