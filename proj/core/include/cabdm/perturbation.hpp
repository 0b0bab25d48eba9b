#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cabdm/baselines.hpp"
#include "cabdm/ca.hpp"
#include "cabdm/ctm.hpp"

namespace cabdm {

// Absolute measures of one evolution.
struct Measures {
  double bdm = 0.0;
  std::uint64_t lzw_bytes = 0;
  double entropy = 0.0;  // Shannon block entropy, same block length as BDM

  friend bool operator==(const Measures&, const Measures&) = default;
};

Measures measure_spacetime(const Spacetime& st, const CtmTable& table, std::size_t block_length);

// Every delta is perturbed - original, so delta_bdm = BDM(S\F) - BDM(S)
// approximates -I(S,F).
struct DeltaReport {
  double delta_bdm = 0.0;
  std::int64_t delta_compressed_bytes = 0;
  double delta_entropy = 0.0;
  int rule = 0;
  std::uint64_t seed = 0;
  std::optional<std::size_t> flip_pos;  // nullopt: null perturbation
  std::size_t width = 0;
  std::size_t steps = 0;
  Measures original;
  Measures perturbed;

  friend bool operator==(const DeltaReport&, const DeltaReport&) = default;
};

DeltaReport compare_measures(const Measures& original, const Measures& perturbed);

DeltaReport delta_measures(const EcaRule& rule, const Configuration& init,
                           std::optional<std::size_t> flip, std::size_t steps,
                           const CtmTable& table, std::size_t block_length);

struct SweepOptions {
  std::vector<int> rules{1, 2, 22, 30, 54, 100};
  std::size_t width = 100;
  std::size_t steps = 80;
  std::uint64_t seeds = 50;
  std::uint64_t first_seed = 0;
  double density = 0.5;
  std::size_t block_length = 6;
  unsigned workers = 1;
};

// Random initial state used for `seed` in the sweep experiments.
Configuration sweep_initial_state(std::uint64_t seed, std::size_t width, double density);

struct SweepResult {
  std::vector<int> rules;
  std::size_t width = 0;
  std::uint64_t seed_count = 0;
  // Ordered by (rule, seed, flip position).
  std::vector<DeltaReport> reports;
  // rules x width matrices of per-seed means, row-major.
  std::vector<double> mean_delta_bdm;
  std::vector<double> mean_delta_lzw_bytes;
  std::vector<double> mean_delta_entropy;

  double mean_bdm(std::size_t rule_row, std::size_t pos) const {
    return mean_delta_bdm[rule_row * width + pos];
  }
};

SweepResult perturbation_sweep(const SweepOptions& options, const CtmTable& table);

// Triples where one measure moved and the other did not.
struct SensitivityCounts {
  std::uint64_t bdm_only = 0;  // delta_lzw == 0, delta_bdm != 0
  std::uint64_t lzw_only = 0;  // delta_bdm == 0, delta_lzw != 0
  std::uint64_t total = 0;
};

SensitivityCounts sensitivity_counts(const std::vector<DeltaReport>& reports);

// Single flip on a wide state followed by a long run, with a ΔBDM trace over
// growing spacetime prefixes (rows 0..t for every t).
struct LongRunOptions {
  int rule = 54;
  std::size_t width = 200;
  std::size_t steps = 400;
  std::uint64_t seed = 0;
  std::optional<std::size_t> flip_pos;  // default: width / 2
  double density = 0.5;
  std::size_t block_length = 6;
};

struct LongRunResult {
  Spacetime original;
  Spacetime perturbed;
  DeltaReport report;
  std::vector<double> delta_bdm_trace;  // steps + 1 entries
};

LongRunResult long_run(const LongRunOptions& options, const CtmTable& table);

struct GolOptions {
  std::size_t width = 64;
  std::size_t height = 64;
  double density = 0.5;
  std::size_t pre_steps = 1000;
  std::size_t post_steps = 100;
  std::uint64_t seed = 0;
  std::size_t block_side = 2;
};

// Random grid for `seed` in the Game of Life experiment.
Grid gol_initial_grid(const GolOptions& options);

// Headline deltas compare the two final grids; the *_volume fields compare the
// stacked post-perturbation histories (slices pre_steps .. end, slice-major).
struct GolReport {
  std::uint64_t seed = 0;
  std::size_t flip_row = 0;
  std::size_t flip_col = 0;

  double bdm_original = 0.0;
  double bdm_perturbed = 0.0;
  double delta_bdm = 0.0;
  std::uint64_t lzw_original = 0;
  std::uint64_t lzw_perturbed = 0;
  std::int64_t delta_compressed_bytes = 0;

  double bdm_volume_original = 0.0;
  double bdm_volume_perturbed = 0.0;
  double delta_bdm_volume = 0.0;
  std::uint64_t lzw_volume_original = 0;
  std::uint64_t lzw_volume_perturbed = 0;
  std::int64_t delta_lzw_volume = 0;

  // Mean per-cell temporal entropy over the post-perturbation history.
  double entropy_original = 0.0;
  double entropy_perturbed = 0.0;
  double delta_entropy = 0.0;
  // Per-cell temporal entropy, perturbed - original.
  EntropyGrid entropy_difference;
};

struct GolRun {
  GolReport report;
  GridStack original;
  GridStack perturbed;
};

// Evolves a random grid pre_steps, flips the central cell, evolves both
// branches post_steps and compares them.
GolRun gol_perturbation(const GolOptions& options, const CtmTable& table);

}  // namespace cabdm
