#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cabdm/cabdm.hpp"

namespace cabdm::cli {
namespace {

namespace fs = std::filesystem;

constexpr const char* kDefaultTableName = "ctm_3_2.tsv";

struct CommonOptions {
  std::string table;
  std::size_t block = 6;
  unsigned workers = 1;
  std::string out_dir;
};

// Echo lines for output headers: every option of the subcommand with its
// parsed or default value. The worker count is left out because it never
// changes results and outputs must be byte-identical across worker counts.
std::vector<std::string> echo_config(const CLI::App& sub) {
  std::vector<std::string> lines{"command=" + sub.get_name()};
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_lnames().empty() ? opt->get_name() : opt->get_lnames().front();
    if (name == "help" || name == "workers" || name.empty()) continue;
    std::string value;
    if (opt->count() > 0) {
      const auto results = opt->results();
      for (std::size_t i = 0; i < results.size(); ++i) value += (i ? "," : "") + results[i];
      if (value.empty()) value = "true";
    } else {
      value = opt->get_default_str();
      if (value.empty() && opt->get_expected_max() == 0) value = "false";
    }
    lines.push_back(name + "=" + value);
  }
  return lines;
}

CtmTable resolve_table(const std::string& flag, std::ostream& err) {
  if (!flag.empty()) return load_table(flag);
  if (const char* dir = std::getenv(kTableDirEnv); dir != nullptr && *dir != '\0') {
    const fs::path candidate = fs::path(dir) / kDefaultTableName;
    if (fs::exists(candidate)) return load_table(candidate);
    err << fmt::format("note: {} not found; building the (3,2) table in memory\n",
                       candidate.string());
  }
  BuildOptions options;
  options.states = 3;
  return build_table(options);
}

void add_common(CLI::App* sub, CommonOptions& common, const std::string& default_out,
                std::size_t default_block = 6) {
  common.out_dir = default_out;
  common.block = default_block;
  sub->add_option("--table", common.table,
                  fmt::format("CTM table file (default: ${}/{}, else built in memory)",
                              kTableDirEnv, kDefaultTableName));
  sub->add_option("--block", common.block, "BDM block length (1D) or side (2D)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--workers", common.workers, "worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--out", common.out_dir, "output directory");
}

std::vector<CsvRow> delta_rows(const std::vector<DeltaReport>& reports) {
  std::vector<CsvRow> rows;
  rows.reserve(reports.size());
  for (const auto& r : reports) {
    rows.push_back({std::int64_t{r.rule}, r.seed,
                    static_cast<std::uint64_t>(r.flip_pos.value_or(0)), r.delta_bdm,
                    r.delta_compressed_bytes, r.delta_entropy});
  }
  return rows;
}

const std::vector<std::string> kDeltaSchema{"rule",      "seed",          "flip_pos",
                                            "delta_bdm", "delta_lzw_bytes", "delta_entropy"};

void write_heatmap(const SweepResult& sweep, const std::vector<double>& matrix,
                   const fs::path& path, const std::vector<std::string>& echo) {
  std::vector<std::string> schema{"rule"};
  for (std::size_t p = 0; p < sweep.width; ++p) schema.push_back(fmt::format("p{}", p));
  std::vector<CsvRow> rows;
  for (std::size_t i = 0; i < sweep.rules.size(); ++i) {
    CsvRow row{std::int64_t{sweep.rules[i]}};
    for (std::size_t p = 0; p < sweep.width; ++p) row.emplace_back(matrix[i * sweep.width + p]);
    rows.push_back(std::move(row));
  }
  emit_csv(rows, schema, path, echo);
}

struct Context {
  std::ostream& out;
  std::ostream& err;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Algorithmic complexity of cellular automata via CTM and BDM", "cabdm"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  Context ctx{out, err};

  // ctm-build
  BuildOptions build;
  std::string build_out;
  std::optional<std::uint64_t> sample;
  auto* ctm_cmd = app.add_subcommand("ctm-build", "enumerate Turing machines and write a CTM table");
  ctm_cmd->add_option("--n", build.states, "number of states")->check(CLI::PositiveNumber);
  ctm_cmd->add_option("--k", build.symbols, "number of symbols (only 2 is supported)");
  ctm_cmd->add_option("--cutoff", build.cutoff, "step cutoff");
  ctm_cmd->add_option("--workers", build.workers, "worker threads")->check(CLI::PositiveNumber);
  ctm_cmd->add_option("--out", build_out,
                      fmt::format("table file (default: ${}/ctm_<n>_<k>.tsv or ./ctm_<n>_<k>.tsv)",
                                  kTableDirEnv));
  ctm_cmd->add_flag("--long-run", build.long_run, "allow full enumeration of n=4");
  ctm_cmd->add_option("--sample", sample, "index-stratified sample size (required for n>4)");
  ctm_cmd->add_option("--sample-seed", build.sample_seed, "seed for sampling");

  // bdm
  std::string bdm_input;
  std::string bdm_table;
  std::size_t bdm_block = 6;
  bool bdm_2d_flag = false;
  auto* bdm_cmd = app.add_subcommand("bdm", "BDM of a binary string, text array or PGM image");
  bdm_cmd->add_option("input", bdm_input, "input file ('-' for stdin)")->required();
  bdm_cmd->add_option("--table", bdm_table, "CTM table file");
  bdm_cmd->add_option("--block", bdm_block, "block length (1D) or side (2D)")
      ->check(CLI::PositiveNumber);
  bdm_cmd->add_flag("--2d", bdm_2d_flag, "treat multi-line text input as a 2D array");

  // eca
  int eca_rule = 30;
  std::size_t eca_width = 100;
  std::size_t eca_steps = 80;
  std::uint64_t eca_seed = 0;
  double eca_density = 0.5;
  std::string eca_init = "random";
  std::string eca_dump;
  auto* eca_cmd = app.add_subcommand("eca", "evolve an elementary CA and write a PGM");
  eca_cmd->add_option("--rule", eca_rule, "Wolfram rule number")->check(CLI::Range(0, 255));
  eca_cmd->add_option("--width", eca_width, "lattice width")->check(CLI::PositiveNumber);
  eca_cmd->add_option("--steps", eca_steps, "time steps")->check(CLI::PositiveNumber);
  eca_cmd->add_option("--seed", eca_seed, "seed for a random initial state");
  eca_cmd->add_option("--density", eca_density, "density of a random initial state");
  eca_cmd->add_option("--init", eca_init, "initial state")
      ->check(CLI::IsMember({"single", "random"}));
  eca_cmd->add_option("--dump", eca_dump, "PGM output path (default: stdout)");

  // perturb
  std::string protocol = "sweep";
  SweepOptions sweep;
  LongRunOptions long_opts;
  std::optional<std::size_t> flip;
  CommonOptions perturb_common;
  std::size_t perturb_width = 0;
  std::size_t perturb_steps = 0;
  std::vector<int> rules = sweep.rules;
  auto* perturb_cmd =
      app.add_subcommand("perturb", "single-cell perturbation experiments (sweep or long run)");
  perturb_cmd->add_option("--protocol", protocol, "sweep: heatmaps; long: one long run")
      ->check(CLI::IsMember({"sweep", "long"}));
  perturb_cmd->add_option("--rules", rules, "rules for the sweep")->delimiter(',');
  perturb_cmd->add_option("--rule", long_opts.rule, "rule for the long run")
      ->check(CLI::Range(0, 255));
  perturb_cmd->add_option("--width", perturb_width, "lattice width (sweep 100, long 200)");
  perturb_cmd->add_option("--steps", perturb_steps, "time steps (sweep 80, long 400)");
  perturb_cmd->add_option("--seeds", sweep.seeds, "random initial states per rule")
      ->check(CLI::PositiveNumber);
  perturb_cmd->add_option("--first-seed", sweep.first_seed, "first seed");
  perturb_cmd->add_option("--density", sweep.density, "initial density");
  perturb_cmd->add_option("--flip", flip, "flip position for the long run (default: centre)");
  add_common(perturb_cmd, perturb_common, "out/perturb");

  // collide
  CollisionOptions collide;
  CommonOptions collide_common;
  std::size_t collide_dump = 1;
  auto* collide_cmd = app.add_subcommand("collide", "colliding ECA with sampled interaction rules");
  collide_cmd->add_option("--rule-a", collide.rule_a, "rule driving the 1 cells")
      ->check(CLI::Range(0, 255));
  collide_cmd->add_option("--rule-b", collide.rule_b, "rule driving the -1 cells")
      ->check(CLI::Range(0, 255));
  collide_cmd->add_option("--gap", collide.gap, "zeros between the two seeds");
  collide_cmd->add_option("--steps", collide.steps, "time steps")->check(CLI::PositiveNumber);
  collide_cmd->add_option("--rules", collide.n_rules, "sampled interaction rules")
      ->check(CLI::PositiveNumber);
  collide_cmd->add_option("--first-seed", collide.first_seed, "first interaction seed");
  collide_cmd->add_option("--dump", collide_dump, "write PGMs for the first N interaction rules");
  add_common(collide_cmd, collide_common, "out/collide");

  // gol
  GolOptions gol;
  std::uint64_t gol_seeds = 20;
  std::uint64_t gol_first_seed = 0;
  bool gol_grids = false;
  CommonOptions gol_common;
  auto* gol_cmd = app.add_subcommand("gol", "central-cell perturbation of the Game of Life");
  gol_cmd->add_option("--width", gol.width, "grid width")->check(CLI::Range(3, 1 << 20));
  gol_cmd->add_option("--height", gol.height, "grid height")->check(CLI::Range(3, 1 << 20));
  gol_cmd->add_option("--density", gol.density, "initial density");
  gol_cmd->add_option("--pre-steps", gol.pre_steps, "steps before the flip");
  gol_cmd->add_option("--post-steps", gol.post_steps, "steps after the flip")
      ->check(CLI::PositiveNumber);
  gol_cmd->add_option("--seeds", gol_seeds, "number of seeds")->check(CLI::PositiveNumber);
  gol_cmd->add_option("--first-seed", gol_first_seed, "first seed");
  gol_cmd->add_flag("--entropy-grids", gol_grids, "write per-seed entropy-difference CSVs");
  add_common(gol_cmd, gol_common, "out/gol", 2);

  std::vector<const char*> argv{"cabdm"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (ctm_cmd->parsed()) {
      build.sample = sample;
      const auto started = std::chrono::steady_clock::now();
      const CtmTable table = build_table(build);
      fs::path path = build_out;
      if (path.empty()) {
        const std::string name = fmt::format("ctm_{}_{}.tsv", build.states, build.symbols);
        const char* dir = std::getenv(kTableDirEnv);
        path = (dir && *dir) ? fs::path(dir) / name : fs::path(name);
      }
      if (path.has_parent_path()) fs::create_directories(path.parent_path());
      save_table(table, path);
      const auto& m = table.metadata();
      ctx.out << fmt::format(
          "wrote {}: {} machines, {} halting runs, {} distinct outputs, max length {} ({:.2f} s)\n",
          path.string(), m.total, m.halting, table.entries().size(), table.max_length(),
          std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count());
      return 0;
    }

    if (bdm_cmd->parsed()) {
      const CtmTable table = resolve_table(bdm_table, ctx.err);
      std::string text;
      if (bdm_input == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        text = buffer.str();
      } else {
        text = read_text(bdm_input);
      }
      std::optional<Grid> array;
      if (text.starts_with("P2")) {
        array = parse_pgm(text);
      } else {
        std::vector<std::string> lines;
        std::istringstream in(text);
        for (std::string line; std::getline(in, line);) {
          std::erase_if(line, [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
          if (!line.empty()) lines.push_back(line);
        }
        if (lines.empty()) throw Error(ErrorKind::kEmptyInput, "input has no cells");
        for (const auto& line : lines) {
          if (line.find_first_not_of("01") != std::string::npos) {
            throw Error(ErrorKind::kAlphabet, "text input must contain only 0 and 1");
          }
        }
        if (bdm_2d_flag) {
          std::vector<Cell> cells;
          for (const auto& line : lines) {
            if (line.size() != lines.front().size()) throw Error(ErrorKind::kSize, "ragged rows");
            for (char c : line) cells.push_back(static_cast<Cell>(c - '0'));
          }
          array = Grid(lines.size(), lines.front().size(), std::move(cells));
        } else {
          std::string bits;
          for (const auto& line : lines) bits += line;
          const BdmValue value = bdm_1d(bits, table, bdm_block);
          ctx.out << fmt::format("bdm={:.6f} bits ({} bits, block {}, {} distinct blocks)\n",
                                 value.value, bits.size(), bdm_block, value.partition.blocks.size());
          if (bdm_block > 1) {
            ctx.out << fmt::format("bdm at block {}={:.6f}\n", bdm_block / 2,
                                   bdm_1d(bits, table, bdm_block / 2).value);
          }
          return 0;
        }
      }
      const BdmValue value = bdm_2d(*array, table, bdm_block);
      ctx.out << fmt::format("bdm={:.6f} bits ({}x{} array, side {}, {} distinct blocks)\n",
                             value.value, array->height(), array->width(), bdm_block,
                             value.partition.blocks.size());
      return 0;
    }

    if (eca_cmd->parsed()) {
      const EcaRule rule = EcaRule::from_number(eca_rule);
      const Configuration init = eca_init == "single"
                                     ? single_cell(eca_width)
                                     : random_config(eca_seed, eca_width, eca_density);
      Spacetime st = evolve_eca(rule, init, eca_steps);
      if (eca_init == "random") st.seed = eca_seed;
      if (eca_dump.empty()) {
        ctx.out << format_pgm(st.rows);
      } else {
        emit_pgm(st, eca_dump);
      }
      return 0;
    }

    if (perturb_cmd->parsed()) {
      const CtmTable table = resolve_table(perturb_common.table, ctx.err);
      const auto echo = echo_config(*perturb_cmd);
      const fs::path dir = perturb_common.out_dir;
      if (protocol == "sweep") {
        sweep.rules = rules;
        sweep.width = perturb_width ? perturb_width : 100;
        sweep.steps = perturb_steps ? perturb_steps : 80;
        sweep.block_length = perturb_common.block;
        sweep.workers = perturb_common.workers;
        const SweepResult result = perturbation_sweep(sweep, table);
        emit_csv(delta_rows(result.reports), kDeltaSchema, dir / "sweep.csv", echo);

        std::vector<CsvRow> aggregate;
        for (std::size_t i = 0; i < result.rules.size(); ++i) {
          for (std::size_t p = 0; p < result.width; ++p) {
            const std::size_t cell = i * result.width + p;
            aggregate.push_back({std::int64_t{result.rules[i]}, static_cast<std::uint64_t>(p),
                                 result.mean_delta_bdm[cell], result.mean_delta_lzw_bytes[cell],
                                 result.mean_delta_entropy[cell]});
          }
        }
        emit_csv(aggregate,
                 {"rule", "flip_pos", "mean_delta_bdm", "mean_delta_lzw_bytes", "mean_delta_entropy"},
                 dir / "aggregate.csv", echo);
        write_heatmap(result, result.mean_delta_bdm, dir / "heatmap_bdm.csv", echo);
        write_heatmap(result, result.mean_delta_lzw_bytes, dir / "heatmap_lzw.csv", echo);
        write_heatmap(result, result.mean_delta_entropy, dir / "heatmap_entropy.csv", echo);

        const SensitivityCounts counts = sensitivity_counts(result.reports);
        ctx.out << fmt::format(
            "{} reports; bdm-only changes {}; lzw-only changes {}; outputs in {}\n", counts.total,
            counts.bdm_only, counts.lzw_only, dir.string());
      } else {
        long_opts.width = perturb_width ? perturb_width : 200;
        long_opts.steps = perturb_steps ? perturb_steps : 400;
        long_opts.seed = sweep.first_seed;
        long_opts.density = sweep.density;
        long_opts.flip_pos = flip;
        long_opts.block_length = perturb_common.block;
        const LongRunResult result = long_run(long_opts, table);
        emit_pgm(result.original, dir / fmt::format("rule{}_original.pgm", long_opts.rule));
        emit_pgm(result.perturbed, dir / fmt::format("rule{}_perturbed.pgm", long_opts.rule));
        std::vector<CsvRow> trace;
        for (std::size_t t = 0; t < result.delta_bdm_trace.size(); ++t) {
          trace.push_back({static_cast<std::uint64_t>(t), result.delta_bdm_trace[t]});
        }
        emit_csv(trace, {"t", "delta_bdm"}, dir / "trace.csv", echo);
        emit_csv(delta_rows({result.report}), kDeltaSchema, dir / "report.csv", echo);
        ctx.out << fmt::format("delta_bdm={:.6f} delta_lzw_bytes={} delta_entropy={:.6f}\n",
                               result.report.delta_bdm, result.report.delta_compressed_bytes,
                               result.report.delta_entropy);
      }
      return 0;
    }

    if (collide_cmd->parsed()) {
      const CtmTable table = resolve_table(collide_common.table, ctx.err);
      collide.block_length = collide_common.block;
      collide.workers = collide_common.workers;
      const fs::path dir = collide_common.out_dir;
      auto echo = echo_config(*collide_cmd);
      echo.emplace_back(
          "encoding=cells 0->00 1->01 -1->10 for BDM; ASCII 0/1/2 (2 = -1) for LZW; isolated "
          "rule_b cells are -1");
      const auto reports = collision_experiment(collide, table);
      std::vector<CsvRow> rows;
      for (const auto& r : reports) {
        rows.push_back({std::int64_t{r.rule_a}, std::int64_t{r.rule_b}, r.interaction_seed,
                        r.bdm_collision, r.bdm_a_iso, r.bdm_b_iso, r.delta_bdm_a(), r.delta_bdm_b(),
                        r.lzw_collision, r.lzw_a_iso, r.lzw_b_iso, r.delta_lzw_a(), r.delta_lzw_b()});
      }
      emit_csv(rows,
               {"rule_a", "rule_b", "interaction_seed", "bdm_collision", "bdm_a_iso", "bdm_b_iso",
                "delta_bdm_a", "delta_bdm_b", "lzw_collision", "lzw_a_iso", "lzw_b_iso",
                "delta_lzw_a", "delta_lzw_b"},
               dir / "collisions.csv", echo);

      const EcaRule a = EcaRule::from_number(collide.rule_a);
      const EcaRule b = EcaRule::from_number(collide.rule_b);
      const CollisionLayout layout = collision_layout(collide.gap, collide.steps);
      const IsolatedRuns iso = isolated_runs(a, b, layout, collide.steps);
      emit_pgm(iso.a, dir / fmt::format("isolated_a_rule{}.pgm", a.number()));
      emit_pgm(iso.b, dir / fmt::format("isolated_b_rule{}.pgm", b.number()));
      for (std::uint64_t i = 0; i < std::min<std::uint64_t>(collide_dump, collide.n_rules); ++i) {
        const std::uint64_t seed = collide.first_seed + i;
        const auto ir = InteractionRule::sample(a, b, seed);
        emit_pgm(evolve_interacting(ir, layout.collision, collide.steps),
                 dir / fmt::format("collision_seed{}.pgm", seed));
      }
      ctx.out << fmt::format("{} collision reports written to {}\n", reports.size(), dir.string());
      return 0;
    }

    if (gol_cmd->parsed()) {
      const CtmTable table = resolve_table(gol_common.table, ctx.err);
      gol.block_side = gol_common.block;
      const fs::path dir = gol_common.out_dir;
      const auto echo = echo_config(*gol_cmd);
      std::vector<CsvRow> rows;
      std::uint64_t bdm_only = 0;
      for (std::uint64_t i = 0; i < gol_seeds; ++i) {
        GolOptions options = gol;
        options.seed = gol_first_seed + i;
        const GolReport r = gol_perturbation(options, table).report;
        if (r.delta_compressed_bytes == 0 && r.delta_bdm != 0.0) ++bdm_only;
        rows.push_back({r.seed, static_cast<std::uint64_t>(r.flip_row),
                        static_cast<std::uint64_t>(r.flip_col), r.delta_bdm,
                        r.delta_compressed_bytes, r.delta_entropy, r.delta_bdm_volume,
                        r.delta_lzw_volume, r.bdm_original, r.bdm_perturbed, r.lzw_original,
                        r.lzw_perturbed});
        if (gol_grids) {
          std::vector<CsvRow> grid;
          for (std::size_t row = 0; row < r.entropy_difference.height; ++row) {
            CsvRow line;
            for (std::size_t col = 0; col < r.entropy_difference.width; ++col) {
              line.emplace_back(r.entropy_difference.at(row, col));
            }
            grid.push_back(std::move(line));
          }
          std::vector<std::string> schema;
          for (std::size_t col = 0; col < r.entropy_difference.width; ++col) {
            schema.push_back(fmt::format("c{}", col));
          }
          emit_csv(grid, schema, dir / fmt::format("entropy_diff_seed{}.csv", r.seed), echo);
        }
      }
      emit_csv(rows,
               {"seed", "flip_row", "flip_col", "delta_bdm", "delta_lzw_bytes", "delta_entropy",
                "delta_bdm_volume", "delta_lzw_volume", "bdm_original", "bdm_perturbed",
                "lzw_original", "lzw_perturbed"},
               dir / "gol.csv", echo);
      ctx.out << fmt::format("{} seeds; {} with unchanged LZW size but nonzero delta BDM\n",
                             gol_seeds, bdm_only);
      return 0;
    }
  } catch (const std::exception& e) {
    ctx.err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

int run(int argc, char** argv) { return run(argc, const_cast<const char* const*>(argv)); }

}  // namespace cabdm::cli
