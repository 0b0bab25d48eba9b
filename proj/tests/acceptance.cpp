// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any FAIL.
#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "cabdm/cabdm.hpp"
#include "cli.hpp"

using namespace cabdm;
namespace fs = std::filesystem;

namespace {

constexpr double kBdmTolerance = 1e-9;
constexpr double kCtm22Seconds = 1.0;
constexpr double kCtm32Seconds = 600.0;
constexpr double kSweepSeconds = 900.0;
constexpr double kGolSeconds = 300.0;

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool condition, const std::string& what) {
    if (!condition && ok) detail = what;
    ok = ok && condition;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Naive oracles, kept independent of the library's evolution and BDM code.

std::vector<std::vector<int>> naive_eca(int rule, std::vector<int> row, std::size_t steps) {
  std::vector<std::vector<int>> out{row};
  const std::size_t w = row.size();
  for (std::size_t t = 0; t < steps; ++t) {
    std::vector<int> next(w);
    for (std::size_t i = 0; i < w; ++i) {
      const int l = row[(i + w - 1) % w];
      const int r = row[(i + 1) % w];
      next[i] = (rule >> (4 * l + 2 * row[i] + r)) & 1;
    }
    row = next;
    out.push_back(row);
  }
  return out;
}

std::vector<std::vector<int>> naive_gol_step(const std::vector<std::vector<int>>& g) {
  const std::size_t h = g.size();
  const std::size_t w = g[0].size();
  auto next = g;
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      int n = 0;
      for (std::size_t dr : {h - 1, std::size_t{0}, std::size_t{1}}) {
        for (std::size_t dc : {w - 1, std::size_t{0}, std::size_t{1}}) {
          if (dr == 0 && dc == 0) continue;
          n += g[(r + dr) % h][(c + dc) % w];
        }
      }
      next[r][c] = (n == 3 || (g[r][c] == 1 && n == 2)) ? 1 : 0;
    }
  }
  return next;
}

double naive_bdm_1d(const std::string& bits, const CtmTable& table, std::size_t b) {
  std::map<std::string, int> counts;
  for (std::size_t i = 0; i < bits.size(); i += b) ++counts[bits.substr(i, b)];
  double total = 0.0;
  for (const auto& [block, n] : counts) total += lookup(table, block) + std::log2(n);
  return total;
}

double naive_bdm_2d(const std::vector<std::vector<int>>& g, const CtmTable& table, std::size_t d) {
  std::map<std::tuple<std::string, std::size_t, std::size_t>, int> counts;
  const std::size_t h = g.size();
  const std::size_t w = g[0].size();
  for (std::size_t r0 = 0; r0 < h; r0 += d) {
    for (std::size_t c0 = 0; c0 < w; c0 += d) {
      const std::size_t rows = std::min(d, h - r0);
      const std::size_t cols = std::min(d, w - c0);
      std::string bits;
      for (std::size_t r = r0; r < r0 + rows; ++r)
        for (std::size_t c = c0; c < c0 + cols; ++c) bits += static_cast<char>('0' + g[r][c]);
      ++counts[{bits, rows, cols}];
    }
  }
  double total = 0.0;
  for (const auto& [key, n] : counts) total += lookup(table, std::get<0>(key)) + std::log2(n);
  return total;
}

std::string flatten(const std::vector<std::vector<int>>& rows) {
  std::string s;
  for (const auto& row : rows)
    for (int v : row) s += static_cast<char>('0' + v);
  return s;
}

std::vector<int> cells_of(const Configuration& c) { return {c.cells.begin(), c.cells.end()}; }

// Recomputes one ECA DeltaReport from scratch and returns |reported - recomputed|.
double eca_delta_error(const DeltaReport& r, const Configuration& init, const CtmTable& table,
                       std::size_t b) {
  std::vector<int> row = cells_of(init);
  const double before = naive_bdm_1d(flatten(naive_eca(r.rule, row, r.steps)), table, b);
  if (r.flip_pos) row[*r.flip_pos] ^= 1;
  const double after = naive_bdm_1d(flatten(naive_eca(r.rule, row, r.steps)), table, b);
  return std::abs(r.delta_bdm - (after - before));
}

int run_cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(std::move(args), out, err);
  if (code != 0) fmt::print(stderr, "cli failed: {}\n", err.str());
  return code;
}

bool same_file(const fs::path& a, const fs::path& b) { return read_text(a) == read_text(b); }

double max_delta_error = 0.0;
std::size_t reports_checked = 0;

void note_error(double e) {
  max_delta_error = std::max(max_delta_error, e);
  ++reports_checked;
}

bool table_symmetric(const CtmTable& t) {
  for (const auto& [s, e] : t.entries()) {
    const auto c = t.find(complement(s));
    const std::string rev(s.rbegin(), s.rend());
    const auto r = t.find(rev);
    if (!c || !r || c->count != e.count || r->count != e.count) return false;
  }
  return true;
}

Check criterion_1() {
  Check c;
  const auto start = Clock::now();
  BuildOptions o;
  o.states = 2;
  const CtmTable t = build_table(o);
  const double secs = seconds_since(start);
  c.expect(machine_count(2) == 10000 && t.metadata().total == 10000, "machine count != 10000");
  std::uint64_t halting = 0;
  std::uint64_t max_steps = 0;
  for (const auto& m : enumerate_machines(2)) {
    const RunOutcome out = run_machine(m, 107);
    if (!out.halted) continue;
    ++halting;
    max_steps = std::max(max_steps, out.steps_used);
  }
  c.expect(max_steps == 6, fmt::format("max halting steps {}", max_steps));
  c.expect(t.metadata().halting == 2 * halting, "H != 2 x halting machines");
  c.expect(table_symmetric(t), "complement/reversal symmetry broken");
  c.expect(secs < kCtm22Seconds, fmt::format("build took {:.3f}s", secs));
  c.detail = c.ok ? fmt::format("10000 machines, {} halt, max steps {}, {:.3f}s", halting, max_steps,
                                secs)
                  : c.detail;
  return c;
}

Check criterion_2(const CtmTable& shipped) {
  Check c;
  BuildOptions o;
  o.states = 3;
  o.workers = 1;
  auto start = Clock::now();
  const CtmTable one = build_table(o);
  const double secs = seconds_since(start);
  o.workers = 8;
  const CtmTable eight = build_table(o);
  c.expect(one.metadata().total == 7529536, "machine count != 7529536");
  c.expect(table_symmetric(one), "symmetry broken");
  std::vector<std::pair<std::uint64_t, std::string>> by_count;
  for (const auto& [s, e] : one.entries()) by_count.emplace_back(e.count, s);
  std::ranges::sort(by_count, std::greater<>{});
  c.expect(by_count.size() >= 3 && by_count[0].first == by_count[1].first &&
               by_count[1].first > by_count[2].first &&
               std::set<std::string>{by_count[0].second, by_count[1].second} ==
                   std::set<std::string>{"0", "1"},
           "\"0\" and \"1\" are not the top outputs");
  c.expect(format_table(one) == format_table(eight), "1 vs 8 workers differ");
  c.expect(format_table(one) == format_table(shipped), "shipped table differs from fresh build");
  c.expect(secs <= kCtm32Seconds, fmt::format("build took {:.1f}s", secs));
  if (c.ok)
    c.detail = fmt::format("7529536 machines, {} outputs, top \"0\"/\"1\" = {}, {:.2f}s",
                           one.entries().size(), by_count[0].first, secs);
  return c;
}

Check criterion_3(const CtmTable& table) {
  Check c;
  Rng rng = Rng::stream("acceptance-bdm", 3);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    std::string s(6, '0');
    for (auto& ch : s) ch = rng.below(2) ? '1' : '0';
    const std::uint64_t k = 1 + rng.below(50);
    std::string rep;
    for (std::uint64_t j = 0; j < k; ++j) rep += s;
    const double got = bdm_1d(rep, table, 6).value;
    worst = std::max(worst, std::abs(got - (lookup(table, s) + std::log2(static_cast<double>(k)))));
    std::string noisy(6 * (1 + rng.below(20)), '0');
    for (auto& ch : noisy) ch = rng.below(2) ? '1' : '0';
    c.expect(bdm_1d(noisy, table, 6).value == bdm_1d(complement(noisy), table, 6).value,
             "complement invariance not exact");
  }
  c.expect(worst <= kBdmTolerance, fmt::format("repetition law error {:.3g}", worst));
  if (c.ok) c.detail = fmt::format("max repetition-law error {:.3g} bits", worst);
  return c;
}

Check criterion_4() {
  Check c;
  const auto aaaa = lzw_compress(std::string_view("aaaa"));
  c.expect(aaaa.codes == std::vector<std::uint32_t>{97, 256, 97} && aaaa.compressed_bits == 27,
           "\"aaaa\" trace mismatch");
  const auto ab = lzw_compress(std::string_view("ab"));
  c.expect(ab.codes == std::vector<std::uint32_t>{97, 98} && ab.compressed_bits == 18,
           "\"ab\" trace mismatch");
  Rng rng = Rng::stream("acceptance-lzw", 4);
  std::size_t failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t len = rng.below(100001);
    // Mix alphabets so both short-code and dictionary-growth paths are hit.
    const std::uint64_t alphabet = std::array<std::uint64_t, 4>{2, 3, 16, 256}[rng.below(4)];
    std::vector<std::uint8_t> data(len);
    for (auto& byte : data) byte = static_cast<std::uint8_t>(rng.below(alphabet));
    const auto packed = lzw_compress(data);
    if (lzw_decompress(packed.codes) != data) ++failures;
  }
  c.expect(failures == 0, fmt::format("{} round-trip failures", failures));
  if (c.ok) c.detail = "hand traces match, 1000 round-trips exact";
  return c;
}

Check criterion_5(const CtmTable& table, const fs::path& table_path, const fs::path& work) {
  Check c;
  const SweepOptions o;
  const auto start = Clock::now();
  const SweepResult result = perturbation_sweep(o, table);
  const double secs = seconds_since(start);
  c.expect(result.rules.size() == 6 && result.width == 100 &&
               result.mean_delta_bdm.size() == 600 && result.mean_delta_lzw_bytes.size() == 600,
           "heatmaps are not 6x100");
  c.expect(result.reports.size() == 6u * 100u * 50u, "report count");
  const SensitivityCounts counts = sensitivity_counts(result.reports);
  c.expect(counts.bdm_only > counts.lzw_only,
           fmt::format("sensitivity {} <= {}", counts.bdm_only, counts.lzw_only));
  c.expect(secs <= kSweepSeconds, fmt::format("sweep took {:.1f}s", secs));

  std::map<std::uint64_t, Configuration> inits;
  for (const auto& r : result.reports) {
    auto it = inits.find(r.seed);
    if (it == inits.end())
      it = inits.emplace(r.seed, sweep_initial_state(r.seed, o.width, o.density)).first;
    note_error(eca_delta_error(r, it->second, table, o.block_length));
  }

  const fs::path a = work / "sweep";
  const std::vector<std::string> base{"perturb", "--table", table_path.string()};
  auto args_a = base;
  args_a.insert(args_a.end(), {"--out", a.string()});
  // Same output path both times so the echoed config matches.
  auto args_b = base;
  args_b.insert(args_b.end(), {"--out", a.string(), "--workers", "4"});
  const fs::path first = work / "sweep_first";
  c.expect(run_cli(args_a) == 0, "cli sweep failed");
  fs::remove_all(first);
  fs::rename(a, first);
  c.expect(run_cli(args_b) == 0, "cli rerun failed");
  for (const char* name : {"sweep.csv", "aggregate.csv", "heatmap_bdm.csv", "heatmap_lzw.csv",
                           "heatmap_entropy.csv"}) {
    c.expect(same_file(first / name, a / name), fmt::format("{} differs between runs", name));
  }
  if (c.ok)
    c.detail = fmt::format("6x100 heatmaps, bdm-only {} > lzw-only {}, {:.1f}s, reruns identical",
                           counts.bdm_only, counts.lzw_only, secs);
  return c;
}

Check criterion_6(const CtmTable& table, const fs::path& table_path, const fs::path& work) {
  Check c;
  LongRunOptions o;
  const LongRunResult first = long_run(o, table);
  const LongRunResult again = long_run(o, table);
  c.expect(first.original.rows == again.original.rows &&
               first.perturbed.rows == again.perturbed.rows && first.report == again.report &&
               first.delta_bdm_trace == again.delta_bdm_trace,
           "long run not deterministic");
  c.expect(first.original.rows.width() >= 200 && first.original.steps() >= 400, "shape");
  c.expect(first.report.delta_bdm != 0.0, "delta_bdm is zero");
  c.expect(first.delta_bdm_trace.size() == o.steps + 1 &&
               first.delta_bdm_trace.back() == first.report.delta_bdm,
           "trace does not end at the full delta");
  note_error(eca_delta_error(first.report, sweep_initial_state(o.seed, o.width, o.density), table,
                             o.block_length));

  const fs::path dir = work / "long";
  const std::vector<std::string> args{"perturb", "--protocol", "long", "--table",
                                      table_path.string(), "--out", dir.string()};
  c.expect(run_cli(args) == 0, "cli long run failed");
  const std::string pgm_a = read_text(dir / "rule54_original.pgm");
  const std::string pgm_b = read_text(dir / "rule54_perturbed.pgm");
  const std::string trace = read_text(dir / "trace.csv");
  c.expect(run_cli(args) == 0, "cli long rerun failed");
  c.expect(pgm_a == read_text(dir / "rule54_original.pgm") &&
               pgm_b == read_text(dir / "rule54_perturbed.pgm") &&
               trace == read_text(dir / "trace.csv"),
           "cli outputs differ between runs");
  c.expect(parse_pgm(pgm_a) == first.original.rows, "emitted PGM differs from spacetime");
  if (c.ok) c.detail = fmt::format("PGM pair + trace, delta_bdm {:.6f}", first.report.delta_bdm);
  return c;
}

Check criterion_7(const CtmTable& table, const fs::path& table_path, const fs::path& work) {
  Check c;
  const CollisionOptions o;
  const auto reports = collision_experiment(o, table);
  c.expect(reports.size() == 100, "report count");
  double mean = 0.0;
  for (const auto& r : reports) mean += r.delta_bdm_a();
  mean /= static_cast<double>(reports.size());
  double var = 0.0;
  for (const auto& r : reports) var += (r.delta_bdm_a() - mean) * (r.delta_bdm_a() - mean);
  var /= static_cast<double>(reports.size());
  c.expect(var > 0.0, "delta_bdm variance is zero");

  const EcaRule a = rule_table(o.rule_a);
  const EcaRule b = rule_table(o.rule_b);
  const CollisionLayout layout = collision_layout(o.gap, o.steps);
  const IsolatedRuns iso = isolated_runs(a, b, layout, o.steps);
  const CollisionLayout apart = collision_layout(2 * o.steps + 1, o.steps);
  const IsolatedRuns iso_apart = isolated_runs(a, b, apart, o.steps);
  std::size_t reduction_failures = 0;
  std::size_t interaction_failures = 0;
  for (const auto& r : reports) {
    const InteractionRule ir = InteractionRule::sample(a, b, r.interaction_seed);
    Configuration only_a = layout.collision;
    only_a.cells[layout.pos_b] = 0;
    Configuration only_b = layout.collision;
    only_b.cells[layout.pos_a] = 0;
    if (evolve_interacting(ir, only_a, o.steps).rows != iso.a.rows) ++reduction_failures;
    if (evolve_interacting(ir, only_b, o.steps).rows != iso.b.rows) ++reduction_failures;
    const Spacetime both = evolve_interacting(ir, apart.collision, o.steps);
    for (std::size_t i = 0; i < both.rows.size(); ++i) {
      if (both.rows.cells()[i] != iso_apart.a.rows.cells()[i] + iso_apart.b.rows.cells()[i]) {
        ++interaction_failures;
        break;
      }
    }
    // The collision deltas are recomputed like any other DeltaReport.
    const Spacetime st = evolve_interacting(ir, layout.collision, o.steps);
    const double col = naive_bdm_1d(spacetime_bits(st), table, o.block_length);
    note_error(std::abs(r.delta_bdm_a() - (col - naive_bdm_1d(spacetime_bits(iso.a), table, 6))));
    note_error(std::abs(r.delta_bdm_b() - (col - naive_bdm_1d(spacetime_bits(iso.b), table, 6))));
  }
  c.expect(reduction_failures == 0, fmt::format("{} reduction failures", reduction_failures));
  c.expect(interaction_failures == 0, fmt::format("{} non-interaction failures", interaction_failures));

  const fs::path dir = work / "collide";
  c.expect(run_cli({"collide", "--table", table_path.string(), "--out", dir.string()}) == 0,
           "cli collide failed");
  const std::string csv = read_text(dir / "collisions.csv");
  c.expect(std::ranges::count(csv, '\n') == 100 + 1 + std::ranges::count(csv, '#'),
           "collisions.csv row count");
  if (c.ok) c.detail = fmt::format("100 rules, var(delta_bdm) {:.4f}, invariants exact", var);
  return c;
}

Check criterion_8(const CtmTable& table) {
  Check c;
  GolOptions o;
  const auto start = Clock::now();
  std::size_t hits = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    o.seed = seed;
    const GolRun run = gol_perturbation(o, table);
    const GolReport& r = run.report;
    if (r.delta_compressed_bytes == 0 && r.delta_bdm != 0.0) ++hits;

    const Grid init = gol_initial_grid(o);
    std::vector<std::vector<int>> g(o.height, std::vector<int>(o.width));
    for (std::size_t i = 0; i < o.height; ++i)
      for (std::size_t j = 0; j < o.width; ++j) g[i][j] = init.at(i, j);
    for (std::size_t t = 0; t < o.pre_steps; ++t) g = naive_gol_step(g);
    auto h = g;
    h[r.flip_row][r.flip_col] ^= 1;
    for (std::size_t t = 0; t < o.post_steps; ++t) {
      g = naive_gol_step(g);
      h = naive_gol_step(h);
    }
    note_error(std::abs(r.delta_bdm - (naive_bdm_2d(h, table, o.block_side) -
                                       naive_bdm_2d(g, table, o.block_side))));
  }
  const double secs = seconds_since(start);
  c.expect(hits >= 1, "no seed with delta_bytes == 0 and delta_bdm != 0");
  c.expect(secs <= kGolSeconds, fmt::format("took {:.1f}s", secs));
  if (c.ok) c.detail = fmt::format("{} of 20 seeds with delta_bytes 0 and delta_bdm != 0", hits);
  return c;
}

Check criterion_9() {
  Check c;
  c.expect(reports_checked > 0, "no reports checked");
  c.expect(max_delta_error <= kBdmTolerance, fmt::format("max error {:.3g}", max_delta_error));
  if (c.ok)
    c.detail = fmt::format("{} reports recomputed, max error {:.3g} bits", reports_checked,
                           max_delta_error);
  return c;
}

}  // namespace

int main() {
  const fs::path table_path = fs::path(CABDM_DATA_DIR) / "ctm_3_2.tsv";
  const fs::path work = fs::temp_directory_path() / "cabdm_acceptance";
  fs::remove_all(work);
  fs::create_directories(work);
  const CtmTable table = load_table(table_path);

  std::vector<std::pair<int, std::function<Check()>>> criteria{
      {1, [] { return criterion_1(); }},
      {2, [&] { return criterion_2(table); }},
      {3, [&] { return criterion_3(table); }},
      {4, [] { return criterion_4(); }},
      {5, [&] { return criterion_5(table, table_path, work); }},
      {6, [&] { return criterion_6(table, table_path, work); }},
      {7, [&] { return criterion_7(table, table_path, work); }},
      {8, [&] { return criterion_8(table); }},
      {9, [] { return criterion_9(); }},
  };
  int failed = 0;
  for (auto& [id, fn] : criteria) {
    Check c;
    try {
      c = fn();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = fmt::format("exception: {}", e.what());
    }
    fmt::print("criterion {}: {} ({})\n", id, c.ok ? "PASS" : "FAIL", c.detail);
    std::fflush(stdout);
    failed += c.ok ? 0 : 1;
  }
  fs::remove_all(work);
  return failed == 0 ? 0 : 1;
}
