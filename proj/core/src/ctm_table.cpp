#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <fmt/format.h>

#include "cabdm/ctm.hpp"
#include "cabdm/error.hpp"
#include "cabdm/rng.hpp"

namespace cabdm {

std::string complement(std::string_view bits) {
  std::string out(bits);
  for (char& c : out) {
    if (c == '0') c = '1';
    else if (c == '1') c = '0';
  }
  return out;
}

CtmTable::CtmTable(CtmMetadata metadata,
                   const std::map<std::string, std::uint64_t, ShortLex>& counts)
    : metadata_(metadata) {
  std::uint64_t sum = 0;
  for (const auto& [output, count] : counts) {
    if (count == 0) throw Error(ErrorKind::kCorruptTable, "zero count for '" + output + "'");
    sum += count;
  }
  if (sum != metadata_.halting) {
    throw Error(ErrorKind::kCorruptTable,
                fmt::format("halting count {} differs from count sum {}", metadata_.halting, sum));
  }
  const auto h = static_cast<double>(metadata_.halting);
  for (const auto& [output, count] : counts) {
    const double ctm = -std::log2(static_cast<double>(count) / h);
    entries_.emplace(output, CtmEntry{count, ctm});
    if (output.size() >= max_by_length_.size()) {
      max_by_length_.resize(output.size() + 1, std::numeric_limits<double>::quiet_NaN());
    }
    double& slot = max_by_length_[output.size()];
    if (std::isnan(slot) || ctm > slot) slot = ctm;
  }
}

std::optional<CtmEntry> CtmTable::find(std::string_view block) const {
  const auto it = entries_.find(block);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::size_t CtmTable::max_length() const noexcept {
  return entries_.empty() ? 0 : entries_.rbegin()->first.size();
}

std::optional<double> CtmTable::max_at_length(std::size_t length) const {
  if (length >= max_by_length_.size() || std::isnan(max_by_length_[length])) return std::nullopt;
  return max_by_length_[length];
}

double lookup(const CtmTable& table, std::string_view block) {
  if (const auto entry = table.find(block)) return entry->ctm;
  if (const auto max = table.max_at_length(block.size())) return *max + 1.0;
  throw Error(ErrorKind::kCoverage,
              fmt::format("table has no strings of length {} (block '{}')", block.size(), block));
}

namespace {

__extension__ typedef unsigned __int128 u128;

using CountMap = std::unordered_map<std::string, std::uint64_t>;

// Allocation-free simulator over the raw digit encoding used by build_table.
class Runner {
 public:
  Runner(int states, std::uint64_t cutoff)
      : states_(states),
        base_(4ULL * static_cast<std::uint64_t>(states) + 2),
        cutoff_(cutoff),
        digits_(static_cast<std::size_t>(2 * states)),
        tape_(2 * static_cast<std::size_t>(cutoff) + 1) {}

  // Returns true and fills `output` when the machine halts within the cutoff.
  bool run(std::uint64_t index, std::string& output) {
    for (auto& d : digits_) {
      d = static_cast<std::uint32_t>(index % base_);
      index /= base_;
    }
    const auto halt_base = static_cast<std::uint32_t>(4 * states_);
    const std::size_t origin = static_cast<std::size_t>(cutoff_);
    std::fill(tape_.begin(), tape_.end(), Cell{0});
    std::size_t pos = origin;
    std::size_t lo = origin;
    std::size_t hi = origin;
    std::uint32_t state = 0;
    for (std::uint64_t step = 0; step < cutoff_; ++step) {
      const std::uint32_t d = digits_[state * 2 + static_cast<std::uint32_t>(tape_[pos])];
      if (d >= halt_base) {
        tape_[pos] = static_cast<Cell>(d - halt_base);
        output.clear();
        for (std::size_t i = lo; i <= hi; ++i) output.push_back(static_cast<char>('0' + tape_[i]));
        return true;
      }
      tape_[pos] = static_cast<Cell>((d >> 1) & 1);
      if (d & 1) {
        if (++pos > hi) hi = pos;
      } else {
        if (--pos < lo) lo = pos;
      }
      state = d >> 2;
    }
    return false;
  }

 private:
  int states_;
  std::uint64_t base_;
  std::uint64_t cutoff_;
  std::vector<std::uint32_t> digits_;
  std::vector<Cell> tape_;
};

struct Partial {
  CountMap counts;
  std::uint64_t halting = 0;
};

void credit(Partial& partial, const std::string& output) {
  ++partial.counts[output];
  ++partial.counts[complement(output)];
  partial.halting += 2;
}

}  // namespace

CtmTable build_table(const BuildOptions& options) {
  if (options.cutoff < 1) throw Error(ErrorKind::kParameter, "cutoff must be >= 1");
  const std::uint64_t count = machine_count(options.states, options.symbols);
  if (!options.sample) {
    if (options.states > 4) {
      throw Error(ErrorKind::kResourceGuard,
                  fmt::format("full enumeration of n={} ({} machines) refused; use sampling",
                              options.states, count));
    }
    if (options.states == 4 && !options.long_run) {
      throw Error(ErrorKind::kResourceGuard,
                  fmt::format("full enumeration of n=4 ({} machines) needs the long-run flag", count));
    }
  } else if (*options.sample < 1 || *options.sample > count) {
    throw Error(ErrorKind::kParameter, "sample size must lie in [1, machine count]");
  }

  const std::uint64_t jobs = options.sample ? *options.sample : count;
  const unsigned workers = std::max(1u, static_cast<unsigned>(
                                            std::min<std::uint64_t>(options.workers, jobs)));

  // Job j maps to machine j, or to a uniform draw from stratum j when sampling.
  // Each stratum draws from its own stream so any partition gives equal results.
  auto machine_for_job = [&](std::uint64_t job) -> std::uint64_t {
    if (!options.sample) return job;
    const std::uint64_t strata = *options.sample;
    const auto lo = static_cast<std::uint64_t>(
        (static_cast<u128>(count) * job) / strata);
    const auto hi = static_cast<std::uint64_t>(
        (static_cast<u128>(count) * (job + 1)) / strata);
    Rng rng(derive_seed("ctm-sample", options.sample_seed ^ (job * 0x9e3779b97f4a7c15ULL)));
    return lo + rng.below(hi - lo);
  };

  std::vector<Partial> partials(workers);
  auto work = [&](unsigned w) {
    const std::uint64_t begin = jobs / workers * w + std::min<std::uint64_t>(w, jobs % workers);
    const std::uint64_t end = begin + jobs / workers + (w < jobs % workers ? 1 : 0);
    Runner runner(options.states, options.cutoff);
    std::string output;
    for (std::uint64_t job = begin; job < end; ++job) {
      if (runner.run(machine_for_job(job), output)) credit(partials[w], output);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  std::map<std::string, std::uint64_t, ShortLex> merged;
  CtmMetadata metadata{options.states, options.symbols, options.cutoff, jobs, 0,
                       options.sample.has_value()};
  for (const auto& partial : partials) {
    metadata.halting += partial.halting;
    for (const auto& [output, n] : partial.counts) merged[output] += n;
  }
  if (metadata.halting == 0) {
    throw Error(ErrorKind::kParameter, "no machine halted within the cutoff");
  }
  return CtmTable(metadata, merged);
}

std::string format_table(const CtmTable& table) {
  const auto& m = table.metadata();
  std::string out = fmt::format("#n={}\n#k={}\n#cutoff={}\n#total={}\n#halting={}\n#sampled={}\n",
                                m.states, m.symbols, m.cutoff, m.total, m.halting,
                                m.sampled ? "true" : "false");
  for (const auto& [output, entry] : table.entries()) {
    out += fmt::format("{}\t{}\t{:.12f}\n", output, entry.count, entry.ctm);
  }
  return out;
}

namespace {

[[noreturn]] void corrupt(const std::string& why) { throw Error(ErrorKind::kCorruptTable, why); }

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    corrupt(fmt::format("bad {} '{}'", what, text));
  }
  return value;
}

std::string_view header_value(std::string_view line, std::string_view key) {
  const std::string prefix = fmt::format("#{}=", key);
  if (!line.starts_with(prefix)) corrupt(fmt::format("expected header '{}'", prefix));
  return line.substr(prefix.size());
}

}  // namespace

CtmTable parse_table(std::string_view text) {
  if (text.empty()) corrupt("empty table file");
  if (text.back() != '\n') corrupt("truncated table file (no final newline)");

  std::vector<std::string_view> lines;
  for (std::size_t start = 0; start < text.size();) {
    const std::size_t end = text.find('\n', start);
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  constexpr std::array<std::string_view, 6> kKeys{"n", "k", "cutoff", "total", "halting", "sampled"};
  if (lines.size() < kKeys.size()) corrupt("truncated header");

  CtmMetadata m;
  m.states = parse_number<int>(header_value(lines[0], kKeys[0]), "n");
  m.symbols = parse_number<int>(header_value(lines[1], kKeys[1]), "k");
  m.cutoff = parse_number<std::uint64_t>(header_value(lines[2], kKeys[2]), "cutoff");
  m.total = parse_number<std::uint64_t>(header_value(lines[3], kKeys[3]), "total");
  m.halting = parse_number<std::uint64_t>(header_value(lines[4], kKeys[4]), "halting");
  const auto sampled = header_value(lines[5], kKeys[5]);
  if (sampled != "true" && sampled != "false") corrupt("bad sampled flag");
  m.sampled = sampled == "true";

  std::map<std::string, std::uint64_t, ShortLex> counts;
  std::map<std::string, double, ShortLex> stored;
  const std::string* previous = nullptr;
  for (std::size_t i = kKeys.size(); i < lines.size(); ++i) {
    const auto line = lines[i];
    const auto tab1 = line.find('\t');
    const auto tab2 = tab1 == std::string_view::npos ? tab1 : line.find('\t', tab1 + 1);
    if (tab2 == std::string_view::npos || line.find('\t', tab2 + 1) != std::string_view::npos) {
      corrupt(fmt::format("line {}: expected 3 tab-separated fields", i + 1));
    }
    std::string output(line.substr(0, tab1));
    if (output.empty() || output.find_first_not_of("01") != std::string::npos) {
      corrupt(fmt::format("line {}: output must be a non-empty binary string", i + 1));
    }
    const auto count = parse_number<std::uint64_t>(line.substr(tab1 + 1, tab2 - tab1 - 1), "count");
    const auto ctm = parse_number<double>(line.substr(tab2 + 1), "ctm");
    if (previous && !ShortLex{}(*previous, output)) {
      corrupt(fmt::format("line {}: entries out of order or duplicated", i + 1));
    }
    auto [it, inserted] = counts.emplace(output, count);
    stored.emplace(output, ctm);
    previous = &it->first;
  }

  CtmTable table(m, counts);  // checks the count sum against H
  for (const auto& [output, entry] : table.entries()) {
    if (std::abs(entry.ctm - stored.at(output)) > 1e-9) {
      corrupt(fmt::format("ctm for '{}' does not match its count", output));
    }
  }
  return table;
}

void save_table(const CtmTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << format_table(table);
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path.string());
}

CtmTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_table(buffer.str());
}

}  // namespace cabdm
