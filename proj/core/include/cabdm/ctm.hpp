#pragma once

// Coding-theorem estimates from the output frequencies of small Turing
// machines. Machines are busy-beaver style: n states, 2 symbols, and a halt
// pseudo-state reached by one of 2 halting choices (write 0 or 1, no move) in
// each of the 2n transition entries, giving (4n+2)^(2n) machines per class.

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ranges>
#include <string>
#include <string_view>
#include <vector>

#include "cabdm/ca.hpp"

namespace cabdm {

enum class Move : std::uint8_t { kLeft, kRight };

struct Transition {
  bool halt = false;
  Cell write = 0;
  Move move = Move::kRight;
  int next_state = 1;  // 1-based; ignored when halt

  friend bool operator==(const Transition&, const Transition&) = default;
};

// Number of machines in the (states, symbols) class. Throws kParameter for an
// unsupported class or one whose index space does not fit in 64 bits.
std::uint64_t machine_count(int states, int symbols = 2);

class TuringMachine {
 public:
  // Entry (state s, read r) is digit (s-1)*k + r of the index in base
  // 4n+2, least significant first. Digit d < 4n encodes next state d/4 + 1,
  // write (d/2)%2 and move d%2 (0 = L, 1 = R); digit 4n + w halts writing w.
  static TuringMachine decode(int states, int symbols, std::uint64_t index);
  std::uint64_t encode() const;

  TuringMachine(int states, int symbols, std::vector<Transition> transitions);

  int states() const noexcept { return states_; }
  int symbols() const noexcept { return symbols_; }
  const Transition& at(int state, Cell read) const noexcept {
    return transitions_[static_cast<std::size_t>((state - 1) * symbols_ + read)];
  }
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }

  friend bool operator==(const TuringMachine&, const TuringMachine&) = default;

 private:
  int states_;
  int symbols_;
  std::vector<Transition> transitions_;
};

// Every machine of the class in ascending index order.
inline auto enumerate_machines(int states, int symbols = 2) {
  const std::uint64_t count = machine_count(states, symbols);
  return std::views::iota(std::uint64_t{0}, count) |
         std::views::transform([states, symbols](std::uint64_t index) {
           return TuringMachine::decode(states, symbols, index);
         });
}

struct RunOutcome {
  bool halted = false;
  std::uint64_t steps_used = 0;
  std::optional<std::string> output;  // '0'/'1' over the visited tape segment
};

// Runs from state 1 at cell 0 of a tape filled with `blank`. The halting
// transition counts as a step.
RunOutcome run_machine(const TuringMachine& machine, std::uint64_t cutoff, Cell blank = 0);

struct CtmMetadata {
  int states = 0;
  int symbols = 2;
  std::uint64_t cutoff = 0;
  std::uint64_t total = 0;    // machines enumerated (or sampled)
  std::uint64_t halting = 0;  // H: sum of all counts
  bool sampled = false;

  friend bool operator==(const CtmMetadata&, const CtmMetadata&) = default;
};

struct CtmEntry {
  std::uint64_t count = 0;
  double ctm = 0.0;  // -log2(count / H)

  friend bool operator==(const CtmEntry&, const CtmEntry&) = default;
};

// Orders strings by length, then lexicographically.
struct ShortLex {
  using is_transparent = void;
  bool operator()(std::string_view a, std::string_view b) const noexcept {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

class CtmTable {
 public:
  using Entries = std::map<std::string, CtmEntry, ShortLex>;

  CtmTable() = default;
  // Computes ctm values from counts; metadata.halting must equal the count sum.
  CtmTable(CtmMetadata metadata, const std::map<std::string, std::uint64_t, ShortLex>& counts);

  const CtmMetadata& metadata() const noexcept { return metadata_; }
  const Entries& entries() const noexcept { return entries_; }
  std::optional<CtmEntry> find(std::string_view block) const;
  std::size_t max_length() const noexcept;
  // Largest stored ctm among strings of this length, if any are stored.
  std::optional<double> max_at_length(std::size_t length) const;

  friend bool operator==(const CtmTable& a, const CtmTable& b) {
    return a.metadata_ == b.metadata_ && a.entries_ == b.entries_;
  }

 private:
  CtmMetadata metadata_;
  Entries entries_;
  std::vector<double> max_by_length_;  // NaN where a length has no entries
};

struct BuildOptions {
  int states = 3;
  int symbols = 2;
  std::uint64_t cutoff = 107;
  unsigned workers = 1;
  // Full enumeration of the 4-state class (~1.1e10 machines).
  bool long_run = false;
  // Index-stratified sampling: one machine drawn uniformly from each of
  // `sample` equal strata of the index space.
  std::optional<std::uint64_t> sample;
  std::uint64_t sample_seed = 0;
};

// Runs every machine on the blank-0 tape and credits both its output and the
// complemented output. The latter is exactly the output of the symbol-relabeled
// machine on the blank-1 tape, so the table covers both blank symbols and is
// complement-symmetric by construction; H counts halting runs over both.
CtmTable build_table(const BuildOptions& options);

// Missing-block policy: stored value if present, otherwise the largest stored
// value at that length plus one bit. Throws kCoverage if nothing of that
// length is stored.
double lookup(const CtmTable& table, std::string_view block);

void save_table(const CtmTable& table, const std::filesystem::path& path);
CtmTable load_table(const std::filesystem::path& path);
std::string format_table(const CtmTable& table);
CtmTable parse_table(std::string_view text);

std::string complement(std::string_view bits);

}  // namespace cabdm
