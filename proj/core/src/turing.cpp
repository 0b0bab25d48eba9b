#include <string>
#include <vector>

#include "cabdm/ctm.hpp"
#include "cabdm/error.hpp"

namespace cabdm {

std::uint64_t machine_count(int states, int symbols) {
  if (symbols != 2) {
    throw Error(ErrorKind::kParameter,
                "only 2-symbol machines are supported (got k=" + std::to_string(symbols) + ")");
  }
  if (states < 1) throw Error(ErrorKind::kParameter, "machines need at least one state");
  const std::uint64_t base = 4ULL * static_cast<std::uint64_t>(states) + 2;
  const int entries = 2 * states;
  std::uint64_t count = 1;
  for (int i = 0; i < entries; ++i) {
    if (count > ~std::uint64_t{0} / base) {
      throw Error(ErrorKind::kParameter, "machine class with n=" + std::to_string(states) +
                                             " does not fit a 64-bit index");
    }
    count *= base;
  }
  return count;
}

TuringMachine::TuringMachine(int states, int symbols, std::vector<Transition> transitions)
    : states_(states), symbols_(symbols), transitions_(std::move(transitions)) {
  if (transitions_.size() != static_cast<std::size_t>(states_ * symbols_)) {
    throw Error(ErrorKind::kParameter, "transition table must have n*k entries");
  }
  for (const auto& t : transitions_) {
    if (!t.halt && (t.next_state < 1 || t.next_state > states_)) {
      throw Error(ErrorKind::kParameter, "transition targets a state outside the machine");
    }
    if (t.write < 0 || t.write >= symbols_) {
      throw Error(ErrorKind::kParameter, "transition writes a symbol outside the alphabet");
    }
  }
}

TuringMachine TuringMachine::decode(int states, int symbols, std::uint64_t index) {
  const std::uint64_t count = machine_count(states, symbols);
  if (index >= count) {
    throw Error(ErrorKind::kIndex, "machine index " + std::to_string(index) + " out of range");
  }
  const std::uint64_t base = 4ULL * static_cast<std::uint64_t>(states) + 2;
  const auto halt_base = static_cast<std::uint64_t>(4 * states);
  std::vector<Transition> transitions(static_cast<std::size_t>(2 * states));
  for (auto& t : transitions) {
    const std::uint64_t digit = index % base;
    index /= base;
    if (digit >= halt_base) {
      t = Transition{true, static_cast<Cell>(digit - halt_base), Move::kRight, 1};
    } else {
      t = Transition{false, static_cast<Cell>((digit / 2) % 2),
                     digit % 2 == 0 ? Move::kLeft : Move::kRight, static_cast<int>(digit / 4) + 1};
    }
  }
  return TuringMachine(states, symbols, std::move(transitions));
}

std::uint64_t TuringMachine::encode() const {
  const std::uint64_t base = 4ULL * static_cast<std::uint64_t>(states_) + 2;
  std::uint64_t index = 0;
  for (auto it = transitions_.rbegin(); it != transitions_.rend(); ++it) {
    std::uint64_t digit = 0;
    if (it->halt) {
      digit = static_cast<std::uint64_t>(4 * states_ + it->write);
    } else {
      digit = static_cast<std::uint64_t>(4 * (it->next_state - 1) + 2 * it->write +
                                         (it->move == Move::kRight ? 1 : 0));
    }
    index = index * base + digit;
  }
  return index;
}

RunOutcome run_machine(const TuringMachine& machine, std::uint64_t cutoff, Cell blank) {
  if (cutoff < 1) throw Error(ErrorKind::kParameter, "cutoff must be >= 1");
  // The head moves at most one cell per step, so 2*cutoff+1 cells suffice.
  const std::size_t origin = static_cast<std::size_t>(cutoff);
  std::vector<Cell> tape(2 * origin + 1, blank);
  std::size_t pos = origin;
  std::size_t lo = origin;
  std::size_t hi = origin;
  int state = 1;
  for (std::uint64_t step = 1; step <= cutoff; ++step) {
    const Transition& t = machine.at(state, tape[pos]);
    tape[pos] = t.write;
    if (t.halt) {
      std::string output;
      output.reserve(hi - lo + 1);
      for (std::size_t i = lo; i <= hi; ++i) output.push_back(static_cast<char>('0' + tape[i]));
      return RunOutcome{true, step, std::move(output)};
    }
    if (t.move == Move::kRight) {
      ++pos;
      if (pos > hi) hi = pos;
    } else {
      --pos;
      if (pos < lo) lo = pos;
    }
    state = t.next_state;
  }
  return RunOutcome{false, cutoff, std::nullopt};
}

}  // namespace cabdm
