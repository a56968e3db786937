#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "logdiss/automaton.hpp"

namespace logdiss {

enum class Move { Left, Right, None };

char to_char(Move m) noexcept;
Move parse_move(std::string_view s);

struct RuleSpec {
  std::string state;
  std::string read;
  std::string next;
  std::string write;
  Move move = Move::None;
};

struct TuringMachineSpec {
  std::string name;
  std::string blank;
  std::vector<std::string> tape_alphabet;
  std::vector<std::string> states;
  std::string initial;
  std::vector<std::string> halting;
  std::vector<RuleSpec> rules;
};

inline constexpr std::size_t kDefaultTapeCap = 4096;

// Deterministic single-tape machine. Rules are indexed in (state, read)
// order; that index is the rule identifier stored in history records.
class TuringMachine {
 public:
  struct Rule {
    std::size_t state;
    std::uint32_t read;
    std::size_t next;
    std::uint32_t write;
    Move move;
  };

  static TuringMachine validate(const TuringMachineSpec& spec);

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] const std::vector<std::string>& states() const noexcept { return states_; }
  [[nodiscard]] const std::vector<std::string>& tape_alphabet() const noexcept { return alphabet_; }
  [[nodiscard]] std::uint32_t blank() const noexcept { return blank_; }
  [[nodiscard]] std::size_t initial() const noexcept { return initial_; }
  [[nodiscard]] bool is_halting(std::size_t state) const { return halting_[state]; }
  [[nodiscard]] const std::vector<Rule>& rules() const noexcept { return rules_; }
  // Rule index for (state, symbol), or npos.
  [[nodiscard]] std::size_t rule_for(std::size_t state, std::uint32_t symbol) const {
    return table_[state * alphabet_.size() + symbol];
  }
  [[nodiscard]] std::size_t state_index(std::string_view id) const;
  [[nodiscard]] std::uint32_t symbol_index(std::string_view symbol) const;

  [[nodiscard]] TuringMachineSpec to_spec() const;

 private:
  TuringMachine() = default;

  std::string name_;
  std::vector<std::string> states_;
  std::vector<std::string> alphabet_;
  std::uint32_t blank_ = 0;
  std::size_t initial_ = 0;
  std::vector<bool> halting_;
  std::vector<Rule> rules_;
  std::vector<std::size_t> table_;
};

// Finite tape window extended with blanks on demand. Cell `origin` is the
// absolute position of cells[0].
struct Tape {
  std::vector<std::uint32_t> cells;
  long origin = 0;
  std::uint32_t blank = 0;

  [[nodiscard]] std::uint32_t read(long pos) const;
  void write(long pos, std::uint32_t symbol, std::size_t cap);
  // Non-blank span, blanks trimmed at both ends.
  [[nodiscard]] std::vector<std::uint32_t> trimmed() const;
  // Absolute position of the first non-blank cell (0 for an all-blank tape).
  [[nodiscard]] long first_nonblank() const;
  [[nodiscard]] bool same_content(const Tape& other) const;
};

struct Configuration {
  std::size_t state = 0;
  long head = 0;
  Tape tape;

  // Blank-trimmed textual form; equal iff the configurations are equal.
  [[nodiscard]] std::string canonical(const TuringMachine& tm) const;
  bool operator==(const Configuration& other) const {
    return state == other.state && head == other.head && tape.same_content(other.tape);
  }
};

// Input symbols are written from position 0; the head starts at 0.
Configuration initial_configuration(const TuringMachine& tm, std::span<const std::string> input);

// Throws Halted or NoRule; TapeOverflow beyond `tape_cap` cells.
Configuration tm_step(const TuringMachine& tm, const Configuration& c, std::size_t tape_cap = kDefaultTapeCap);

struct RunTrace {
  std::vector<Configuration> configurations;
  std::vector<std::size_t> rules_applied;
  bool halted = false;
  std::size_t steps = 0;               // n
  std::vector<std::string> result;     // non-blank span of the final tape
  std::size_t result_length = 0;       // r
};

RunTrace tm_run(const TuringMachine& tm, std::span<const std::string> input, std::size_t max_steps,
                std::size_t tape_cap = kDefaultTapeCap);

// Control unit as an automaton: states = control states, inputs = tape
// symbols, output = state id.
Automaton head_automaton(const TuringMachine& tm);

struct Periodicity {
  bool halted = false;
  bool eventually_periodic = false;
  std::size_t prefix = 0;  // first index of the periodic part
  std::size_t period = 0;
  std::vector<std::string> head_states;
};

struct ConvergenceReport {
  bool has_convergence = false;
  std::vector<std::string> witnesses;
  std::optional<Periodicity> observed;
};

// Detects the smallest (prefix, period) with period <= max_period that
// repeats at least twice up to the end of `sequence`.
Periodicity detect_periodicity(std::span<const std::string> sequence, std::size_t max_period);

ConvergenceReport check_convergence_lemma(const TuringMachine& tm);
ConvergenceReport check_convergence_lemma(const TuringMachine& tm, std::span<const std::string> input,
                                          std::size_t horizon);

// One state per symbol, inputs "write_<x>", full write convergence. The
// cell starts out holding the first listed symbol.
Automaton cell_automaton(std::span<const std::string> alphabet);

struct TmDissipation {
  std::vector<double> head_bits;
  std::vector<double> cell_bits;
  std::vector<double> per_step_bits;
  std::vector<double> cumulative_bits;
  bool halted = false;

  [[nodiscard]] double total_bits() const { return cumulative_bits.empty() ? 0.0 : cumulative_bits.back(); }
  // Least-squares slope of cumulative bits against step number.
  [[nodiscard]] double slope() const;
};

// Uniform choice information of the head state left plus one cell write
// per step.
TmDissipation modular_tm_dissipation(const TuringMachine& tm, std::span<const std::string> input,
                                     std::size_t max_steps, std::size_t tape_cap = kDefaultTapeCap);

// Inputless chain through the canonical configurations of a halted run.
Automaton global_graph(const RunTrace& trace, const TuringMachine& tm);

enum class BennettPhase { Compute, Copy, Uncompute };

struct BennettConfiguration {
  BennettPhase phase = BennettPhase::Compute;
  Configuration work;
  std::vector<std::size_t> history;  // rule identifiers
  std::vector<std::uint32_t> output;

  [[nodiscard]] std::string canonical(const TuringMachine& tm) const;
};

struct BennettTrace {
  std::size_t compute_steps = 0;  // n
  std::size_t copy_steps = 0;     // r
  std::size_t total_steps = 0;    // 2n + r
  std::vector<std::size_t> history;  // full history at the end of the compute phase
  std::vector<BennettConfiguration> configurations;
  std::vector<std::string> input;
  std::vector<std::string> output;
  std::vector<std::string> final_tape;

  [[nodiscard]] const BennettConfiguration& final_configuration() const { return configurations.back(); }
};

// Compute while logging rule identifiers, copy the result to an output
// tape, then undo the computation from the log.
BennettTrace bennett_simulate(const TuringMachine& tm, std::span<const std::string> input, std::size_t max_steps,
                              std::size_t tape_cap = kDefaultTapeCap);

Automaton global_graph(const BennettTrace& trace, const TuringMachine& tm);

// State count of the linear global graph of the classic quadruple-based
// reversible machine, quoted for comparison only.
constexpr std::size_t bennett_reference_states(std::size_t n, std::size_t r) { return 4 * n + 4 * r + 5; }

}  // namespace logdiss
