#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "logdiss/error.hpp"

namespace logdiss {

using Word = std::vector<std::string>;

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// Input symbol used by clock-driven automata that read no information.
inline constexpr std::string_view kClockSymbol = "ck";

struct Transition {
  std::string source;
  std::string symbol;
  std::string target;
};

// Unvalidated automaton description, as produced by a parser or a builder.
struct AutomatonSpec {
  std::string name;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<std::string> states;
  std::optional<std::string> initial;
  std::vector<std::pair<std::string, std::string>> output_map;  // (state, output)
  std::vector<Transition> transitions;
};

// All input symbols moving `source` to `target`, merged into one edge.
struct Arrow {
  std::string source;
  std::string target;
  std::vector<std::string> labels;  // sorted, non-empty
  std::size_t source_index = npos;
  std::size_t target_index = npos;

  bool operator==(const Arrow& other) const {
    return source == other.source && target == other.target && labels == other.labels;
  }
};

struct PathStep {
  std::string symbol;
  std::size_t arrow;  // index into Automaton::arrows()
  std::string state;  // state reached
};

struct Path {
  std::string start;
  std::vector<PathStep> steps;
  std::vector<std::string> outputs;  // one per visited state, start included

  [[nodiscard]] std::vector<std::string> states() const;
  [[nodiscard]] const std::string& final_state() const {
    return steps.empty() ? start : steps.back().state;
  }
};

// A deterministic finite automaton viewed as a labelled graph. Immutable once
// built; states and symbols are kept in lexicographic order so that every
// index-based accessor is deterministic.
class Automaton {
 public:
  // Checks determinism, output injectivity and membership of every
  // referenced state/symbol, then merges transitions into arrows.
  static Automaton validate(const AutomatonSpec& spec);

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] const std::vector<std::string>& input_alphabet() const noexcept { return inputs_; }
  [[nodiscard]] const std::vector<std::string>& output_alphabet() const noexcept { return outputs_; }
  [[nodiscard]] const std::vector<std::string>& states() const noexcept { return states_; }
  [[nodiscard]] const std::optional<std::string>& initial() const noexcept { return initial_; }

  [[nodiscard]] std::size_t state_count() const noexcept { return states_.size(); }
  [[nodiscard]] std::size_t arrow_count() const noexcept { return arrows_.size(); }
  // Number of defined (state, symbol) pairs, before merging.
  [[nodiscard]] std::size_t transition_count() const noexcept { return transition_count_; }

  [[nodiscard]] std::optional<std::size_t> find_state(std::string_view id) const;
  [[nodiscard]] std::optional<std::size_t> find_symbol(std::string_view symbol) const;
  // Throw UnknownState / UnknownSymbol.
  [[nodiscard]] std::size_t state_index(std::string_view id) const;
  [[nodiscard]] std::size_t symbol_index(std::string_view symbol) const;

  [[nodiscard]] const std::string& output(std::size_t state) const { return output_of_[state]; }
  [[nodiscard]] const std::string& output(std::string_view state) const {
    return output_of_[state_index(state)];
  }

  // Arrows sorted by (source, target).
  [[nodiscard]] const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  // Indices into arrows(); outgoing sorted by target, incoming by source.
  [[nodiscard]] std::span<const std::size_t> out_arrows(std::size_t state) const {
    return out_[state];
  }
  [[nodiscard]] std::span<const std::size_t> in_arrows(std::size_t state) const {
    return in_[state];
  }
  [[nodiscard]] std::size_t out_degree(std::size_t state) const { return out_[state].size(); }
  [[nodiscard]] std::size_t in_degree(std::size_t state) const { return in_[state].size(); }

  // Target state index of G(state, symbol), or npos when undefined.
  [[nodiscard]] std::size_t target(std::size_t state, std::size_t symbol) const {
    return delta_[state * inputs_.size() + symbol];
  }
  // Arrow index carrying (state, symbol), or npos when undefined.
  [[nodiscard]] std::size_t arrow_of(std::size_t state, std::size_t symbol) const {
    return arrow_of_[state * inputs_.size() + symbol];
  }

  // Canonical description that validates back to an identical automaton.
  [[nodiscard]] AutomatonSpec to_spec() const;

  bool operator==(const Automaton& other) const;

 private:
  Automaton() = default;

  std::string name_;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  std::vector<std::string> states_;
  std::optional<std::string> initial_;
  std::vector<std::string> output_of_;
  std::vector<std::size_t> delta_;
  std::vector<std::size_t> arrow_of_;
  std::vector<Arrow> arrows_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::size_t transition_count_ = 0;
  std::unordered_map<std::string, std::size_t> state_lookup_;
  std::unordered_map<std::string, std::size_t> symbol_lookup_;
};

inline Automaton validate(const AutomatonSpec& spec) { return Automaton::validate(spec); }

std::vector<Arrow> arrows_from(const Automaton& a, std::string_view state);

// States with at least two outgoing (resp. incoming) merged arrows.
// Self-loops count like any other arrow.
std::vector<std::string> divergent_states(const Automaton& a);
std::vector<std::string> convergent_states(const Automaton& a);

bool is_reversible(const Automaton& a);

std::string step(const Automaton& a, std::string_view state, std::string_view symbol);

// ForbiddenInput carries the failing word position.
Path run(const Automaton& a, std::string_view start, std::span<const std::string> word);

}  // namespace logdiss
