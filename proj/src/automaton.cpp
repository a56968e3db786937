#include "logdiss/automaton.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace logdiss {

namespace {

bool is_token(std::string_view s) {
  return !s.empty() && std::none_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isspace(c) != 0 || c == '#';
  });
}

std::vector<std::string> sorted_set(const std::vector<std::string>& items, std::string_view what) {
  std::vector<std::string> out = items;
  for (const auto& s : out) {
    if (!is_token(s)) {
      throw Error(ErrorCode::InvalidArgument, "invalid " + std::string(what) + " token '" + s + "'");
    }
  }
  std::sort(out.begin(), out.end());
  auto dup = std::adjacent_find(out.begin(), out.end());
  if (dup != out.end()) {
    throw Error(ErrorCode::InvalidArgument, "duplicate " + std::string(what) + " '" + *dup + "'");
  }
  return out;
}

std::unordered_map<std::string, std::size_t> index_of(const std::vector<std::string>& items) {
  std::unordered_map<std::string, std::size_t> m;
  m.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) m.emplace(items[i], i);
  return m;
}

}  // namespace

std::vector<std::string> Path::states() const {
  std::vector<std::string> out;
  out.reserve(steps.size() + 1);
  out.push_back(start);
  for (const auto& s : steps) out.push_back(s.state);
  return out;
}

Automaton Automaton::validate(const AutomatonSpec& spec) {
  Automaton a;
  a.name_ = spec.name;
  a.inputs_ = sorted_set(spec.inputs, "input symbol");
  a.outputs_ = sorted_set(spec.outputs, "output symbol");
  a.states_ = sorted_set(spec.states, "state");
  a.state_lookup_ = index_of(a.states_);
  a.symbol_lookup_ = index_of(a.inputs_);
  const auto output_lookup = index_of(a.outputs_);

  if (spec.initial) {
    if (!a.state_lookup_.contains(*spec.initial)) {
      throw Error(ErrorCode::UnknownState, "initial state '" + *spec.initial + "' is not declared");
    }
    a.initial_ = spec.initial;
  }

  const std::size_t n = a.states_.size();
  const std::size_t k = a.inputs_.size();

  a.output_of_.assign(n, {});
  std::vector<bool> has_output(n, false);
  for (const auto& [state, out] : spec.output_map) {
    const std::size_t q = a.state_index(state);
    if (!output_lookup.contains(out)) {
      throw Error(ErrorCode::UnknownSymbol, "output symbol '" + out + "' is not declared");
    }
    if (has_output[q] && a.output_of_[q] != out) {
      throw Error(ErrorCode::InvalidArgument, "state '" + state + "' has two outputs");
    }
    has_output[q] = true;
    a.output_of_[q] = out;
  }
  std::map<std::string, std::size_t> owner;
  for (std::size_t q = 0; q < n; ++q) {
    if (!has_output[q]) {
      throw Error(ErrorCode::MissingOutput, "state '" + a.states_[q] + "' has no output symbol");
    }
    auto [it, inserted] = owner.emplace(a.output_of_[q], q);
    if (!inserted) {
      throw Error(ErrorCode::NonInjectiveOutput, "states '" + a.states_[it->second] + "' and '" +
                                                     a.states_[q] + "' share output '" +
                                                     a.output_of_[q] + "'");
    }
  }

  a.delta_.assign(n * k, npos);
  for (const auto& t : spec.transitions) {
    const std::size_t q = a.state_index(t.source);
    const std::size_t s = a.symbol_index(t.symbol);
    const std::size_t r = a.state_index(t.target);
    std::size_t& slot = a.delta_[q * k + s];
    if (slot != npos && slot != r) {
      throw Error(ErrorCode::Nondeterministic, "state '" + t.source + "' on symbol '" + t.symbol +
                                                   "' leads to both '" + a.states_[slot] +
                                                   "' and '" + t.target + "'");
    }
    if (slot == npos) ++a.transition_count_;
    slot = r;
  }

  // Merge: one arrow per (source, target) pair, in (source, target) order.
  a.out_.assign(n, {});
  a.in_.assign(n, {});
  a.arrow_of_.assign(n * k, npos);
  for (std::size_t q = 0; q < n; ++q) {
    std::map<std::size_t, std::vector<std::size_t>> by_target;
    for (std::size_t s = 0; s < k; ++s) {
      const std::size_t r = a.delta_[q * k + s];
      if (r != npos) by_target[r].push_back(s);
    }
    for (const auto& [r, symbols] : by_target) {
      Arrow arrow;
      arrow.source = a.states_[q];
      arrow.target = a.states_[r];
      arrow.source_index = q;
      arrow.target_index = r;
      for (std::size_t s : symbols) {
        arrow.labels.push_back(a.inputs_[s]);
        a.arrow_of_[q * k + s] = a.arrows_.size();
      }
      a.out_[q].push_back(a.arrows_.size());
      a.arrows_.push_back(std::move(arrow));
    }
  }
  for (std::size_t i = 0; i < a.arrows_.size(); ++i) {
    a.in_[a.arrows_[i].target_index].push_back(i);
  }
  for (auto& in : a.in_) {
    std::sort(in.begin(), in.end(), [&](std::size_t x, std::size_t y) {
      return a.arrows_[x].source_index < a.arrows_[y].source_index;
    });
  }
  return a;
}

std::optional<std::size_t> Automaton::find_state(std::string_view id) const {
  auto it = state_lookup_.find(std::string(id));
  if (it == state_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Automaton::find_symbol(std::string_view symbol) const {
  auto it = symbol_lookup_.find(std::string(symbol));
  if (it == symbol_lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t Automaton::state_index(std::string_view id) const {
  if (auto q = find_state(id)) return *q;
  throw Error(ErrorCode::UnknownState, "unknown state '" + std::string(id) + "'");
}

std::size_t Automaton::symbol_index(std::string_view symbol) const {
  if (auto s = find_symbol(symbol)) return *s;
  throw Error(ErrorCode::UnknownSymbol, "unknown input symbol '" + std::string(symbol) + "'");
}

AutomatonSpec Automaton::to_spec() const {
  AutomatonSpec spec;
  spec.name = name_;
  spec.inputs = inputs_;
  spec.outputs = outputs_;
  spec.states = states_;
  spec.initial = initial_;
  for (std::size_t q = 0; q < states_.size(); ++q) spec.output_map.emplace_back(states_[q], output_of_[q]);
  for (std::size_t q = 0; q < states_.size(); ++q) {
    for (std::size_t s = 0; s < inputs_.size(); ++s) {
      const std::size_t r = target(q, s);
      if (r != npos) spec.transitions.push_back({states_[q], inputs_[s], states_[r]});
    }
  }
  return spec;
}

bool Automaton::operator==(const Automaton& other) const {
  return name_ == other.name_ && inputs_ == other.inputs_ && outputs_ == other.outputs_ &&
         states_ == other.states_ && initial_ == other.initial_ &&
         output_of_ == other.output_of_ && delta_ == other.delta_;
}

std::vector<Arrow> arrows_from(const Automaton& a, std::string_view state) {
  std::vector<Arrow> out;
  for (std::size_t i : a.out_arrows(a.state_index(state))) out.push_back(a.arrows()[i]);
  return out;
}

std::vector<std::string> divergent_states(const Automaton& a) {
  std::vector<std::string> out;
  for (std::size_t q = 0; q < a.state_count(); ++q) {
    if (a.out_degree(q) >= 2) out.push_back(a.states()[q]);
  }
  return out;
}

std::vector<std::string> convergent_states(const Automaton& a) {
  std::vector<std::string> out;
  for (std::size_t q = 0; q < a.state_count(); ++q) {
    if (a.in_degree(q) >= 2) out.push_back(a.states()[q]);
  }
  return out;
}

bool is_reversible(const Automaton& a) {
  for (std::size_t q = 0; q < a.state_count(); ++q) {
    if (a.in_degree(q) >= 2) return false;
  }
  return true;
}

std::string step(const Automaton& a, std::string_view state, std::string_view symbol) {
  const std::size_t q = a.state_index(state);
  const std::size_t s = a.symbol_index(symbol);
  const std::size_t r = a.target(q, s);
  if (r == npos) {
    throw Error(ErrorCode::ForbiddenInput,
                "symbol '" + std::string(symbol) + "' is forbidden in state '" + std::string(state) + "'");
  }
  return a.states()[r];
}

Path run(const Automaton& a, std::string_view start, std::span<const std::string> word) {
  std::size_t q = a.state_index(start);
  Path path;
  path.start = a.states()[q];
  path.outputs.push_back(a.output(q));
  for (std::size_t i = 0; i < word.size(); ++i) {
    const auto s = a.find_symbol(word[i]);
    const std::size_t arrow = s ? a.arrow_of(q, *s) : npos;
    if (arrow == npos) {
      throw Error(ErrorCode::ForbiddenInput,
                  "symbol '" + word[i] + "' at position " + std::to_string(i) +
                      " is forbidden in state '" + a.states()[q] + "'",
                  i);
    }
    q = a.arrows()[arrow].target_index;
    path.steps.push_back({word[i], arrow, a.states()[q]});
    path.outputs.push_back(a.output(q));
  }
  return path;
}

}  // namespace logdiss
