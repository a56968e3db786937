#pragma once

#include <algorithm>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "logdiss/automaton.hpp"

namespace logdiss::testing {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(LOGDISS_DATA_DIR) / name;
}

inline Word word_of(const std::string& compact) {
  Word w;
  for (char c : compact) w.emplace_back(1, c);
  return w;
}

// Builds an automaton whose outputs are the state ids prefixed with "r".
inline Automaton make(const std::string& name, std::vector<std::string> inputs, std::vector<std::string> states,
                      std::vector<Transition> transitions, std::optional<std::string> initial = std::nullopt) {
  AutomatonSpec spec;
  spec.name = name;
  spec.inputs = std::move(inputs);
  spec.states = states;
  for (const auto& q : states) {
    spec.outputs.push_back("r" + q);
    spec.output_map.emplace_back(q, "r" + q);
  }
  spec.transitions = std::move(transitions);
  spec.initial = std::move(initial);
  return Automaton::validate(spec);
}

inline Automaton memory1() {
  return make("memory1", {"set0", "set1"}, {"0", "1"},
              {{"0", "set0", "0"}, {"0", "set1", "1"}, {"1", "set0", "0"}, {"1", "set1", "1"}}, "0");
}

inline Automaton fig7() {
  return make("dissipative", {"0", "1"}, {"A", "B", "C", "D", "E", "F", "G", "Stop"},
              {{"A", "0", "B"},
               {"B", "0", "E"},
               {"B", "1", "C"},
               {"C", "0", "C"},
               {"C", "1", "D"},
               {"D", "0", "F"},
               {"E", "1", "F"},
               {"F", "1", "G"},
               {"G", "0", "Stop"},
               {"G", "1", "A"}},
              "A");
}

inline Automaton counter(std::size_t n, const std::string& name) {
  std::vector<std::string> states;
  std::vector<Transition> t;
  for (std::size_t i = 0; i < n; ++i) states.push_back(std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) t.push_back({states[i], "ck", states[(i + 1) % n]});
  return make(name, {"ck"}, states, t, "0");
}

inline Automaton counter4() { return counter(4, "counter4"); }
inline Automaton counter2() { return counter(2, "counter2"); }

// Output Q is the state itself so it can drive another flip-flop.
inline Automaton tflipflop() {
  AutomatonSpec spec;
  spec.name = "tflipflop";
  spec.inputs = {"0", "1"};
  spec.outputs = {"0", "1"};
  spec.states = {"0", "1"};
  spec.output_map = {{"0", "0"}, {"1", "1"}};
  spec.transitions = {{"0", "0", "0"}, {"0", "1", "1"}, {"1", "0", "1"}, {"1", "1", "0"}};
  spec.initial = "0";
  return Automaton::validate(spec);
}

inline Automaton chain(std::size_t n) {
  std::vector<std::string> states;
  std::vector<Transition> t;
  for (std::size_t i = 0; i < n; ++i) states.push_back("s" + std::to_string(i));
  for (std::size_t i = 0; i + 1 < n; ++i) t.push_back({states[i], "ck", states[i + 1]});
  return make("chain", {"ck"}, states, t, "s0");
}

struct RandomOptions {
  std::size_t max_states = 8;
  std::size_t max_symbols = 4;
  double density = 0.7;             // chance that (q, s) is defined
  bool no_sinks = false;            // every state keeps at least one transition
  bool strongly_connected = false;  // a Hamiltonian cycle on symbol 0
};

inline Automaton random_automaton(std::mt19937& rng, const RandomOptions& opt = {}) {
  std::uniform_int_distribution<std::size_t> n_states(1, opt.max_states);
  std::uniform_int_distribution<std::size_t> n_symbols(1, opt.max_symbols);
  std::bernoulli_distribution defined(opt.density);
  const std::size_t n = n_states(rng);
  const std::size_t k = n_symbols(rng);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);

  std::vector<std::string> states;
  std::vector<std::string> inputs;
  for (std::size_t i = 0; i < n; ++i) states.push_back("q" + std::to_string(i));
  for (std::size_t s = 0; s < k; ++s) inputs.push_back("s" + std::to_string(s));

  std::vector<Transition> t;
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 0; i < n; ++i) {
    bool any = false;
    for (std::size_t s = 0; s < k; ++s) {
      if (opt.strongly_connected && s == 0) {
        // position of i in the shuffled cycle
        const auto pos = static_cast<std::size_t>(std::find(order.begin(), order.end(), i) - order.begin());
        t.push_back({states[i], inputs[0], states[order[(pos + 1) % n]]});
        any = true;
        continue;
      }
      if (defined(rng)) {
        t.push_back({states[i], inputs[s], states[pick(rng)]});
        any = true;
      }
    }
    if (!any && opt.no_sinks) t.push_back({states[i], inputs[0], states[pick(rng)]});
  }
  return make("random", inputs, states, t, states[0]);
}

}  // namespace logdiss::testing
