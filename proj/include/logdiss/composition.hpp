#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "logdiss/automaton.hpp"
#include "logdiss/dissipation.hpp"

namespace logdiss {

// Monolithic constructions refuse to enumerate more states than this.
inline constexpr std::size_t kMonolithicStateLimit = std::size_t{1} << 20;

// Cartesian product of module graphs. States are "(qA,qB,...)", input
// symbols "sA|sB|...", outputs "(rA,rB,...)".
struct ProductAutomaton {
  Automaton automaton;
  std::vector<std::string> modules;
  // components[q][i] = state index in module i of product state q.
  std::vector<std::vector<std::size_t>> components;
};

std::string tuple_state(std::span<const std::string> parts);
std::string tuple_symbol(std::span<const std::string> parts);

// Throws SizeLimit when the product would exceed kMonolithicStateLimit states.
ProductAutomaton product(std::span<const Automaton> modules);
ProductAutomaton product(const Automaton& a, const Automaton& b);

// Independent per-module arrow choices.
InputModel product_model(const ProductAutomaton& p, std::span<const Automaton> modules,
                         std::span<const InputModel> models);

struct Connection {
  std::size_t source = 0;       // module whose output is read
  std::size_t destination = 0;  // module whose input port is driven
  // Source output symbol -> destination input symbol. Empty means identity.
  std::map<std::string, std::string> mapping;
};

struct Wiring {
  std::string name = "wired";
  std::vector<std::string> names;  // module names, parallel to modules
  std::vector<Automaton> modules;
  std::vector<Connection> connections;
  std::vector<std::pair<std::size_t, std::string>> constants;  // (module, fixed symbol)
  // Per-module initial state overrides; defaults to each module's own initial.
  std::map<std::size_t, std::string> initial;

  // Modules whose input port is neither connected nor constant.
  [[nodiscard]] std::vector<std::size_t> free_inputs() const;
};

struct ClosedSystem {
  Automaton automaton;
  std::vector<std::vector<std::size_t>> components;
};

// Synchronous closed-loop system: at each step every connected input reads
// its source module's current output. With no free inputs left the system
// is clock-driven and its only input symbol is kClockSymbol.
ClosedSystem wire(const Wiring& w);

// Restriction to the states and arrows reachable from the initial state.
Automaton reachable_subgraph(const Automaton& a);
Automaton reachable_subgraph(const ClosedSystem& c);

// Rooted isomorphism of the reachable graphs, arrow labels compared after
// renaming a's symbols through `renaming` (identity for unlisted symbols).
bool equivalent(const Automaton& a, const Automaton& b,
                const std::map<std::string, std::string>& renaming = {});

}  // namespace logdiss
