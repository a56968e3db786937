#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "logdiss/automaton.hpp"
#include "logdiss/composition.hpp"
#include "logdiss/dissipation.hpp"
#include "logdiss/turing.hpp"

namespace logdiss {

// Line-oriented text formats. `#` starts a comment, tokens are separated by
// whitespace, and every parse error carries its line number.
//
// Automaton file:
//   automaton <name>
//   inputs <sym>...
//   outputs <sym>...
//   states <id>...
//   initial <id>
//   output <state> <sym>
//   trans <state> <insym> <state>
//   prob <state> <insym> <p>
//
// Turing machine file:
//   tm <name>
//   blank <sym>
//   tape <sym>...
//   states <id>...
//   initial <id>
//   halting <id>...
//   rule <state> <read> <state> <write> <L|R|N>
//
// Wiring file (module paths are relative to the wiring file):
//   wiring <name>
//   module <name> <path>
//   const <module> <sym>
//   connect <source module> <destination module>
//   map <source module> <destination module> <output sym> <input sym>
//   initial <module> <state>

struct LoadedAutomaton {
  Automaton automaton;
  InputModel model;
  bool has_probabilities = false;
};

LoadedAutomaton parse_automaton(std::string_view text, std::string_view source = "<input>");
LoadedAutomaton load_automaton(const std::filesystem::path& path);

// Canonical text; `model` adds prob lines for non-uniform states.
std::string write_automaton(const Automaton& a, const InputModel* model = nullptr);

TuringMachine parse_turing_machine(std::string_view text, std::string_view source = "<input>");
TuringMachine load_turing_machine(const std::filesystem::path& path);
std::string write_turing_machine(const TuringMachine& tm);

Wiring parse_wiring(std::string_view text, const std::filesystem::path& base_dir,
                    std::string_view source = "<input>");
Wiring load_wiring(const std::filesystem::path& path);

// Deterministic Graphviz rendering. Divergent states are double circles,
// convergent states are filled.
std::string to_dot(const Automaton& a);

std::string read_file(const std::filesystem::path& path);

}  // namespace logdiss
