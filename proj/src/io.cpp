#include "logdiss/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace logdiss {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(std::move(tok));
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    pos = end + 1;
  }
  return lines;
}

[[noreturn]] void fail(ErrorCode code, std::string_view source, std::size_t line, const std::string& msg) {
  throw Error(code, std::string(source) + ":" + std::to_string(line) + ": " + msg, line);
}

void expect_args(const Line& l, std::size_t n, std::string_view source, bool at_least = false) {
  const std::size_t got = l.tokens.size() - 1;
  if (at_least ? got < n : got != n) {
    fail(ErrorCode::Parse, source, l.number,
         "'" + l.tokens[0] + "' expects " + (at_least ? "at least " : "") + std::to_string(n) +
             " argument(s), got " + std::to_string(got));
  }
}

double parse_probability(const std::string& s, std::string_view source, std::size_t line) {
  double value = 0.0;
  const auto* begin = s.data();
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    fail(ErrorCode::Parse, source, line, "invalid probability '" + s + "'");
  }
  if (value < 0.0 || value > 1.0) fail(ErrorCode::InvalidDistribution, source, line, "probability out of [0,1]");
  return value;
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

template <typename F>
auto with_source(std::string_view source, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Parse) throw;
    throw Error(e.code(), std::string(source) + ": " + e.what(), e.position());
  }
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "file not found: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

LoadedAutomaton parse_automaton(std::string_view text, std::string_view source) {
  AutomatonSpec spec;
  std::set<std::string> inputs;
  std::set<std::string> outputs;
  std::set<std::string> states;
  std::map<std::string, std::pair<std::string, std::size_t>> output_owner;  // output -> (state, line)
  std::map<std::pair<std::string, std::string>, std::pair<std::string, std::size_t>> delta;
  std::vector<std::tuple<std::string, std::string, double>> probs;
  std::size_t first_prob_line = 0;
  bool named = false;

  auto need_state = [&](const Line& l, const std::string& s) {
    if (!states.contains(s)) fail(ErrorCode::UnknownState, source, l.number, "undeclared state '" + s + "'");
  };
  auto need_input = [&](const Line& l, const std::string& s) {
    if (!inputs.contains(s)) fail(ErrorCode::UnknownSymbol, source, l.number, "undeclared input symbol '" + s + "'");
  };
  auto declare = [&](const Line& l, std::vector<std::string>& list, std::set<std::string>& set) {
    for (std::size_t i = 1; i < l.tokens.size(); ++i) {
      if (!set.insert(l.tokens[i]).second) {
        fail(ErrorCode::InvalidArgument, source, l.number, "duplicate declaration '" + l.tokens[i] + "'");
      }
      list.push_back(l.tokens[i]);
    }
  };

  for (const auto& l : tokenize(text)) {
    const std::string& d = l.tokens[0];
    if (d == "automaton") {
      expect_args(l, 1, source);
      if (named) fail(ErrorCode::Parse, source, l.number, "automaton name given twice");
      spec.name = l.tokens[1];
      named = true;
    } else if (d == "inputs") {
      declare(l, spec.inputs, inputs);
    } else if (d == "outputs") {
      expect_args(l, 1, source, true);
      declare(l, spec.outputs, outputs);
    } else if (d == "states") {
      expect_args(l, 1, source, true);
      declare(l, spec.states, states);
    } else if (d == "initial") {
      expect_args(l, 1, source);
      need_state(l, l.tokens[1]);
      if (spec.initial) fail(ErrorCode::Parse, source, l.number, "initial state given twice");
      spec.initial = l.tokens[1];
    } else if (d == "output") {
      expect_args(l, 2, source);
      need_state(l, l.tokens[1]);
      if (!outputs.contains(l.tokens[2])) {
        fail(ErrorCode::UnknownSymbol, source, l.number, "undeclared output symbol '" + l.tokens[2] + "'");
      }
      auto [it, inserted] = output_owner.emplace(l.tokens[2], std::make_pair(l.tokens[1], l.number));
      if (!inserted && it->second.first != l.tokens[1]) {
        fail(ErrorCode::NonInjectiveOutput, source, l.number,
             "states '" + it->second.first + "' and '" + l.tokens[1] + "' share output '" + l.tokens[2] +
                 "' (first given on line " + std::to_string(it->second.second) + ")");
      }
      spec.output_map.emplace_back(l.tokens[1], l.tokens[2]);
    } else if (d == "trans") {
      expect_args(l, 3, source);
      need_state(l, l.tokens[1]);
      need_input(l, l.tokens[2]);
      need_state(l, l.tokens[3]);
      auto key = std::make_pair(l.tokens[1], l.tokens[2]);
      auto [it, inserted] = delta.emplace(key, std::make_pair(l.tokens[3], l.number));
      if (!inserted && it->second.first != l.tokens[3]) {
        fail(ErrorCode::Nondeterministic, source, l.number,
             "state '" + l.tokens[1] + "' on '" + l.tokens[2] + "' already leads to '" + it->second.first +
                 "' (line " + std::to_string(it->second.second) + ")");
      }
      spec.transitions.push_back({l.tokens[1], l.tokens[2], l.tokens[3]});
    } else if (d == "prob") {
      expect_args(l, 3, source);
      need_state(l, l.tokens[1]);
      need_input(l, l.tokens[2]);
      if (!first_prob_line) first_prob_line = l.number;
      probs.emplace_back(l.tokens[1], l.tokens[2], parse_probability(l.tokens[3], source, l.number));
    } else {
      fail(ErrorCode::Parse, source, l.number, "unknown directive '" + d + "'");
    }
  }
  if (!named) throw Error(ErrorCode::Parse, std::string(source) + ": missing 'automaton' directive");

  Automaton a = with_source(source, [&] { return Automaton::validate(spec); });
  InputModel m = InputModel::uniform(a);
  if (!probs.empty()) {
    try {
      m = InputModel::from_symbol_probabilities(a, probs);
    } catch (const Error& e) {
      fail(e.code(), source, first_prob_line, e.what());
    }
  }
  return {std::move(a), std::move(m), !probs.empty()};
}

LoadedAutomaton load_automaton(const std::filesystem::path& path) {
  return parse_automaton(read_file(path), path.string());
}

std::string write_automaton(const Automaton& a, const InputModel* model) {
  std::ostringstream out;
  out << "automaton " << (a.name().empty() ? "unnamed" : a.name()) << "\n";
  out << "inputs " << join(a.input_alphabet(), " ") << "\n";
  out << "outputs " << join(a.output_alphabet(), " ") << "\n";
  out << "states " << join(a.states(), " ") << "\n";
  if (a.initial()) out << "initial " << *a.initial() << "\n";
  for (std::size_t q = 0; q < a.state_count(); ++q) out << "output " << a.states()[q] << " " << a.output(q) << "\n";
  for (const auto& t : a.to_spec().transitions) out << "trans " << t.source << " " << t.symbol << " " << t.target << "\n";
  if (model) {
    for (std::size_t q = 0; q < a.state_count(); ++q) {
      const auto d = model->distribution(q);
      const double u = d.empty() ? 0.0 : 1.0 / static_cast<double>(d.size());
      if (std::all_of(d.begin(), d.end(), [&](double p) { return std::abs(p - u) <= kProbabilityTolerance; })) continue;
      const auto arrows = a.out_arrows(q);
      for (std::size_t i = 0; i < arrows.size(); ++i) {
        out << "prob " << a.states()[q] << " " << a.arrows()[arrows[i]].labels.front() << " "
            << std::setprecision(17) << d[i] << "\n";
      }
    }
  }
  return out.str();
}

TuringMachine parse_turing_machine(std::string_view text, std::string_view source) {
  TuringMachineSpec spec;
  bool named = false;
  bool has_blank = false;
  bool has_initial = false;
  for (const auto& l : tokenize(text)) {
    const std::string& d = l.tokens[0];
    if (d == "tm") {
      expect_args(l, 1, source);
      spec.name = l.tokens[1];
      named = true;
    } else if (d == "blank") {
      expect_args(l, 1, source);
      spec.blank = l.tokens[1];
      has_blank = true;
    } else if (d == "tape") {
      expect_args(l, 1, source, true);
      spec.tape_alphabet.insert(spec.tape_alphabet.end(), l.tokens.begin() + 1, l.tokens.end());
    } else if (d == "states") {
      expect_args(l, 1, source, true);
      spec.states.insert(spec.states.end(), l.tokens.begin() + 1, l.tokens.end());
    } else if (d == "initial") {
      expect_args(l, 1, source);
      spec.initial = l.tokens[1];
      has_initial = true;
    } else if (d == "halting") {
      spec.halting.insert(spec.halting.end(), l.tokens.begin() + 1, l.tokens.end());
    } else if (d == "rule") {
      expect_args(l, 5, source);
      try {
        spec.rules.push_back({l.tokens[1], l.tokens[2], l.tokens[3], l.tokens[4], parse_move(l.tokens[5])});
      } catch (const Error& e) {
        fail(ErrorCode::Parse, source, l.number, e.what());
      }
      // Reject references early so the error carries this line.
      auto known = [&](const std::vector<std::string>& v, const std::string& s) {
        return std::find(v.begin(), v.end(), s) != v.end();
      };
      for (int i : {1, 3}) {
        if (!known(spec.states, l.tokens[i])) {
          fail(ErrorCode::UnknownState, source, l.number, "undeclared control state '" + l.tokens[i] + "'");
        }
      }
      for (int i : {2, 4}) {
        if (!known(spec.tape_alphabet, l.tokens[i])) {
          fail(ErrorCode::UnknownSymbol, source, l.number, "undeclared tape symbol '" + l.tokens[i] + "'");
        }
      }
    } else {
      fail(ErrorCode::Parse, source, l.number, "unknown directive '" + d + "'");
    }
  }
  if (!named) throw Error(ErrorCode::Parse, std::string(source) + ": missing 'tm' directive");
  if (!has_blank) throw Error(ErrorCode::Parse, std::string(source) + ": missing 'blank' directive");
  if (!has_initial) throw Error(ErrorCode::Parse, std::string(source) + ": missing 'initial' directive");
  return with_source(source, [&] { return TuringMachine::validate(spec); });
}

TuringMachine load_turing_machine(const std::filesystem::path& path) {
  return parse_turing_machine(read_file(path), path.string());
}

std::string write_turing_machine(const TuringMachine& tm) {
  const auto spec = tm.to_spec();
  std::ostringstream out;
  out << "tm " << spec.name << "\n";
  out << "blank " << spec.blank << "\n";
  out << "tape " << join(spec.tape_alphabet, " ") << "\n";
  out << "states " << join(spec.states, " ") << "\n";
  out << "initial " << spec.initial << "\n";
  if (!spec.halting.empty()) out << "halting " << join(spec.halting, " ") << "\n";
  for (const auto& r : spec.rules) {
    out << "rule " << r.state << " " << r.read << " " << r.next << " " << r.write << " " << to_char(r.move) << "\n";
  }
  return out.str();
}

Wiring parse_wiring(std::string_view text, const std::filesystem::path& base_dir, std::string_view source) {
  Wiring w;
  std::unordered_map<std::string, std::size_t> index;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> connection_of;
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::pair<std::string, std::string>>> maps;

  auto module = [&](const Line& l, const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) fail(ErrorCode::InvalidArgument, source, l.number, "unknown module '" + name + "'");
    return it->second;
  };

  for (const auto& l : tokenize(text)) {
    const std::string& d = l.tokens[0];
    if (d == "wiring") {
      expect_args(l, 1, source);
      w.name = l.tokens[1];
    } else if (d == "module") {
      expect_args(l, 2, source);
      if (index.contains(l.tokens[1])) {
        fail(ErrorCode::InvalidArgument, source, l.number, "duplicate module '" + l.tokens[1] + "'");
      }
      auto path = std::filesystem::path(l.tokens[2]);
      if (path.is_relative()) path = base_dir / path;
      index.emplace(l.tokens[1], w.modules.size());
      w.names.push_back(l.tokens[1]);
      w.modules.push_back(load_automaton(path).automaton);
    } else if (d == "const") {
      expect_args(l, 2, source);
      w.constants.emplace_back(module(l, l.tokens[1]), l.tokens[2]);
    } else if (d == "connect") {
      expect_args(l, 2, source);
      const auto key = std::make_pair(module(l, l.tokens[1]), module(l, l.tokens[2]));
      connection_of[key] = w.connections.size();
      w.connections.push_back({key.first, key.second, {}});
    } else if (d == "map") {
      expect_args(l, 4, source);
      const auto key = std::make_pair(module(l, l.tokens[1]), module(l, l.tokens[2]));
      maps.push_back({key, {l.tokens[3], l.tokens[4]}});
    } else if (d == "initial") {
      expect_args(l, 2, source);
      w.initial[module(l, l.tokens[1])] = l.tokens[2];
    } else {
      fail(ErrorCode::Parse, source, l.number, "unknown directive '" + d + "'");
    }
  }
  for (const auto& [key, pair] : maps) {
    auto it = connection_of.find(key);
    if (it == connection_of.end()) {
      throw Error(ErrorCode::InvalidArgument, std::string(source) + ": 'map' without matching 'connect'");
    }
    w.connections[it->second].mapping[pair.first] = pair.second;
  }
  return w;
}

Wiring load_wiring(const std::filesystem::path& path) {
  return parse_wiring(read_file(path), path.parent_path(), path.string());
}

std::string to_dot(const Automaton& a) {
  std::vector<bool> divergent(a.state_count());
  std::vector<bool> convergent(a.state_count());
  for (std::size_t q = 0; q < a.state_count(); ++q) {
    divergent[q] = a.out_degree(q) >= 2;
    convergent[q] = a.in_degree(q) >= 2;
  }
  std::ostringstream out;
  out << "digraph " << quote(a.name()) << " {\n";
  out << "  rankdir=LR;\n";
  for (std::size_t q = 0; q < a.state_count(); ++q) {
    out << "  " << quote(a.states()[q]) << " [label=" << quote(a.states()[q] + "/" + a.output(q))
        << ", shape=" << (divergent[q] ? "doublecircle" : "circle");
    if (convergent[q]) out << ", style=filled, fillcolor=lightgray";
    if (a.initial() && *a.initial() == a.states()[q]) out << ", penwidth=2";
    out << "];\n";
  }
  for (const auto& arrow : a.arrows()) {
    out << "  " << quote(arrow.source) << " -> " << quote(arrow.target) << " [label=" << quote(join(arrow.labels, ","))
        << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace logdiss
