#include "logdiss/turing.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "logdiss/dissipation.hpp"

namespace logdiss {

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> items, std::string_view what) {
  std::sort(items.begin(), items.end());
  auto dup = std::adjacent_find(items.begin(), items.end());
  if (dup != items.end()) {
    throw Error(ErrorCode::InvalidArgument, "duplicate " + std::string(what) + " '" + *dup + "'");
  }
  for (const auto& s : items) {
    if (s.empty() || s.find_first_of(" \t\r\n#") != std::string::npos) {
      throw Error(ErrorCode::InvalidArgument, "invalid " + std::string(what) + " token '" + s + "'");
    }
  }
  return items;
}

long delta(Move m) {
  switch (m) {
    case Move::Left: return -1;
    case Move::Right: return 1;
    case Move::None: return 0;
  }
  return 0;
}

std::string join_symbols(const TuringMachine& tm, std::span<const std::uint32_t> cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += tm.tape_alphabet()[cells[i]];
  }
  return out;
}

std::vector<std::string> render(const TuringMachine& tm, std::span<const std::uint32_t> cells) {
  std::vector<std::string> out;
  out.reserve(cells.size());
  for (auto c : cells) out.push_back(tm.tape_alphabet()[c]);
  return out;
}

Automaton chain_automaton(const std::string& name, const std::vector<std::string>& keys) {
  std::unordered_set<std::string> seen;
  AutomatonSpec spec;
  spec.name = name;
  spec.inputs.emplace_back(kClockSymbol);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (!seen.insert(keys[i]).second) {
      throw Error(ErrorCode::RepeatedConfiguration,
                  "configuration at step " + std::to_string(i) + " repeats an earlier one", i);
    }
    spec.states.push_back(keys[i]);
    spec.outputs.push_back(keys[i]);
    spec.output_map.emplace_back(keys[i], keys[i]);
    if (i > 0) spec.transitions.push_back({keys[i - 1], std::string(kClockSymbol), keys[i]});
  }
  if (!keys.empty()) spec.initial = keys.front();
  return Automaton::validate(spec);
}

}  // namespace

char to_char(Move m) noexcept {
  switch (m) {
    case Move::Left: return 'L';
    case Move::Right: return 'R';
    case Move::None: return 'N';
  }
  return 'N';
}

Move parse_move(std::string_view s) {
  if (s == "L") return Move::Left;
  if (s == "R") return Move::Right;
  if (s == "N") return Move::None;
  throw Error(ErrorCode::InvalidArgument, "move must be L, R or N, got '" + std::string(s) + "'");
}

TuringMachine TuringMachine::validate(const TuringMachineSpec& spec) {
  TuringMachine tm;
  tm.name_ = spec.name;
  tm.states_ = sorted_unique(spec.states, "control state");
  tm.alphabet_ = sorted_unique(spec.tape_alphabet, "tape symbol");
  tm.blank_ = tm.symbol_index(spec.blank);
  tm.initial_ = tm.state_index(spec.initial);
  tm.halting_.assign(tm.states_.size(), false);
  for (const auto& h : spec.halting) tm.halting_[tm.state_index(h)] = true;

  const std::size_t k = tm.alphabet_.size();
  tm.table_.assign(tm.states_.size() * k, npos);
  std::vector<Rule> rules;
  for (const auto& r : spec.rules) {
    Rule rule{tm.state_index(r.state), tm.symbol_index(r.read), tm.state_index(r.next),
              tm.symbol_index(r.write), r.move};
    if (tm.halting_[rule.state]) {
      throw Error(ErrorCode::InvalidArgument, "halting state '" + r.state + "' has a rule");
    }
    rules.push_back(rule);
  }
  std::sort(rules.begin(), rules.end(), [](const Rule& a, const Rule& b) {
    return std::tie(a.state, a.read) < std::tie(b.state, b.read);
  });
  for (const auto& rule : rules) {
    std::size_t& slot = tm.table_[rule.state * k + rule.read];
    if (slot != npos) {
      const Rule& prev = tm.rules_[slot];
      if (prev.next == rule.next && prev.write == rule.write && prev.move == rule.move) continue;
      throw Error(ErrorCode::Nondeterministic, "two rules for state '" + tm.states_[rule.state] +
                                                   "' reading '" + tm.alphabet_[rule.read] + "'");
    }
    slot = tm.rules_.size();
    tm.rules_.push_back(rule);
  }
  return tm;
}

std::size_t TuringMachine::state_index(std::string_view id) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), id);
  if (it == states_.end() || *it != id) {
    throw Error(ErrorCode::UnknownState, "unknown control state '" + std::string(id) + "'");
  }
  return static_cast<std::size_t>(it - states_.begin());
}

std::uint32_t TuringMachine::symbol_index(std::string_view symbol) const {
  auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), symbol);
  if (it == alphabet_.end() || *it != symbol) {
    throw Error(ErrorCode::UnknownSymbol, "unknown tape symbol '" + std::string(symbol) + "'");
  }
  return static_cast<std::uint32_t>(it - alphabet_.begin());
}

TuringMachineSpec TuringMachine::to_spec() const {
  TuringMachineSpec spec;
  spec.name = name_;
  spec.blank = alphabet_[blank_];
  spec.tape_alphabet = alphabet_;
  spec.states = states_;
  spec.initial = states_[initial_];
  for (std::size_t q = 0; q < states_.size(); ++q) {
    if (halting_[q]) spec.halting.push_back(states_[q]);
  }
  for (const auto& r : rules_) {
    spec.rules.push_back({states_[r.state], alphabet_[r.read], states_[r.next], alphabet_[r.write], r.move});
  }
  return spec;
}

std::uint32_t Tape::read(long pos) const {
  if (pos < origin || pos >= origin + static_cast<long>(cells.size())) return blank;
  return cells[static_cast<std::size_t>(pos - origin)];
}

void Tape::write(long pos, std::uint32_t symbol, std::size_t cap) {
  if (cells.empty()) {
    origin = pos;
    cells.push_back(blank);
  } else if (pos < origin) {
    cells.insert(cells.begin(), static_cast<std::size_t>(origin - pos), blank);
    origin = pos;
  } else if (pos >= origin + static_cast<long>(cells.size())) {
    cells.resize(static_cast<std::size_t>(pos - origin + 1), blank);
  }
  if (cells.size() > cap) {
    throw Error(ErrorCode::TapeOverflow, "tape window exceeds " + std::to_string(cap) + " cells");
  }
  cells[static_cast<std::size_t>(pos - origin)] = symbol;
}

std::vector<std::uint32_t> Tape::trimmed() const {
  auto first = std::find_if(cells.begin(), cells.end(), [&](auto c) { return c != blank; });
  if (first == cells.end()) return {};
  auto last = std::find_if(cells.rbegin(), cells.rend(), [&](auto c) { return c != blank; }).base();
  return {first, last};
}

long Tape::first_nonblank() const {
  auto first = std::find_if(cells.begin(), cells.end(), [&](auto c) { return c != blank; });
  if (first == cells.end()) return 0;
  return origin + static_cast<long>(first - cells.begin());
}

bool Tape::same_content(const Tape& other) const {
  return first_nonblank() == other.first_nonblank() && trimmed() == other.trimmed();
}

std::string Configuration::canonical(const TuringMachine& tm) const {
  return "q=" + tm.states()[state] + ";h=" + std::to_string(head) + ";t=" +
         std::to_string(tape.first_nonblank()) + ":" + join_symbols(tm, tape.trimmed());
}

Configuration initial_configuration(const TuringMachine& tm, std::span<const std::string> input) {
  Configuration c;
  c.state = tm.initial();
  c.tape.blank = tm.blank();
  for (const auto& s : input) c.tape.cells.push_back(tm.symbol_index(s));
  return c;
}

Configuration tm_step(const TuringMachine& tm, const Configuration& c, std::size_t tape_cap) {
  if (tm.is_halting(c.state)) {
    throw Error(ErrorCode::Halted, "machine is in halting state '" + tm.states()[c.state] + "'");
  }
  const std::uint32_t symbol = c.tape.read(c.head);
  const std::size_t r = tm.rule_for(c.state, symbol);
  if (r == npos) {
    throw Error(ErrorCode::NoRule, "no rule for state '" + tm.states()[c.state] + "' reading '" +
                                       tm.tape_alphabet()[symbol] + "'");
  }
  const auto& rule = tm.rules()[r];
  Configuration next = c;
  next.tape.write(c.head, rule.write, tape_cap);
  next.head += delta(rule.move);
  next.state = rule.next;
  return next;
}

RunTrace tm_run(const TuringMachine& tm, std::span<const std::string> input, std::size_t max_steps,
                std::size_t tape_cap) {
  RunTrace trace;
  trace.configurations.push_back(initial_configuration(tm, input));
  while (trace.steps < max_steps && !tm.is_halting(trace.configurations.back().state)) {
    const auto& c = trace.configurations.back();
    const std::size_t rule = tm.rule_for(c.state, c.tape.read(c.head));
    try {
      trace.configurations.push_back(tm_step(tm, c, tape_cap));
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()) + " at step " + std::to_string(trace.steps), trace.steps);
    }
    trace.rules_applied.push_back(rule);
    ++trace.steps;
  }
  trace.halted = tm.is_halting(trace.configurations.back().state);
  if (trace.halted) {
    trace.result = render(tm, trace.configurations.back().tape.trimmed());
    trace.result_length = trace.result.size();
  }
  return trace;
}

Automaton head_automaton(const TuringMachine& tm) {
  AutomatonSpec spec;
  spec.name = tm.name() + "-head";
  spec.inputs = tm.tape_alphabet();
  spec.states = tm.states();
  spec.outputs = tm.states();
  spec.initial = tm.states()[tm.initial()];
  for (const auto& q : tm.states()) spec.output_map.emplace_back(q, q);
  for (const auto& r : tm.rules()) {
    spec.transitions.push_back({tm.states()[r.state], tm.tape_alphabet()[r.read], tm.states()[r.next]});
  }
  return Automaton::validate(spec);
}

Periodicity detect_periodicity(std::span<const std::string> sequence, std::size_t max_period) {
  Periodicity p;
  p.head_states.assign(sequence.begin(), sequence.end());
  const std::size_t len = sequence.size();
  for (std::size_t prefix = 0; prefix < len; ++prefix) {
    for (std::size_t period = 1; period <= max_period && prefix + 2 * period <= len; ++period) {
      bool ok = true;
      for (std::size_t i = prefix; i + period < len && ok; ++i) ok = sequence[i] == sequence[i + period];
      if (ok) {
        p.eventually_periodic = true;
        p.prefix = prefix;
        p.period = period;
        return p;
      }
    }
  }
  return p;
}

ConvergenceReport check_convergence_lemma(const TuringMachine& tm) {
  ConvergenceReport report;
  report.witnesses = convergent_states(head_automaton(tm));
  report.has_convergence = !report.witnesses.empty();
  return report;
}

ConvergenceReport check_convergence_lemma(const TuringMachine& tm, std::span<const std::string> input,
                                          std::size_t horizon) {
  ConvergenceReport report = check_convergence_lemma(tm);
  const RunTrace trace = tm_run(tm, input, horizon);
  std::vector<std::string> states;
  for (const auto& c : trace.configurations) states.push_back(tm.states()[c.state]);
  if (trace.halted) {
    Periodicity p;
    p.halted = true;
    p.head_states = std::move(states);
    report.observed = std::move(p);
  } else {
    report.observed = detect_periodicity(states, tm.states().size());
  }
  return report;
}

Automaton cell_automaton(std::span<const std::string> alphabet) {
  if (alphabet.size() < 2) throw Error(ErrorCode::AlphabetTooSmall, "a cell needs at least two symbols");
  AutomatonSpec spec;
  spec.name = "cell";
  for (const auto& x : alphabet) {
    spec.states.push_back(x);
    spec.outputs.push_back(x);
    spec.inputs.push_back("write_" + x);
    spec.output_map.emplace_back(x, x);
  }
  for (const auto& q : alphabet) {
    for (const auto& x : alphabet) spec.transitions.push_back({q, "write_" + x, x});
  }
  spec.initial = alphabet.front();
  return Automaton::validate(spec);
}

double TmDissipation::slope() const {
  const std::size_t n = cumulative_bits.size();
  if (n == 0) return 0.0;
  if (n == 1) return cumulative_bits[0];
  double mean_t = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_t += static_cast<double>(i + 1);
    mean_y += cumulative_bits[i];
  }
  mean_t /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dt = static_cast<double>(i + 1) - mean_t;
    num += dt * (cumulative_bits[i] - mean_y);
    den += dt * dt;
  }
  return num / den;
}

TmDissipation modular_tm_dissipation(const TuringMachine& tm, std::span<const std::string> input,
                                     std::size_t max_steps, std::size_t tape_cap) {
  const Automaton head = head_automaton(tm);
  const InputModel uniform = InputModel::uniform(head);
  std::vector<double> head_charge(tm.states().size());
  for (std::size_t q = 0; q < tm.states().size(); ++q) {
    head_charge[q] = choice_information(head, uniform, head.state_index(tm.states()[q]));
  }
  const double cell_charge = std::log2(static_cast<double>(tm.tape_alphabet().size()));

  TmDissipation out;
  Configuration c = initial_configuration(tm, input);
  double cumulative = 0.0;
  for (std::size_t t = 0; t < max_steps && !tm.is_halting(c.state); ++t) {
    const std::size_t from = c.state;
    c = tm_step(tm, c, tape_cap);
    const double bits = head_charge[from] + cell_charge;
    cumulative += bits;
    out.head_bits.push_back(head_charge[from]);
    out.cell_bits.push_back(cell_charge);
    out.per_step_bits.push_back(bits);
    out.cumulative_bits.push_back(cumulative);
  }
  out.halted = tm.is_halting(c.state);
  return out;
}

Automaton global_graph(const RunTrace& trace, const TuringMachine& tm) {
  if (!trace.halted) throw Error(ErrorCode::NotHalted, "global graph needs a halted run");
  std::vector<std::string> keys;
  keys.reserve(trace.configurations.size());
  for (const auto& c : trace.configurations) keys.push_back(c.canonical(tm));
  return chain_automaton(tm.name() + "-global", keys);
}

std::string BennettConfiguration::canonical(const TuringMachine& tm) const {
  static constexpr char kPhase[] = {'C', 'P', 'U'};
  std::string out;
  out += kPhase[static_cast<int>(phase)];
  out += ';' + work.canonical(tm) + ";H=";
  for (std::size_t i = 0; i < history.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(history[i]);
  }
  out += ";O=" + join_symbols(tm, output);
  return out;
}

BennettTrace bennett_simulate(const TuringMachine& tm, std::span<const std::string> input, std::size_t max_steps,
                              std::size_t tape_cap) {
  BennettTrace trace;
  trace.input.assign(input.begin(), input.end());

  BennettConfiguration g;
  g.work = initial_configuration(tm, input);
  trace.configurations.push_back(g);
  std::vector<Configuration> forward{g.work};

  // Compute, logging one rule identifier per step.
  while (!tm.is_halting(g.work.state)) {
    if (trace.compute_steps == max_steps) {
      throw Error(ErrorCode::NotHalting, "machine did not halt within " + std::to_string(max_steps) + " steps");
    }
    const std::size_t rule = tm.rule_for(g.work.state, g.work.tape.read(g.work.head));
    g.work = tm_step(tm, g.work, tape_cap);
    g.history.push_back(rule);
    ++trace.compute_steps;
    forward.push_back(g.work);
    trace.configurations.push_back(g);
  }
  trace.history = g.history;

  // Copy the result, one symbol per step.
  const auto result = g.work.tape.trimmed();
  g.phase = BennettPhase::Copy;
  for (auto symbol : result) {
    g.output.push_back(symbol);
    ++trace.copy_steps;
    trace.configurations.push_back(g);
  }

  // Uncompute from the log.
  g.phase = BennettPhase::Uncompute;
  while (!g.history.empty()) {
    const auto& rule = tm.rules()[g.history.back()];
    Configuration& w = g.work;
    w.head -= delta(rule.move);
    if (w.state != rule.next || w.tape.read(w.head) != rule.write) {
      throw Error(ErrorCode::IrreversibleStep, "history record does not match the configuration");
    }
    w.tape.write(w.head, rule.read, tape_cap);
    w.state = rule.state;
    g.history.pop_back();
    if (!(w == forward[g.history.size()])) {
      throw Error(ErrorCode::IrreversibleStep,
                  "backward step disagrees with forward step " + std::to_string(g.history.size()));
    }
    trace.configurations.push_back(g);
  }

  trace.total_steps = trace.configurations.size() - 1;
  trace.output = render(tm, g.output);
  trace.final_tape = render(tm, g.work.tape.trimmed());
  return trace;
}

Automaton global_graph(const BennettTrace& trace, const TuringMachine& tm) {
  std::vector<std::string> keys;
  keys.reserve(trace.configurations.size());
  for (const auto& c : trace.configurations) keys.push_back(c.canonical(tm));
  return chain_automaton(tm.name() + "-bennett", keys);
}

}  // namespace logdiss
