#include "logdiss/composition.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

namespace logdiss {

namespace {

std::string join(std::span<const std::string> parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// Mixed-radix enumeration: advances `digits` and returns false on wrap.
bool next_tuple(std::vector<std::size_t>& digits, std::span<const std::size_t> radix) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < radix[i]) return true;
    digits[i] = 0;
  }
  return false;
}

std::size_t checked_state_count(std::span<const Automaton> modules) {
  std::size_t total = 1;
  for (const auto& m : modules) {
    if (m.state_count() == 0) return 0;
    if (total > kMonolithicStateLimit / m.state_count()) {
      throw Error(ErrorCode::SizeLimit, "product exceeds " + std::to_string(kMonolithicStateLimit) +
                                            " states; test the modules separately");
    }
    total *= m.state_count();
  }
  return total;
}

std::vector<std::string> names_of(const std::vector<std::size_t>& digits,
                                  std::span<const Automaton> modules, bool outputs) {
  std::vector<std::string> parts;
  parts.reserve(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i) {
    parts.push_back(outputs ? modules[i].output(digits[i]) : modules[i].states()[digits[i]]);
  }
  return parts;
}

// Fill components[] for a validated tuple automaton.
std::vector<std::vector<std::size_t>> component_table(const Automaton& result,
                                                      std::span<const Automaton> modules) {
  std::vector<std::vector<std::size_t>> components(result.state_count());
  std::vector<std::size_t> radix;
  for (const auto& m : modules) radix.push_back(m.state_count());
  std::vector<std::size_t> digits(modules.size(), 0);
  if (result.state_count() == 0) return components;
  do {
    const auto parts = names_of(digits, modules, false);
    components[result.state_index(tuple_state(parts))] = digits;
  } while (next_tuple(digits, radix));
  return components;
}

std::size_t arrow_position(const Automaton& a, std::size_t source, std::size_t target) {
  const auto arrows = a.out_arrows(source);
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    if (a.arrows()[arrows[i]].target_index == target) return i;
  }
  return npos;
}

}  // namespace

std::string tuple_state(std::span<const std::string> parts) {
  if (parts.size() == 1) return parts[0];
  return "(" + join(parts, ",") + ")";
}

std::string tuple_symbol(std::span<const std::string> parts) { return join(parts, "|"); }

ProductAutomaton product(std::span<const Automaton> modules) {
  if (modules.empty()) throw Error(ErrorCode::InvalidArgument, "product of no modules");
  checked_state_count(modules);

  AutomatonSpec spec;
  std::vector<std::string> module_names;
  for (const auto& m : modules) module_names.push_back(m.name());
  spec.name = join(module_names, "*");

  std::vector<std::size_t> state_radix;
  std::vector<std::size_t> symbol_radix;
  for (const auto& m : modules) {
    state_radix.push_back(m.state_count());
    symbol_radix.push_back(m.input_alphabet().size());
  }

  // Input and output alphabets.
  {
    std::vector<std::size_t> digits(modules.size(), 0);
    bool empty = std::any_of(symbol_radix.begin(), symbol_radix.end(), [](auto r) { return r == 0; });
    if (!empty) {
      do {
        std::vector<std::string> parts;
        for (std::size_t i = 0; i < modules.size(); ++i) parts.push_back(modules[i].input_alphabet()[digits[i]]);
        spec.inputs.push_back(tuple_symbol(parts));
      } while (next_tuple(digits, symbol_radix));
    }
  }

  std::vector<std::size_t> digits(modules.size(), 0);
  bool any_state = std::none_of(state_radix.begin(), state_radix.end(), [](auto r) { return r == 0; });
  if (any_state) {
    do {
      const auto state = tuple_state(names_of(digits, modules, false));
      const auto output = tuple_state(names_of(digits, modules, true));
      spec.states.push_back(state);
      spec.outputs.push_back(output);
      spec.output_map.emplace_back(state, output);

      // Every combination of defined component transitions.
      std::vector<std::vector<std::size_t>> defined(modules.size());
      bool sink = false;
      for (std::size_t i = 0; i < modules.size(); ++i) {
        for (std::size_t s = 0; s < modules[i].input_alphabet().size(); ++s) {
          if (modules[i].target(digits[i], s) != npos) defined[i].push_back(s);
        }
        sink = sink || defined[i].empty();
      }
      if (sink) continue;
      std::vector<std::size_t> radix;
      for (const auto& d : defined) radix.push_back(d.size());
      std::vector<std::size_t> pick(modules.size(), 0);
      do {
        std::vector<std::string> sym;
        std::vector<std::size_t> to(modules.size());
        for (std::size_t i = 0; i < modules.size(); ++i) {
          const std::size_t s = defined[i][pick[i]];
          sym.push_back(modules[i].input_alphabet()[s]);
          to[i] = modules[i].target(digits[i], s);
        }
        spec.transitions.push_back({state, tuple_symbol(sym), tuple_state(names_of(to, modules, false))});
      } while (next_tuple(pick, radix));
    } while (next_tuple(digits, state_radix));
  }

  if (std::all_of(modules.begin(), modules.end(), [](const Automaton& m) { return m.initial().has_value(); })) {
    std::vector<std::string> parts;
    for (const auto& m : modules) parts.push_back(*m.initial());
    spec.initial = tuple_state(parts);
  }

  ProductAutomaton p{Automaton::validate(spec), module_names, {}};
  p.components = component_table(p.automaton, modules);
  return p;
}

ProductAutomaton product(const Automaton& a, const Automaton& b) {
  const std::vector<Automaton> modules{a, b};
  return product(modules);
}

InputModel product_model(const ProductAutomaton& p, std::span<const Automaton> modules,
                         std::span<const InputModel> models) {
  if (modules.size() != models.size() || modules.size() != p.modules.size()) {
    throw Error(ErrorCode::InvalidArgument, "module and model counts differ");
  }
  const Automaton& a = p.automaton;
  std::vector<std::vector<double>> dist(a.state_count());
  for (std::size_t q = 0; q < a.state_count(); ++q) {
    for (std::size_t arrow : a.out_arrows(q)) {
      const std::size_t r = a.arrows()[arrow].target_index;
      double prob = 1.0;
      for (std::size_t i = 0; i < modules.size(); ++i) {
        const std::size_t pos = arrow_position(modules[i], p.components[q][i], p.components[r][i]);
        prob *= models[i].distribution(p.components[q][i])[pos];
      }
      dist[q].push_back(prob);
    }
  }
  return InputModel::from_distributions(a, std::move(dist), 1e-9);
}

std::vector<std::size_t> Wiring::free_inputs() const {
  std::vector<bool> driven(modules.size(), false);
  for (const auto& c : connections) {
    if (c.destination < driven.size()) driven[c.destination] = true;
  }
  for (const auto& [m, sym] : constants) {
    if (m < driven.size()) driven[m] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < modules.size(); ++i) {
    if (!driven[i]) out.push_back(i);
  }
  return out;
}

ClosedSystem wire(const Wiring& w) {
  const auto& modules = w.modules;
  if (modules.empty()) throw Error(ErrorCode::InvalidArgument, "wiring has no modules");
  checked_state_count(modules);
  const std::size_t n = modules.size();
  auto module_label = [&](std::size_t i) {
    return i < w.names.size() ? w.names[i] : modules[i].name();
  };

  enum class Drive { Free, Constant, Connected };
  std::vector<Drive> drive(n, Drive::Free);
  std::vector<std::size_t> constant_symbol(n, npos);
  std::vector<const Connection*> connection(n, nullptr);
  // mapped[i][q] = input symbol index of module i when its source is in state q
  std::vector<std::vector<std::size_t>> mapped(n);

  for (const auto& [m, sym] : w.constants) {
    if (m >= n) throw Error(ErrorCode::InvalidArgument, "constant refers to unknown module");
    if (drive[m] != Drive::Free) {
      throw Error(ErrorCode::MultiplyDrivenPort, "input of module '" + module_label(m) + "' is driven twice");
    }
    drive[m] = Drive::Constant;
    constant_symbol[m] = modules[m].symbol_index(sym);
  }
  for (const auto& c : w.connections) {
    if (c.source >= n || c.destination >= n) {
      throw Error(ErrorCode::InvalidArgument, "connection refers to unknown module");
    }
    if (drive[c.destination] != Drive::Free) {
      throw Error(ErrorCode::MultiplyDrivenPort,
                  "input of module '" + module_label(c.destination) + "' is driven twice");
    }
    drive[c.destination] = Drive::Connected;
    connection[c.destination] = &c;
    const Automaton& src = modules[c.source];
    const Automaton& dst = modules[c.destination];
    for (std::size_t q = 0; q < src.state_count(); ++q) {
      std::string sym = src.output(q);
      if (!c.mapping.empty()) {
        auto it = c.mapping.find(sym);
        if (it == c.mapping.end()) {
          throw Error(ErrorCode::AlphabetMismatch, "no mapping for output '" + sym + "' of module '" +
                                                       module_label(c.source) + "'");
        }
        sym = it->second;
      }
      const auto s = dst.find_symbol(sym);
      if (!s) {
        throw Error(ErrorCode::AlphabetMismatch, "output '" + sym + "' of module '" +
                                                     module_label(c.source) + "' is not an input of '" +
                                                     module_label(c.destination) + "'");
      }
      mapped[c.destination].push_back(*s);
    }
  }

  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < n; ++i) {
    if (drive[i] == Drive::Free) free.push_back(i);
  }

  AutomatonSpec spec;
  spec.name = w.name;

  // System symbols: tuples over the free ports, or the bare clock.
  std::vector<std::vector<std::size_t>> symbol_tuples;
  std::vector<std::size_t> free_radix;
  for (std::size_t i : free) free_radix.push_back(modules[i].input_alphabet().size());
  if (free.empty()) {
    spec.inputs.emplace_back(kClockSymbol);
    symbol_tuples.emplace_back();
  } else if (std::none_of(free_radix.begin(), free_radix.end(), [](auto r) { return r == 0; })) {
    std::vector<std::size_t> digits(free.size(), 0);
    do {
      std::vector<std::string> parts;
      for (std::size_t j = 0; j < free.size(); ++j) parts.push_back(modules[free[j]].input_alphabet()[digits[j]]);
      spec.inputs.push_back(tuple_symbol(parts));
      symbol_tuples.push_back(digits);
    } while (next_tuple(digits, free_radix));
  }

  std::vector<std::size_t> state_radix;
  for (const auto& m : modules) state_radix.push_back(m.state_count());
  std::vector<std::size_t> digits(n, 0);
  do {
    const auto state = tuple_state(names_of(digits, modules, false));
    const auto output = tuple_state(names_of(digits, modules, true));
    spec.states.push_back(state);
    spec.outputs.push_back(output);
    spec.output_map.emplace_back(state, output);
    for (std::size_t k = 0; k < symbol_tuples.size(); ++k) {
      std::vector<std::size_t> to(n);
      bool defined = true;
      for (std::size_t i = 0; i < n && defined; ++i) {
        std::size_t s = npos;
        switch (drive[i]) {
          case Drive::Constant: s = constant_symbol[i]; break;
          case Drive::Connected: s = mapped[i][digits[connection[i]->source]]; break;
          case Drive::Free: {
            const auto pos = static_cast<std::size_t>(std::find(free.begin(), free.end(), i) - free.begin());
            s = symbol_tuples[k][pos];
            break;
          }
        }
        to[i] = modules[i].target(digits[i], s);
        defined = to[i] != npos;
      }
      if (defined) spec.transitions.push_back({state, spec.inputs[k], tuple_state(names_of(to, modules, false))});
    }
  } while (next_tuple(digits, state_radix));

  std::vector<std::string> init;
  for (std::size_t i = 0; i < n; ++i) {
    if (auto it = w.initial.find(i); it != w.initial.end()) {
      init.push_back(modules[i].states()[modules[i].state_index(it->second)]);
    } else if (modules[i].initial()) {
      init.push_back(*modules[i].initial());
    }
  }
  if (init.size() == n) spec.initial = tuple_state(init);

  ClosedSystem c{Automaton::validate(spec), {}};
  c.components = component_table(c.automaton, modules);
  return c;
}

Automaton reachable_subgraph(const Automaton& a) {
  if (!a.initial()) throw Error(ErrorCode::MissingInitial, "automaton '" + a.name() + "' has no initial state");
  std::vector<bool> seen(a.state_count(), false);
  std::deque<std::size_t> queue{a.state_index(*a.initial())};
  seen[queue.front()] = true;
  while (!queue.empty()) {
    const std::size_t q = queue.front();
    queue.pop_front();
    for (std::size_t arrow : a.out_arrows(q)) {
      const std::size_t r = a.arrows()[arrow].target_index;
      if (!seen[r]) {
        seen[r] = true;
        queue.push_back(r);
      }
    }
  }
  AutomatonSpec full = a.to_spec();
  AutomatonSpec spec;
  spec.name = a.name();
  spec.inputs = full.inputs;
  spec.initial = full.initial;
  std::set<std::string> outs;
  for (std::size_t q = 0; q < a.state_count(); ++q) {
    if (!seen[q]) continue;
    spec.states.push_back(a.states()[q]);
    spec.output_map.emplace_back(a.states()[q], a.output(q));
    outs.insert(a.output(q));
  }
  spec.outputs.assign(outs.begin(), outs.end());
  for (const auto& t : full.transitions) {
    if (seen[a.state_index(t.source)]) spec.transitions.push_back(t);
  }
  return Automaton::validate(spec);
}

Automaton reachable_subgraph(const ClosedSystem& c) { return reachable_subgraph(c.automaton); }

bool equivalent(const Automaton& a, const Automaton& b, const std::map<std::string, std::string>& renaming) {
  if (!a.initial()) throw Error(ErrorCode::MissingInitial, "automaton '" + a.name() + "' has no initial state");
  if (!b.initial()) throw Error(ErrorCode::MissingInitial, "automaton '" + b.name() + "' has no initial state");

  auto renamed = [&](const std::vector<std::string>& labels) {
    std::vector<std::string> out;
    out.reserve(labels.size());
    for (const auto& l : labels) {
      auto it = renaming.find(l);
      out.push_back(it == renaming.end() ? l : it->second);
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  std::vector<std::size_t> fwd(a.state_count(), npos);
  std::vector<std::size_t> bwd(b.state_count(), npos);
  const std::size_t a0 = a.state_index(*a.initial());
  const std::size_t b0 = b.state_index(*b.initial());
  fwd[a0] = b0;
  bwd[b0] = a0;
  std::deque<std::size_t> queue{a0};
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    const std::size_t y = fwd[x];
    if (a.out_degree(x) != b.out_degree(y)) return false;
    for (std::size_t ai : a.out_arrows(x)) {
      const auto labels = renamed(a.arrows()[ai].labels);
      std::size_t match = npos;
      for (std::size_t bi : b.out_arrows(y)) {
        if (b.arrows()[bi].labels == labels) {
          match = bi;
          break;
        }
      }
      if (match == npos) return false;
      const std::size_t xt = a.arrows()[ai].target_index;
      const std::size_t yt = b.arrows()[match].target_index;
      if (fwd[xt] == npos && bwd[yt] == npos) {
        fwd[xt] = yt;
        bwd[yt] = xt;
        queue.push_back(xt);
      } else if (fwd[xt] != yt || bwd[yt] != xt) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace logdiss
