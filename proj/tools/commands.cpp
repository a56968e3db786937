#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "logdiss/automaton.hpp"
#include "logdiss/composition.hpp"
#include "logdiss/conformance.hpp"
#include "logdiss/dissipation.hpp"
#include "logdiss/io.hpp"
#include "logdiss/turing.hpp"

namespace logdiss::cli {

namespace {

using Report = nlohmann::ordered_json;

constexpr double kDefaultTemperature = 300.0;
constexpr const char* kTemperatureEnv = "LOGDISS_TEMPERATURE";

std::string format_number(double v) {
  std::ostringstream s;
  // Energies are ~1e-21 J; fixed notation would print them as zero.
  if (v != 0.0 && std::abs(v) < 1e-4)
    s << std::scientific << std::setprecision(6) << v;
  else
    s << std::fixed << std::setprecision(6) << v;
  return s.str();
}

std::string format_scalar(const Report& v) {
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "none";
  return v.dump();
}

void print_text(const Report& report, std::ostream& out, const std::string& prefix = "") {
  for (const auto& [key, value] : report.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      print_text(value, out, name);
    } else if (value.is_array()) {
      out << name << ":";
      if (value.empty()) out << " none";
      for (const auto& item : value) out << " " << format_scalar(item);
      out << "\n";
    } else {
      out << name << ": " << format_scalar(value) << "\n";
    }
  }
}

void emit(const Report& report, bool json, std::ostream& out) {
  if (json) {
    // Re-parse into the sorted-key representation for a stable layout.
    out << nlohmann::json::parse(report.dump()).dump(2) << "\n";
  } else {
    print_text(report, out);
  }
}

// Whitespace-separated symbols, or else the longest-match split of a
// compact word such as "0100001010" against the alphabet.
Word split_word(const std::string& text, const std::vector<std::string>& alphabet) {
  Word word;
  if (text.find_first_of(" \t,") != std::string::npos) {
    std::string cleaned = text;
    std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
    std::istringstream in(cleaned);
    for (std::string s; in >> s;) word.push_back(s);
    return word;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t best = 0;
    for (const auto& s : alphabet) {
      if (s.size() > best && text.compare(pos, s.size(), s) == 0) best = s.size();
    }
    if (best == 0) {
      throw Error(ErrorCode::UnknownSymbol,
                  "cannot split word at position " + std::to_string(pos) + " into input symbols", pos);
    }
    word.push_back(text.substr(pos, best));
    pos += best;
  }
  return word;
}

double default_temperature() {
  if (const char* env = std::getenv(kTemperatureEnv)) {
    char* end = nullptr;
    const double t = std::strtod(env, &end);
    if (end != env && *end == '\0') return t;
  }
  return kDefaultTemperature;
}

void write_output(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  f << text;
}

Report structure(const Automaton& a) {
  Report r;
  r["automaton"] = a.name();
  r["states"] = a.state_count();
  r["arrows"] = a.arrow_count();
  r["transitions"] = a.transition_count();
  r["divergent"] = divergent_states(a);
  r["convergent"] = convergent_states(a);
  r["reversible"] = is_reversible(a);
  return r;
}

std::string start_of(const Automaton& a, const std::string& requested) {
  if (!requested.empty()) return requested;
  if (!a.initial()) throw Error(ErrorCode::MissingInitial, "no --start given and no initial state declared");
  return *a.initial();
}

// Exact integer while it fits in a double mantissa, else an approximation.
Report count_value(long double n) {
  if (n < 9007199254740992.0L) return static_cast<std::uint64_t>(n);
  return static_cast<double>(n);
}

Word input_tape(const std::string& text) {
  Word w;
  std::istringstream in(text);
  for (std::string s; in >> s;) w.push_back(s);
  return w;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Logical dissipation analysis of finite automata and Turing machines", "logdiss"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Emit a machine-readable JSON report");

  std::string file;
  std::string file2;
  std::string start;
  std::string word_text;
  std::string output_path;
  double temperature = default_temperature();
  std::size_t horizon = 10;
  bool uniform_start = false;
  std::vector<std::string> renames;
  std::vector<std::string> files;
  std::string tape_text;
  std::size_t max_steps = 10000;

  auto* analyze = app.add_subcommand("analyze", "Structure and per-state choice information");
  analyze->add_option("file", file, "Automaton file")->required();

  auto* run_cmd = app.add_subcommand("run", "Run a word and count its choice information");
  run_cmd->add_option("file", file, "Automaton file")->required();
  run_cmd->add_option("--start", start, "Start state (defaults to the initial state)");
  run_cmd->add_option("--word", word_text, "Input word")->required();
  run_cmd->add_option("--temp", temperature, "Temperature in kelvin for the Landauer bound");

  auto* ensemble = app.add_subcommand("ensemble", "Ensemble entropy loss over a horizon");
  ensemble->add_option("file", file, "Automaton file")->required();
  ensemble->add_option("--start", start, "Point distribution on this state");
  ensemble->add_flag("--uniform", uniform_start, "Start from the uniform state distribution");
  ensemble->add_option("--horizon", horizon, "Number of steps");

  auto* product_cmd = app.add_subcommand("product", "Cartesian product of two automata");
  product_cmd->add_option("a", file, "First automaton")->required();
  product_cmd->add_option("b", file2, "Second automaton")->required();
  product_cmd->add_option("-o,--output", output_path, "Write the product automaton here");

  auto* wire_cmd = app.add_subcommand("wire", "Build the closed system described by a wiring file");
  wire_cmd->add_option("file", file, "Wiring file")->required();
  wire_cmd->add_option("-o,--output", output_path, "Write the closed-system automaton here");

  auto* reach = app.add_subcommand("reach", "Reachable part of an automaton or wiring from its initial state");
  reach->add_option("file", file, "Automaton file")->required();
  reach->add_option("-o,--output", output_path, "Write the reachable automaton here");

  auto* equiv = app.add_subcommand("equiv", "Rooted isomorphism of reachable graphs");
  equiv->add_option("a", file, "First automaton")->required();
  equiv->add_option("b", file2, "Second automaton")->required();
  equiv->add_option("--rename", renames, "Symbol renaming from a to b, as from=to");

  auto* test_cmd = app.add_subcommand("test", "Transition tour and test cost");
  test_cmd->add_option("files", files, "Automaton file(s); several files are costed as modules")->required();
  test_cmd->add_option("--start", start, "Start state for a single automaton");

  auto* dot = app.add_subcommand("dot", "Graphviz rendering");
  dot->add_option("file", file, "Automaton file")->required();

  auto* tm = app.add_subcommand("tm", "Turing machine analyses");
  tm->require_subcommand(1);
  std::vector<CLI::App*> tm_cmds;
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"run", "Run the machine"},
           {"head", "Head automaton and convergence check"},
           {"dissip", "Per-step modular dissipation"},
           {"linear", "Global graph of a halted run"},
           {"bennett", "Reversible compute/copy/uncompute simulation"}}) {
    auto* c = tm->add_subcommand(name, help);
    c->add_option("file", file, "Turing machine file")->required();
    c->add_option("--input", tape_text, "Initial tape symbols, whitespace separated");
    c->add_option("--max-steps", max_steps, "Step budget");
    tm_cmds.push_back(c);
  }

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    Report report;
    if (analyze->parsed()) {
      const auto loaded = load_automaton(file);
      const Automaton& a = loaded.automaton;
      report = structure(a);
      Report choice = Report::object();
      for (std::size_t q = 0; q < a.state_count(); ++q) {
        choice[a.states()[q]] = choice_information(a, loaded.model, q);
      }
      report["choice_bits"] = choice;
      Report dissipative = Report::array();
      for (const auto& q : divergent_states(a)) dissipative.push_back(q);
      report["dissipation_relevant_states"] = dissipative;
    } else if (run_cmd->parsed()) {
      const auto loaded = load_automaton(file);
      const Automaton& a = loaded.automaton;
      const std::string from = start_of(a, start);
      const Word word = split_word(word_text, a.input_alphabet());
      const PathReport pr = path_choice_information(a, loaded.model, from, word);
      report["automaton"] = a.name();
      report["start"] = from;
      report["word"] = word;
      report["path"] = pr.path.states();
      report["outputs"] = pr.path.outputs;
      report["per_step_bits"] = pr.per_step_bits;
      report["total_bits"] = pr.total_bits;
      report["convergences_entered"] = pr.convergences_entered;
      report["temperature_k"] = temperature;
      report["landauer_joules"] = landauer_energy(pr.total_bits, temperature);
    } else if (ensemble->parsed()) {
      const auto loaded = load_automaton(file);
      const Automaton& a = loaded.automaton;
      std::vector<double> pi0 = uniform_start ? uniform_distribution(a) : point_distribution(a, start_of(a, start));
      const EnsembleTrace t = ensemble_dissipation(a, loaded.model, pi0, horizon);
      report["automaton"] = a.name();
      report["horizon"] = horizon;
      report["per_step_loss_bits"] = t.per_step_loss_bits;
      report["per_step_input_bits"] = t.per_step_input_bits;
      report["cumulative_loss_bits"] = t.total_loss_bits();
      report["initial_entropy_bits"] = entropy_bits(t.distributions.front());
      report["final_entropy_bits"] = entropy_bits(t.distributions.back());
    } else if (product_cmd->parsed()) {
      const auto a = load_automaton(file);
      const auto b = load_automaton(file2);
      const std::vector<Automaton> modules{a.automaton, b.automaton};
      const std::vector<InputModel> models{a.model, b.model};
      const ProductAutomaton p = product(modules);
      const InputModel pm = product_model(p, modules, models);
      report = structure(p.automaton);
      report["modules"] = p.modules;
      double max_gap = 0.0;
      for (std::size_t q = 0; q < p.automaton.state_count(); ++q) {
        const double sum = choice_information(modules[0], models[0], p.components[q][0]) +
                           choice_information(modules[1], models[1], p.components[q][1]);
        max_gap = std::max(max_gap, std::abs(choice_information(p.automaton, pm, q) - sum));
      }
      report["extensivity_max_gap_bits"] = max_gap;
      if (!output_path.empty()) {
        write_output(output_path, write_automaton(p.automaton, &pm));
        report["written"] = output_path;
      }
    } else if (wire_cmd->parsed()) {
      const Wiring w = load_wiring(file);
      const ClosedSystem c = wire(w);
      report = structure(c.automaton);
      std::vector<std::string> free;
      for (std::size_t i : w.free_inputs()) free.push_back(w.names[i]);
      report["free_inputs"] = free;
      const ProductAutomaton open = product(w.modules);
      const InputModel open_model = InputModel::uniform(open.automaton);
      if (c.automaton.initial()) {
        const Automaton loop = reachable_subgraph(c);
        report["reachable_states"] = loop.state_count();
        report["reachable_arrows"] = loop.arrow_count();
        // Open graph: every module input stimulated independently.
        double open_bits = 0.0;
        for (const auto& q : loop.states()) open_bits += choice_information(open.automaton, open_model, q);
        report["open_graph_bits_per_step"] = open_bits / static_cast<double>(loop.state_count());
        const InputModel closed_model = InputModel::uniform(loop);
        double closed_bits = 0.0;
        for (std::size_t q = 0; q < loop.state_count(); ++q) closed_bits += choice_information(loop, closed_model, q);
        report["closed_loop_bits_per_step"] = closed_bits / static_cast<double>(loop.state_count());
      }
      if (!output_path.empty()) {
        write_output(output_path, write_automaton(c.automaton));
        report["written"] = output_path;
      }
    } else if (reach->parsed()) {
      const Automaton r = std::filesystem::path(file).extension() == ".wiring"
                              ? reachable_subgraph(wire(load_wiring(file)))
                              : reachable_subgraph(load_automaton(file).automaton);
      report = structure(r);
      if (!output_path.empty()) {
        write_output(output_path, write_automaton(r));
        report["written"] = output_path;
      }
      std::vector<std::string> cycle;
      std::vector<bool> seen(r.state_count(), false);
      std::size_t q = r.state_index(*r.initial());
      while (!seen[q] && r.out_degree(q) == 1) {
        seen[q] = true;
        cycle.push_back(r.states()[q]);
        q = r.arrows()[r.out_arrows(q)[0]].target_index;
      }
      report["single_cycle"] = cycle.size() == r.state_count() && q == r.state_index(*r.initial());
      report["order"] = cycle;
    } else if (equiv->parsed()) {
      std::map<std::string, std::string> renaming;
      for (const auto& pair : renames) {
        const auto eq = pair.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::InvalidArgument, "--rename expects from=to");
        renaming[pair.substr(0, eq)] = pair.substr(eq + 1);
      }
      const auto a = load_automaton(file);
      const auto b = load_automaton(file2);
      report["a"] = a.automaton.name();
      report["b"] = b.automaton.name();
      report["equivalent"] = equivalent(a.automaton, b.automaton, renaming);
    } else if (test_cmd->parsed()) {
      std::vector<Automaton> modules;
      for (const auto& f : files) modules.push_back(load_automaton(f).automaton);
      if (modules.size() == 1) {
        const Automaton& a = modules.front();
        const TestTour tour = transition_tour(a, start_of(a, start));
        report["automaton"] = a.name();
        report["start"] = tour.start;
        report["tour"] = tour.word;
        report["tour_length"] = tour.length();
        report["arrows"] = a.arrow_count();
        report["covered_arrows"] = tour.covered.size();
        report["cost_bound"] = a.arrow_count() * a.state_count();
      } else {
        std::vector<std::string> starts;
        std::vector<std::size_t> costs;
        for (const auto& m : modules) {
          starts.push_back(start_of(m, ""));
          costs.push_back(test_cost(m, starts.back()));
        }
        report["module_costs"] = costs;
        report["modular_cost"] = modular_test_cost(modules, starts);
        report["product_states"] = count_value(product_state_count(modules));
        report["product_arrows"] = count_value(product_arrow_count(modules));
        try {
          report["monolithic_cost"] = monolithic_test_cost(modules, starts);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::SizeLimit) throw;
          report["monolithic_cost"] = nullptr;
        }
      }
    } else if (dot->parsed()) {
      out << to_dot(load_automaton(file).automaton);
      return 0;
    } else if (tm->parsed()) {
      const TuringMachine machine = load_turing_machine(file);
      const Word input = input_tape(tape_text);
      report["machine"] = machine.name();
      if (tm_cmds[0]->parsed()) {
        const RunTrace t = tm_run(machine, input, max_steps);
        report["halted"] = t.halted;
        report["steps"] = t.steps;
        report["result"] = t.result;
        report["result_length"] = t.result_length;
        report["final_state"] = machine.states()[t.configurations.back().state];
      } else if (tm_cmds[1]->parsed()) {
        const Automaton head = head_automaton(machine);
        const ConvergenceReport c =
            check_convergence_lemma(machine, input, 10 * machine.states().size());
        report["control_states"] = head.state_count();
        report["arrows"] = head.arrow_count();
        report["divergent"] = divergent_states(head);
        report["convergences"] = c.witnesses;
        report["has_convergence"] = c.has_convergence;
        if (c.observed) {
          report["observed_halted"] = c.observed->halted;
          report["observed_eventually_periodic"] = c.observed->eventually_periodic;
          if (c.observed->eventually_periodic) report["observed_period"] = c.observed->period;
        }
      } else if (tm_cmds[2]->parsed()) {
        const TmDissipation d = modular_tm_dissipation(machine, input, max_steps);
        report["halted"] = d.halted;
        report["steps"] = d.per_step_bits.size();
        report["per_step_bits"] = d.per_step_bits;
        report["cumulative_bits"] = d.cumulative_bits;
        report["total_bits"] = d.total_bits();
        report["slope_bits_per_step"] = d.slope();
      } else if (tm_cmds[3]->parsed()) {
        const RunTrace t = tm_run(machine, input, max_steps);
        if (!t.halted) throw Error(ErrorCode::NotHalting, "machine did not halt within the step budget");
        const Automaton g = global_graph(t, machine);
        const PathReport pr = path_choice_information(g, InputModel::uniform(g), *g.initial(),
                                                      Word(t.steps, std::string(kClockSymbol)));
        report["steps"] = t.steps;
        report["states"] = g.state_count();
        report["arrows"] = g.arrow_count();
        report["reversible"] = is_reversible(g);
        report["divergent"] = divergent_states(g);
        report["convergent"] = convergent_states(g);
        report["dissipation_bits"] = pr.total_bits;
      } else if (tm_cmds[4]->parsed()) {
        const BennettTrace b = bennett_simulate(machine, input, max_steps);
        const Automaton g = global_graph(b, machine);
        const PathReport pr = path_choice_information(g, InputModel::uniform(g), *g.initial(),
                                                      Word(b.total_steps, std::string(kClockSymbol)));
        report["compute_steps"] = b.compute_steps;
        report["copy_steps"] = b.copy_steps;
        report["total_steps"] = b.total_steps;
        report["output"] = b.output;
        report["input_restored"] = b.final_configuration().work == b.configurations.front().work;
        report["history_empty"] = b.final_configuration().history.empty();
        report["global_states"] = g.state_count();
        report["global_reversible"] = is_reversible(g);
        report["dissipation_bits"] = pr.total_bits;
        report["reference_states_4n_4r_5"] = bennett_reference_states(b.compute_steps, b.copy_steps);
      }
    }
    emit(report, json, out);
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_input_error(e.code()) ? 2 : 1;
  }
}

}  // namespace logdiss::cli
