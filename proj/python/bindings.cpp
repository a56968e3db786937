#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "logdiss/automaton.hpp"
#include "logdiss/composition.hpp"
#include "logdiss/conformance.hpp"
#include "logdiss/dissipation.hpp"
#include "logdiss/io.hpp"
#include "logdiss/turing.hpp"

namespace py = pybind11;
using namespace logdiss;

namespace {

py::dict path_dict(const Path& p) {
  py::dict d;
  d["start"] = p.start;
  d["states"] = p.states();
  d["outputs"] = p.outputs;
  std::vector<std::string> symbols;
  for (const auto& s : p.steps) symbols.push_back(s.symbol);
  d["word"] = symbols;
  return d;
}

}  // namespace

PYBIND11_MODULE(_logdiss, m) {
  m.doc() = "Logical dissipation of automata: structure, entropy accounting, composition, testing";
  m.attr("__version__") = "0.1.0";
  m.attr("BOLTZMANN") = kBoltzmann;

  py::register_exception<Error>(m, "Error");

  py::class_<Arrow>(m, "Arrow")
      .def_readonly("source", &Arrow::source)
      .def_readonly("target", &Arrow::target)
      .def_readonly("labels", &Arrow::labels)
      .def("__repr__", [](const Arrow& a) { return "<Arrow " + a.source + "->" + a.target + ">"; });

  py::class_<Automaton>(m, "Automaton")
      .def_property_readonly("name", &Automaton::name)
      .def_property_readonly("states", &Automaton::states)
      .def_property_readonly("input_alphabet", &Automaton::input_alphabet)
      .def_property_readonly("output_alphabet", &Automaton::output_alphabet)
      .def_property_readonly("initial", &Automaton::initial)
      .def_property_readonly("arrows", &Automaton::arrows)
      .def("output", py::overload_cast<std::string_view>(&Automaton::output, py::const_))
      .def("__eq__", &Automaton::operator==)
      .def("__repr__", [](const Automaton& a) {
        return "<Automaton " + a.name() + ": " + std::to_string(a.state_count()) + " states, " +
               std::to_string(a.arrow_count()) + " arrows>";
      });

  py::class_<InputModel>(m, "InputModel")
      .def_static("uniform", &InputModel::uniform)
      .def("arrow_probability", &InputModel::arrow_probability)
      .def("is_uniform", &InputModel::is_uniform);

  py::class_<LoadedAutomaton>(m, "LoadedAutomaton")
      .def_readonly("automaton", &LoadedAutomaton::automaton)
      .def_readonly("model", &LoadedAutomaton::model)
      .def_readonly("has_probabilities", &LoadedAutomaton::has_probabilities);

  m.def("parse_automaton", &parse_automaton, py::arg("text"), py::arg("source") = "<input>");
  m.def("load_automaton", &load_automaton, py::arg("path"));
  m.def("write_automaton", [](const Automaton& a) { return write_automaton(a); });
  m.def("to_dot", &to_dot);

  m.def("arrows_from", &arrows_from);
  m.def("divergent_states", &divergent_states);
  m.def("convergent_states", &convergent_states);
  m.def("is_reversible", &is_reversible);
  m.def("step", &step);
  m.def("run", [](const Automaton& a, const std::string& start, const Word& word) {
    return path_dict(run(a, start, word));
  });

  m.def("choice_information",
        py::overload_cast<const Automaton&, const InputModel&, std::string_view>(&choice_information));
  m.def("path_choice_information",
        [](const Automaton& a, const InputModel& model, const std::string& start, const Word& word) {
          const PathReport r = path_choice_information(a, model, start, word);
          py::dict d = path_dict(r.path);
          d["per_step_bits"] = r.per_step_bits;
          d["total_bits"] = r.total_bits;
          d["convergences_entered"] = r.convergences_entered;
          return d;
        });
  m.def("uniform_distribution", &uniform_distribution);
  m.def("point_distribution", &point_distribution);
  m.def("ensemble_dissipation", [](const Automaton& a, const InputModel& model, const std::vector<double>& pi0,
                                   std::size_t horizon) {
    const EnsembleTrace t = ensemble_dissipation(a, model, pi0, horizon);
    py::dict d;
    d["distributions"] = t.distributions;
    d["per_step_loss_bits"] = t.per_step_loss_bits;
    d["cumulative_loss_bits"] = t.cumulative_loss_bits;
    d["per_step_input_bits"] = t.per_step_input_bits;
    return d;
  });
  m.def("szilard_check", &szilard_check);
  m.def("landauer_energy", &landauer_energy, py::arg("bits"), py::arg("temperature"));

  m.def("product", [](const std::vector<Automaton>& modules) { return product(modules).automaton; });
  m.def("wire_file", [](const std::filesystem::path& path) { return wire(load_wiring(path)).automaton; });
  m.def("reachable_subgraph", py::overload_cast<const Automaton&>(&reachable_subgraph));
  m.def("equivalent", &equivalent, py::arg("a"), py::arg("b"),
        py::arg("renaming") = std::map<std::string, std::string>{});

  m.def("transition_tour", [](const Automaton& a, const std::string& start) {
    return transition_tour(a, start).word;
  });
  m.def("test_cost", &test_cost);
  m.def("modular_test_cost", [](const std::vector<Automaton>& modules, const std::vector<std::string>& starts) {
    return modular_test_cost(modules, starts);
  });

  py::class_<TuringMachine>(m, "TuringMachine")
      .def_property_readonly("name", &TuringMachine::name)
      .def_property_readonly("states", &TuringMachine::states)
      .def_property_readonly("tape_alphabet", &TuringMachine::tape_alphabet);
  m.def("load_turing_machine", &load_turing_machine);
  m.def("parse_turing_machine", &parse_turing_machine, py::arg("text"), py::arg("source") = "<input>");
  m.def("tm_run", [](const TuringMachine& tm, const Word& input, std::size_t max_steps) {
    const RunTrace t = tm_run(tm, input, max_steps);
    py::dict d;
    d["halted"] = t.halted;
    d["steps"] = t.steps;
    d["result"] = t.result;
    d["result_length"] = t.result_length;
    std::vector<std::string> configs;
    for (const auto& c : t.configurations) configs.push_back(c.canonical(tm));
    d["configurations"] = configs;
    return d;
  }, py::arg("tm"), py::arg("input") = Word{}, py::arg("max_steps") = 10000);
  m.def("head_automaton", &head_automaton);
  m.def("cell_automaton", [](const std::vector<std::string>& alphabet) { return cell_automaton(alphabet); });
  m.def("modular_tm_dissipation", [](const TuringMachine& tm, const Word& input, std::size_t max_steps) {
    const TmDissipation d = modular_tm_dissipation(tm, input, max_steps);
    py::dict out;
    out["per_step_bits"] = d.per_step_bits;
    out["cumulative_bits"] = d.cumulative_bits;
    out["halted"] = d.halted;
    out["slope"] = d.slope();
    return out;
  }, py::arg("tm"), py::arg("input") = Word{}, py::arg("max_steps") = 10000);
  m.def("global_graph", [](const TuringMachine& tm, const Word& input, std::size_t max_steps) {
    return global_graph(tm_run(tm, input, max_steps), tm);
  }, py::arg("tm"), py::arg("input") = Word{}, py::arg("max_steps") = 10000);
  m.def("bennett_simulate", [](const TuringMachine& tm, const Word& input, std::size_t max_steps) {
    const BennettTrace b = bennett_simulate(tm, input, max_steps);
    py::dict d;
    d["compute_steps"] = b.compute_steps;
    d["copy_steps"] = b.copy_steps;
    d["total_steps"] = b.total_steps;
    d["output"] = b.output;
    d["final_tape"] = b.final_tape;
    d["history_empty"] = b.final_configuration().history.empty();
    d["input_restored"] = b.final_configuration().work == b.configurations.front().work;
    d["global_graph"] = global_graph(b, tm);
    return d;
  }, py::arg("tm"), py::arg("input") = Word{}, py::arg("max_steps") = 10000);
  m.def("bennett_reference_states", &bennett_reference_states);
}
