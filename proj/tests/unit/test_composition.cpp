#include <gtest/gtest.h>

#include <functional>

#include "logdiss/composition.hpp"
#include "logdiss/dissipation.hpp"
#include "logdiss/io.hpp"
#include "support/fixtures.hpp"

namespace {

using namespace logdiss;
using namespace logdiss::testing;
using Strings = std::vector<std::string>;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected logdiss::Error";
  return ErrorCode::Parse;
}

Wiring two_bit_counter() {
  Wiring w;
  w.name = "two_bit_counter";
  w.names = {"A", "B"};
  w.modules = {tflipflop(), tflipflop()};
  w.constants = {{0, "1"}};
  w.connections = {{0, 1, {}}};
  return w;
}

Wiring counter2_tff() {
  Wiring w;
  w.names = {"A", "B"};
  w.modules = {counter2(), tflipflop()};
  w.connections = {{0, 1, {{"r0", "0"}, {"r1", "1"}}}};
  return w;
}

TEST(Product, FlipFlopSquared) {
  const ProductAutomaton p = product(tflipflop(), tflipflop());
  EXPECT_EQ(p.automaton.state_count(), 4u);
  EXPECT_EQ(p.automaton.arrow_count(), 16u);
  for (std::size_t q = 0; q < 4; ++q) {
    EXPECT_EQ(p.automaton.out_degree(q), 4u);
    EXPECT_EQ(p.automaton.in_degree(q), 4u);
  }
  EXPECT_EQ(p.automaton.states(), (Strings{"(0,0)", "(0,1)", "(1,0)", "(1,1)"}));
  EXPECT_EQ(p.automaton.input_alphabet(), (Strings{"0|0", "0|1", "1|0", "1|1"}));
  EXPECT_EQ(p.automaton.initial(), std::optional<std::string>("(0,0)"));
}

TEST(Product, CounterTimesFlipFlop) {
  const ProductAutomaton p = product(counter2(), tflipflop());
  EXPECT_EQ(p.automaton.state_count(), 4u);
  for (std::size_t q = 0; q < 4; ++q) EXPECT_EQ(p.automaton.out_degree(q), 2u);
}

TEST(Product, StateCountMultiplies) {
  const ProductAutomaton p = product(chain(2), chain(3));
  EXPECT_EQ(p.automaton.state_count(), 6u);
  EXPECT_EQ(p.components.size(), 6u);
}

TEST(Product, ChoiceInformationAdds) {
  const std::vector<Automaton> mods{fig7(), tflipflop()};
  const std::vector<InputModel> models{InputModel::uniform(mods[0]), InputModel::uniform(mods[1])};
  const ProductAutomaton p = product(mods);
  const InputModel pm = product_model(p, mods, models);
  // fig7 has a sink, so only check states whose fig7 component moves
  for (std::size_t q = 0; q < p.automaton.state_count(); ++q) {
    const std::size_t a = p.components[q][0];
    if (mods[0].out_degree(a) == 0) continue;
    EXPECT_NEAR(choice_information(p.automaton, pm, q),
                choice_information(mods[0], models[0], a) + choice_information(mods[1], models[1], p.components[q][1]),
                1e-9);
  }
}

TEST(Product, NaryIsBuiltDirectly) {
  const std::vector<Automaton> mods{memory1(), memory1(), memory1()};
  const ProductAutomaton p = product(mods);
  EXPECT_EQ(p.automaton.state_count(), 8u);
  EXPECT_EQ(p.automaton.arrow_count(), 64u);
  EXPECT_EQ(p.automaton.states().front(), "(0,0,0)");
}

TEST(Wire, TwoBitCounter) {
  const ClosedSystem c = wire(two_bit_counter());
  EXPECT_EQ(c.automaton.state_count(), 4u);
  EXPECT_EQ(c.automaton.input_alphabet(), Strings{"ck"});
  const Automaton r = reachable_subgraph(c);
  EXPECT_EQ(r.state_count(), 4u);
  EXPECT_TRUE(is_reversible(r));
  std::string q = *r.initial();
  Strings order;
  for (int i = 0; i < 4; ++i) {
    order.push_back(q);
    q = step(r, q, "ck");
  }
  EXPECT_EQ(order, (Strings{"(0,0)", "(1,0)", "(0,1)", "(1,1)"}));
  EXPECT_EQ(q, "(0,0)");
  EXPECT_TRUE(equivalent(r, counter4()));
}

TEST(Wire, CounterDrivesFlipFlop) {
  const ClosedSystem c = wire(counter2_tff());
  const Automaton r = reachable_subgraph(c);
  EXPECT_EQ(r.state_count(), 4u);
  EXPECT_TRUE(divergent_states(r).empty());
  EXPECT_TRUE(equivalent(r, counter4()));
}

TEST(Wire, BundledFilesMatch) {
  EXPECT_TRUE(equivalent(reachable_subgraph(wire(load_wiring(data_path("fig10_two_bit_counter.wiring")))),
                         load_automaton(data_path("fig8_counter4.aut")).automaton));
  EXPECT_TRUE(equivalent(reachable_subgraph(wire(load_wiring(data_path("fig12_counter2_tff.wiring")))),
                         load_automaton(data_path("fig8_counter4.aut")).automaton));
}

TEST(Wire, SingleModuleIsUnchanged) {
  Wiring w;
  w.names = {"M"};
  w.modules = {memory1()};
  const ClosedSystem c = wire(w);
  EXPECT_EQ(c.automaton.state_count(), 2u);
  EXPECT_EQ(c.automaton.arrow_count(), 4u);
  EXPECT_TRUE(equivalent(c.automaton, memory1()));
}

TEST(Wire, FreeInputsStayOpen) {
  Wiring w;
  w.names = {"A", "B"};
  w.modules = {tflipflop(), tflipflop()};
  w.connections = {{0, 1, {}}};
  EXPECT_EQ(w.free_inputs(), std::vector<std::size_t>{0});
  const ClosedSystem c = wire(w);
  EXPECT_EQ(c.automaton.input_alphabet(), (Strings{"0", "1"}));
}

TEST(Wire, Errors) {
  Wiring w = two_bit_counter();
  w.connections.push_back({0, 1, {}});
  EXPECT_EQ(code_of([&] { wire(w); }), ErrorCode::MultiplyDrivenPort);
  Wiring c = two_bit_counter();
  c.constants.push_back({1, "0"});
  EXPECT_EQ(code_of([&] { wire(c); }), ErrorCode::MultiplyDrivenPort);
  Wiring m;
  m.names = {"A", "B"};
  m.modules = {memory1(), tflipflop()};
  m.connections = {{0, 1, {}}};  // outputs r0/r1 are not flip-flop inputs
  EXPECT_EQ(code_of([&] { wire(m); }), ErrorCode::AlphabetMismatch);
}

TEST(Reachable, DropsUnreachableStates) {
  const Automaton a = make("x", {"a"}, {"p", "q", "z"}, {{"p", "a", "q"}, {"q", "a", "p"}, {"z", "a", "p"}}, "p");
  const Automaton r = reachable_subgraph(a);
  EXPECT_EQ(r.states(), (Strings{"p", "q"}));
  EXPECT_EQ(code_of([] { reachable_subgraph(make("y", {"a"}, {"p"}, {})); }), ErrorCode::MissingInitial);
}

TEST(Equivalent, Basics) {
  EXPECT_TRUE(equivalent(fig7(), fig7()));
  EXPECT_FALSE(equivalent(counter4(), counter2()));
  EXPECT_FALSE(equivalent(memory1(), tflipflop()));
  EXPECT_TRUE(equivalent(memory1(), memory1()));
}

TEST(Equivalent, RenamingLabels) {
  AutomatonSpec s = memory1().to_spec();
  for (auto& t : s.transitions) t.symbol = t.symbol == "set0" ? "x" : "y";
  s.inputs = {"x", "y"};
  const Automaton renamed = Automaton::validate(s);
  EXPECT_FALSE(equivalent(memory1(), renamed));
  EXPECT_TRUE(equivalent(memory1(), renamed, {{"set0", "x"}, {"set1", "y"}}));
  EXPECT_FALSE(equivalent(memory1(), renamed, {{"set0", "y"}, {"set1", "x"}}));
}

}  // namespace
