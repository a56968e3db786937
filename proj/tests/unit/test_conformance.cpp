#include <gtest/gtest.h>

#include <functional>

#include "logdiss/composition.hpp"
#include "logdiss/conformance.hpp"
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

// Replays the tour on the reference and checks every arrow is traversed.
void expect_full_coverage(const Automaton& a, const TestTour& tour) {
  const Path p = run(a, tour.start, tour.word);
  std::vector<bool> hit(a.arrow_count(), false);
  for (const auto& s : p.steps) hit[s.arrow] = true;
  for (std::size_t i = 0; i < hit.size(); ++i) EXPECT_TRUE(hit[i]) << "arrow " << i << " of " << a.name();
  EXPECT_EQ(tour.covered.size(), a.arrow_count());
}

// Reference automaton with one transition redirected.
Automaton mutate(const Automaton& a, const std::string& state, const std::string& symbol,
                 const std::string& target) {
  AutomatonSpec s = a.to_spec();
  for (auto& t : s.transitions) {
    if (t.source == state && t.symbol == symbol) t.target = target;
  }
  return Automaton::validate(s);
}

TEST(Tour, Memory) {
  const Automaton a = memory1();
  const TestTour t = transition_tour(a, "0");
  EXPECT_EQ(t.word, (Strings{"set0", "set1", "set1", "set0"}));
  EXPECT_EQ(t.length(), 4u);
  expect_full_coverage(a, t);
}

TEST(Tour, Counter) {
  const TestTour t = transition_tour(counter4(), "0");
  EXPECT_EQ(t.word, (Strings{"ck", "ck", "ck", "ck"}));
}

TEST(Tour, Fig7EndsInStop) {
  const Automaton a = fig7();
  const TestTour t = transition_tour(a, "A");
  EXPECT_EQ(t.word, word_of("010101100110"));
  EXPECT_EQ(run(a, "A", t.word).final_state(), "Stop");
  expect_full_coverage(a, t);
}

TEST(Tour, BundledAutomataAreCovered) {
  for (const char* f : {"fig5_memory.aut", "fig7_dissipative.aut", "fig8_counter4.aut", "fig9_tflipflop.aut",
                        "fig11_counter2.aut", "linear.aut"}) {
    const Automaton a = load_automaton(data_path(f)).automaton;
    expect_full_coverage(a, transition_tour(a, *a.initial()));
  }
}

TEST(Tour, UntestableWhenArrowsAreUnreachable) {
  const Automaton a = make("x", {"a"}, {"p", "q"}, {{"p", "a", "p"}, {"q", "a", "p"}});
  try {
    transition_tour(a, "p");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Untestable);
    EXPECT_NE(std::string(e.what()).find("q"), std::string::npos);
  }
}

TEST(Cost, SingleAutomata) {
  EXPECT_EQ(test_cost(memory1(), "0"), 4u);
  EXPECT_EQ(test_cost(counter4(), "0"), 4u);
}

TEST(Cost, ModularFlipFlops) {
  const std::vector<Automaton> mods{tflipflop(), tflipflop()};
  const Strings starts{"0", "0"};
  EXPECT_EQ(modular_test_cost(mods, starts), 8u);
  EXPECT_EQ(product_arrow_count(mods), 16.0L);
  EXPECT_GE(monolithic_test_cost(mods, starts), 16u);
}

TEST(Cost, ModularCounterAndFlipFlop) {
  const std::vector<Automaton> mods{counter2(), tflipflop()};
  EXPECT_EQ(modular_test_cost(mods, Strings{"0", "0"}), 6u);
  const std::vector<Automaton> one{memory1()};
  EXPECT_EQ(modular_test_cost(one, Strings{"0"}), test_cost(memory1(), "0"));
}

TEST(Cost, MonolithicRefusesHugeProducts) {
  const std::vector<Automaton> mods(21, memory1());
  const Strings starts(21, "0");
  EXPECT_EQ(product_state_count(mods), 2097152.0L);
  EXPECT_EQ(product_arrow_count(mods), 2097152.0L * 2097152.0L);
  EXPECT_EQ(code_of([&] { monolithic_test_cost(mods, starts); }), ErrorCode::SizeLimit);
  EXPECT_EQ(modular_test_cost(mods, starts), 84u);
}

TEST(Cost, MonolithicSmallMemories) {
  const std::vector<Automaton> mods(3, memory1());
  EXPECT_GE(monolithic_test_cost(mods, Strings(3, "0")), 64u);
}

TEST(Simulate, ReferencePasses) {
  const Automaton a = fig7();
  const TestTour t = transition_tour(a, "A");
  AutomatonDevice d(a, "A");
  const Verdict v = simulate_test(a, d, t);
  EXPECT_TRUE(v.pass);
  EXPECT_FALSE(v.first_discrepancy.has_value());
}

TEST(Simulate, FlippedTransitionIsCaught) {
  const Automaton a = memory1();
  const TestTour t = transition_tour(a, "0");
  AutomatonDevice d(mutate(a, "1", "set1", "0"), "0");
  const Verdict v = simulate_test(a, d, t);
  ASSERT_FALSE(v.pass);
  ASSERT_TRUE(v.first_discrepancy.has_value());
  EXPECT_EQ(v.first_discrepancy->step, 3u);
  EXPECT_EQ(v.first_discrepancy->expected, "r1");
  EXPECT_EQ(v.first_discrepancy->observed, "r0");
}

TEST(Simulate, EveryMutationOfFig7IsCaught) {
  const Automaton a = fig7();
  const TestTour t = transition_tour(a, "A");
  for (const auto& tr : a.to_spec().transitions) {
    for (const auto& other : a.states()) {
      if (other == tr.target) continue;
      AutomatonDevice d(mutate(a, tr.source, tr.symbol, other), "A");
      bool caught = false;
      try {
        caught = !simulate_test(a, d, t).pass;
      } catch (const Error& e) {
        caught = e.code() == ErrorCode::DeviceRefused;
      }
      EXPECT_TRUE(caught) << tr.source << " -" << tr.symbol << "-> " << other;
    }
  }
}

TEST(Simulate, RelabelledStatesPass) {
  AutomatonSpec s = memory1().to_spec();
  auto rename = [](std::string& q) { q = q == "0" ? "low" : "high"; };
  for (auto& q : s.states) rename(q);
  for (auto& [q, out] : s.output_map) rename(q);
  for (auto& t : s.transitions) {
    rename(t.source);
    rename(t.target);
  }
  rename(*s.initial);
  const Automaton relabelled = Automaton::validate(s);
  AutomatonDevice d(relabelled, "low");
  EXPECT_TRUE(simulate_test(memory1(), d, transition_tour(memory1(), "0")).pass);
}

TEST(Simulate, RefusalCarriesStep) {
  const Automaton a = fig7();
  AutomatonSpec s = a.to_spec();
  std::erase_if(s.transitions, [](const Transition& t) { return t.source == "E"; });
  AutomatonDevice d(Automaton::validate(s), "A");
  try {
    simulate_test(a, d, transition_tour(a, "A"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DeviceRefused);
    EXPECT_TRUE(e.position().has_value());
  }
}

}  // namespace
