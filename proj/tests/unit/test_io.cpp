#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <functional>

#include "logdiss/composition.hpp"
#include "logdiss/io.hpp"
#include "support/fixtures.hpp"

namespace {

using namespace logdiss;
using namespace logdiss::testing;
using Strings = std::vector<std::string>;

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + needle.size())) ++n;
  return n;
}

Error error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "expected logdiss::Error";
  return Error(ErrorCode::Parse, "none");
}

TEST(AutomatonFile, LoadsFig5) {
  const auto loaded = load_automaton(data_path("fig5_memory.aut"));
  EXPECT_EQ(loaded.automaton.name(), "memory1");
  EXPECT_EQ(loaded.automaton.arrow_count(), 4u);
  EXPECT_FALSE(loaded.has_probabilities);
  EXPECT_TRUE(loaded.model.is_uniform());
}

TEST(AutomatonFile, RoundTripIsCanonical) {
  for (const char* f : {"fig5_memory.aut", "fig7_dissipative.aut", "fig8_counter4.aut", "fig9_tflipflop.aut",
                        "fig11_counter2.aut", "linear.aut"}) {
    const auto a = load_automaton(data_path(f));
    const std::string text = write_automaton(a.automaton, &a.model);
    const auto b = parse_automaton(text);
    EXPECT_TRUE(a.automaton == b.automaton) << f;
    EXPECT_EQ(write_automaton(b.automaton, &b.model), text) << f;
  }
}

TEST(AutomatonFile, ProbabilitiesAggregateAndRoundTrip) {
  const std::string text =
      "automaton p\ninputs a b c\noutputs x y\nstates q r\ninitial q\noutput q x\noutput r y\n"
      "trans q a r\ntrans q b r\ntrans q c q\n"
      "prob q a 0.125\nprob q b 0.125\nprob q c 0.75\n";
  const auto loaded = parse_automaton(text);
  EXPECT_TRUE(loaded.has_probabilities);
  EXPECT_NEAR(loaded.model.arrow_probability(loaded.automaton, "q", "r"), 0.25, 1e-12);
  const auto again = parse_automaton(write_automaton(loaded.automaton, &loaded.model));
  EXPECT_NEAR(again.model.arrow_probability(again.automaton, "q", "r"), 0.25, 1e-12);
}

TEST(AutomatonFile, ErrorsCarryLineNumbers) {
  const Error e = error_of([] { parse_automaton("automaton x\ninputs a\n\nbogus 1\n", "f.aut"); });
  EXPECT_EQ(e.code(), ErrorCode::Parse);
  EXPECT_NE(std::string(e.what()).find("f.aut:4"), std::string::npos);

  const Error d = error_of([] {
    parse_automaton("automaton x\ninputs a\noutputs r s\nstates p q\noutput p r\noutput q s\n"
                    "trans p a q\ntrans p a p\n",
                    "f.aut");
  });
  EXPECT_EQ(d.code(), ErrorCode::Nondeterministic);

  const Error p = error_of([] {
    parse_automaton("automaton x\ninputs a b\noutputs r\nstates p\noutput p r\ntrans p a p\n"
                    "prob p a 0.5\n",
                    "f.aut");
  });
  EXPECT_EQ(p.code(), ErrorCode::InvalidDistribution);
  EXPECT_NE(std::string(p.what()).find("f.aut:7"), std::string::npos);
}

TEST(AutomatonFile, MissingFileIsInputError) {
  const Error e = error_of([] { load_automaton(data_path("missing.aut")); });
  EXPECT_TRUE(is_input_error(e.code()));
}

TEST(TuringFile, RoundTrip) {
  for (const char* f : {"bb2.tm", "binary_counter.tm", "loop.tm", "identity.tm"}) {
    const TuringMachine tm = load_turing_machine(data_path(f));
    const std::string text = write_turing_machine(tm);
    EXPECT_EQ(write_turing_machine(parse_turing_machine(text)), text) << f;
  }
}

TEST(TuringFile, BadMove) {
  const Error e = error_of([] {
    parse_turing_machine("tm x\nblank 0\ntape 0 1\nstates a\ninitial a\nrule a 0 a 0 X\n", "m.tm");
  });
  EXPECT_NE(std::string(e.what()).find("m.tm:6"), std::string::npos);
}

TEST(WiringFile, LoadsFig10) {
  const Wiring w = load_wiring(data_path("fig10_two_bit_counter.wiring"));
  EXPECT_EQ(w.names, (Strings{"A", "B"}));
  EXPECT_EQ(w.constants.size(), 1u);
  EXPECT_EQ(w.connections.size(), 1u);
  EXPECT_TRUE(w.free_inputs().empty());
}

TEST(WiringFile, UnknownModule) {
  const Error e = error_of([] {
    parse_wiring("wiring w\nconnect A B\n", std::filesystem::path(LOGDISS_DATA_DIR), "w.wiring");
  });
  EXPECT_NE(std::string(e.what()).find("w.wiring:2"), std::string::npos);
}

TEST(Dot, MemoryHasTwoNodesFourEdges) {
  const std::string dot = to_dot(memory1());
  EXPECT_EQ(count(dot, "[label=\"0/r0\""), 1u);
  EXPECT_EQ(count(dot, "[label=\"1/r1\""), 1u);
  EXPECT_EQ(count(dot, " -> "), 4u);
}

TEST(Dot, Fig7Styling) {
  const std::string dot = to_dot(fig7());
  EXPECT_EQ(count(dot, "doublecircle"), 3u);
  EXPECT_EQ(count(dot, "filled"), 2u);
  EXPECT_NE(dot.find("\"C\" [label=\"C/rC\", shape=doublecircle, style=filled"), std::string::npos);
  EXPECT_NE(dot.find("\"F\" [label=\"F/rF\", shape=circle, style=filled"), std::string::npos);
  EXPECT_EQ(to_dot(fig7()), dot);
}

TEST(Dot, ChainHasNoShading) {
  const std::string dot = to_dot(chain(4));
  EXPECT_EQ(count(dot, "filled"), 0u);
  EXPECT_EQ(count(dot, "doublecircle"), 0u);
  EXPECT_EQ(count(dot, " -> "), 3u);
}

TEST(Dot, MergedLabelsAreCommaJoined) {
  const Automaton a = make("x", {"A", "B"}, {"q", "r"}, {{"q", "A", "r"}, {"q", "B", "r"}});
  EXPECT_NE(to_dot(a).find("\"q\" -> \"r\" [label=\"A,B\"]"), std::string::npos);
}

}  // namespace
