#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "logdiss/automaton.hpp"

namespace logdiss {

// A single input word whose replay from `start` follows every arrow.
struct TestTour {
  std::string start;
  Word word;
  std::vector<std::size_t> covered;  // arrow indices, sorted

  [[nodiscard]] std::size_t length() const noexcept { return word.size(); }
};

// Greedy tour: repeatedly walk the shortest path to the nearest state that
// still has an uncovered arrow and take one. Among uncovered arrows, those
// that cannot strand the walk come first, then those landing on a state with
// more uncovered work, then arrow order. The smallest label of each arrow is
// used. Throws Untestable when coverage cannot be completed.
TestTour transition_tour(const Automaton& a, std::string_view start);

// Tour length; throws SizeLimit above kMonolithicStateLimit states.
std::size_t test_cost(const Automaton& a, std::string_view start);

// Sum of per-module tour lengths.
std::size_t modular_test_cost(std::span<const Automaton> modules, std::span<const std::string> starts);

// Arrow count of the product graph, computed without enumerating it.
long double product_arrow_count(std::span<const Automaton> modules);
long double product_state_count(std::span<const Automaton> modules);

// Tour length of the product graph tested as one block.
std::size_t monolithic_test_cost(std::span<const Automaton> modules, std::span<const std::string> starts);

// Black-box implementation under test. Only outputs are observable.
class Device {
 public:
  virtual ~Device() = default;
  [[nodiscard]] virtual std::string observe() const = 0;
  // Returns false when the device refuses the symbol.
  virtual bool apply(std::string_view symbol) = 0;
};

class AutomatonDevice final : public Device {
 public:
  AutomatonDevice(Automaton a, std::string_view start);

  [[nodiscard]] std::string observe() const override;
  bool apply(std::string_view symbol) override;

 private:
  Automaton automaton_;
  std::size_t state_;
};

struct Discrepancy {
  std::size_t step;  // number of symbols applied before the observation
  std::string expected;
  std::string observed;
};

struct Verdict {
  bool pass = true;
  std::optional<Discrepancy> first_discrepancy;
};

// Replays the tour on the device; throws DeviceRefused(step).
Verdict simulate_test(const Automaton& reference, Device& device, const TestTour& tour);

}  // namespace logdiss
