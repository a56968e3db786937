#include "logdiss/conformance.hpp"

#include <algorithm>
#include <deque>

#include "logdiss/composition.hpp"

namespace logdiss {

namespace {

// Shortest path (as arrow indices) from `from` to the nearest state that
// satisfies `goal`; nullopt if none is reachable.
template <typename Goal>
std::optional<std::pair<std::size_t, std::vector<std::size_t>>> nearest(const Automaton& a,
                                                                      std::size_t from, Goal goal) {
  std::vector<std::size_t> via(a.state_count(), npos);
  std::vector<bool> seen(a.state_count(), false);
  std::deque<std::size_t> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    const std::size_t q = queue.front();
    queue.pop_front();
    if (goal(q)) {
      std::vector<std::size_t> path;
      for (std::size_t x = q; x != from;) {
        path.push_back(via[x]);
        x = a.arrows()[via[x]].source_index;
      }
      std::reverse(path.begin(), path.end());
      return std::make_pair(q, std::move(path));
    }
    for (std::size_t arrow : a.out_arrows(q)) {
      const std::size_t r = a.arrows()[arrow].target_index;
      if (!seen[r]) {
        seen[r] = true;
        via[r] = arrow;
        queue.push_back(r);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

TestTour transition_tour(const Automaton& a, std::string_view start) {
  if (a.state_count() > kMonolithicStateLimit) {
    throw Error(ErrorCode::SizeLimit, "automaton too large to test monolithically");
  }
  std::size_t q = a.state_index(start);
  std::vector<bool> covered(a.arrow_count(), false);
  std::size_t remaining = a.arrow_count();

  TestTour tour;
  tour.start = a.states()[q];

  auto has_uncovered = [&](std::size_t state, std::size_t except = npos) {
    for (std::size_t arrow : a.out_arrows(state)) {
      if (!covered[arrow] && arrow != except) return true;
    }
    return false;
  };
  auto take = [&](std::size_t arrow) {
    tour.word.push_back(a.arrows()[arrow].labels.front());
    if (!covered[arrow]) {
      covered[arrow] = true;
      --remaining;
    }
    q = a.arrows()[arrow].target_index;
  };

  while (remaining > 0) {
    auto found = nearest(a, q, [&](std::size_t x) { return has_uncovered(x); });
    if (!found) break;
    for (std::size_t arrow : found->second) take(arrow);

    std::vector<std::size_t> candidates;
    for (std::size_t arrow : a.out_arrows(q)) {
      if (!covered[arrow]) candidates.push_back(arrow);
    }
    auto safe = [&](std::size_t arrow) {
      if (remaining == 1) return true;
      return nearest(a, a.arrows()[arrow].target_index,
                     [&](std::size_t x) { return has_uncovered(x, arrow); })
          .has_value();
    };
    auto gain = [&](std::size_t arrow) { return has_uncovered(a.arrows()[arrow].target_index, arrow); };
    std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t x, std::size_t y) {
      const bool sx = safe(x);
      const bool sy = safe(y);
      if (sx != sy) return sx;
      return gain(x) && !gain(y);
    });
    take(candidates.front());
  }

  if (remaining > 0) {
    std::string missing;
    for (std::size_t i = 0; i < a.arrow_count(); ++i) {
      if (covered[i]) continue;
      if (!missing.empty()) missing += ", ";
      missing += a.arrows()[i].source + "->" + a.arrows()[i].target;
    }
    throw Error(ErrorCode::Untestable, "arrows not coverable from '" + tour.start + "': " + missing);
  }
  for (std::size_t i = 0; i < a.arrow_count(); ++i) tour.covered.push_back(i);
  return tour;
}

std::size_t test_cost(const Automaton& a, std::string_view start) {
  return transition_tour(a, start).length();
}

std::size_t modular_test_cost(std::span<const Automaton> modules, std::span<const std::string> starts) {
  if (modules.size() != starts.size()) {
    throw Error(ErrorCode::InvalidArgument, "one start state per module is required");
  }
  std::size_t total = 0;
  for (std::size_t i = 0; i < modules.size(); ++i) {
    try {
      total += test_cost(modules[i], starts[i]);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Untestable) throw;
      throw Error(ErrorCode::Untestable, "module '" + modules[i].name() + "': " + e.what());
    }
  }
  return total;
}

long double product_arrow_count(std::span<const Automaton> modules) {
  long double n = 1.0L;
  for (const auto& m : modules) n *= static_cast<long double>(m.arrow_count());
  return n;
}

long double product_state_count(std::span<const Automaton> modules) {
  long double n = 1.0L;
  for (const auto& m : modules) n *= static_cast<long double>(m.state_count());
  return n;
}

std::size_t monolithic_test_cost(std::span<const Automaton> modules, std::span<const std::string> starts) {
  if (modules.size() != starts.size()) {
    throw Error(ErrorCode::InvalidArgument, "one start state per module is required");
  }
  if (product_state_count(modules) > static_cast<long double>(kMonolithicStateLimit)) {
    throw Error(ErrorCode::SizeLimit, "monolithic test would need " +
                                          std::to_string(static_cast<double>(product_arrow_count(modules))) +
                                          " arrows; test the modules separately");
  }
  const auto p = product(modules);
  return test_cost(p.automaton, tuple_state(starts));
}

AutomatonDevice::AutomatonDevice(Automaton a, std::string_view start)
    : automaton_(std::move(a)), state_(automaton_.state_index(start)) {}

std::string AutomatonDevice::observe() const { return automaton_.output(state_); }

bool AutomatonDevice::apply(std::string_view symbol) {
  const auto s = automaton_.find_symbol(symbol);
  if (!s) return false;
  const std::size_t r = automaton_.target(state_, *s);
  if (r == npos) return false;
  state_ = r;
  return true;
}

Verdict simulate_test(const Automaton& reference, Device& device, const TestTour& tour) {
  const Path expected = run(reference, tour.start, tour.word);
  Verdict verdict;
  auto check = [&](std::size_t step) {
    std::string seen = device.observe();
    if (seen != expected.outputs[step]) {
      verdict.pass = false;
      verdict.first_discrepancy = Discrepancy{step, expected.outputs[step], std::move(seen)};
    }
    return verdict.pass;
  };
  if (!check(0)) return verdict;
  for (std::size_t i = 0; i < tour.word.size(); ++i) {
    if (!device.apply(tour.word[i])) {
      throw Error(ErrorCode::DeviceRefused, "device refused symbol '" + tour.word[i] + "' at step " +
                                                std::to_string(i),
                  i);
    }
    if (!check(i + 1)) return verdict;
  }
  return verdict;
}

}  // namespace logdiss
