#include "logdiss/dissipation.hpp"

#include <cmath>
#include <numeric>

namespace logdiss {

namespace {

void check_state_distribution(const Automaton& a, std::size_t q, std::vector<double>& d,
                              double tolerance) {
  const std::string& id = a.states()[q];
  if (d.size() != a.out_degree(q)) {
    throw Error(ErrorCode::InvalidDistribution,
                "state '" + id + "' has " + std::to_string(a.out_degree(q)) + " arrows but " +
                    std::to_string(d.size()) + " probabilities");
  }
  if (d.empty()) return;
  double sum = 0.0;
  for (double p : d) {
    if (!(p >= 0.0) || p > 1.0 + tolerance) {
      throw Error(ErrorCode::InvalidDistribution, "probability out of range at state '" + id + "'");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > tolerance) {
    throw Error(ErrorCode::InvalidDistribution,
                "probabilities at state '" + id + "' sum to " + std::to_string(sum));
  }
  for (double& p : d) p /= sum;
}

void check_distribution(const Automaton& a, std::span<const double> pi) {
  if (pi.size() != a.state_count()) {
    throw Error(ErrorCode::InvalidDistribution, "distribution size does not match state count");
  }
  double sum = 0.0;
  for (double p : pi) {
    if (!(p >= 0.0)) throw Error(ErrorCode::InvalidDistribution, "negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance) {
    throw Error(ErrorCode::InvalidDistribution, "distribution sums to " + std::to_string(sum));
  }
}

}  // namespace

InputModel InputModel::uniform(const Automaton& a) {
  InputModel m;
  m.dist_.resize(a.state_count());
  for (std::size_t q = 0; q < a.state_count(); ++q) {
    const std::size_t d = a.out_degree(q);
    m.dist_[q].assign(d, d == 0 ? 0.0 : 1.0 / static_cast<double>(d));
  }
  return m;
}

InputModel InputModel::from_distributions(const Automaton& a, std::vector<std::vector<double>> dist,
                                          double tolerance) {
  if (dist.size() != a.state_count()) {
    throw Error(ErrorCode::InvalidDistribution, "input model size does not match state count");
  }
  for (std::size_t q = 0; q < dist.size(); ++q) check_state_distribution(a, q, dist[q], tolerance);
  InputModel m;
  m.dist_ = std::move(dist);
  return m;
}

InputModel InputModel::from_arrow_probabilities(
    const Automaton& a, const std::map<std::pair<std::string, std::string>, double>& p,
    double tolerance) {
  InputModel m = uniform(a);
  std::vector<std::vector<bool>> seen(a.state_count());
  for (std::size_t q = 0; q < a.state_count(); ++q) seen[q].assign(a.out_degree(q), false);
  std::vector<bool> listed(a.state_count(), false);
  for (const auto& [key, prob] : p) {
    const std::size_t q = a.state_index(key.first);
    const std::size_t r = a.state_index(key.second);
    const auto arrows = a.out_arrows(q);
    std::size_t i = 0;
    while (i < arrows.size() && a.arrows()[arrows[i]].target_index != r) ++i;
    if (i == arrows.size()) {
      throw Error(ErrorCode::InvalidDistribution,
                  "no arrow from '" + key.first + "' to '" + key.second + "'");
    }
    if (!listed[q]) {
      std::fill(m.dist_[q].begin(), m.dist_[q].end(), 0.0);
      listed[q] = true;
    }
    m.dist_[q][i] = prob;
    seen[q][i] = true;
  }
  for (std::size_t q = 0; q < a.state_count(); ++q) {
    if (!listed[q]) continue;
    for (bool s : seen[q]) {
      if (!s) {
        throw Error(ErrorCode::InvalidDistribution,
                    "state '" + a.states()[q] + "' lists probabilities for only some arrows");
      }
    }
    check_state_distribution(a, q, m.dist_[q], tolerance);
  }
  return m;
}

InputModel InputModel::from_symbol_probabilities(
    const Automaton& a, const std::vector<std::tuple<std::string, std::string, double>>& p,
    double tolerance) {
  InputModel m = uniform(a);
  std::vector<bool> listed(a.state_count(), false);
  for (const auto& [state, symbol, prob] : p) {
    const std::size_t q = a.state_index(state);
    const std::size_t s = a.symbol_index(symbol);
    const std::size_t arrow = a.arrow_of(q, s);
    if (arrow == npos) {
      throw Error(ErrorCode::InvalidDistribution,
                  "probability given for forbidden input '" + symbol + "' in state '" + state + "'");
    }
    if (!listed[q]) {
      std::fill(m.dist_[q].begin(), m.dist_[q].end(), 0.0);
      listed[q] = true;
    }
    const auto arrows = a.out_arrows(q);
    const auto pos = static_cast<std::size_t>(std::find(arrows.begin(), arrows.end(), arrow) - arrows.begin());
    m.dist_[q][pos] += prob;
  }
  for (std::size_t q = 0; q < a.state_count(); ++q) {
    if (listed[q]) check_state_distribution(a, q, m.dist_[q], tolerance);
  }
  return m;
}

double InputModel::arrow_probability(const Automaton& a, std::string_view source,
                                     std::string_view target) const {
  const std::size_t q = a.state_index(source);
  const std::size_t r = a.state_index(target);
  const auto arrows = a.out_arrows(q);
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    if (a.arrows()[arrows[i]].target_index == r) return dist_[q][i];
  }
  return 0.0;
}

bool InputModel::is_uniform() const {
  for (const auto& d : dist_) {
    for (double p : d) {
      if (std::abs(p - 1.0 / static_cast<double>(d.size())) > kProbabilityTolerance) return false;
    }
  }
  return true;
}

double entropy_bits(std::span<const double> p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

double choice_information(const Automaton& a, const InputModel& m, std::size_t state) {
  if (state >= a.state_count()) throw Error(ErrorCode::UnknownState, "state index out of range");
  return entropy_bits(m.distribution(state));
}

double choice_information(const Automaton& a, const InputModel& m, std::string_view state) {
  return choice_information(a, m, a.state_index(state));
}

PathReport path_choice_information(const Automaton& a, const InputModel& m, std::string_view start,
                                   std::span<const std::string> word) {
  PathReport report;
  report.path = run(a, start, word);
  std::size_t q = a.state_index(start);
  for (std::size_t i = 0; i < report.path.steps.size(); ++i) {
    const std::size_t arrow = report.path.steps[i].arrow;
    const auto arrows = a.out_arrows(q);
    const auto pos = static_cast<std::size_t>(std::find(arrows.begin(), arrows.end(), arrow) - arrows.begin());
    const double p = m.distribution(q)[pos];
    // A single-arrow exit carries no information even if p rounds below 1.
    const double bits = arrows.size() == 1 ? 0.0 : -std::log2(p);
    report.per_step_bits.push_back(bits);
    report.total_bits += bits;
    q = a.arrows()[arrow].target_index;
    if (a.in_degree(q) >= 2) report.convergences_entered.push_back(i);
  }
  return report;
}

std::vector<double> uniform_distribution(const Automaton& a) {
  return std::vector<double>(a.state_count(), 1.0 / static_cast<double>(a.state_count()));
}

std::vector<double> point_distribution(const Automaton& a, std::string_view state) {
  std::vector<double> pi(a.state_count(), 0.0);
  pi[a.state_index(state)] = 1.0;
  return pi;
}

EnsembleStep ensemble_step(const Automaton& a, const InputModel& m, std::span<const double> pi) {
  check_distribution(a, pi);
  EnsembleStep out;
  out.next.assign(a.state_count(), 0.0);
  for (std::size_t q = 0; q < a.state_count(); ++q) {
    if (pi[q] == 0.0) continue;
    const auto arrows = a.out_arrows(q);
    if (arrows.empty()) {
      out.next[q] += pi[q];
      continue;
    }
    const auto d = m.distribution(q);
    for (std::size_t i = 0; i < arrows.size(); ++i) {
      out.next[a.arrows()[arrows[i]].target_index] += pi[q] * d[i];
    }
    out.input_bits += pi[q] * entropy_bits(d);
  }
  out.loss_bits = entropy_bits(pi) + out.input_bits - entropy_bits(out.next);
  return out;
}

double EnsembleTrace::total_input_bits() const {
  return std::accumulate(per_step_input_bits.begin(), per_step_input_bits.end(), 0.0);
}

EnsembleTrace ensemble_dissipation(const Automaton& a, const InputModel& m, std::span<const double> pi0,
                                   std::size_t horizon) {
  check_distribution(a, pi0);
  EnsembleTrace trace;
  trace.distributions.emplace_back(pi0.begin(), pi0.end());
  double cumulative = 0.0;
  for (std::size_t t = 0; t < horizon; ++t) {
    EnsembleStep s = ensemble_step(a, m, trace.distributions.back());
    cumulative += s.loss_bits;
    trace.per_step_loss_bits.push_back(s.loss_bits);
    trace.per_step_input_bits.push_back(s.input_bits);
    trace.cumulative_loss_bits.push_back(cumulative);
    trace.distributions.push_back(std::move(s.next));
  }
  return trace;
}

bool szilard_check(double s1, double s2) {
  return std::exp(-s1 / kBoltzmann) + std::exp(-s2 / kBoltzmann) <= 1.0 + 1e-12;
}

double landauer_energy(double bits, double temperature) {
  if (!(temperature > 0.0)) {
    throw Error(ErrorCode::NonPositiveTemperature, "temperature must be positive");
  }
  if (!(bits >= 0.0)) throw Error(ErrorCode::InvalidArgument, "bit count must be non-negative");
  return bits * kBoltzmann * temperature * std::log(2.0);
}

}  // namespace logdiss
