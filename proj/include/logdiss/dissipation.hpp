#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "logdiss/automaton.hpp"

namespace logdiss {

inline constexpr double kBoltzmann = 1.38e-23;  // J/K
inline constexpr double kProbabilityTolerance = 1e-12;
inline constexpr double kFileProbabilityTolerance = 1e-9;

// Probability of leaving each state along each of its outgoing arrows.
// distribution(q)[i] pairs with a.out_arrows(q)[i].
class InputModel {
 public:
  // Equiprobable arrows at every state.
  static InputModel uniform(const Automaton& a);

  // Per-arrow probabilities keyed by (source, target). States without any
  // entry stay uniform; a state with entries must cover all its arrows and
  // sum to 1 within `tolerance`, after which it is renormalised.
  static InputModel from_arrow_probabilities(
      const Automaton& a, const std::map<std::pair<std::string, std::string>, double>& p,
      double tolerance = kFileProbabilityTolerance);

  // Per-symbol probabilities (state, symbol, p); symbols of one merged arrow
  // are summed. Unlisted symbols of a listed state get probability 0.
  static InputModel from_symbol_probabilities(
      const Automaton& a, const std::vector<std::tuple<std::string, std::string, double>>& p,
      double tolerance = kFileProbabilityTolerance);

  // Takes ownership of raw per-state vectors; validated against `a`.
  static InputModel from_distributions(const Automaton& a, std::vector<std::vector<double>> dist,
                                       double tolerance = kProbabilityTolerance);

  [[nodiscard]] std::span<const double> distribution(std::size_t state) const { return dist_[state]; }
  [[nodiscard]] std::size_t state_count() const noexcept { return dist_.size(); }
  // Probability of the arrow source -> target (0 when no such arrow).
  [[nodiscard]] double arrow_probability(const Automaton& a, std::string_view source,
                                         std::string_view target) const;
  // True when every state's distribution is uniform over its arrows.
  [[nodiscard]] bool is_uniform() const;

 private:
  std::vector<std::vector<double>> dist_;
};

// Shannon entropy in bits; zero-probability terms contribute nothing.
double entropy_bits(std::span<const double> p);

double choice_information(const Automaton& a, const InputModel& m, std::string_view state);
double choice_information(const Automaton& a, const InputModel& m, std::size_t state);

struct PathReport {
  Path path;
  std::vector<double> per_step_bits;
  double total_bits = 0.0;
  std::vector<std::size_t> convergences_entered;  // step indices
};

// Bits needed to steer one run: -log2 of the probability of each arrow taken.
PathReport path_choice_information(const Automaton& a, const InputModel& m, std::string_view start,
                                   std::span<const std::string> word);

// Distributions over states are indexed like Automaton::states().
std::vector<double> uniform_distribution(const Automaton& a);
std::vector<double> point_distribution(const Automaton& a, std::string_view state);

struct EnsembleStep {
  std::vector<double> next;
  double loss_bits = 0.0;   // H(pi) + input_bits - H(next)
  double input_bits = 0.0;  // sum_q pi(q) * choice_information(q)
};

// One synchronous step of the state distribution. Mass on sink states is
// carried unchanged and reads no input.
EnsembleStep ensemble_step(const Automaton& a, const InputModel& m, std::span<const double> pi);

struct EnsembleTrace {
  std::vector<std::vector<double>> distributions;  // pi_0 .. pi_T
  std::vector<double> per_step_loss_bits;          // length T
  std::vector<double> cumulative_loss_bits;        // running sum, length T
  std::vector<double> per_step_input_bits;         // length T

  [[nodiscard]] double total_loss_bits() const {
    return cumulative_loss_bits.empty() ? 0.0 : cumulative_loss_bits.back();
  }
  [[nodiscard]] double total_input_bits() const;
};

EnsembleTrace ensemble_dissipation(const Automaton& a, const InputModel& m, std::span<const double> pi0,
                                   std::size_t horizon);

// Entropy increases s1, s2 (J/K) of the two states of a one-bit memory.
bool szilard_check(double s1, double s2);

// Minimal heat released by erasing `bits` at `temperature` kelvin.
double landauer_energy(double bits, double temperature);

}  // namespace logdiss
