#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "freqcond/model.hpp"
#include "freqcond/rational.hpp"

namespace freqcond {

// Quantitative harness for the infinite-sample behaviour of the posterior:
// selects typical frequency events by sampling and measures, per event, how
// far each finite-n quantity sits from its limit.

struct TypicalityConfig {
  double mu = 0.0;           // tolerance on |nu/n - pi_i p_ij|, must be > 0
  int steps = 0;             // trajectory length n
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// Distinct frequency matrices of sampled trajectories whose empirical
// transition frequencies all sit within mu of pi_i p_ij. Requires a strictly
// positive transition matrix; returned in canonical key order.
std::vector<FrequencyMatrix> typical_events(const MarkovModel& model,
                                            const TypicalityConfig& config);

// max over (i,j) of | P(X_1=(i,j)|event) - start_weight(i) p_ij | where
// start_weight is the admissible-head-renormalized initial mass.
double posterior_vs_prior_deviation(const FrequencyMatrix& freq,
                                    const MarkovModel& model);

// Same gap against the unrestricted target pi0_i p_ij. The flow balance pins
// the admissible heads, so this gap stays bounded away from zero whenever
// conditioning excludes some initial state; it is reported alongside the
// renormalized gap to make that visible, and nothing is asserted about it.
double posterior_vs_raw_prior_deviation(const FrequencyMatrix& freq,
                                        const MarkovModel& model);

// max over admissible heads i and states j of
// | P(X_1=(i,j)|event, Y_1=i) - nu(i,j)/row_sum(i) |.
double posterior_vs_frequency_deviation(const FrequencyMatrix& freq);

// Exact ratio comparing, for a fixed head i, the weighted counts of strings
// that start with (i,k) versus (i,j):
//   nu(i,j) * #first(i,k) / ( nu(i,k) * #first(i,j) ).
// Tends to 1 as n grows. Requires nu(i,k) >= 1 and nu(i,j) >= 1; a zero
// denominator count raises UndefinedRatioError.
Rational first_transition_count_ratio(const FrequencyMatrix& freq, int i,
                                      int k, int j);

// True iff, for the given admissible head, every state can occur at the
// second trajectory position.
bool all_second_states_admissible(const FrequencyMatrix& freq, int head);

// Entrywise gap between the Whittle matrix and its after-first-(i,j) variant,
// with the a-priori bound 1/(row_sum(i) - 1). The gap never exceeds the bound;
// requires nu(i,j) >= 1 and row_sum(i) >= 2.
struct PerturbationBound {
  Rational max_deviation;
  Rational bound;
};
PerturbationBound whittle_matrix_perturbation(const FrequencyMatrix& freq,
                                              int i, int j);

struct ConvergenceRow {
  int steps = 0;
  std::uint64_t typical_event_count = 0;
  double posterior_prior_median = 0.0;
  double posterior_prior_max = 0.0;
  double raw_prior_median = 0.0;
  double raw_prior_max = 0.0;
  double posterior_frequency_median = 0.0;
  double posterior_frequency_max = 0.0;
  double count_ratio_max_gap = 0.0;  // max |ratio - 1| over defined ratios
  bool second_position_all_admissible = false;
  double perturbation_max = 0.0;
  double perturbation_bound = 0.0;  // the bound paired with the max above
};

struct ConvergenceReport {
  std::string model_json;
  std::vector<int> n_list;
  double mu = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<ConvergenceRow> rows;
};

// For each n in n_list: collect typical events and evaluate every deviation
// diagnostic. Deterministic given the seed, for any worker count.
ConvergenceReport convergence_sweep(const MarkovModel& model,
                                    const std::vector<int>& n_list, double mu,
                                    std::uint64_t samples, std::uint64_t seed);

}  // namespace freqcond
