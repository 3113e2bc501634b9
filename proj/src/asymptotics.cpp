#include "freqcond/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "freqcond/errors.hpp"
#include "freqcond/json_io.hpp"
#include "freqcond/parallel.hpp"
#include "freqcond/posterior.hpp"
#include "freqcond/rng.hpp"
#include "freqcond/simulate.hpp"
#include "freqcond/whittle.hpp"

namespace freqcond {

namespace {

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace

std::vector<FrequencyMatrix> typical_events(const MarkovModel& model,
                                            const TypicalityConfig& config) {
  if (config.mu < 0.0)
    throw InvalidInputError("typical_events: mu must be nonnegative");
  if (!model.transitions.strictly_positive())
    throw PreconditionError(
        "typical_events: transition matrix must be strictly positive");
  const StationaryDistribution stationary =
      stationary_distribution(model.transitions);
  const int n_states = model.states.count;
  const double n = static_cast<double>(config.steps);

  using EventMap = std::map<std::string, FrequencyMatrix>;
  std::vector<EventMap> partials(static_cast<std::size_t>(thread_cap()));
  parallel_ranges(config.samples, [&](std::uint64_t begin, std::uint64_t end,
                                      int worker) {
    EventMap& local = partials[static_cast<std::size_t>(worker)];
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      SplitMix64 rng = trajectory_stream(config.seed, idx);
      const Trajectory traj = sample_trajectory(model, config.steps, rng);
      const FrequencyMatrix freq = frequency_of_trajectory(traj);
      bool typical = true;
      for (int i = 0; typical && i < n_states; ++i) {
        for (int j = 0; typical && j < n_states; ++j) {
          const double target = stationary.pi[i] * model.transitions.at(i, j);
          const double observed = static_cast<double>(freq.at(i, j)) / n;
          if (!(std::fabs(observed - target) < config.mu)) typical = false;
        }
      }
      if (typical) local.try_emplace(canonical_key(freq), freq);
    }
  });

  EventMap merged;
  for (EventMap& part : partials) merged.merge(part);
  std::vector<FrequencyMatrix> result;
  result.reserve(merged.size());
  for (auto& [key, freq] : merged) result.push_back(freq);
  return result;
}

namespace {

struct StartGaps {
  double renormalized = 0.0;
  double raw = 0.0;
};

// Both prior targets from one posterior evaluation.
StartGaps posterior_start_gaps(const FrequencyMatrix& freq,
                               const MarkovModel& model) {
  const PosteriorTable posterior = markov_posterior(freq, model.initial);
  const std::vector<int> heads = admissible_heads_whittle(freq);
  Rational denom = 0;
  for (int k : heads) denom += model.initial.weight(k);

  StartGaps gaps;
  for (int i = 0; i < freq.size(); ++i) {
    const bool admissible =
        std::find(heads.begin(), heads.end(), i) != heads.end();
    const double renormalized_start =
        (admissible && denom != 0) ? to_double(model.initial.weight(i) / denom)
                                   : 0.0;
    const double raw_start = model.initial.value(i);
    for (int j = 0; j < freq.size(); ++j) {
      const double p = to_double(posterior.at(i, j));
      const double transition = model.transitions.at(i, j);
      gaps.renormalized = std::max(
          gaps.renormalized, std::fabs(p - renormalized_start * transition));
      gaps.raw = std::max(gaps.raw, std::fabs(p - raw_start * transition));
    }
  }
  return gaps;
}

}  // namespace

double posterior_vs_prior_deviation(const FrequencyMatrix& freq,
                                    const MarkovModel& model) {
  return posterior_start_gaps(freq, model).renormalized;
}

double posterior_vs_raw_prior_deviation(const FrequencyMatrix& freq,
                                        const MarkovModel& model) {
  return posterior_start_gaps(freq, model).raw;
}

double posterior_vs_frequency_deviation(const FrequencyMatrix& freq) {
  const std::vector<int> heads = admissible_heads_whittle(freq);
  if (heads.empty())
    throw InvalidInputError(
        "posterior_vs_frequency_deviation: event has no admissible head");
  double max_gap = 0.0;
  for (int i : heads) {
    const long long row = freq.row_sum(i);
    for (int j = 0; j < freq.size(); ++j) {
      const Rational gap = markov_posterior_given_start(freq, i, j) -
                           make_ratio(freq.at(i, j), row);
      max_gap = std::max(max_gap, std::fabs(to_double(gap)));
    }
  }
  return max_gap;
}

Rational first_transition_count_ratio(const FrequencyMatrix& freq, int i,
                                      int k, int j) {
  if (freq.at(i, k) < 1 || freq.at(i, j) < 1)
    throw InvalidInputError(
        "first_transition_count_ratio: both cells must be observed");
  const BigInt numerator_count = count_first_transition(freq, i, k);
  const BigInt denominator_count = count_first_transition(freq, i, j);
  if (denominator_count == 0)
    throw UndefinedRatioError(
        "first_transition_count_ratio: no string starts with the reference "
        "transition");
  Rational ratio =
      Rational(BigInt(static_cast<long>(freq.at(i, j))) * numerator_count) /
      Rational(BigInt(static_cast<long>(freq.at(i, k))) * denominator_count);
  return ratio;
}

bool all_second_states_admissible(const FrequencyMatrix& freq, int head) {
  const std::vector<int> heads = admissible_heads_whittle(freq);
  if (std::find(heads.begin(), heads.end(), head) == heads.end())
    throw PreconditionError(
        "all_second_states_admissible: head is not admissible");
  for (int j = 0; j < freq.size(); ++j) {
    if (count_first_transition(freq, head, j) == 0) return false;
  }
  return true;
}

PerturbationBound whittle_matrix_perturbation(const FrequencyMatrix& freq,
                                              int i, int j) {
  if (freq.at(i, j) < 1)
    throw InvalidInputError(
        "whittle_matrix_perturbation: the (i,j) cell is empty");
  if (freq.row_sum(i) < 2)
    throw PreconditionError(
        "whittle_matrix_perturbation: row sum must be at least 2");
  const RationalMatrix base = whittle_matrix(freq);
  const RationalMatrix shifted = whittle_matrix_after_first(freq, i, j);
  PerturbationBound result;
  result.max_deviation = 0;
  for (int r = 0; r < freq.size(); ++r) {
    for (int c = 0; c < freq.size(); ++c) {
      Rational gap = abs(shifted.at(r, c) - base.at(r, c));
      if (gap > result.max_deviation) result.max_deviation = gap;
    }
  }
  result.bound = make_ratio(1, freq.row_sum(i) - 1);
  return result;
}

ConvergenceReport convergence_sweep(const MarkovModel& model,
                                    const std::vector<int>& n_list, double mu,
                                    std::uint64_t samples,
                                    std::uint64_t seed) {
  ConvergenceReport report;
  report.model_json = model_to_json(model);
  report.n_list = n_list;
  report.mu = mu;
  report.samples = samples;
  report.seed = seed;

  struct EventEval {
    double prior_gap = 0.0;
    double raw_prior_gap = 0.0;
    double frequency_gap = 0.0;
    double ratio_gap = 0.0;
    bool second_admissible = true;
    Rational perturbation_max;
    Rational perturbation_bound;
  };

  for (int steps : n_list) {
    TypicalityConfig config;
    config.mu = mu;
    config.steps = steps;
    config.samples = samples;
    // Decorrelates the trajectory streams used at different lengths.
    config.seed = mix64(seed ^ mix64(static_cast<std::uint64_t>(steps)));
    const std::vector<FrequencyMatrix> events = typical_events(model, config);

    std::vector<EventEval> evals(events.size());
    parallel_ranges(events.size(), [&](std::uint64_t begin, std::uint64_t end,
                                       int) {
      for (std::uint64_t idx = begin; idx < end; ++idx) {
        const FrequencyMatrix& freq = events[idx];
        EventEval eval;
        const StartGaps gaps = posterior_start_gaps(freq, model);
        eval.prior_gap = gaps.renormalized;
        eval.raw_prior_gap = gaps.raw;

        // One first-transition count row per head serves the frequency gap,
        // the count ratios, and the second-position admissibility check; the
        // arithmetic matches the per-pair operations cell for cell.
        const std::vector<int> heads = admissible_heads_whittle(freq);
        for (int i : heads) {
          const int n_states = freq.size();
          std::vector<BigInt> counts(static_cast<std::size_t>(n_states));
          BigInt head_total = 0;
          for (int j = 0; j < n_states; ++j) {
            counts[static_cast<std::size_t>(j)] =
                count_first_transition(freq, i, j);
            head_total += counts[static_cast<std::size_t>(j)];
          }
          const long long row = freq.row_sum(i);
          for (int j = 0; j < n_states; ++j) {
            const Rational gap =
                Rational(counts[static_cast<std::size_t>(j)]) /
                    Rational(head_total) -
                make_ratio(freq.at(i, j), row);
            eval.frequency_gap =
                std::max(eval.frequency_gap, std::fabs(to_double(gap)));
            if (counts[static_cast<std::size_t>(j)] == 0)
              eval.second_admissible = false;
          }
          for (int k = 0; k < n_states; ++k) {
            for (int j = 0; j < n_states; ++j) {
              if (k == j || freq.at(i, k) < 1 || freq.at(i, j) < 1) continue;
              if (counts[static_cast<std::size_t>(j)] == 0) continue;
              const Rational ratio =
                  Rational(BigInt(static_cast<long>(freq.at(i, j))) *
                           counts[static_cast<std::size_t>(k)]) /
                  Rational(BigInt(static_cast<long>(freq.at(i, k))) *
                           counts[static_cast<std::size_t>(j)]);
              eval.ratio_gap = std::max(
                  eval.ratio_gap, std::fabs(to_double(ratio) - 1.0));
            }
          }
        }

        eval.perturbation_max = 0;
        eval.perturbation_bound = 0;
        for (int i = 0; i < freq.size(); ++i) {
          if (freq.row_sum(i) < 2) continue;
          for (int j = 0; j < freq.size(); ++j) {
            if (freq.at(i, j) < 1) continue;
            const PerturbationBound p = whittle_matrix_perturbation(freq, i, j);
            if (p.max_deviation > p.bound)
              throw InternalConsistencyError(
                  "convergence_sweep: perturbation bound violated for " +
                  canonical_key(freq));
            if (p.max_deviation > eval.perturbation_max) {
              eval.perturbation_max = p.max_deviation;
              eval.perturbation_bound = p.bound;
            }
          }
        }
        evals[idx] = std::move(eval);
      }
    });

    ConvergenceRow row;
    row.steps = steps;
    row.typical_event_count = events.size();
    row.second_position_all_admissible = !events.empty();
    std::vector<double> prior_gaps, raw_prior_gaps, frequency_gaps;
    prior_gaps.reserve(evals.size());
    raw_prior_gaps.reserve(evals.size());
    frequency_gaps.reserve(evals.size());
    Rational perturbation_max = 0, perturbation_bound = 0;
    for (const EventEval& eval : evals) {
      prior_gaps.push_back(eval.prior_gap);
      raw_prior_gaps.push_back(eval.raw_prior_gap);
      frequency_gaps.push_back(eval.frequency_gap);
      row.posterior_prior_max =
          std::max(row.posterior_prior_max, eval.prior_gap);
      row.raw_prior_max = std::max(row.raw_prior_max, eval.raw_prior_gap);
      row.posterior_frequency_max =
          std::max(row.posterior_frequency_max, eval.frequency_gap);
      row.count_ratio_max_gap =
          std::max(row.count_ratio_max_gap, eval.ratio_gap);
      if (!eval.second_admissible) row.second_position_all_admissible = false;
      if (eval.perturbation_max > perturbation_max) {
        perturbation_max = eval.perturbation_max;
        perturbation_bound = eval.perturbation_bound;
      }
    }
    row.posterior_prior_median = median(std::move(prior_gaps));
    row.raw_prior_median = median(std::move(raw_prior_gaps));
    row.posterior_frequency_median = median(std::move(frequency_gaps));
    row.perturbation_max = to_double(perturbation_max);
    row.perturbation_bound = to_double(perturbation_bound);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace freqcond
