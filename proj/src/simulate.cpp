#include "freqcond/simulate.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "freqcond/errors.hpp"
#include "freqcond/json_io.hpp"
#include "freqcond/parallel.hpp"
#include "freqcond/posterior.hpp"

namespace freqcond {

namespace {

int draw_categorical(const std::vector<double>& weights, SplitMix64& rng) {
  const double u = rng.next_unit();
  double acc = 0.0;
  int last_positive = -1;
  for (int k = 0; k < static_cast<int>(weights.size()); ++k) {
    if (weights[k] <= 0.0) continue;
    last_positive = k;
    acc += weights[k];
    if (u < acc) return k;
  }
  // Floating-point shortfall in the cumulative sum.
  return last_positive;
}

struct Group {
  FrequencyMatrix freq{1};
  std::uint64_t hits = 0;
  std::vector<std::uint64_t> first_counts;
};

using GroupMap = std::map<std::string, Group>;

}  // namespace

Trajectory sample_trajectory(const MarkovModel& model, int steps,
                             SplitMix64& rng) {
  if (steps < 1) throw InvalidInputError("sample_trajectory: steps < 1");
  const int n_states = model.states.count;
  std::vector<double> initial(static_cast<std::size_t>(n_states));
  for (int i = 0; i < n_states; ++i) initial[i] = model.initial.value(i);

  Trajectory traj;
  traj.num_states = n_states;
  traj.states.reserve(static_cast<std::size_t>(steps) + 1);
  int state = draw_categorical(initial, rng);
  traj.states.push_back(state);
  for (int step = 0; step < steps; ++step) {
    state = draw_categorical(model.transitions.row(state), rng);
    traj.states.push_back(state);
  }
  return traj;
}

std::vector<McEstimate> mc_conditional_x1(const MarkovModel& model, int steps,
                                          std::uint64_t samples,
                                          std::uint64_t seed) {
  if (samples < 1) throw InvalidInputError("mc_conditional_x1: samples < 1");
  const int n_states = model.states.count;
  const std::size_t n_cells = static_cast<std::size_t>(n_states) *
                              static_cast<std::size_t>(n_states);

  std::vector<GroupMap> partials(static_cast<std::size_t>(thread_cap()));
  parallel_ranges(samples, [&](std::uint64_t begin, std::uint64_t end,
                               int worker) {
    GroupMap& local = partials[static_cast<std::size_t>(worker)];
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      SplitMix64 rng = trajectory_stream(seed, idx);
      const Trajectory traj = sample_trajectory(model, steps, rng);
      const FrequencyMatrix freq = frequency_of_trajectory(traj);
      std::string key = canonical_key(freq);
      auto [it, inserted] = local.try_emplace(std::move(key));
      Group& group = it->second;
      if (inserted) {
        group.freq = freq;
        group.first_counts.assign(n_cells, 0);
      }
      ++group.hits;
      ++group.first_counts[static_cast<std::size_t>(traj.states[0]) *
                               static_cast<std::size_t>(n_states) +
                           static_cast<std::size_t>(traj.states[1])];
    }
  });

  GroupMap merged;
  for (GroupMap& part : partials) {
    for (auto& [key, group] : part) {
      auto [it, inserted] = merged.try_emplace(key);
      Group& target = it->second;
      if (inserted) {
        target.freq = group.freq;
        target.first_counts.assign(n_cells, 0);
      }
      target.hits += group.hits;
      for (std::size_t c = 0; c < n_cells; ++c)
        target.first_counts[c] += group.first_counts[c];
    }
  }

  std::vector<McEstimate> result;
  result.reserve(merged.size());
  for (auto& [key, group] : merged) {
    McEstimate estimate;
    estimate.key = key;
    estimate.freq = group.freq;
    estimate.hits = group.hits;
    estimate.first_counts = group.first_counts;
    estimate.estimates.resize(n_cells);
    estimate.stderrs.resize(n_cells);
    const double hits = static_cast<double>(group.hits);
    for (std::size_t c = 0; c < n_cells; ++c) {
      const double p = static_cast<double>(group.first_counts[c]) / hits;
      estimate.estimates[c] = p;
      estimate.stderrs[c] = std::sqrt(p * (1.0 - p) / hits);
    }
    estimate.seed = seed;
    result.push_back(std::move(estimate));
  }
  return result;
}

McVerifyReport verify_exact_vs_mc(const MarkovModel& model, int steps,
                                  std::uint64_t samples, std::uint64_t seed,
                                  std::uint64_t min_hits) {
  McVerifyReport report;
  report.model_json = model_to_json(model);
  report.steps = steps;
  report.samples = samples;
  report.seed = seed;
  report.min_hits = min_hits;

  const std::vector<McEstimate> estimates =
      mc_conditional_x1(model, steps, samples, seed);
  std::vector<const McEstimate*> qualifying;
  for (const McEstimate& e : estimates) {
    if (e.hits >= min_hits) qualifying.push_back(&e);
  }
  report.qualifying_events = qualifying.size();
  report.no_qualifying_events = qualifying.empty();

  const int n_states = model.states.count;
  report.events.resize(qualifying.size());
  parallel_ranges(qualifying.size(), [&](std::uint64_t begin,
                                         std::uint64_t end, int) {
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      const McEstimate& estimate = *qualifying[idx];
      const PosteriorTable exact =
          markov_posterior(estimate.freq, model.initial);
      McVerifyEvent event;
      event.key = estimate.key;
      event.hits = estimate.hits;
      event.cells.reserve(static_cast<std::size_t>(n_states) * n_states);
      for (int i = 0; i < n_states; ++i) {
        for (int j = 0; j < n_states; ++j) {
          const std::size_t c = static_cast<std::size_t>(i) *
                                    static_cast<std::size_t>(n_states) +
                                static_cast<std::size_t>(j);
          McVerifyCell cell;
          cell.i = i;
          cell.j = j;
          cell.exact = to_fraction(exact.at(i, j));
          cell.exact_value = to_double(exact.at(i, j));
          cell.estimate = estimate.estimates[c];
          cell.stderr_ = estimate.stderrs[c];
          if (cell.estimate == cell.exact_value) {
            cell.z = 0.0;
          } else if (cell.stderr_ > 0.0) {
            cell.z = (cell.estimate - cell.exact_value) / cell.stderr_;
          } else {
            cell.z = std::numeric_limits<double>::infinity();
          }
          event.cells.push_back(cell);
        }
      }
      report.events[idx] = std::move(event);
    }
  });

  for (const McVerifyEvent& event : report.events) {
    for (const McVerifyCell& cell : event.cells) {
      ++report.cells_total;
      if (std::fabs(cell.z) <= report.z_threshold) ++report.cells_within;
    }
  }
  report.pass_fraction =
      report.cells_total == 0
          ? 0.0
          : static_cast<double>(report.cells_within) /
                static_cast<double>(report.cells_total);
  return report;
}

}  // namespace freqcond
