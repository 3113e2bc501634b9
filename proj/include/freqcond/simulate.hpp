#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "freqcond/model.hpp"
#include "freqcond/rng.hpp"

namespace freqcond {

inline constexpr double kZThreshold = 4.0;
inline constexpr std::uint64_t kDefaultMinHits = 500;

// One step-count trajectory drawn from the model; y_1 ~ initial distribution,
// y_{l+1} ~ row y_l of the transition matrix. Deterministic given the stream.
Trajectory sample_trajectory(const MarkovModel& model, int steps,
                             SplitMix64& rng);

// Rejection-conditioned estimate of the law of the first transition within
// one frequency event, identified by its canonical key.
struct McEstimate {
  std::string key;
  FrequencyMatrix freq{1};
  std::uint64_t hits = 0;
  std::vector<std::uint64_t> first_counts;  // row-major N*N
  std::vector<double> estimates;            // first_counts / hits
  std::vector<double> stderrs;              // sqrt(p(1-p)/hits)
  std::uint64_t seed = 0;
};

// Samples trajectories, groups them by exact frequency matrix, and tallies the
// first transition within each group. Groups are returned in key order;
// the result is identical for any worker count.
std::vector<McEstimate> mc_conditional_x1(const MarkovModel& model, int steps,
                                          std::uint64_t samples,
                                          std::uint64_t seed);

struct McVerifyCell {
  int i = 0, j = 0;
  std::string exact;      // exact posterior as a fraction
  double exact_value = 0.0;
  double estimate = 0.0;
  double stderr_ = 0.0;
  double z = 0.0;
};

struct McVerifyEvent {
  std::string key;
  std::uint64_t hits = 0;
  std::vector<McVerifyCell> cells;
};

struct McVerifyReport {
  std::string model_json;
  int steps = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t min_hits = 0;
  double z_threshold = kZThreshold;
  std::vector<McVerifyEvent> events;  // only events with hits >= min_hits
  std::uint64_t qualifying_events = 0;
  std::uint64_t cells_total = 0;
  std::uint64_t cells_within = 0;
  double pass_fraction = 0.0;
  bool no_qualifying_events = false;
};

// Per-event, per-cell z-scores of the Monte Carlo estimates against the exact
// posterior, with the fraction of |z| <= z_threshold as the summary.
McVerifyReport verify_exact_vs_mc(const MarkovModel& model, int steps,
                                  std::uint64_t samples, std::uint64_t seed,
                                  std::uint64_t min_hits = kDefaultMinHits);

}  // namespace freqcond
