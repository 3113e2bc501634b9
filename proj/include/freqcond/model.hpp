#pragma once

#include <map>
#include <string>
#include <vector>

#include "freqcond/errors.hpp"
#include "freqcond/rational.hpp"

namespace freqcond {

inline constexpr double kRowSumTolerance = 1e-12;
inline constexpr double kStationaryResidualTolerance = 1e-10;

// States are labeled 1..N at the I/O boundary and indexed 0..N-1 everywhere
// inside the library. Positions along a trajectory stay 1-based, matching the
// usual time index.
struct StateSpace {
  int count = 0;
};

// Row-stochastic matrix. Rows must sum to 1 within kRowSumTolerance and all
// entries must be nonnegative.
class TransitionMatrix {
 public:
  explicit TransitionMatrix(std::vector<std::vector<double>> rows);

  int size() const { return size_; }
  double at(int i, int j) const { return rows_[i][j]; }
  const std::vector<double>& row(int i) const { return rows_[i]; }
  bool strictly_positive() const { return strictly_positive_; }

 private:
  int size_ = 0;
  std::vector<std::vector<double>> rows_;
  bool strictly_positive_ = false;
};

// Probability vector for the first state. Masses are kept as exact rationals:
// doubles convert losslessly, so downstream posterior arithmetic stays exact
// whatever the input form.
class InitialDistribution {
 public:
  static InitialDistribution from_doubles(const std::vector<double>& values);
  static InitialDistribution from_rationals(std::vector<Rational> weights);

  int size() const { return static_cast<int>(weights_.size()); }
  const Rational& weight(int i) const { return weights_[i]; }
  double value(int i) const { return values_[i]; }

 private:
  InitialDistribution() = default;
  std::vector<Rational> weights_;
  std::vector<double> values_;
};

struct StationaryDistribution {
  std::vector<double> pi;
};

struct MarkovModel {
  MarkovModel(StateSpace states_, TransitionMatrix transitions_,
              InitialDistribution initial_);

  StateSpace states;
  TransitionMatrix transitions;
  InitialDistribution initial;
};

// A walk y_1, ..., y_{n+1}; states 0-based.
struct Trajectory {
  int num_states = 0;
  std::vector<int> states;
};

// Matrix of one-step transition counts nu(i,j). Doubles as the identity of a
// frequency event: two trajectories belong to the same event iff their count
// matrices are equal.
class FrequencyMatrix {
 public:
  explicit FrequencyMatrix(int num_states);

  int size() const { return size_; }
  long long at(int i, int j) const { return cells_[index(i, j)]; }
  void set(int i, int j, long long count);
  void bump(int i, int j);
  long long total() const { return total_; }
  long long row_sum(int i) const;
  long long col_sum(int j) const;
  FrequencyMatrix decremented(int i, int j) const;
  const std::vector<long long>& cells() const { return cells_; }

  bool operator==(const FrequencyMatrix& other) const = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(size_) +
           static_cast<std::size_t>(j);
  }

  int size_ = 0;
  std::vector<long long> cells_;
  long long total_ = 0;
};

enum class BalanceKind { Path, Circuit, Infeasible };

// Flow balance of a frequency matrix: d(i) = row_sum(i) - col_sum(i).
// Path: exactly one d = +1 (head) and one d = -1 (tail), rest 0.
// Circuit: all d = 0; candidate heads are the states with positive row sum.
// Anything else cannot be chained into a single walk.
struct BalanceReport {
  std::vector<long long> d;
  BalanceKind kind = BalanceKind::Infeasible;
  int head = -1;
  int tail = -1;
  std::vector<int> candidate_heads;
};

// Value counts for an i.i.d. sample; value labels are arbitrary integers.
struct IidCounts {
  std::map<long long, long long> counts;

  long long total() const;
  long long count_of(long long value) const;
};

FrequencyMatrix frequency_of_trajectory(const Trajectory& traj);
BalanceReport balance_report(const FrequencyMatrix& freq);
StationaryDistribution stationary_distribution(
    const TransitionMatrix& transitions);

// Canonical row-major serialization, e.g. {"N":2,"nu":[[0,1],[1,0]]}.
// This exact string is the grouping key for frequency events.
std::string canonical_key(const FrequencyMatrix& freq);

}  // namespace freqcond
