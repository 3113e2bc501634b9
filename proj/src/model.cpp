#include "freqcond/model.hpp"

#include <cmath>
#include <cstdlib>

namespace freqcond {

TransitionMatrix::TransitionMatrix(std::vector<std::vector<double>> rows)
    : size_(static_cast<int>(rows.size())), rows_(std::move(rows)) {
  if (size_ < 1) throw InvalidInputError("transition matrix: empty");
  strictly_positive_ = true;
  for (int i = 0; i < size_; ++i) {
    if (static_cast<int>(rows_[i].size()) != size_)
      throw InvalidInputError("transition matrix: not square");
    double sum = 0.0;
    for (double p : rows_[i]) {
      if (!(p >= 0.0))
        throw InvalidInputError("transition matrix: negative entry");
      if (p <= 0.0) strictly_positive_ = false;
      sum += p;
    }
    if (std::fabs(sum - 1.0) > kRowSumTolerance)
      throw InvalidInputError("transition matrix: row " + std::to_string(i + 1) +
                              " sums to " + std::to_string(sum));
  }
}

InitialDistribution InitialDistribution::from_doubles(
    const std::vector<double>& values) {
  std::vector<Rational> weights;
  weights.reserve(values.size());
  for (double v : values) weights.emplace_back(v);  // exact conversion
  return from_rationals(std::move(weights));
}

InitialDistribution InitialDistribution::from_rationals(
    std::vector<Rational> weights) {
  if (weights.empty()) throw InvalidInputError("initial distribution: empty");
  Rational sum = 0;
  for (const Rational& w : weights) {
    if (w < 0)
      throw InvalidInputError("initial distribution: negative entry");
    sum += w;
  }
  if (std::fabs(to_double(sum) - 1.0) > kRowSumTolerance)
    throw InvalidInputError("initial distribution: entries sum to " +
                            std::to_string(to_double(sum)));
  InitialDistribution d;
  d.values_.reserve(weights.size());
  for (const Rational& w : weights) d.values_.push_back(to_double(w));
  d.weights_ = std::move(weights);
  return d;
}

MarkovModel::MarkovModel(StateSpace states_, TransitionMatrix transitions_,
                         InitialDistribution initial_)
    : states(states_),
      transitions(std::move(transitions_)),
      initial(std::move(initial_)) {
  if (states.count < 1) throw InvalidInputError("model: state count < 1");
  if (transitions.size() != states.count || initial.size() != states.count)
    throw InvalidInputError("model: dimension mismatch");
}

FrequencyMatrix::FrequencyMatrix(int num_states)
    : size_(num_states),
      cells_(static_cast<std::size_t>(num_states) *
             static_cast<std::size_t>(num_states)) {
  if (num_states < 1) throw InvalidInputError("frequency matrix: N < 1");
}

void FrequencyMatrix::set(int i, int j, long long count) {
  if (count < 0) throw InvalidInputError("frequency matrix: negative count");
  total_ += count - cells_[index(i, j)];
  cells_[index(i, j)] = count;
}

void FrequencyMatrix::bump(int i, int j) {
  ++cells_[index(i, j)];
  ++total_;
}

long long FrequencyMatrix::row_sum(int i) const {
  long long s = 0;
  for (int j = 0; j < size_; ++j) s += at(i, j);
  return s;
}

long long FrequencyMatrix::col_sum(int j) const {
  long long s = 0;
  for (int i = 0; i < size_; ++i) s += at(i, j);
  return s;
}

FrequencyMatrix FrequencyMatrix::decremented(int i, int j) const {
  if (at(i, j) < 1)
    throw InvalidInputError("frequency matrix: cannot decrement empty cell");
  FrequencyMatrix copy = *this;
  copy.cells_[index(i, j)] -= 1;
  copy.total_ -= 1;
  return copy;
}

long long IidCounts::total() const {
  long long n = 0;
  for (const auto& [value, count] : counts) {
    if (count < 0) throw InvalidInputError("iid counts: negative count");
    n += count;
  }
  return n;
}

long long IidCounts::count_of(long long value) const {
  auto it = counts.find(value);
  return it == counts.end() ? 0 : it->second;
}

FrequencyMatrix frequency_of_trajectory(const Trajectory& traj) {
  const int n_states = traj.num_states;
  if (n_states < 1) throw InvalidInputError("trajectory: no state space");
  if (traj.states.size() < 2)
    throw InvalidInputError("trajectory: length must be at least 2");
  for (int y : traj.states) {
    if (y < 0 || y >= n_states)
      throw InvalidInputError("trajectory: state label out of range");
  }
  FrequencyMatrix freq(n_states);
  for (std::size_t k = 0; k + 1 < traj.states.size(); ++k)
    freq.bump(traj.states[k], traj.states[k + 1]);
  return freq;
}

BalanceReport balance_report(const FrequencyMatrix& freq) {
  if (freq.total() < 1)
    throw InvalidInputError("balance report: empty frequency matrix");
  const int n = freq.size();
  BalanceReport report;
  report.d.resize(n);
  int plus = -1, minus = -1;
  int plus_count = 0, minus_count = 0;
  bool feasible = true;
  for (int i = 0; i < n; ++i) {
    const long long d = freq.row_sum(i) - freq.col_sum(i);
    report.d[i] = d;
    if (d == 1) {
      plus = i;
      ++plus_count;
    } else if (d == -1) {
      minus = i;
      ++minus_count;
    } else if (d != 0) {
      feasible = false;
    }
  }
  if (feasible && plus_count == 1 && minus_count == 1) {
    report.kind = BalanceKind::Path;
    report.head = plus;
    report.tail = minus;
  } else if (feasible && plus_count == 0 && minus_count == 0) {
    report.kind = BalanceKind::Circuit;
    for (int i = 0; i < n; ++i) {
      if (freq.row_sum(i) > 0) report.candidate_heads.push_back(i);
    }
  } else {
    report.kind = BalanceKind::Infeasible;
  }
  return report;
}

StationaryDistribution stationary_distribution(
    const TransitionMatrix& transitions) {
  const int n = transitions.size();
  // Solve (P^T - I) pi = 0 with the last equation replaced by sum(pi) = 1.
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (int r = 0; r < n - 1; ++r) {
    for (int c = 0; c < n; ++c) a[r][c] = transitions.at(c, r);
    a[r][r] -= 1.0;
  }
  for (int c = 0; c < n; ++c) a[n - 1][c] = 1.0;
  a[n - 1][n] = 1.0;

  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    }
    if (std::fabs(a[pivot][col]) < 1e-10)
      throw DegenerateModelError(
          "stationary distribution: no unique solution (reducible chain)");
    std::swap(a[pivot], a[col]);
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (int c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
    }
  }

  StationaryDistribution result;
  result.pi.resize(n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    result.pi[i] = a[i][n] / a[i][i];
    sum += result.pi[i];
  }
  for (int i = 0; i < n; ++i) result.pi[i] /= sum;

  double residual = 0.0;
  for (int j = 0; j < n; ++j) {
    double v = -result.pi[j];
    for (int i = 0; i < n; ++i) v += result.pi[i] * transitions.at(i, j);
    residual = std::max(residual, std::fabs(v));
  }
  for (double p : result.pi) {
    if (p < -kStationaryResidualTolerance)
      throw DegenerateModelError("stationary distribution: negative entry");
  }
  if (residual > kStationaryResidualTolerance)
    throw DegenerateModelError("stationary distribution: residual " +
                               std::to_string(residual));
  return result;
}

std::string canonical_key(const FrequencyMatrix& freq) {
  const int n = freq.size();
  std::string key = "{\"N\":" + std::to_string(n) + ",\"nu\":[";
  for (int i = 0; i < n; ++i) {
    key += (i == 0) ? "[" : ",[";
    for (int j = 0; j < n; ++j) {
      if (j > 0) key += ',';
      key += std::to_string(freq.at(i, j));
    }
    key += ']';
  }
  key += "]}";
  return key;
}

}  // namespace freqcond
