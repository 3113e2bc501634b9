#include "freqcond/enumerate.hpp"

#include <algorithm>
#include <set>

#include "freqcond/errors.hpp"

namespace freqcond {

namespace {

struct Budget {
  long long remaining;

  void tick() {
    if (--remaining < 0)
      throw ResourceLimitError("enumeration cap exceeded");
  }
};

// Shared DFS state: remaining edge multiplicities plus the partial walk.
struct Walker {
  explicit Walker(const FrequencyMatrix& freq, long long cap)
      : n(freq.size()), rem(freq.cells()), edges_left(freq.total()),
        budget{cap} {}

  bool take(int from, int to) {
    auto& r = rem[static_cast<std::size_t>(from) * n + to];
    if (r == 0) return false;
    --r;
    --edges_left;
    return true;
  }

  void put_back(int from, int to) {
    ++rem[static_cast<std::size_t>(from) * n + to];
    ++edges_left;
  }

  int n;
  std::vector<long long> rem;
  long long edges_left;
  Budget budget;
};

std::vector<int> heads_with_outgoing(const FrequencyMatrix& freq) {
  std::vector<int> heads;
  for (int u = 0; u < freq.size(); ++u) {
    if (freq.row_sum(u) > 0) heads.push_back(u);
  }
  return heads;
}

void require_nonempty(const FrequencyMatrix& freq, const char* op) {
  if (freq.total() < 1)
    throw InvalidInputError(std::string(op) + ": empty frequency matrix");
}

}  // namespace

std::vector<ChainString> enumerate_chain_strings(const FrequencyMatrix& freq,
                                                 std::optional<int> head,
                                                 long long cap) {
  require_nonempty(freq, "enumerate_chain_strings");
  Walker w(freq, cap);
  std::vector<ChainString> out;
  std::vector<std::pair<int, int>> current;
  current.reserve(static_cast<std::size_t>(freq.total()));

  auto dfs = [&](auto&& self, int state) -> void {
    w.budget.tick();
    if (w.edges_left == 0) {
      out.push_back(ChainString{current});
      return;
    }
    for (int j = 0; j < w.n; ++j) {
      if (!w.take(state, j)) continue;
      current.emplace_back(state, j);
      self(self, j);
      current.pop_back();
      w.put_back(state, j);
    }
  };

  std::vector<int> heads =
      head ? std::vector<int>{*head} : heads_with_outgoing(freq);
  for (int u : heads) {
    if (u < 0 || u >= freq.size())
      throw InvalidInputError("enumerate_chain_strings: head out of range");
    dfs(dfs, u);
  }
  return out;
}

BigInt count_paths_brute(const FrequencyMatrix& freq, int u, int v,
                         long long cap) {
  require_nonempty(freq, "count_paths_brute");
  if (u < 0 || u >= freq.size() || v < 0 || v >= freq.size())
    throw InvalidInputError("count_paths_brute: state out of range");
  Walker w(freq, cap);
  BigInt count = 0;

  auto dfs = [&](auto&& self, int state) -> void {
    w.budget.tick();
    if (w.edges_left == 0) {
      if (state == v) ++count;
      return;
    }
    for (int j = 0; j < w.n; ++j) {
      if (!w.take(state, j)) continue;
      self(self, j);
      w.put_back(state, j);
    }
  };

  dfs(dfs, u);
  return count;
}

BigInt count_with_term_brute(const FrequencyMatrix& freq, int ell, int i,
                             int j, long long cap) {
  require_nonempty(freq, "count_with_term_brute");
  if (ell < 1 || ell > freq.total())
    throw InvalidInputError("count_with_term_brute: position out of range");
  if (i < 0 || i >= freq.size() || j < 0 || j >= freq.size())
    throw InvalidInputError("count_with_term_brute: state out of range");
  Walker w(freq, cap);
  BigInt count = 0;
  const long long target_depth = ell - 1;  // edges taken before the fixed one

  auto dfs = [&](auto&& self, int state, long long depth) -> void {
    w.budget.tick();
    if (w.edges_left == 0) {
      ++count;
      return;
    }
    if (depth == target_depth) {
      if (state != i || !w.take(i, j)) return;
      self(self, j, depth + 1);
      w.put_back(i, j);
      return;
    }
    for (int next = 0; next < w.n; ++next) {
      if (!w.take(state, next)) continue;
      self(self, next, depth + 1);
      w.put_back(state, next);
    }
  };

  for (int u : heads_with_outgoing(freq)) dfs(dfs, u, 0);
  return count;
}

AdmissibilitySet admissible_states_brute(const FrequencyMatrix& freq, int ell,
                                         long long cap) {
  require_nonempty(freq, "admissible_states_brute");
  if (ell < 1 || ell > freq.total() + 1)
    throw InvalidInputError("admissible_states_brute: position out of range");
  Walker w(freq, cap);
  std::set<int> found;
  const int num_states = freq.size();
  std::vector<int> walk;  // y_1 .. y_{depth+1}
  walk.reserve(static_cast<std::size_t>(freq.total()) + 1);

  // Returns true once every state has been seen, to cut the search short.
  auto dfs = [&](auto&& self, int state) -> bool {
    w.budget.tick();
    if (w.edges_left == 0) {
      found.insert(walk[static_cast<std::size_t>(ell - 1)]);
      return static_cast<int>(found.size()) == num_states;
    }
    for (int j = 0; j < w.n; ++j) {
      if (!w.take(state, j)) continue;
      walk.push_back(j);
      const bool done = self(self, j);
      walk.pop_back();
      w.put_back(state, j);
      if (done) return true;
    }
    return false;
  };

  for (int u : heads_with_outgoing(freq)) {
    walk.assign(1, u);
    if (dfs(dfs, u)) break;
  }
  AdmissibilitySet result;
  result.position = ell;
  result.states.assign(found.begin(), found.end());
  return result;
}

Rational iid_conditional_brute(const IidCounts& counts, long long ell,
                               long long m, long long cap) {
  const long long n = counts.total();
  if (n < 1) throw InvalidInputError("iid_conditional_brute: empty counts");
  if (ell < 1 || ell > n)
    throw InvalidInputError("iid_conditional_brute: position out of range");

  BigInt arrangements = factorial(static_cast<unsigned long>(n));
  for (const auto& [value, count] : counts.counts)
    arrangements /= factorial(static_cast<unsigned long>(count));
  if (arrangements > BigInt(static_cast<long>(cap)))
    throw ResourceLimitError("iid_conditional_brute: " +
                             to_decimal(arrangements) +
                             " arrangements exceed the cap");

  std::vector<long long> values;
  values.reserve(static_cast<std::size_t>(n));
  for (const auto& [value, count] : counts.counts)
    values.insert(values.end(), static_cast<std::size_t>(count), value);
  std::sort(values.begin(), values.end());

  long long matches = 0, seen = 0;
  do {
    ++seen;
    if (values[static_cast<std::size_t>(ell - 1)] == m) ++matches;
  } while (std::next_permutation(values.begin(), values.end()));
  return make_ratio(matches, seen);
}

}  // namespace freqcond
