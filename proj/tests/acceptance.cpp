// Acceptance suite: one line per criterion, every threshold pinned in code.
// Usage: freqcond_acceptance [criterion ...]   (no arguments runs all ten)

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "freqcond/asymptotics.hpp"
#include "freqcond/checks.hpp"
#include "freqcond/enumerate.hpp"
#include "freqcond/json_io.hpp"
#include "freqcond/posterior.hpp"
#include "freqcond/simulate.hpp"
#include "freqcond/whittle.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace freqcond;
using namespace freqcond::test;

namespace {

constexpr std::uint64_t kAcceptanceSeed = 20250809;
constexpr std::uint64_t kMcSamples = 1000000;
constexpr std::uint64_t kSweepSamples = 200000;
constexpr double kSweepMu = 0.02;

struct Outcome {
  bool pass = false;
  std::string detail;
};

MarkovModel acceptance_model() {
  return MarkovModel(
      StateSpace{3},
      TransitionMatrix({{0.5, 0.3, 0.2}, {0.2, 0.5, 0.3}, {0.3, 0.2, 0.5}}),
      uniform_initial(3));
}

// Worked two-step example: only state 1 can start the walk.
Outcome criterion_1() {
  const FrequencyMatrix freq = freq_labeled(3, {{1, 2, 1}, {2, 3, 1}});
  const InitialDistribution uniform = uniform_initial(3);
  const bool start_ok = start_posterior(freq, uniform, 0) == 1 &&
                        start_posterior(freq, uniform, 1) == 0 &&
                        start_posterior(freq, uniform, 2) == 0;
  const PosteriorTable table = markov_posterior(freq, uniform);
  bool mass_ok = table.at(0, 1) == 1;
  for (int i = 0; mass_ok && i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if ((i != 0 || j != 1) && table.at(i, j) != 0) mass_ok = false;
  return {start_ok && mass_ok,
          "start posterior (1,0,0) and full mass on (1,2): exact"};
}

// Worked three-step example: first-transition counts via both routes.
Outcome criterion_2() {
  const FrequencyMatrix freq =
      freq_labeled(3, {{1, 2, 1}, {2, 1, 1}, {1, 3, 1}});
  const BalanceReport balance = balance_report(freq);

  auto both_routes = [&](int i, int j) -> std::pair<BigInt, BigInt> {
    const int tail = balance.kind == BalanceKind::Path ? balance.tail : i;
    const FrequencyMatrix rest = freq.decremented(i, j);
    const BigInt stripped = rest.total() == 0
                                ? BigInt(j == tail ? 1 : 0)
                                : whittle_count(rest, j, tail);
    BigInt closed = 0;
    const BigInt full = whittle_count(freq, i, tail);
    if (full > 0) {
      const Rational value =
          make_ratio(freq.at(i, j), freq.row_sum(i)) * Rational(full) *
          cofactor(whittle_matrix_after_first(freq, i, j), tail, j) /
          cofactor(whittle_matrix(freq), tail, i);
      if (value.get_den() != 1 || value < 0) return {stripped, BigInt(-1)};
      closed = value.get_num();
    }
    return {stripped, closed};
  };

  const auto [a12, b12] = both_routes(0, 1);
  const auto [a13, b13] = both_routes(0, 2);
  const bool ok = a12 == 1 && b12 == 1 && a13 == 0 && b13 == 0 &&
                  count_first_transition(freq, 0, 1) == 1 &&
                  count_first_transition(freq, 0, 2) == 0;
  return {ok, "(1,2) -> 1 and (1,3) -> 0 by both routes: exact"};
}

// Formula counts equal enumeration counts, exhaustively and at random.
Outcome criterion_3() {
  const OracleCheckReport exhaustive = check_counts_exhaustive(3, 6);
  const OracleCheckReport random =
      check_counts_random(4, 7, 200, kAcceptanceSeed);
  std::ostringstream detail;
  detail << exhaustive.matrices << " exhaustive + " << random.matrices
         << " random matrices, "
         << (exhaustive.comparisons + random.comparisons) << " comparisons, "
         << (exhaustive.mismatches + random.mismatches) << " mismatches";
  if (!exhaustive.examples.empty())
    detail << "; first: " << exhaustive.examples.front();
  else if (!random.examples.empty())
    detail << "; first: " << random.examples.front();
  return {exhaustive.all_agree() && random.all_agree() &&
              random.matrices == 200,
          detail.str()};
}

// Exact posterior equals direct Bayes marginalization over trajectories.
Outcome criterion_4() {
  std::uint64_t events_checked = 0, cells_checked = 0;
  for (int num_states = 1; num_states <= 3; ++num_states) {
    SplitMix64 rng(mix64(kAcceptanceSeed + num_states));
    std::vector<RationalModel> models;
    for (int m = 0; m < 10; ++m)
      models.push_back(random_rational_model(num_states, rng));
    for (int steps = 1; steps <= 6; ++steps) {
      const auto buckets = events_by_trajectory(num_states, steps);
      for (const auto& [key, bucket] : buckets) {
        const FrequencyMatrix freq =
            frequency_of_trajectory(bucket.front());
        for (const RationalModel& model : models) {
          const PosteriorTable expected =
              bayes_posterior_from_bucket(num_states, bucket, model);
          const PosteriorTable actual = markov_posterior(
              freq, InitialDistribution::from_rationals(model.initial));
          for (int i = 0; i < num_states; ++i) {
            for (int j = 0; j < num_states; ++j) {
              ++cells_checked;
              if (actual.at(i, j) != expected.at(i, j)) {
                std::ostringstream detail;
                detail << "mismatch at " << key << " cell (" << i + 1 << ","
                       << j + 1 << ")";
                return {false, detail.str()};
              }
            }
          }
        }
        ++events_checked;
      }
    }
  }
  std::ostringstream detail;
  detail << events_checked << " events x 10 models, " << cells_checked
         << " cells: exact agreement";
  return {true, detail.str()};
}

// i.i.d. law: position-independent single and pairwise conditionals.
Outcome criterion_5() {
  std::uint64_t single_checks = 0, pair_checks = 0;

  auto for_each_composition = [](int total, int parts,
                                 const std::function<void(
                                     const std::vector<long long>&)>& fn) {
    std::vector<long long> c(static_cast<std::size_t>(parts));
    auto rec = [&](auto&& self, int index, long long remaining) -> void {
      if (index == parts - 1) {
        if (remaining >= 1) {
          c[static_cast<std::size_t>(index)] = remaining;
          fn(c);
        }
        return;
      }
      for (long long v = 1; v + (parts - index - 1) <= remaining; ++v) {
        c[static_cast<std::size_t>(index)] = v;
        self(self, index + 1, remaining - v);
      }
    };
    rec(rec, 0, total);
  };

  for (int n = 1; n <= 8; ++n) {
    for (int parts = 1; parts <= std::min(4, n); ++parts) {
      bool failed = false;
      std::string failure;
      for_each_composition(n, parts, [&](const std::vector<long long>& c) {
        if (failed) return;
        IidCounts counts;
        for (int v = 0; v < parts; ++v) counts.counts[v + 1] = c[v];
        std::vector<long long> probes;
        for (int v = 0; v < parts; ++v) probes.push_back(v + 1);
        probes.push_back(9);  // unobserved

        for (long long ell = 1; ell <= n && !failed; ++ell) {
          for (long long m : probes) {
            ++single_checks;
            if (iid_posterior(counts, m) !=
                iid_conditional_brute(counts, ell, m)) {
              failed = true;
              failure = "single law mismatch at n=" + std::to_string(n);
              break;
            }
          }
        }
        if (failed || n < 2) return;

        const IidArrangementTally tally = tally_iid_arrangements(counts);
        for (int a = 1; a <= n && !failed; ++a) {
          for (int b = 1; b <= n && !failed; ++b) {
            if (a == b) continue;
            for (long long m1 : probes) {
              for (long long m2 : probes) {
                ++pair_checks;
                if (iid_pair_posterior(counts, m1, m2) !=
                    make_ratio(tally.at_pair(a, b, m1, m2), tally.total)) {
                  failed = true;
                  failure = "pair law mismatch at n=" + std::to_string(n);
                  break;
                }
              }
              if (failed) break;
            }
          }
        }
      });
      if (failed) return {false, failure};
    }
  }
  std::ostringstream detail;
  detail << single_checks << " single + " << pair_checks
         << " pairwise conditionals: exact agreement at every position";
  return {true, detail.str()};
}

// Cofactors of the normalized count matrix are constant along each row.
Outcome criterion_6() {
  SplitMix64 rng(mix64(kAcceptanceSeed ^ 0x6));
  for (int trial = 0; trial < 500; ++trial) {
    const int num_states = 1 + static_cast<int>(rng.next() % 5);
    FrequencyMatrix freq(num_states);
    for (int i = 0; i < num_states; ++i) {
      const int row_total = 1 + static_cast<int>(rng.next() % 5);
      for (int t = 0; t < row_total; ++t)
        freq.bump(i, static_cast<int>(rng.next() %
                                      static_cast<std::uint64_t>(num_states)));
    }
    if (!cofactor_row_constancy(freq))
      return {false, "row cofactors differ for " + canonical_key(freq)};
  }
  return {true, "500 random matrices with positive rows: exact equality"};
}

// The after-first-transition matrix moves by at most 1/(row_sum - 1).
Outcome criterion_7() {
  SplitMix64 rng(mix64(kAcceptanceSeed ^ 0x7));
  for (int trial = 0; trial < 500; ++trial) {
    const int num_states = 2 + static_cast<int>(rng.next() % 4);
    FrequencyMatrix freq = random_frequency_matrix(
        num_states, 1 + static_cast<long long>(rng.next() % 10), rng);
    const int i = static_cast<int>(rng.next() %
                                   static_cast<std::uint64_t>(num_states));
    const int j = static_cast<int>(rng.next() %
                                   static_cast<std::uint64_t>(num_states));
    freq.bump(i, j);
    if (freq.row_sum(i) < 2)
      freq.bump(i, static_cast<int>(rng.next() %
                                    static_cast<std::uint64_t>(num_states)));
    const PerturbationBound result = whittle_matrix_perturbation(freq, i, j);
    if (!(result.max_deviation <= result.bound))
      return {false, "bound violated for " + canonical_key(freq)};
  }
  return {true,
          "500 random inputs: max entry gap <= 1/(row_sum-1), exact rational "
          "comparison"};
}

// Monte Carlo rejection conditioning reproduces the exact posterior.
Outcome criterion_8() {
  const McVerifyReport report = verify_exact_vs_mc(
      acceptance_model(), 6, kMcSamples, kAcceptanceSeed, 500);
  std::ostringstream detail;
  detail << report.qualifying_events << " events with >= 500 hits, "
         << report.cells_within << "/" << report.cells_total
         << " cells with |z| <= 4 (fraction "
         << report.pass_fraction << ")";
  return {report.qualifying_events > 0 && report.pass_fraction >= 0.99,
          detail.str()};
}

// The posterior approaches the renormalized prior as n grows.
Outcome criterion_9() {
  const ConvergenceReport report =
      convergence_sweep(acceptance_model(), {50, 200, 800}, kSweepMu,
                        kSweepSamples, kAcceptanceSeed);
  if (report.rows.size() != 3) return {false, "sweep produced no rows"};
  const ConvergenceRow& r50 = report.rows[0];
  const ConvergenceRow& r200 = report.rows[1];
  const ConvergenceRow& r800 = report.rows[2];

  std::ostringstream detail;
  detail << "typical events " << r50.typical_event_count << "/"
         << r200.typical_event_count << "/" << r800.typical_event_count
         << ", medians " << r50.posterior_prior_median << " > "
         << r200.posterior_prior_median << " > "
         << r800.posterior_prior_median << ", max|ratio-1|@800 "
         << r800.count_ratio_max_gap;

  const bool events_found = r50.typical_event_count > 0 &&
                            r200.typical_event_count > 0 &&
                            r800.typical_event_count > 0;
  const bool decreasing =
      r50.posterior_prior_median > r200.posterior_prior_median &&
      r200.posterior_prior_median > r800.posterior_prior_median;
  const bool small_at_800 = r800.posterior_prior_median <= 0.05;
  const bool ratios_at_800 = r800.count_ratio_max_gap <= 0.1;
  const bool admissible = r200.second_position_all_admissible &&
                          r800.second_position_all_admissible;
  return {events_found && decreasing && small_at_800 && ratios_at_800 &&
              admissible,
          detail.str()};
}

// Identical seeds give byte-identical reports for any worker count.
Outcome criterion_10() {
  const MarkovModel model = acceptance_model();
  std::string mc_serial, mc_parallel, sweep_serial, sweep_parallel;
  setenv("FREQCOND_THREADS", "1", 1);
  mc_serial = mc_report_to_json(
      verify_exact_vs_mc(model, 6, kMcSamples, kAcceptanceSeed, 500));
  sweep_serial = sweep_report_to_json(convergence_sweep(
      model, {50, 200, 800}, kSweepMu, kSweepSamples, kAcceptanceSeed));
  setenv("FREQCOND_THREADS", "4", 1);
  mc_parallel = mc_report_to_json(
      verify_exact_vs_mc(model, 6, kMcSamples, kAcceptanceSeed, 500));
  sweep_parallel = sweep_report_to_json(convergence_sweep(
      model, {50, 200, 800}, kSweepMu, kSweepSamples, kAcceptanceSeed));
  unsetenv("FREQCOND_THREADS");

  const bool ok = mc_serial == mc_parallel && sweep_serial == sweep_parallel;
  std::ostringstream detail;
  detail << "Monte Carlo report " << (mc_serial == mc_parallel ? "identical"
                                                               : "DIFFERS")
         << ", sweep report "
         << (sweep_serial == sweep_parallel ? "identical" : "DIFFERS")
         << " across 1 and 4 workers";
  return {ok, detail.str()};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "two-step start posterior", 1.0, criterion_1},
    {2, "first-transition count by both routes", 1.0, criterion_2},
    {3, "formula equals enumeration", 300.0, criterion_3},
    {4, "posterior equals Bayes marginalization", 300.0, criterion_4},
    {5, "i.i.d. conditionals", 120.0, criterion_5},
    {6, "cofactor row constancy", 60.0, criterion_6},
    {7, "after-first matrix bound", 60.0, criterion_7},
    {8, "Monte Carlo agreement", 600.0, criterion_8},
    {9, "asymptotic convergence", 1200.0, criterion_9},
    {10, "deterministic reruns", 3600.0, criterion_10},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> requested;
  for (int a = 1; a < argc; ++a) requested.push_back(std::atoi(argv[a]));
  if (requested.empty())
    for (const Criterion& c : kCriteria) requested.push_back(c.id);

  bool all_pass = true;
  for (int id : requested) {
    const Criterion* criterion = nullptr;
    for (const Criterion& c : kCriteria)
      if (c.id == id) criterion = &c;
    if (criterion == nullptr) {
      std::cerr << "unknown criterion " << id << "\n";
      return 2;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion->run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    const bool in_budget = elapsed < criterion->budget_seconds;
    const bool pass = outcome.pass && in_budget;
    all_pass = all_pass && pass;
    std::ostringstream line;
    line.precision(6);
    line << (pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion->id
         << " (" << criterion->name << "): " << outcome.detail << " ["
         << elapsed << "s, budget " << criterion->budget_seconds << "s]";
    if (!in_budget) line << " OVER BUDGET";
    std::cout << line.str() << std::endl;
  }
  return all_pass ? 0 : 1;
}
