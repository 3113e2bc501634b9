#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "freqcond/json_io.hpp"
#include "freqcond/posterior.hpp"
#include "freqcond/simulate.hpp"
#include "helpers.hpp"

using namespace freqcond;
using namespace freqcond::test;

namespace {

MarkovModel two_state_symmetric() {
  return MarkovModel(StateSpace{2},
                     TransitionMatrix({{0.5, 0.5}, {0.5, 0.5}}),
                     uniform_initial(2));
}

MarkovModel three_cycle() {
  return MarkovModel(
      StateSpace{3},
      TransitionMatrix({{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}}),
      InitialDistribution::from_rationals(
          {Rational(1), Rational(0), Rational(0)}));
}

struct ThreadCapGuard {
  explicit ThreadCapGuard(const char* value) {
    setenv("FREQCOND_THREADS", value, 1);
  }
  ~ThreadCapGuard() { unsetenv("FREQCOND_THREADS"); }
};

}  // namespace

TEST_CASE("trajectory sampling") {
  SUBCASE("deterministic chain is forced") {
    SplitMix64 rng(1);
    const Trajectory traj = sample_trajectory(three_cycle(), 5, rng);
    CHECK(traj.states == std::vector<int>{0, 1, 2, 0, 1, 2});
  }

  SUBCASE("identical seeds give identical trajectories") {
    const MarkovModel model = two_state_symmetric();
    SplitMix64 a = trajectory_stream(99, 7);
    SplitMix64 b = trajectory_stream(99, 7);
    CHECK(sample_trajectory(model, 50, a).states ==
          sample_trajectory(model, 50, b).states);
  }

  SUBCASE("one-step pair frequencies obey the law of large numbers") {
    const MarkovModel model = two_state_symmetric();
    const int steps = 10;
    const std::uint64_t samples = 100000;
    std::vector<long long> pair_counts(4, 0);
    for (std::uint64_t idx = 0; idx < samples; ++idx) {
      SplitMix64 rng = trajectory_stream(4242, idx);
      const Trajectory traj = sample_trajectory(model, steps, rng);
      for (std::size_t k = 0; k + 1 < traj.states.size(); ++k)
        ++pair_counts[static_cast<std::size_t>(traj.states[k]) * 2 +
                      static_cast<std::size_t>(traj.states[k + 1])];
    }
    const double total = static_cast<double>(samples) * steps;
    for (long long c : pair_counts)
      CHECK(std::fabs(static_cast<double>(c) / total - 0.25) < 0.01);
  }
}

TEST_CASE("rejection grouping by frequency event") {
  SUBCASE("deterministic chain produces a single event") {
    const auto estimates = mc_conditional_x1(three_cycle(), 3, 1000, 5);
    REQUIRE(estimates.size() == 1);
    CHECK(estimates[0].hits == 1000);
    CHECK(estimates[0].estimates[0 * 3 + 1] == 1.0);  // pair (1,2)
    CHECK(estimates[0].seed == 5);
  }

  SUBCASE("at least one sample is required") {
    CHECK_THROWS_AS(mc_conditional_x1(two_state_symmetric(), 3, 0, 1),
                    InvalidInputError);
  }

  SUBCASE("group sizes sum to the sample count, keys are feasible") {
    const auto estimates = mc_conditional_x1(two_state_symmetric(), 4, 5000, 11);
    std::uint64_t total = 0;
    for (const McEstimate& e : estimates) {
      total += e.hits;
      CHECK(balance_report(e.freq).kind != BalanceKind::Infeasible);
      std::uint64_t cell_sum = 0;
      for (std::uint64_t c : e.first_counts) cell_sum += c;
      CHECK(cell_sum == e.hits);
      CHECK(canonical_key(e.freq) == e.key);
    }
    CHECK(total == 5000);
  }

  SUBCASE("symmetric two-cycle event estimates one half") {
    const auto estimates =
        mc_conditional_x1(two_state_symmetric(), 2, 200000, 31);
    const std::string wanted = "{\"N\":2,\"nu\":[[0,1],[1,0]]}";
    bool found = false;
    for (const McEstimate& e : estimates) {
      if (e.key != wanted) continue;
      found = true;
      const double p = e.estimates[0 * 2 + 1];
      const double se = e.stderrs[0 * 2 + 1];
      CHECK(std::fabs(p - 0.5) <= 4.0 * se);
    }
    CHECK(found);
  }
}

TEST_CASE("exact-versus-Monte-Carlo verification") {
  SUBCASE("deterministic chain has zero z-scores") {
    const McVerifyReport report =
        verify_exact_vs_mc(three_cycle(), 3, 2000, 17, 500);
    CHECK(report.qualifying_events == 1);
    CHECK(report.pass_fraction == 1.0);
    for (const McVerifyEvent& event : report.events)
      for (const McVerifyCell& cell : event.cells) CHECK(cell.z == 0.0);
  }

  SUBCASE("huge min-hits flags an empty report") {
    const McVerifyReport report =
        verify_exact_vs_mc(two_state_symmetric(), 3, 200, 17, 100000);
    CHECK(report.no_qualifying_events);
    CHECK(report.qualifying_events == 0);
  }

  SUBCASE("healthy pass fraction on a positive chain") {
    const McVerifyReport report =
        verify_exact_vs_mc(two_state_symmetric(), 4, 100000, 23, 500);
    CHECK(report.qualifying_events > 0);
    CHECK(report.pass_fraction >= 0.98);
  }

  SUBCASE("reports are byte-identical for any worker count") {
    std::string serial, parallel;
    {
      ThreadCapGuard guard("1");
      serial =
          mc_report_to_json(verify_exact_vs_mc(two_state_symmetric(), 4,
                                               20000, 77, 100));
    }
    {
      ThreadCapGuard guard("5");
      parallel =
          mc_report_to_json(verify_exact_vs_mc(two_state_symmetric(), 4,
                                               20000, 77, 100));
    }
    CHECK(serial == parallel);
  }
}
