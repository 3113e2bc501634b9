#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "freqcond/asymptotics.hpp"
#include "freqcond/checks.hpp"
#include "freqcond/enumerate.hpp"
#include "freqcond/errors.hpp"
#include "freqcond/json_io.hpp"
#include "freqcond/model.hpp"
#include "freqcond/posterior.hpp"
#include "freqcond/simulate.hpp"
#include "freqcond/version.hpp"
#include "freqcond/whittle.hpp"

namespace {

using nlohmann::json;

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw freqcond::Error("cannot write file: " + out_path);
  out << text;
}

int to_index(int label, int num_states, const char* what) {
  if (label < 1 || label > num_states)
    throw freqcond::InvalidInputError(std::string(what) + " " +
                                      std::to_string(label) +
                                      " is out of range 1.." +
                                      std::to_string(num_states));
  return label - 1;
}

struct Options {
  std::string model_path, freq_path, counts_text, out_path, csv_path;
  int from = 0, to = 0, i = 0, j = 0, ell = 0;
  long long m = 0, m2 = 0;
  bool has_m2 = false, list = false;
  std::optional<int> head;
  long long cap = freqcond::kDefaultEnumerationCap;
  int steps = 0;
  std::uint64_t samples = 0, seed = 0, min_hits = freqcond::kDefaultMinHits;
  double mu = 0.0;
  std::vector<int> n_list;
  int max_states = 3, rand_states = 4, rand_samples = 200;
  long long max_total = 6, rand_total = 7;
};

int run_count(const Options& opt) {
  const freqcond::FrequencyMatrix freq = freqcond::load_frequency(opt.freq_path);
  const int u = to_index(opt.from, freq.size(), "--from state");
  const int v = to_index(opt.to, freq.size(), "--to state");
  json doc;
  doc["version"] = freqcond::kToolVersion;
  doc["N_uv"] = freqcond::to_decimal(freqcond::whittle_count(freq, u, v));
  doc["multinomial"] =
      freqcond::to_decimal(freqcond::multinomial_weight(freq));
  doc["cofactor"] = freqcond::to_fraction(
      freqcond::cofactor(freqcond::whittle_matrix(freq), v, u));
  write_output(doc.dump(), opt.out_path);
  return 0;
}

int run_first_count(const Options& opt) {
  const freqcond::FrequencyMatrix freq = freqcond::load_frequency(opt.freq_path);
  const int i = to_index(opt.i, freq.size(), "--i state");
  const int j = to_index(opt.j, freq.size(), "--j state");
  // count_first_transition evaluates both routes and fails loudly if they
  // disagree, so one value is reported.
  const freqcond::BigInt count = freqcond::count_first_transition(freq, i, j);
  json doc;
  doc["version"] = freqcond::kToolVersion;
  doc["count"] = freqcond::to_decimal(count);
  doc["routes"] = {"decrement-and-count", "cofactor-closed-form"};
  doc["routes_agree"] = true;
  write_output(doc.dump(), opt.out_path);
  return 0;
}

int run_posterior(const Options& opt) {
  const freqcond::MarkovModel model = freqcond::load_model(opt.model_path);
  const freqcond::FrequencyMatrix freq = freqcond::load_frequency(opt.freq_path);
  const freqcond::BalanceReport balance = freqcond::balance_report(freq);
  if (balance.kind == freqcond::BalanceKind::Infeasible) {
    std::string detail = "frequency matrix is not chainable:";
    for (int i = 0; i < freq.size(); ++i) {
      if (balance.d[i] != 0)
        detail += " state " + std::to_string(i + 1) + " has flow imbalance " +
                  std::to_string(balance.d[i]) + ";";
    }
    throw freqcond::InvalidInputError(detail);
  }
  const freqcond::PosteriorTable table =
      freqcond::markov_posterior(freq, model.initial);
  write_output(freqcond::posterior_to_json(table), opt.out_path);
  return 0;
}

int run_iid(const Options& opt) {
  const freqcond::IidCounts counts =
      freqcond::iid_counts_from_json(opt.counts_text);
  if (opt.has_m2) {
    write_output(freqcond::to_fraction(
                     freqcond::iid_pair_posterior(counts, opt.m, opt.m2)),
                 opt.out_path);
  } else {
    write_output(
        freqcond::to_fraction(freqcond::iid_posterior(counts, opt.m)),
        opt.out_path);
  }
  return 0;
}

int run_oracle(const Options& opt) {
  const freqcond::FrequencyMatrix freq = freqcond::load_frequency(opt.freq_path);
  json doc;
  doc["version"] = freqcond::kToolVersion;
  if (opt.list) {
    std::optional<int> head;
    if (opt.head)
      head = to_index(*opt.head, freq.size(), "--head state");
    const std::vector<freqcond::ChainString> strings =
        freqcond::enumerate_chain_strings(freq, head, opt.cap);
    json list = json::array();
    for (const freqcond::ChainString& s : strings) {
      json pairs = json::array();
      for (const auto& [a, b] : s.pairs) pairs.push_back({a + 1, b + 1});
      list.push_back(std::move(pairs));
    }
    doc["strings"] = std::move(list);
    doc["count"] = strings.size();
  } else if (opt.from > 0 && opt.to > 0) {
    const int u = to_index(opt.from, freq.size(), "--from state");
    const int v = to_index(opt.to, freq.size(), "--to state");
    doc["count"] = freqcond::to_decimal(
        freqcond::count_paths_brute(freq, u, v, opt.cap));
  } else if (opt.ell > 0) {
    const int i = to_index(opt.i, freq.size(), "--i state");
    const int j = to_index(opt.j, freq.size(), "--j state");
    doc["count"] = freqcond::to_decimal(
        freqcond::count_with_term_brute(freq, opt.ell, i, j, opt.cap));
  } else {
    const freqcond::AdmissibilitySet heads =
        freqcond::admissible_states_brute(freq, 1, opt.cap);
    json states = json::array();
    for (int s : heads.states) states.push_back(s + 1);
    doc["admissible_heads"] = std::move(states);
  }
  write_output(doc.dump(), opt.out_path);
  return 0;
}

int run_oracle_check(const Options& opt) {
  const freqcond::OracleCheckReport exhaustive =
      freqcond::check_counts_exhaustive(opt.max_states, opt.max_total, opt.cap);
  const freqcond::OracleCheckReport random = freqcond::check_counts_random(
      opt.rand_states, opt.rand_total, opt.rand_samples, opt.seed, opt.cap);
  json doc;
  doc["version"] = freqcond::kToolVersion;
  json config;
  config["max_N"] = opt.max_states;
  config["max_n"] = opt.max_total;
  config["rand_N"] = opt.rand_states;
  config["rand_n"] = opt.rand_total;
  config["rand_samples"] = opt.rand_samples;
  config["seed"] = opt.seed;
  doc["config"] = std::move(config);
  doc["matrices"] = exhaustive.matrices + random.matrices;
  doc["comparisons"] = exhaustive.comparisons + random.comparisons;
  doc["mismatches"] = exhaustive.mismatches + random.mismatches;
  json examples = json::array();
  for (const std::string& e : exhaustive.examples) examples.push_back(e);
  for (const std::string& e : random.examples) examples.push_back(e);
  doc["examples"] = std::move(examples);
  doc["summary"] = (exhaustive.all_agree() && random.all_agree())
                       ? "all counts agree"
                       : "MISMATCH";
  write_output(doc.dump(), opt.out_path);
  return (exhaustive.all_agree() && random.all_agree()) ? 0 : 1;
}

int run_mc_verify(const Options& opt) {
  const freqcond::MarkovModel model = freqcond::load_model(opt.model_path);
  const freqcond::McVerifyReport report = freqcond::verify_exact_vs_mc(
      model, opt.steps, opt.samples, opt.seed, opt.min_hits);
  write_output(freqcond::mc_report_to_json(report), opt.out_path);
  if (!opt.csv_path.empty())
    write_output(freqcond::mc_report_to_csv(report), opt.csv_path);
  return 0;
}

int run_sweep(const Options& opt) {
  const freqcond::MarkovModel model = freqcond::load_model(opt.model_path);
  const freqcond::ConvergenceReport report = freqcond::convergence_sweep(
      model, opt.n_list, opt.mu, opt.samples, opt.seed);
  write_output(freqcond::sweep_report_to_json(report), opt.out_path);
  if (!opt.csv_path.empty())
    write_output(freqcond::sweep_report_to_csv(report), opt.csv_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact posterior of a process conditioned on observed "
               "transition frequencies, with Monte Carlo and asymptotic "
               "verification harnesses."};
  app.set_version_flag("--version", freqcond::kToolVersion);
  app.require_subcommand(1);

  Options opt;
  int head_label = 0;

  CLI::App* count = app.add_subcommand(
      "count", "Exact number of walks matching a frequency matrix");
  count->add_option("--freq", opt.freq_path, "frequency JSON path")->required();
  count->add_option("--from", opt.from, "head state (1-based)")->required();
  count->add_option("--to", opt.to, "tail state (1-based)")->required();
  count->add_option("--out", opt.out_path, "output path (default stdout)");

  CLI::App* first = app.add_subcommand(
      "first-count", "Number of matching walks that start with (i,j)");
  first->add_option("--freq", opt.freq_path)->required();
  first->add_option("--i", opt.i, "first state (1-based)")->required();
  first->add_option("--j", opt.j, "second state (1-based)")->required();
  first->add_option("--out", opt.out_path);

  CLI::App* posterior = app.add_subcommand(
      "posterior", "Exact conditional law of the first transition");
  posterior->add_option("--model", opt.model_path)->required();
  posterior->add_option("--freq", opt.freq_path)->required();
  posterior->add_option("--out", opt.out_path);

  CLI::App* iid = app.add_subcommand(
      "iid", "Conditional value probabilities for an i.i.d. sample");
  iid->add_option("--counts", opt.counts_text, "counts JSON, value -> count")
      ->required();
  iid->add_option("--m", opt.m, "value")->required();
  CLI::Option* m2 = iid->add_option("--m2", opt.m2, "second value (pair law)");
  iid->add_option("--out", opt.out_path);

  CLI::App* oracle = app.add_subcommand(
      "oracle", "Brute-force enumeration over the transition multigraph");
  oracle->add_option("--freq", opt.freq_path)->required();
  oracle->add_flag("--list", opt.list, "list every matching walk");
  CLI::Option* head_opt =
      oracle->add_option("--head", head_label, "restrict walks to this head");
  oracle->add_option("--from", opt.from, "count walks from this head");
  oracle->add_option("--to", opt.to, "... to this tail");
  oracle->add_option("--ell", opt.ell, "count walks whose ell-th pair is fixed");
  oracle->add_option("--i", opt.i);
  oracle->add_option("--j", opt.j);
  oracle->add_option("--cap", opt.cap, "visited-partial-path cap");
  oracle->add_option("--out", opt.out_path);

  CLI::App* oracle_check = app.add_subcommand(
      "oracle-check", "Formula-vs-enumeration equivalence suite");
  oracle_check->add_option("--max-N", opt.max_states, "exhaustive state count");
  oracle_check->add_option("--max-n", opt.max_total, "exhaustive total");
  oracle_check->add_option("--rand-N", opt.rand_states, "random state count");
  oracle_check->add_option("--rand-n", opt.rand_total, "random max total");
  oracle_check->add_option("--rand-samples", opt.rand_samples);
  oracle_check->add_option("--seed", opt.seed);
  oracle_check->add_option("--cap", opt.cap);
  oracle_check->add_option("--out", opt.out_path);

  CLI::App* mc = app.add_subcommand(
      "mc-verify", "Monte Carlo rejection conditioning against the exact law");
  mc->add_option("--model", opt.model_path)->required();
  mc->add_option("--n", opt.steps, "trajectory length")->required();
  mc->add_option("--samples", opt.samples)->required();
  mc->add_option("--seed", opt.seed)->required();
  mc->add_option("--min-hits", opt.min_hits);
  mc->add_option("--out", opt.out_path);
  mc->add_option("--csv", opt.csv_path, "also write per-event rows as CSV");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Deviation diagnostics over a list of trajectory lengths");
  sweep->add_option("--model", opt.model_path)->required();
  sweep->add_option("--n-list", opt.n_list, "lengths, e.g. 50,200,800")
      ->required()
      ->delimiter(',');
  sweep->add_option("--mu", opt.mu, "typicality tolerance")->required();
  sweep->add_option("--samples", opt.samples)->required();
  sweep->add_option("--seed", opt.seed)->required();
  sweep->add_option("--out", opt.out_path);
  sweep->add_option("--csv", opt.csv_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (m2->count() > 0) opt.has_m2 = true;
    if (head_opt->count() > 0) opt.head = head_label;
    if (count->parsed()) return run_count(opt);
    if (first->parsed()) return run_first_count(opt);
    if (posterior->parsed()) return run_posterior(opt);
    if (iid->parsed()) return run_iid(opt);
    if (oracle->parsed()) return run_oracle(opt);
    if (oracle_check->parsed()) return run_oracle_check(opt);
    if (mc->parsed()) return run_mc_verify(opt);
    if (sweep->parsed()) return run_sweep(opt);
  } catch (const freqcond::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
