#include "freqcond/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "freqcond/errors.hpp"
#include "freqcond/version.hpp"

namespace freqcond {

namespace {

using nlohmann::json;

json parse_document(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInputError(std::string(what) + ": " + e.what());
  }
}

long long require_int(const json& j, const char* field, const char* what) {
  if (!j.contains(field))
    throw InvalidInputError(std::string(what) + ": missing integer field \"" +
                            field + "\"");
  const json& v = j[field];
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_string()) {
    try {
      return std::stoll(v.get<std::string>());
    } catch (...) {
    }
  }
  throw InvalidInputError(std::string(what) + ": field \"" + field +
                          "\" is not an integer");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Rational rational_entry(const json& j, const char* what) {
  if (j.is_number()) return Rational(j.get<double>());  // exact conversion
  if (j.is_object()) {
    const long long num = require_int(j, "num", what);
    const long long den = require_int(j, "den", what);
    if (den == 0)
      throw InvalidInputError(std::string(what) + ": zero denominator");
    return make_ratio(num, den);
  }
  throw InvalidInputError(std::string(what) +
                          ": expected a number or {\"num\",\"den\"}");
}

// Shortest round-trip decimal rendering, identical to the JSON encoding.
std::string format_double(double v) { return json(v).dump(); }

std::string csv_escape(const std::string& field) {
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

json model_config_json(const std::string& model_json) {
  return parse_document(model_json, "embedded model");
}

}  // namespace

MarkovModel model_from_json(const std::string& text) {
  const json doc = parse_document(text, "model JSON");
  const long long n = require_int(doc, "N", "model JSON");
  if (n < 1) throw InvalidInputError("model JSON: N must be >= 1");
  if (!doc.contains("P") || !doc["P"].is_array())
    throw InvalidInputError("model JSON: missing matrix field \"P\"");
  if (!doc.contains("pi0") || !doc["pi0"].is_array())
    throw InvalidInputError("model JSON: missing vector field \"pi0\"");

  const json& p = doc["P"];
  if (static_cast<long long>(p.size()) != n)
    throw InvalidInputError("model JSON: \"P\" must have N rows");
  std::vector<std::vector<double>> rows;
  rows.reserve(p.size());
  for (const json& row : p) {
    if (!row.is_array() || static_cast<long long>(row.size()) != n)
      throw InvalidInputError("model JSON: \"P\" rows must have N entries");
    std::vector<double> values;
    values.reserve(row.size());
    for (const json& entry : row) {
      if (!entry.is_number())
        throw InvalidInputError("model JSON: \"P\" entries must be numbers");
      values.push_back(entry.get<double>());
    }
    rows.push_back(std::move(values));
  }

  const json& pi0 = doc["pi0"];
  if (static_cast<long long>(pi0.size()) != n)
    throw InvalidInputError("model JSON: \"pi0\" must have N entries");
  std::vector<Rational> weights;
  weights.reserve(pi0.size());
  for (const json& entry : pi0)
    weights.push_back(rational_entry(entry, "model JSON: \"pi0\" entry"));

  return MarkovModel(StateSpace{static_cast<int>(n)},
                     TransitionMatrix(std::move(rows)),
                     InitialDistribution::from_rationals(std::move(weights)));
}

FrequencyMatrix frequency_from_json(const std::string& text) {
  const json doc = parse_document(text, "frequency JSON");
  const long long n = require_int(doc, "N", "frequency JSON");
  if (n < 1) throw InvalidInputError("frequency JSON: N must be >= 1");
  if (!doc.contains("nu") || !doc["nu"].is_array() ||
      static_cast<long long>(doc["nu"].size()) != n)
    throw InvalidInputError(
        "frequency JSON: \"nu\" must be an N-row matrix");
  FrequencyMatrix freq(static_cast<int>(n));
  for (int i = 0; i < static_cast<int>(n); ++i) {
    const json& row = doc["nu"][static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<long long>(row.size()) != n)
      throw InvalidInputError("frequency JSON: \"nu\" rows must have N entries");
    for (int j = 0; j < static_cast<int>(n); ++j) {
      const json& entry = row[static_cast<std::size_t>(j)];
      if (!entry.is_number_integer() || entry.get<long long>() < 0)
        throw InvalidInputError(
            "frequency JSON: counts must be nonnegative integers");
      freq.set(i, j, entry.get<long long>());
    }
  }
  return freq;
}

IidCounts iid_counts_from_json(const std::string& text) {
  const json doc = parse_document(text, "counts JSON");
  if (!doc.is_object())
    throw InvalidInputError("counts JSON: expected an object value->count");
  IidCounts counts;
  for (const auto& [key, value] : doc.items()) {
    long long label;
    try {
      label = std::stoll(key);
    } catch (...) {
      throw InvalidInputError("counts JSON: key \"" + key +
                              "\" is not an integer value label");
    }
    if (!value.is_number_integer() || value.get<long long>() < 0)
      throw InvalidInputError(
          "counts JSON: counts must be nonnegative integers");
    counts.counts[label] += value.get<long long>();
  }
  return counts;
}

MarkovModel load_model(const std::string& path) {
  return model_from_json(read_file(path));
}

FrequencyMatrix load_frequency(const std::string& path) {
  return frequency_from_json(read_file(path));
}

std::string model_to_json(const MarkovModel& model) {
  json doc;
  doc["N"] = model.states.count;
  json p = json::array();
  for (int i = 0; i < model.states.count; ++i) {
    json row = json::array();
    for (int j = 0; j < model.states.count; ++j)
      row.push_back(model.transitions.at(i, j));
    p.push_back(std::move(row));
  }
  doc["P"] = std::move(p);
  json pi0 = json::array();
  for (int i = 0; i < model.states.count; ++i) {
    const Rational& w = model.initial.weight(i);
    json entry;
    if (w.get_num().fits_slong_p() && w.get_den().fits_slong_p()) {
      entry["num"] = w.get_num().get_si();
      entry["den"] = w.get_den().get_si();
    } else {
      entry["num"] = w.get_num().get_str();
      entry["den"] = w.get_den().get_str();
    }
    pi0.push_back(std::move(entry));
  }
  doc["pi0"] = std::move(pi0);
  return doc.dump();
}

std::string frequency_to_json(const FrequencyMatrix& freq) {
  return canonical_key(freq);
}

std::string posterior_to_json(const PosteriorTable& table) {
  json doc;
  doc["version"] = kToolVersion;
  doc["N"] = table.num_states;
  doc["n"] = table.n;
  json entries = json::array();
  for (int i = 0; i < table.num_states; ++i) {
    for (int j = 0; j < table.num_states; ++j) {
      json cell;
      cell["i"] = i + 1;
      cell["j"] = j + 1;
      cell["exact"] = to_fraction(table.at(i, j));
      cell["value"] = to_double(table.at(i, j));
      entries.push_back(std::move(cell));
    }
  }
  doc["entries"] = std::move(entries);
  return doc.dump();
}

std::string mc_report_to_json(const McVerifyReport& report) {
  json doc;
  doc["version"] = kToolVersion;
  json config;
  config["model"] = model_config_json(report.model_json);
  config["n"] = report.steps;
  config["samples"] = report.samples;
  config["seed"] = report.seed;
  config["min_hits"] = report.min_hits;
  config["z_threshold"] = report.z_threshold;
  doc["config"] = std::move(config);

  json events = json::array();
  for (const McVerifyEvent& event : report.events) {
    json e;
    e["key"] = event.key;
    e["hits"] = event.hits;
    json cells = json::array();
    for (const McVerifyCell& cell : event.cells) {
      json c;
      c["i"] = cell.i + 1;
      c["j"] = cell.j + 1;
      c["exact"] = cell.exact;
      c["exact_value"] = cell.exact_value;
      c["mc"] = cell.estimate;
      c["stderr"] = cell.stderr_;
      c["z"] = std::isfinite(cell.z) ? json(cell.z) : json("inf");
      cells.push_back(std::move(c));
    }
    e["cells"] = std::move(cells);
    events.push_back(std::move(e));
  }
  doc["events"] = std::move(events);

  json summary;
  summary["qualifying_events"] = report.qualifying_events;
  summary["cells_total"] = report.cells_total;
  summary["cells_within"] = report.cells_within;
  summary["pass_fraction"] = report.pass_fraction;
  summary["no_qualifying_events"] = report.no_qualifying_events;
  doc["summary"] = std::move(summary);
  return doc.dump();
}

std::string mc_report_to_csv(const McVerifyReport& report) {
  std::string out = "event_key,hits,i,j,exact,exact_value,mc,stderr,z\n";
  for (const McVerifyEvent& event : report.events) {
    for (const McVerifyCell& cell : event.cells) {
      out += csv_escape(event.key) + ',' + std::to_string(event.hits) + ',' +
             std::to_string(cell.i + 1) + ',' + std::to_string(cell.j + 1) +
             ',' + cell.exact + ',' + format_double(cell.exact_value) + ',' +
             format_double(cell.estimate) + ',' + format_double(cell.stderr_) +
             ',' + (std::isfinite(cell.z) ? format_double(cell.z) : "inf") +
             '\n';
    }
  }
  return out;
}

std::string sweep_report_to_json(const ConvergenceReport& report) {
  json doc;
  doc["version"] = kToolVersion;
  json config;
  config["model"] = model_config_json(report.model_json);
  config["n_list"] = report.n_list;
  config["mu"] = report.mu;
  config["samples"] = report.samples;
  config["seed"] = report.seed;
  doc["config"] = std::move(config);

  json rows = json::array();
  for (const ConvergenceRow& row : report.rows) {
    json r;
    r["n"] = row.steps;
    r["typical_events"] = row.typical_event_count;
    r["posterior_prior_median"] = row.posterior_prior_median;
    r["posterior_prior_max"] = row.posterior_prior_max;
    r["raw_prior_median"] = row.raw_prior_median;
    r["raw_prior_max"] = row.raw_prior_max;
    r["posterior_frequency_median"] = row.posterior_frequency_median;
    r["posterior_frequency_max"] = row.posterior_frequency_max;
    r["count_ratio_max_gap"] = row.count_ratio_max_gap;
    r["second_position_all_admissible"] = row.second_position_all_admissible;
    r["perturbation_max"] = row.perturbation_max;
    r["perturbation_bound"] = row.perturbation_bound;
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  return doc.dump();
}

std::string sweep_report_to_csv(const ConvergenceReport& report) {
  std::string out =
      "n,typical_events,posterior_prior_median,posterior_prior_max,"
      "raw_prior_median,raw_prior_max,"
      "posterior_frequency_median,posterior_frequency_max,"
      "count_ratio_max_gap,second_position_all_admissible,"
      "perturbation_max,perturbation_bound\n";
  for (const ConvergenceRow& row : report.rows) {
    out += std::to_string(row.steps) + ',' +
           std::to_string(row.typical_event_count) + ',' +
           format_double(row.posterior_prior_median) + ',' +
           format_double(row.posterior_prior_max) + ',' +
           format_double(row.raw_prior_median) + ',' +
           format_double(row.raw_prior_max) + ',' +
           format_double(row.posterior_frequency_median) + ',' +
           format_double(row.posterior_frequency_max) + ',' +
           format_double(row.count_ratio_max_gap) + ',' +
           (row.second_position_all_admissible ? "true" : "false") + ',' +
           format_double(row.perturbation_max) + ',' +
           format_double(row.perturbation_bound) + '\n';
  }
  return out;
}

}  // namespace freqcond
