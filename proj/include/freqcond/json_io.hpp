#pragma once

#include <string>

#include "freqcond/asymptotics.hpp"
#include "freqcond/model.hpp"
#include "freqcond/posterior.hpp"
#include "freqcond/simulate.hpp"

namespace freqcond {

// Structured I/O. Documents:
//   model:     {"N": int, "P": [[...]], "pi0": [...]}
//              pi0 entries are numbers or exact {"num": int, "den": int}
//   frequency: {"N": int, "nu": [[...]]}
// State labels are 1-based in every document and in every emitted report.
// Exact values are serialized as decimal strings ("p" or "p/q"), never as
// floating point. Reports embed the tool version and the full configuration,
// and serialize byte-identically for identical inputs.

MarkovModel model_from_json(const std::string& text);
FrequencyMatrix frequency_from_json(const std::string& text);
IidCounts iid_counts_from_json(const std::string& text);

MarkovModel load_model(const std::string& path);
FrequencyMatrix load_frequency(const std::string& path);

std::string model_to_json(const MarkovModel& model);
std::string frequency_to_json(const FrequencyMatrix& freq);

std::string posterior_to_json(const PosteriorTable& table);

std::string mc_report_to_json(const McVerifyReport& report);
std::string mc_report_to_csv(const McVerifyReport& report);

std::string sweep_report_to_json(const ConvergenceReport& report);
std::string sweep_report_to_csv(const ConvergenceReport& report);

}  // namespace freqcond
