#pragma once

// Argument parsing and JSON serialization for the qlan tool.

#include <string>
#include <vector>

#include "json.hpp"
#include "qlan/experiments.hpp"

namespace qlan::cli {

using Json = nlohmann::ordered_json;

/// "0.5+0.3i", "-0.2i", "1", "1e-3-2i".
Complex parse_complex(const std::string& text);
/// Comma separated complex numbers.
std::vector<Complex> parse_complex_list(const std::string& text);
std::string format_complex(Complex z);

std::vector<double> default_mu(int d);
std::vector<int> default_n_list(const std::string& command);

Json config_json(const ExperimentConfig& cfg);
Json converge_json(const ExperimentConfig& cfg, const ConvergeResult& r);
Json verify_json(const ExperimentConfig& cfg, const VerifyReport& r);
Json decompose_json(const ExperimentConfig& cfg, const Decomposition& dec);
/// name,key,value rows.
std::string verify_csv(const VerifyReport& r);

}  // namespace qlan::cli
