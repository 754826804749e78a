#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trigapprox::cli {

/// Raised for malformed or inconsistent configs; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Acceptance band. Empty selectors match every cell.
struct Band {
  std::string family;
  std::string function;
  std::optional<double> p;
  std::optional<double> slope_min;
  std::optional<double> slope_max;
  std::optional<double> max_error;
};

struct ClauseSettings {
  std::optional<double> alpha;  // default: claimed exponent of each function
  std::size_t n_first = 1;
  std::size_t n_last = 512;
  std::vector<double> beta_grid{0.25, 0.5, 1.0, 2.0};
  std::vector<double> eta_grid{0.25, 0.5, 1.0, 2.0};
};

struct EmbeddingSettings {
  std::size_t samples = 1000;
  std::size_t max_len = 64;
};

struct ExperimentConfig {
  std::vector<std::string> functions;
  std::vector<std::string> families;
  std::vector<double> p_values;
  std::vector<std::size_t> n_list;
  std::size_t grid_size = 4096;
  std::uint64_t seed = 1;
  std::size_t rate_cut = 16;
  std::optional<ClauseSettings> clauses;
  std::optional<EmbeddingSettings> embedding;
  std::vector<Band> bands;
  std::string canonical;  // normalized JSON text, hashed into report.json
};

/// JSON document; unknown keys are rejected with their path.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Resolves every spec and checks N >= 4(max n + 1). Throws ConfigError.
void validate(const ExperimentConfig& config);

} // namespace trigapprox::cli
