#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "trigapprox/rate_lab.hpp"
#include "trigapprox/sequence_classes.hpp"

namespace trigapprox::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitBandFailure = 1;
inline constexpr int kExitConfigError = 2;

struct GlobalOptions {
  std::optional<std::string> config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 1;
  bool quiet = false;
};

struct ClassifyOptions {
  std::vector<std::string> values;  // inline tokens; may hold several numbers each
  std::optional<std::string> input; // path, "-" for stdin
  bool row = false;
};

struct ModulusOptions {
  std::string function;
  double p = 2.0;
  std::vector<std::string> deltas;  // "pi/64", "pi", "0.1"; empty = default grid
  std::size_t grid_size = 4096;
  std::optional<std::size_t> shifts;
};

struct CheckMatrixOptions {
  std::string family;
  std::size_t n_first = 1;
  std::size_t n_last = 512;
  double alpha = 1.0;
  double p = 1.0;
  std::vector<double> beta_grid{0.25, 0.5, 1.0, 2.0};
  std::vector<double> eta_grid{0.25, 0.5, 1.0, 2.0};
};

struct KernelOptions {
  std::vector<std::string> families;
  std::vector<std::size_t> n_list;
  double tolerance = 1e-6;
  std::size_t initial_points = 64;
};

struct CellResult {
  std::string family;
  std::string function;
  double p = 0.0;
  std::optional<ErrorCurve> curve;
  std::optional<RateFit> fit;
  std::string error;  // nonempty when the cell or its fit failed
  double wall_ms = 0.0;
};

struct ClauseCell {
  std::string family;
  double p = 0.0;
  double alpha = 0.0;
  std::optional<ClauseVerdict> verdict;
  std::string note;
  double wall_ms = 0.0;
};

struct BandOutcome {
  std::size_t index = 0;
  bool pass = false;
  std::vector<std::string> details;
};

struct RunResult {
  std::vector<CellResult> cells;       // ordered family, function, p
  std::vector<ClauseCell> clause_cells;
  std::vector<BandOutcome> bands;
  std::optional<EmbeddingReport> embedding;
  std::uint64_t seed = 0;
  bool all_bands_pass() const;
};

/// Runs every cell; cells are independent and may run on `jobs` threads.
RunResult run_experiment(const ExperimentConfig& config, std::size_t jobs);

/// errors.csv, fits.json, clauses.json, embedding.json (if any), report.json.
void write_outputs(const ExperimentConfig& config, const RunResult& result,
                   const std::string& dir, std::size_t jobs);

/// Parses "pi", "pi/64", "3pi/4", or a plain real.
double parse_angle(const std::string& text);

int cmd_classify(const GlobalOptions& g, const ClassifyOptions& o, std::ostream& out,
                 std::ostream& err);
int cmd_rate(const GlobalOptions& g, std::ostream& out, std::ostream& err);
int cmd_modulus(const GlobalOptions& g, const ModulusOptions& o, std::ostream& out,
                std::ostream& err);
int cmd_check_matrix(const GlobalOptions& g, const CheckMatrixOptions& o, std::ostream& out,
                     std::ostream& err);
int cmd_kernel(const GlobalOptions& g, const KernelOptions& o, std::ostream& out,
               std::ostream& err);

} // namespace trigapprox::cli
