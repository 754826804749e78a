#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace trigapprox::cli;

  CLI::App app{"trigapprox: summability means, approximation rates and sequence classes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "trigapprox 0.1.0");

  GlobalOptions g;
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "Experiment config (JSON)");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--seed", seed, "Override the config seed");
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--quiet", g.quiet, "Suppress summaries on stdout");

  ClassifyOptions classify;
  auto* c = app.add_subcommand("classify", "Twelve-class report for a nonnegative sequence");
  c->add_option("values", classify.values, "Inline sequence values");
  c->add_option("--input", classify.input, "Read the sequence from a file ('-' for stdin)");
  c->add_flag("--row", classify.row, "Treat the data as a matrix row (terminal zero appended)");
  c->fallthrough();

  auto* r = app.add_subcommand("rate", "Error curves, rate fits and clause checks from a config");
  r->fallthrough();

  ModulusOptions modulus;
  auto* m = app.add_subcommand("modulus", "Integral modulus of continuity and Lipschitz fit");
  m->add_option("function", modulus.function, "Function spec, e.g. weierstrass(0.5,8)")
      ->required();
  m->add_option("--p", modulus.p, "Norm exponent")->check(CLI::Range(1.0, 1e9));
  m->add_option("--delta", modulus.deltas, "Deltas (pi/64, 3pi/4, 0.1); comma lists allowed");
  m->add_option("--grid-size", modulus.grid_size, "Grid size N");
  m->add_option("--shifts", modulus.shifts, "Cap on shifts examined per delta");
  m->fallthrough();

  CheckMatrixOptions check;
  auto* k = app.add_subcommand("check-matrix", "Clause verdicts for a summability family");
  k->add_option("family", check.family, "Family spec, e.g. norlund(k+1)")->required();
  k->add_option("--n-first", check.n_first, "First n checked");
  k->add_option("--n-last", check.n_last, "Last n checked");
  k->add_option("--alpha", check.alpha, "Lipschitz exponent alpha in (0, 1]");
  k->add_option("--p", check.p, "Norm exponent p >= 1");
  k->add_option("--beta", check.beta_grid, "Beta search grid");
  k->add_option("--eta", check.eta_grid, "Eta search grid");
  k->fallthrough();

  KernelOptions kernel;
  kernel.families = {"norlund(k+1)", "identity"};
  kernel.n_list = {8, 16, 32, 64, 128, 256, 512};
  auto* q = app.add_subcommand("kernel", "L1 mass of the kernel split at pi/n");
  q->add_option("--family", kernel.families, "Family specs");
  q->add_option("--n", kernel.n_list, "Row indices");
  q->add_option("--tolerance", kernel.tolerance, "Refinement tolerance");
  q->add_option("--initial-points", kernel.initial_points, "Initial midpoint panels");
  q->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  if (!config_path.empty()) {
    g.config = config_path;
  }
  if (!out_dir.empty()) {
    g.out = out_dir;
  }
  if (app.count("--seed") > 0) {
    g.seed = seed;
  }

  if (*c) {
    return cmd_classify(g, classify, std::cout, std::cerr);
  }
  if (*r) {
    return cmd_rate(g, std::cout, std::cerr);
  }
  if (*m) {
    return cmd_modulus(g, modulus, std::cout, std::cerr);
  }
  if (*k) {
    return cmd_check_matrix(g, check, std::cout, std::cerr);
  }
  return cmd_kernel(g, kernel, std::cout, std::cerr);
}
