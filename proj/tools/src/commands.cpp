#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "trigapprox/modulus.hpp"
#include "trigapprox/periodic.hpp"
#include "trigapprox/summability.hpp"

namespace trigapprox::cli {

namespace {

using ojson = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr const char* kVersion = "0.1.0";

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

template <class Body>
void parallel_for(std::size_t count, std::size_t jobs, Body body) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      body(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> workers;
  const std::size_t threads = std::min(jobs, count);
  for (std::size_t t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        body(i);
      }
    });
  }
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

std::string short_num(double v) {
  std::ostringstream out;
  out << std::setprecision(6) << v;
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  f << text;
}

std::filesystem::path prepare_dir(const std::optional<std::string>& out) {
  std::filesystem::path dir = out.value_or(".");
  std::filesystem::create_directories(dir);
  return dir;
}

bool claimed_alpha(const SampledPeriodicFunction& f, double p, double& alpha) {
  const auto& cls = f.claimed_class();
  if (!cls || (cls->p && *cls->p != p)) {
    return false;
  }
  alpha = std::min(cls->alpha, 1.0);
  return true;
}

bool band_matches(const Band& b, const CellResult& c) {
  if (!b.family.empty() && parse_family_spec(b.family).id() != c.family) {
    return false;
  }
  if (!b.function.empty() && to_string(parse_zoo_spec(b.function)) != c.function) {
    return false;
  }
  return !b.p || *b.p == c.p;
}

BandOutcome evaluate_band(std::size_t index, const Band& band,
                          const std::vector<CellResult>& cells) {
  BandOutcome outcome;
  outcome.index = index;
  outcome.pass = true;
  std::size_t matched = 0;
  for (const auto& c : cells) {
    if (!band_matches(band, c)) {
      continue;
    }
    ++matched;
    const std::string where = c.family + " | " + c.function + " | p=" + short_num(c.p);
    if (band.slope_min || band.slope_max) {
      if (!c.fit) {
        outcome.pass = false;
        outcome.details.push_back(where + ": no rate fit (" + c.error + ")");
      } else {
        const double s = c.fit->slope;
        const bool ok = (!band.slope_min || s >= *band.slope_min) &&
                        (!band.slope_max || s <= *band.slope_max);
        outcome.pass = outcome.pass && ok;
        outcome.details.push_back(where + ": slope " + short_num(s) + (ok ? " within" : " outside") +
                                  " [" + (band.slope_min ? short_num(*band.slope_min) : "-inf") +
                                  ", " + (band.slope_max ? short_num(*band.slope_max) : "inf") +
                                  "]");
      }
    }
    if (band.max_error) {
      if (!c.curve) {
        outcome.pass = false;
        outcome.details.push_back(where + ": no error curve (" + c.error + ")");
      } else {
        const double worst = *std::max_element(c.curve->error.begin(), c.curve->error.end());
        const bool ok = worst <= *band.max_error;
        outcome.pass = outcome.pass && ok;
        outcome.details.push_back(where + ": max error " + short_num(worst) +
                                  (ok ? " <= " : " > ") + short_num(*band.max_error));
      }
    }
  }
  if (matched == 0) {
    outcome.pass = false;
    outcome.details.push_back("band matches no cell");
  }
  return outcome;
}

ojson fit_entry(const CellResult& c) {
  ojson e;
  e["matrix"] = c.family;
  e["function"] = c.function;
  e["p"] = c.p;
  if (c.fit) {
    e["slope"] = c.fit->slope;
    e["intercept"] = c.fit->intercept;
    e["r2"] = c.fit->r2;
    e["points"] = c.fit->points;
    e["diagnostics"] = c.fit->diagnostics;
  } else {
    e["slope"] = nullptr;
    e["intercept"] = nullptr;
    e["r2"] = nullptr;
    e["points"] = 0;
    e["diagnostics"] = ojson::array({c.error});
  }
  return e;
}

std::vector<std::string> split_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) {
        out.push_back(cur);
        cur.clear();
      }
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) {
    out.push_back(cur);
  }
  return out;
}

template <class Fn>
int guarded(std::ostream& err, Fn fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitConfigError;
}

} // namespace

bool RunResult::all_bands_pass() const {
  return std::all_of(bands.begin(), bands.end(), [](const BandOutcome& b) { return b.pass; });
}

RunResult run_experiment(const ExperimentConfig& config, std::size_t jobs) {
  const Grid grid(config.grid_size);
  std::vector<SampledPeriodicFunction> functions;
  for (const auto& spec : config.functions) {
    functions.push_back(zoo_function(parse_zoo_spec(spec), grid));
  }
  std::vector<MatrixFamily> families;
  for (const auto& spec : config.families) {
    families.push_back(parse_family_spec(spec));
  }

  RunResult result;
  result.seed = config.seed;
  struct CellIndex {
    std::size_t family, function, p;
  };
  std::vector<CellIndex> index;
  for (std::size_t a = 0; a < families.size(); ++a) {
    for (std::size_t b = 0; b < functions.size(); ++b) {
      for (std::size_t c = 0; c < config.p_values.size(); ++c) {
        index.push_back({a, b, c});
      }
    }
  }
  result.cells.resize(index.size());
  parallel_for(index.size(), jobs, [&](std::size_t i) {
    const auto start = Clock::now();
    const auto& family = families[index[i].family];
    const auto& f = functions[index[i].function];
    CellResult& cell = result.cells[i];
    cell.family = family.id();
    cell.function = f.label();
    cell.p = config.p_values[index[i].p];
    try {
      cell.curve = error_curve(family, f, cell.p, config.n_list);
      cell.fit = loglog_fit(*cell.curve, config.rate_cut);
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
    cell.wall_ms = elapsed_ms(start);
  });

  if (config.clauses) {
    const auto& s = *config.clauses;
    for (const auto& family : families) {
      for (double p : config.p_values) {
        std::set<double> alphas;
        if (s.alpha) {
          alphas.insert(*s.alpha);
        } else {
          for (const auto& f : functions) {
            double a = 0.0;
            if (claimed_alpha(f, p, a)) {
              alphas.insert(a);
            }
          }
        }
        if (alphas.empty()) {
          ClauseCell cell;
          cell.family = family.id();
          cell.p = p;
          cell.note = "no configured function claims a Lipschitz class at this p; set clauses.alpha";
          result.clause_cells.push_back(cell);
        }
        for (double a : alphas) {
          ClauseCell cell;
          cell.family = family.id();
          cell.p = p;
          cell.alpha = a;
          result.clause_cells.push_back(cell);
        }
      }
    }
    ClauseCheckOptions opt;
    opt.n_first = s.n_first;
    opt.n_last = s.n_last;
    opt.beta_grid = s.beta_grid;
    opt.eta_grid = s.eta_grid;
    parallel_for(result.clause_cells.size(), jobs, [&](std::size_t i) {
      auto& cell = result.clause_cells[i];
      if (!cell.note.empty()) {
        return;
      }
      const auto start = Clock::now();
      try {
        cell.verdict = clause_check(parse_family_spec(cell.family), cell.p, cell.alpha, opt);
      } catch (const std::exception& e) {
        cell.note = e.what();
      }
      cell.wall_ms = elapsed_ms(start);
    });
  }

  if (config.embedding) {
    EmbeddingOptions opt;
    opt.sample_count = config.embedding->samples;
    opt.max_len = config.embedding->max_len;
    opt.seed = config.seed;
    result.embedding = embedding_harness(opt);
  }

  for (std::size_t i = 0; i < config.bands.size(); ++i) {
    result.bands.push_back(evaluate_band(i, config.bands[i], result.cells));
  }
  return result;
}

void write_outputs(const ExperimentConfig& config, const RunResult& result,
                   const std::string& dir, std::size_t jobs) {
  const std::filesystem::path root(dir);
  std::filesystem::create_directories(root);

  std::vector<ErrorCurve> curves;
  for (const auto& c : result.cells) {
    if (c.curve) {
      curves.push_back(*c.curve);
    }
  }
  write_file(root / "errors.csv", to_csv(curves));

  ojson fits = ojson::array();
  for (const auto& c : result.cells) {
    fits.push_back(fit_entry(c));
  }
  write_file(root / "fits.json", fits.dump(2) + "\n");

  if (config.clauses) {
    ojson clauses = ojson::array();
    for (const auto& c : result.clause_cells) {
      if (c.verdict) {
        clauses.push_back(ojson::parse(to_json(*c.verdict)));
      } else {
        clauses.push_back({{"family", c.family}, {"p", c.p}, {"error", c.note}});
      }
    }
    write_file(root / "clauses.json", clauses.dump(2) + "\n");
  }

  ojson embedding;
  if (result.embedding) {
    const auto& e = *result.embedding;
    embedding["seed"] = result.seed;
    embedding["checks"] = e.checks;
    embedding["violation_count"] = e.violations.size();
    embedding["worst_constant_ratio"] = e.worst_constant_ratio;
    ojson list = ojson::array();
    for (const auto& v : e.violations) {
      list.push_back({{"relation", v.relation}, {"sample", v.sample}, {"detail", v.detail}});
    }
    embedding["violations"] = std::move(list);
    write_file(root / "embedding.json", embedding.dump(2) + "\n");
  }

  ojson report;
  report["tool"] = "trigapprox";
  report["version"] = kVersion;
  report["compiler"] = __VERSION__;
  report["config_hash"] = fnv1a_hex(config.canonical);
  report["seed"] = result.seed;
  report["jobs"] = jobs;
  report["grid_size"] = config.grid_size;
  report["status"] = result.all_bands_pass() ? "pass" : "band_failure";
  ojson cells = ojson::array();
  for (const auto& c : result.cells) {
    ojson e;
    e["matrix"] = c.family;
    e["function"] = c.function;
    e["p"] = c.p;
    e["slope"] = c.fit ? ojson(c.fit->slope) : ojson(nullptr);
    e["failed"] = !c.error.empty();
    if (!c.error.empty()) {
      e["error"] = c.error;
    }
    e["wall_ms"] = c.wall_ms;
    cells.push_back(std::move(e));
  }
  report["cells"] = std::move(cells);
  ojson clause_cells = ojson::array();
  for (const auto& c : result.clause_cells) {
    ojson e;
    e["matrix"] = c.family;
    e["p"] = c.p;
    e["alpha"] = c.alpha;
    if (c.verdict) {
      ojson holding = ojson::array();
      for (const auto& r : c.verdict->clauses) {
        if (r.holds) {
          holding.push_back(r.clause);
        }
      }
      e["holding"] = std::move(holding);
    } else {
      e["error"] = c.note;
    }
    e["wall_ms"] = c.wall_ms;
    clause_cells.push_back(std::move(e));
  }
  report["clause_checks"] = std::move(clause_cells);
  ojson bands = ojson::array();
  for (const auto& b : result.bands) {
    bands.push_back({{"index", b.index}, {"pass", b.pass}, {"details", b.details}});
  }
  report["bands"] = std::move(bands);
  if (result.embedding) {
    report["embedding"] = {{"checks", result.embedding->checks},
                           {"violation_count", result.embedding->violations.size()}};
  }
  write_file(root / "report.json", report.dump(2) + "\n");
}

double parse_angle(const std::string& raw) {
  std::string text;
  for (char ch : raw) {
    if (!std::isspace(static_cast<unsigned char>(ch))) {
      text += ch;
    }
  }
  const auto parse_real = [&](std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw std::invalid_argument("cannot parse angle '" + raw + "'");
    }
    return v;
  };
  const auto pos = text.find("pi");
  if (pos == std::string::npos) {
    return parse_real(text);
  }
  double factor = 1.0;
  if (pos > 0) {
    std::string_view head(text.data(), pos);
    if (head.back() == '*') {
      head.remove_suffix(1);
    }
    factor = parse_real(head);
  }
  double divisor = 1.0;
  std::string_view rest(text.data() + pos + 2, text.size() - pos - 2);
  if (!rest.empty()) {
    if (rest.front() != '/') {
      throw std::invalid_argument("cannot parse angle '" + raw + "'");
    }
    rest.remove_prefix(1);
    divisor = parse_real(rest);
  }
  if (divisor == 0.0) {
    throw std::invalid_argument("angle '" + raw + "' divides by zero");
  }
  return factor * kPi / divisor;
}

int cmd_classify(const GlobalOptions& g, const ClassifyOptions& o, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    const auto semantics = o.row ? Semantics::row : Semantics::free;
    std::optional<FiniteSequence> seq;
    if (o.input) {
      if (!o.values.empty()) {
        throw std::invalid_argument("give either --input or inline values, not both");
      }
      if (*o.input == "-") {
        seq = parse_sequence(std::cin, semantics);
      } else {
        std::ifstream in(*o.input);
        if (!in) {
          throw std::runtime_error("cannot open '" + *o.input + "'");
        }
        seq = parse_sequence(in, semantics);
      }
    } else {
      std::string joined;
      for (const auto& v : o.values) {
        joined += v + ' ';
      }
      std::istringstream in(joined);
      seq = parse_sequence(in, semantics);
    }
    const std::string doc = to_json(classify(*seq)) + "\n";
    out << doc;
    if (g.out) {
      write_file(prepare_dir(g.out) / "classify.json", doc);
    }
    return kExitOk;
  });
}

int cmd_rate(const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  ExperimentConfig config;
  const int status = guarded(err, [&] {
    if (!g.config) {
      throw ConfigError("rate needs --config PATH");
    }
    config = load_config(*g.config);
    if (g.seed) {
      config.seed = *g.seed;
    }
    validate(config);
    return kExitOk;
  });
  if (status != kExitOk) {
    return status;
  }
  const auto result = run_experiment(config, g.jobs);
  const auto dir = prepare_dir(g.out);
  write_outputs(config, result, dir.string(), g.jobs);
  if (!g.quiet) {
    for (const auto& c : result.cells) {
      out << c.family << "  " << c.function << "  p=" << short_num(c.p) << "  ";
      if (c.fit) {
        out << "slope " << short_num(c.fit->slope) << "  r2 " << short_num(c.fit->r2);
      } else {
        out << (c.curve ? "no rate fit: " : "failed: ") << c.error;
      }
      out << '\n';
    }
    for (const auto& b : result.bands) {
      out << "band " << b.index << ": " << (b.pass ? "PASS" : "FAIL") << '\n';
      for (const auto& d : b.details) {
        out << "  " << d << '\n';
      }
    }
    out << "outputs written to " << dir.string() << '\n';
  }
  return result.all_bands_pass() ? kExitOk : kExitBandFailure;
}

int cmd_modulus(const GlobalOptions& g, const ModulusOptions& o, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    const Grid grid(o.grid_size);
    const auto f = zoo_function(parse_zoo_spec(o.function), grid);
    std::vector<double> deltas;
    if (o.deltas.empty()) {
      deltas = default_delta_grid();
    } else {
      for (const auto& item : o.deltas) {
        for (const auto& tok : split_tokens(item)) {
          deltas.push_back(parse_angle(tok));
        }
      }
    }
    const auto curve = modulus_curve(f, o.p, deltas, o.shifts.value_or(kAllShifts));
    LipFit fit;
    try {
      fit = lip_exponent_fit(curve);
    } catch (const std::invalid_argument& e) {
      fit.alpha_hat = std::numeric_limits<double>::quiet_NaN();
      fit.r2 = std::numeric_limits<double>::quiet_NaN();
      fit.delta_min = deltas.front();
      fit.delta_max = deltas.back();
      fit.diagnostic = e.what();
    }
    const auto dir = prepare_dir(g.out);
    write_file(dir / "modulus.csv", to_csv(curve));
    write_file(dir / "lipfit.json", to_json(fit) + "\n");
    if (!g.quiet) {
      out << to_csv(curve) << to_json(fit) << '\n';
    }
    return kExitOk;
  });
}

int cmd_check_matrix(const GlobalOptions& g, const CheckMatrixOptions& o, std::ostream& out,
                     std::ostream& err) {
  return guarded(err, [&] {
    ClauseCheckOptions opt;
    opt.n_first = o.n_first;
    opt.n_last = o.n_last;
    opt.beta_grid = o.beta_grid;
    opt.eta_grid = o.eta_grid;
    const auto verdict = clause_check(parse_family_spec(o.family), o.p, o.alpha, opt);
    const std::string doc = to_json(verdict) + "\n";
    out << doc;
    if (g.out) {
      write_file(prepare_dir(g.out) / "clauses.json", doc);
    }
    return kExitOk;
  });
}

int cmd_kernel(const GlobalOptions& g, const KernelOptions& o, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    std::vector<MatrixFamily> families;
    for (const auto& spec : o.families) {
      families.push_back(parse_family_spec(spec));
    }
    KernelQuadrature quad;
    quad.tolerance = o.tolerance;
    quad.initial_points = o.initial_points;
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t a = 0; a < families.size(); ++a) {
      for (std::size_t n : o.n_list) {
        cells.emplace_back(a, n);
      }
    }
    std::vector<KernelSplit> splits(cells.size());
    std::vector<std::string> failures(cells.size());
    parallel_for(cells.size(), g.jobs, [&](std::size_t i) {
      try {
        splits[i] = kernel_l1_split(families[cells[i].first].row(cells[i].second), quad);
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
    });
    for (const auto& f : failures) {
      if (!f.empty()) {
        throw std::invalid_argument(f);
      }
    }
    std::ostringstream csv;
    csv << "matrix,n,near,far,total,near_points,far_points,converged\n" << std::setprecision(17);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const auto& s = splits[i];
      std::string id = families[cells[i].first].id();
      if (id.find(',') != std::string::npos) {
        id = "\"" + id + "\"";
      }
      csv << id << ',' << cells[i].second << ',' << s.near << ',' << s.far << ',' << s.total()
          << ',' << s.near_points << ',' << s.far_points << ',' << (s.converged ? 1 : 0) << '\n';
    }
    if (g.out) {
      write_file(prepare_dir(g.out) / "kernel.csv", csv.str());
    }
    if (!g.quiet) {
      out << csv.str();
    }
    return kExitOk;
  });
}

} // namespace trigapprox::cli
