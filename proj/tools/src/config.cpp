#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "trigapprox/periodic.hpp"
#include "trigapprox/rate_lab.hpp"
#include "trigapprox/summability.hpp"

namespace trigapprox::cli {

namespace {

using nlohmann::json;

class Reader {
public:
  void fail(const std::string& path, const std::string& what) {
    errors_.push_back(path + ": " + what);
  }

  void only_keys(const json& obj, const std::string& path, std::set<std::string> allowed) {
    for (const auto& item : obj.items()) {
      if (!allowed.count(item.key())) {
        fail(path + "." + item.key(), "unknown key");
      }
    }
  }

  template <class T>
  std::optional<T> number(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) {
      return std::nullopt;
    }
    const auto& v = obj.at(key);
    if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer() || (v.is_number_integer() && v.get<long long>() < 0)) {
        fail(path + "." + key, "expected a nonnegative integer");
        return std::nullopt;
      }
      return v.get<T>();
    } else {
      if (!v.is_number()) {
        fail(path + "." + key, "expected a number");
        return std::nullopt;
      }
      return v.get<T>();
    }
  }

  std::vector<std::string> strings(const json& obj, const std::string& key,
                                   const std::string& path) {
    std::vector<std::string> out;
    if (!obj.contains(key)) {
      fail(path + "." + key, "missing");
      return out;
    }
    const auto& v = obj.at(key);
    if (v.is_string()) {
      out.push_back(v.get<std::string>());
    } else if (v.is_array()) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_string()) {
          fail(path + "." + key + "[" + std::to_string(i) + "]", "expected a string");
        } else {
          out.push_back(v[i].get<std::string>());
        }
      }
    } else {
      fail(path + "." + key, "expected a string or list of strings");
    }
    if (v.is_array() && v.empty()) {
      fail(path + "." + key, "must not be empty");
    }
    return out;
  }

  std::vector<double> reals(const json& v, const std::string& path) {
    std::vector<double> out;
    if (v.is_number()) {
      out.push_back(v.get<double>());
      return out;
    }
    if (!v.is_array() || v.empty()) {
      fail(path, "expected a number or nonempty list of numbers");
      return out;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) {
        fail(path + "[" + std::to_string(i) + "]", "expected a number");
      } else {
        out.push_back(v[i].get<double>());
      }
    }
    return out;
  }

  const std::vector<std::string>& errors() const { return errors_; }

private:
  std::vector<std::string> errors_;
};

void throw_if_any(const std::vector<std::string>& errors) {
  if (errors.empty()) {
    return;
  }
  std::string msg = "invalid config:";
  for (const auto& e : errors) {
    msg += "\n  " + e;
  }
  throw ConfigError(msg);
}

std::vector<std::size_t> read_n(Reader& r, const json& v) {
  std::vector<std::size_t> out;
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number_integer() || v[i].get<long long>() < 1) {
        r.fail("$.n[" + std::to_string(i) + "]", "expected a positive integer");
        return {};
      }
      out.push_back(v[i].get<std::size_t>());
    }
    if (out.empty()) {
      r.fail("$.n", "must not be empty");
    }
    for (std::size_t i = 1; i < out.size(); ++i) {
      if (out[i] <= out[i - 1]) {
        r.fail("$.n", "must be strictly increasing");
        break;
      }
    }
    return out;
  }
  if (!v.is_object()) {
    r.fail("$.n", "expected a list or {first, last, per_octave}");
    return {};
  }
  r.only_keys(v, "$.n", {"first", "last", "per_octave"});
  const auto first = r.number<std::size_t>(v, "first", "$.n");
  const auto last = r.number<std::size_t>(v, "last", "$.n");
  const auto per = r.number<std::size_t>(v, "per_octave", "$.n").value_or(2);
  if (!first || !last) {
    r.fail("$.n", "first and last are required");
    return {};
  }
  try {
    return geometric_n_list(*first, *last, per);
  } catch (const std::invalid_argument& e) {
    r.fail("$.n", e.what());
  }
  return {};
}

} // namespace

ExperimentConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("config must be a JSON object");
  }
  Reader r;
  r.only_keys(doc, "$", {"functions", "families", "p", "n", "grid_size", "seed", "rate_cut",
                         "clauses", "embedding", "bands"});
  ExperimentConfig cfg;
  cfg.functions = r.strings(doc, "functions", "$");
  cfg.families = r.strings(doc, "families", "$");
  if (doc.contains("p")) {
    cfg.p_values = r.reals(doc.at("p"), "$.p");
    for (double p : cfg.p_values) {
      if (!(p >= 1.0)) {
        r.fail("$.p", "every p must be >= 1");
        break;
      }
    }
  } else {
    r.fail("$.p", "missing");
  }
  if (doc.contains("n")) {
    cfg.n_list = read_n(r, doc.at("n"));
  } else {
    r.fail("$.n", "missing");
  }
  cfg.grid_size = r.number<std::size_t>(doc, "grid_size", "$").value_or(cfg.grid_size);
  cfg.seed = r.number<std::uint64_t>(doc, "seed", "$").value_or(cfg.seed);
  cfg.rate_cut = r.number<std::size_t>(doc, "rate_cut", "$").value_or(cfg.rate_cut);

  if (doc.contains("clauses")) {
    const auto& c = doc.at("clauses");
    if (!c.is_object()) {
      r.fail("$.clauses", "expected an object");
    } else {
      r.only_keys(c, "$.clauses", {"alpha", "n_first", "n_last", "beta_grid", "eta_grid"});
      ClauseSettings s;
      s.alpha = r.number<double>(c, "alpha", "$.clauses");
      s.n_first = r.number<std::size_t>(c, "n_first", "$.clauses").value_or(s.n_first);
      s.n_last = r.number<std::size_t>(c, "n_last", "$.clauses").value_or(s.n_last);
      if (c.contains("beta_grid")) {
        s.beta_grid = r.reals(c.at("beta_grid"), "$.clauses.beta_grid");
      }
      if (c.contains("eta_grid")) {
        s.eta_grid = r.reals(c.at("eta_grid"), "$.clauses.eta_grid");
      }
      if (s.alpha && !(*s.alpha > 0.0 && *s.alpha <= 1.0)) {
        r.fail("$.clauses.alpha", "must lie in (0, 1]");
      }
      if (s.n_first < 1 || s.n_last < 4 * s.n_first) {
        r.fail("$.clauses", "need 1 <= n_first and n_last >= 4 n_first");
      }
      cfg.clauses = s;
    }
  }
  if (doc.contains("embedding")) {
    const auto& e = doc.at("embedding");
    if (!e.is_object()) {
      r.fail("$.embedding", "expected an object");
    } else {
      r.only_keys(e, "$.embedding", {"samples", "max_len"});
      EmbeddingSettings s;
      s.samples = r.number<std::size_t>(e, "samples", "$.embedding").value_or(s.samples);
      s.max_len = r.number<std::size_t>(e, "max_len", "$.embedding").value_or(s.max_len);
      if (s.max_len < 1) {
        r.fail("$.embedding.max_len", "must be >= 1");
      }
      cfg.embedding = s;
    }
  }
  if (doc.contains("bands")) {
    const auto& bands = doc.at("bands");
    if (!bands.is_array()) {
      r.fail("$.bands", "expected a list");
    } else {
      for (std::size_t i = 0; i < bands.size(); ++i) {
        const std::string path = "$.bands[" + std::to_string(i) + "]";
        const auto& b = bands[i];
        if (!b.is_object()) {
          r.fail(path, "expected an object");
          continue;
        }
        r.only_keys(b, path, {"family", "function", "p", "slope_min", "slope_max", "max_error"});
        Band band;
        if (b.contains("family")) {
          band.family = b.at("family").is_string() ? b.at("family").get<std::string>() : "";
        }
        if (b.contains("function")) {
          band.function = b.at("function").is_string() ? b.at("function").get<std::string>() : "";
        }
        band.p = r.number<double>(b, "p", path);
        band.slope_min = r.number<double>(b, "slope_min", path);
        band.slope_max = r.number<double>(b, "slope_max", path);
        band.max_error = r.number<double>(b, "max_error", path);
        if (!band.slope_min && !band.slope_max && !band.max_error) {
          r.fail(path, "a band needs slope_min, slope_max or max_error");
        }
        cfg.bands.push_back(band);
      }
    }
  }
  throw_if_any(r.errors());
  cfg.canonical = doc.dump();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

void validate(const ExperimentConfig& config) {
  std::vector<std::string> errors;
  std::set<std::string> function_ids;
  std::set<std::string> family_ids;
  std::optional<Grid> grid;
  try {
    grid.emplace(config.grid_size);
  } catch (const std::invalid_argument& e) {
    errors.push_back(std::string("$.grid_size: ") + e.what());
  }
  for (std::size_t i = 0; i < config.functions.size(); ++i) {
    try {
      const auto spec = parse_zoo_spec(config.functions[i]);
      if (grid) {
        (void)zoo_function(spec, *grid);
      }
      function_ids.insert(to_string(spec));
    } catch (const std::exception& e) {
      errors.push_back("$.functions[" + std::to_string(i) + "]: " + e.what());
    }
  }
  for (std::size_t i = 0; i < config.families.size(); ++i) {
    try {
      const auto family = parse_family_spec(config.families[i]);
      family_ids.insert(family.id());
      const auto top = family.max_n();
      if (top && !config.n_list.empty() && *top < config.n_list.back()) {
        errors.push_back("$.families[" + std::to_string(i) + "]: rows only up to n = " +
                         std::to_string(*top));
      }
    } catch (const std::exception& e) {
      errors.push_back("$.families[" + std::to_string(i) + "]: " + e.what());
    }
  }
  if (!config.n_list.empty()) {
    const std::size_t need = 4 * (config.n_list.back() + 1);
    if (config.grid_size < need) {
      errors.push_back("$.grid_size: grid too small: N = " + std::to_string(config.grid_size) +
                       " but N >= 4(max n + 1) = " + std::to_string(need) + " is required");
    }
  }
  for (std::size_t i = 0; i < config.bands.size(); ++i) {
    const auto& b = config.bands[i];
    const std::string path = "$.bands[" + std::to_string(i) + "]";
    try {
      if (!b.family.empty() && !family_ids.count(parse_family_spec(b.family).id())) {
        errors.push_back(path + ".family: not among the configured families");
      }
      if (!b.function.empty() && !function_ids.count(to_string(parse_zoo_spec(b.function)))) {
        errors.push_back(path + ".function: not among the configured functions");
      }
    } catch (const std::exception& e) {
      errors.push_back(path + ": " + e.what());
    }
  }
  throw_if_any(errors);
}

} // namespace trigapprox::cli
