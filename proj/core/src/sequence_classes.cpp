#include "trigapprox/sequence_classes.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "spec_parse.hpp"

namespace trigapprox {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ClassConstant infinite(IndexPair witness) { return {kInf, witness}; }

} // namespace

bool ClassConstant::finite() const noexcept { return std::isfinite(value); }

FiniteSequence::FiniteSequence(std::vector<double> values, Semantics semantics)
    : values_(std::move(values)), semantics_(semantics) {
  if (values_.empty()) {
    throw std::invalid_argument("sequence must have at least one term");
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) {
      throw std::invalid_argument("sequence term " + std::to_string(k) + " is not finite");
    }
    if (values_[k] < 0.0) {
      throw std::invalid_argument("sequence term " + std::to_string(k) + " is negative");
    }
  }
}

FiniteSequence parse_sequence(std::istream& in, Semantics semantics) {
  std::vector<double> values;
  std::string token;
  while (in >> token) {
    values.push_back(detail::parse_real(token));
  }
  return FiniteSequence(std::move(values), semantics);
}

FiniteSequence mean_transform(const FiniteSequence& c) {
  std::vector<double> means(c.size());
  double prefix = 0.0;
  for (std::size_t m = 0; m < c.size(); ++m) {
    prefix += c[m];
    means[m] = prefix / static_cast<double>(m + 1);
  }
  return FiniteSequence(std::move(means), c.semantics());
}

MonotoneVerdict monotone_test(const FiniteSequence& c) {
  MonotoneVerdict v;
  for (std::size_t k = 0; k + 1 < c.size(); ++k) {
    if (c[k] < c[k + 1] && v.nonincreasing) {
      v.nonincreasing = false;
      v.nonincreasing_witness = IndexPair{k, k + 1};
    }
    if (c[k] > c[k + 1] && v.nondecreasing) {
      v.nondecreasing = false;
      v.nondecreasing_witness = IndexPair{k, k + 1};
    }
  }
  return v;
}

ClassConstant almost_monotone_constant(const FiniteSequence& c, Direction direction) {
  const std::size_t len = c.size();
  ClassConstant best{1.0, std::nullopt};
  if (direction == Direction::decreasing) {
    // For each m, the worst n >= m is the suffix maximum.
    double smax = 0.0;
    std::size_t smax_at = len - 1;
    for (std::size_t m = len; m-- > 0;) {
      if (c[m] >= smax) {
        smax = c[m];
        smax_at = m;
      }
      if (c[m] > 0.0) {
        const double ratio = smax / c[m];
        if (ratio > best.value) {
          best = {ratio, IndexPair{smax_at, m}};
        }
      } else if (smax > 0.0) {
        return infinite({smax_at, m});
      }
    }
    return best;
  }
  // increasing: for each n, the worst m <= n is the prefix maximum.
  double pmax = 0.0;
  std::size_t pmax_at = 0;
  for (std::size_t n = 0; n < len; ++n) {
    if (c[n] > pmax) {
      pmax = c[n];
      pmax_at = n;
    }
    if (c[n] > 0.0) {
      const double ratio = pmax / c[n];
      if (ratio > best.value) {
        best = {ratio, IndexPair{n, pmax_at}};
      }
    } else if (pmax > 0.0) {
      return infinite({n, pmax_at});
    }
  }
  return best;
}

ClassConstant bounded_variation_constant(const FiniteSequence& c, VariationSide side) {
  const std::size_t len = c.size();
  const bool terminal_zero = c.semantics() == Semantics::row;
  // diff[k] = |c_k - c_{k+1}|, with c_L = 0 under row semantics.
  const std::size_t diff_count = terminal_zero ? len : len - 1;
  std::vector<double> diff(diff_count);
  for (std::size_t k = 0; k < diff_count; ++k) {
    const double next = (k + 1 < len) ? c[k + 1] : 0.0;
    diff[k] = std::abs(c[k] - next);
  }

  ClassConstant best{0.0, std::nullopt};
  const auto consider = [&](std::size_t m, double variation, std::size_t last) -> bool {
    if (c[m] > 0.0) {
      const double ratio = variation / c[m];
      if (ratio > best.value || !best.witness) {
        best = {ratio, IndexPair{m, last}};
      }
    } else if (variation > 0.0) {
      best = infinite({m, last});
      return false;
    }
    return true;
  };

  if (side == VariationSide::rest) {
    double acc = 0.0;
    for (std::size_t m = len; m-- > 0;) {
      if (m < diff_count) {
        acc += diff[m];
      }
      const std::size_t last = diff_count == 0 ? m : diff_count - 1;
      if (!consider(m, acc, last)) {
        return best;
      }
    }
    return best;
  }

  // head side: m runs up to the last nonzero term.
  std::size_t last_nonzero = len;
  for (std::size_t k = len; k-- > 0;) {
    if (c[k] > 0.0) {
      last_nonzero = k;
      break;
    }
  }
  if (last_nonzero == len) {
    return best;
  }
  double acc = 0.0;
  for (std::size_t m = 0; m <= last_nonzero; ++m) {
    if (m > 0) {
      acc += diff[m - 1];
    }
    if (!consider(m, acc, m == 0 ? 0 : m - 1)) {
      return best;
    }
  }
  return best;
}

std::string_view class_name(SequenceClass cls) {
  static constexpr std::array<std::string_view, kSequenceClassCount> names = {
      "NIS", "NDS", "AMDS", "AMIS", "RBVS", "HBVS",
      "NIMS", "NDMS", "AMDMS", "AMIMS", "RBVMS", "HBVMS"};
  return names.at(static_cast<std::size_t>(cls));
}

namespace {

void fill_base(const FiniteSequence& c, std::size_t offset,
               std::array<ClassVerdict, kSequenceClassCount>& out) {
  const auto put = [&](std::size_t slot, bool member, double constant,
                       std::optional<IndexPair> witness) {
    auto& v = out[offset + slot];
    v.cls = static_cast<SequenceClass>(offset + slot);
    v.member = member;
    v.constant = constant;
    v.witness = witness;
  };
  const auto mono = monotone_test(c);
  put(0, mono.nonincreasing, mono.nonincreasing ? 1.0 : kInf, mono.nonincreasing_witness);
  put(1, mono.nondecreasing, mono.nondecreasing ? 1.0 : kInf, mono.nondecreasing_witness);

  const auto put_constant = [&](std::size_t slot, const ClassConstant& k) {
    put(slot, k.finite(), k.value, k.finite() ? std::nullopt : k.witness);
  };
  put_constant(2, almost_monotone_constant(c, Direction::decreasing));
  put_constant(3, almost_monotone_constant(c, Direction::increasing));
  put_constant(4, bounded_variation_constant(c, VariationSide::rest));
  put_constant(5, bounded_variation_constant(c, VariationSide::head));
}

} // namespace

ClassReport classify(const FiniteSequence& c) {
  ClassReport report;
  report.length = c.size();
  report.semantics = c.semantics();
  fill_base(c, 0, report.verdicts);
  fill_base(mean_transform(c), 6, report.verdicts);
  return report;
}

std::string to_json(const ClassReport& report) {
  nlohmann::ordered_json doc;
  doc["length"] = report.length;
  doc["semantics"] = report.semantics == Semantics::row ? "row" : "free";
  auto classes = nlohmann::ordered_json::array();
  for (const auto& v : report.verdicts) {
    nlohmann::ordered_json entry;
    entry["class"] = std::string(class_name(v.cls));
    entry["member"] = v.member;
    if (std::isfinite(v.constant)) {
      entry["K"] = v.constant;
    } else {
      entry["K"] = nullptr;
    }
    if (v.witness) {
      entry["witness"] = {v.witness->first, v.witness->second};
    } else {
      entry["witness"] = nullptr;
    }
    classes.push_back(std::move(entry));
  }
  doc["classes"] = std::move(classes);
  return doc.dump(2);
}

namespace sampling {

namespace {

std::mt19937_64 engine(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  return std::mt19937_64(seq);
}

std::vector<double> uniform_values(std::mt19937_64& rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len_dist(1, std::max<std::size_t>(1, max_len));
  std::uniform_real_distribution<double> value(0.0, 1.0);
  std::vector<double> v(len_dist(rng));
  for (double& x : v) {
    x = value(rng);
  }
  return v;
}

// Zeroes a random stretch at the end (or start) one time in four so that
// zero-handling paths get exercised.
void maybe_zero(std::mt19937_64& rng, std::vector<double>& v, bool at_end) {
  std::uniform_int_distribution<int> coin(0, 3);
  if (coin(rng) != 0 || v.size() < 2) {
    return;
  }
  std::uniform_int_distribution<std::size_t> count(1, v.size() - 1);
  const std::size_t z = count(rng);
  if (at_end) {
    std::fill(v.end() - static_cast<std::ptrdiff_t>(z), v.end(), 0.0);
  } else {
    std::fill(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(z), 0.0);
  }
}

void apply_noise(std::mt19937_64& rng, std::vector<double>& v, double max_k) {
  std::uniform_real_distribution<double> k_dist(1.0, std::max(1.0, max_k));
  const double top = std::sqrt(k_dist(rng));
  std::uniform_real_distribution<double> noise(1.0, top);
  for (double& x : v) {
    x *= noise(rng);
  }
}

} // namespace

std::vector<double> nonincreasing(std::uint64_t seed, std::size_t max_len) {
  auto rng = engine(seed);
  auto v = uniform_values(rng, max_len);
  std::sort(v.begin(), v.end(), std::greater<>());
  maybe_zero(rng, v, true);
  return v;
}

std::vector<double> nondecreasing(std::uint64_t seed, std::size_t max_len) {
  auto rng = engine(seed);
  auto v = uniform_values(rng, max_len);
  std::sort(v.begin(), v.end());
  maybe_zero(rng, v, false);
  return v;
}

std::vector<double> almost_decreasing(std::uint64_t seed, std::size_t max_len, double max_k) {
  auto rng = engine(seed);
  auto v = uniform_values(rng, max_len);
  std::sort(v.begin(), v.end(), std::greater<>());
  maybe_zero(rng, v, true);
  apply_noise(rng, v, max_k);
  return v;
}

std::vector<double> almost_increasing(std::uint64_t seed, std::size_t max_len, double max_k) {
  auto rng = engine(seed);
  auto v = uniform_values(rng, max_len);
  std::sort(v.begin(), v.end());
  maybe_zero(rng, v, false);
  apply_noise(rng, v, max_k);
  return v;
}

} // namespace sampling

namespace {

std::string describe(const ClassVerdict& v) {
  std::ostringstream out;
  out << class_name(v.cls) << " member=" << (v.member ? "true" : "false") << " K=" << v.constant;
  return out.str();
}

// Relative slack for rounding in the K^2 comparison.
constexpr double kBoundSlack = 1e-12;

} // namespace

EmbeddingReport embedding_harness(const EmbeddingOptions& options) {
  if (options.sample_count == 0) {
    throw std::invalid_argument("embedding_harness: sample_count must be >= 1");
  }
  if (options.max_len == 0) {
    throw std::invalid_argument("embedding_harness: max_len must be >= 1");
  }
  EmbeddingReport report;
  const auto fail = [&](std::string relation, std::size_t sample, std::string detail) {
    report.violations.push_back({std::move(relation), sample, std::move(detail)});
  };
  const auto sample_seed = [&](std::uint64_t stream, std::size_t i) {
    return options.seed * 0x9E3779B97F4A7C15ULL + stream * 0x100000001B3ULL + i;
  };

  for (std::size_t i = 0; i < options.sample_count; ++i) {
    {
      const FiniteSequence c(sampling::nonincreasing(sample_seed(1, i), options.max_len),
                             Semantics::row);
      const auto r = classify(c);
      report.checks += 4;
      if (!r[SequenceClass::NIS].member) {
        fail("generator:NIS", i, describe(r[SequenceClass::NIS]));
      }
      if (!r[SequenceClass::NIMS].member) {
        fail("NIS->NIMS", i, describe(r[SequenceClass::NIMS]));
      }
      if (!r[SequenceClass::RBVS].member) {
        fail("NIS->RBVS", i, describe(r[SequenceClass::RBVS]));
      }
      if (!r[SequenceClass::AMDS].member) {
        fail("RBVS->AMDS", i, describe(r[SequenceClass::AMDS]));
      } else if (r[SequenceClass::AMDS].constant >
                 (1.0 + r[SequenceClass::RBVS].constant) * (1.0 + kBoundSlack)) {
        fail("RBVS->AMDS", i, "AMDS constant exceeds 1 + K(RBVS)");
      }
    }
    {
      const FiniteSequence c(sampling::nondecreasing(sample_seed(2, i), options.max_len),
                             Semantics::row);
      const auto r = classify(c);
      report.checks += 4;
      if (!r[SequenceClass::NDS].member) {
        fail("generator:NDS", i, describe(r[SequenceClass::NDS]));
      }
      if (!r[SequenceClass::NDMS].member) {
        fail("NDS->NDMS", i, describe(r[SequenceClass::NDMS]));
      }
      if (!r[SequenceClass::HBVS].member) {
        fail("NDS->HBVS", i, describe(r[SequenceClass::HBVS]));
      }
      if (!r[SequenceClass::AMIS].member) {
        fail("HBVS->AMIS", i, describe(r[SequenceClass::AMIS]));
      } else if (r[SequenceClass::AMIS].constant >
                 (1.0 + r[SequenceClass::HBVS].constant) * (1.0 + kBoundSlack)) {
        fail("HBVS->AMIS", i, "AMIS constant exceeds 1 + K(HBVS)");
      }
    }
    const auto check_am = [&](const std::vector<double>& values, SequenceClass base,
                              SequenceClass mean, const char* relation) {
      const FiniteSequence c(values, Semantics::row);
      const auto r = classify(c);
      report.checks += 1;
      if (!r[base].member) {
        fail(std::string("generator:") + std::string(class_name(base)), i, describe(r[base]));
        return;
      }
      if (!r[mean].member) {
        fail(relation, i, describe(r[mean]));
        return;
      }
      const double k = r[base].constant;
      const double bound = std::max(1.0, k * k);
      report.worst_constant_ratio = std::max(report.worst_constant_ratio, r[mean].constant / bound);
      if (r[mean].constant > bound * (1.0 + kBoundSlack)) {
        std::ostringstream out;
        out << "mean constant " << r[mean].constant << " exceeds max(1, K^2) = " << bound;
        fail(relation, i, out.str());
      }
    };
    check_am(sampling::almost_decreasing(sample_seed(3, i), options.max_len,
                                         options.max_am_constant),
             SequenceClass::AMDS, SequenceClass::AMDMS, "AMDS->AMDMS");
    check_am(sampling::almost_increasing(sample_seed(4, i), options.max_len,
                                         options.max_am_constant),
             SequenceClass::AMIS, SequenceClass::AMIMS, "AMIS->AMIMS");
  }
  return report;
}

} // namespace trigapprox
