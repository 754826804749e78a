#pragma once

// Independent reference computations used only by tests.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

inline constexpr long double kPiL = 3.141592653589793238462643383279502884L;

/// Direct quadrature DFT in long double: a_k = (2/N) sum f_j cos(k x_j), b_k likewise.
struct Coeffs {
  std::vector<long double> a;
  std::vector<long double> b;
};

inline Coeffs dft(const std::vector<double>& f, std::size_t max_degree) {
  const std::size_t n = f.size();
  Coeffs c;
  c.a.assign(max_degree + 1, 0.0L);
  c.b.assign(max_degree + 1, 0.0L);
  for (std::size_t k = 0; k <= max_degree; ++k) {
    long double sa = 0.0L;
    long double sb = 0.0L;
    for (std::size_t j = 0; j < n; ++j) {
      const long double x = 2.0L * kPiL * static_cast<long double>((j * k) % n) /
                            static_cast<long double>(n);
      sa += f[j] * std::cos(x);
      sb += f[j] * std::sin(x);
    }
    c.a[k] = 2.0L * sa / static_cast<long double>(n);
    c.b[k] = 2.0L * sb / static_cast<long double>(n);
  }
  return c;
}

/// sum_k w_k U_k(x) with U_0 = a_0/2.
inline long double weighted_series(const Coeffs& c, const std::vector<long double>& w,
                                   long double x) {
  long double s = w.empty() ? 0.0L : w[0] * c.a[0] / 2.0L;
  for (std::size_t k = 1; k < w.size() && k < c.a.size(); ++k) {
    s += w[k] * (c.a[k] * std::cos(k * x) + c.b[k] * std::sin(k * x));
  }
  return s;
}

/// T_n f(x) = sum_k a_k S_k f(x), each S_k summed from scratch.
inline long double matrix_mean_at(const Coeffs& c, const std::vector<double>& row, long double x) {
  long double total = 0.0L;
  for (std::size_t k = 0; k < row.size(); ++k) {
    std::vector<long double> ones(k + 1, 1.0L);
    total += row[k] * weighted_series(c, ones, x);
  }
  return total;
}

/// K_n(u) summed term by term; u = 0 uses the limit sum a_k (k + 1/2).
inline long double kernel(const std::vector<double>& row, long double u) {
  long double s = 0.0L;
  if (u == 0.0L) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      s += row[k] * (static_cast<long double>(k) + 0.5L);
    }
    return s;
  }
  for (std::size_t k = 0; k < row.size(); ++k) {
    s += row[k] * std::sin((static_cast<long double>(k) + 0.5L) * u);
  }
  return s / (2.0L * std::sin(u / 2.0L));
}

/// Class constants straight from the definitions, O(L^2). Sums are formed
/// in the orders the definitions are written (tails from the far end, heads
/// from index 0) so that results compare exactly.
struct BruteClasses {
  std::array<bool, 12> member{};
  std::array<double, 12> constant{};
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline void brute_base(const std::vector<double>& c, bool row, std::size_t off, BruteClasses& out) {
  const std::size_t len = c.size();
  bool nis = true;
  bool nds = true;
  for (std::size_t k = 0; k + 1 < len; ++k) {
    nis = nis && c[k] >= c[k + 1];
    nds = nds && c[k] <= c[k + 1];
  }
  out.member[off + 0] = nis;
  out.constant[off + 0] = nis ? 1.0 : kInf;
  out.member[off + 1] = nds;
  out.constant[off + 1] = nds ? 1.0 : kInf;

  // AMDS: c_n <= K c_m for all m <= n.  AMIS: c_m <= K c_n for all m <= n.
  double amd = 1.0;
  double ami = 1.0;
  for (std::size_t m = 0; m < len; ++m) {
    for (std::size_t n = m; n < len; ++n) {
      if (c[m] > 0.0) {
        amd = std::max(amd, c[n] / c[m]);
      } else if (c[n] > 0.0) {
        amd = kInf;
      }
      if (c[n] > 0.0) {
        ami = std::max(ami, c[m] / c[n]);
      } else if (c[m] > 0.0) {
        ami = kInf;
      }
    }
  }
  out.constant[off + 2] = amd;
  out.member[off + 2] = std::isfinite(amd);
  out.constant[off + 3] = ami;
  out.member[off + 3] = std::isfinite(ami);

  const auto at = [&](std::size_t k) { return k < len ? c[k] : 0.0; };
  const std::size_t diffs = row ? len : len - 1;

  // RBVS: sum_{k>=m} |c_k - c_{k+1}| <= K c_m.
  double rb = 0.0;
  for (std::size_t m = 0; m < len; ++m) {
    double v = 0.0;
    for (std::size_t k = diffs; k-- > m;) {
      v += std::abs(at(k) - at(k + 1));
    }
    if (c[m] > 0.0) {
      rb = std::max(rb, v / c[m]);
    } else if (v > 0.0) {
      rb = kInf;
    }
  }
  out.constant[off + 4] = rb;
  out.member[off + 4] = std::isfinite(rb);

  // HBVS: sum_{k<m} |c_k - c_{k+1}| <= K c_m for m up to the last nonzero term.
  std::size_t last = len;
  for (std::size_t k = 0; k < len; ++k) {
    if (c[k] > 0.0) {
      last = k;
    }
  }
  double hb = 0.0;
  if (last != len) {
    for (std::size_t m = 0; m <= last; ++m) {
      double v = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        v += std::abs(c[k] - c[k + 1]);
      }
      if (c[m] > 0.0) {
        hb = std::max(hb, v / c[m]);
      } else if (v > 0.0) {
        hb = kInf;
      }
    }
  }
  out.constant[off + 5] = hb;
  out.member[off + 5] = std::isfinite(hb);
}

inline BruteClasses brute_classify(const std::vector<double>& c, bool row) {
  BruteClasses out;
  brute_base(c, row, 0, out);
  std::vector<double> means(c.size());
  for (std::size_t m = 0; m < c.size(); ++m) {
    double s = 0.0;
    for (std::size_t k = 0; k <= m; ++k) {
      s += c[k];
    }
    means[m] = s / static_cast<double>(m + 1);
  }
  brute_base(means, row, 6, out);
  return out;
}

/// Mixed seeded generator: uniform, sorted, noisy-sorted, small integers,
/// with zero stretches.
inline std::vector<double> random_sequence(std::uint64_t seed, std::size_t max_len) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 17);
  std::uniform_int_distribution<std::size_t> len_dist(1, max_len);
  std::uniform_int_distribution<int> kind(0, 5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> small(0, 4);
  std::vector<double> v(len_dist(rng));
  const int k = kind(rng);
  for (double& x : v) {
    x = (k == 4) ? static_cast<double>(small(rng)) : unit(rng);
  }
  if (k == 1) {
    std::sort(v.begin(), v.end(), std::greater<>());
  } else if (k == 2) {
    std::sort(v.begin(), v.end());
  } else if (k == 3) {
    std::sort(v.begin(), v.end(), std::greater<>());
    for (double& x : v) {
      x *= 1.0 + unit(rng);
    }
  } else if (k == 5 && v.size() > 1) {
    std::sort(v.begin(), v.end());
    std::uniform_int_distribution<std::size_t> cut(0, v.size() - 1);
    const std::size_t a = cut(rng);
    const std::size_t b = cut(rng);
    for (std::size_t i = std::min(a, b); i <= std::max(a, b); ++i) {
      v[i] = 0.0;
    }
  }
  return v;
}

} // namespace oracle
