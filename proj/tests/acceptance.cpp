/*
 * Acceptance suite.
 *
 * One line per criterion: [PASS] or [FAIL], the criterion name, and the
 * measured quantity against its pinned tolerance. Exit status is the number
 * of failed criteria.
 */

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "permgraph/dynamics.hpp"
#include "permgraph/entropy.hpp"
#include "permgraph/errors.hpp"
#include "permgraph/harness.hpp"

using namespace permgraph;

namespace {

constexpr double kExactTol = 1e-12;
constexpr double kDuplicateChannelTol = 0.01;
constexpr double kHenonGap = 0.2;
constexpr double kHenonSweepSeconds = 10.0;
constexpr double kLorenzSplit = 0.6;
constexpr double kRk4RatioLo = 12.0;
constexpr double kRk4RatioHi = 20.0;

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
  std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

MultivariateSignal random_signal(std::size_t p, std::size_t n, std::mt19937_64& rng) {
  std::vector<std::vector<double>> channels;
  for (std::size_t s = 0; s < p; ++s) channels.push_back(oracle::uniform(n, rng));
  return MultivariateSignal::from_channels(channels);
}

void path_equality() {
  std::mt19937_64 rng(1001);
  const std::size_t n = 1000;
  const auto path = directed_path(n);
  double worst = 0.0;
  std::size_t cases = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = oracle::uniform(n, rng);
    for (std::size_t m = 2; m <= 5; ++m) {
      for (std::size_t delay = 1; delay <= 3; ++delay) {
        const EntropyParams params{m, delay};
        worst = std::max(worst, std::abs(pe_graph(path, x, params) - permutation_entropy(x, params)));
        ++cases;
      }
    }
  }
  report(worst <= kExactTol, "PE_G on directed path equals PE",
         fmt("%zu cases, max |diff| = %.3g (tol %.0e)", cases, worst, kExactTol));
}

void isolated_vertices_equal_mmspe() {
  std::mt19937_64 rng(1002);
  double worst = 0.0;
  std::size_t cases = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t p = 2 + trial % 3;
    const auto u = random_signal(p, 500, rng);
    for (std::size_t m : {2u, 3u}) {
      for (std::size_t delay : {1u, 2u}) {
        const EntropyParams params{m, delay};
        worst = std::max(worst, std::abs(mpe_graph(u, empty_graph(p), params) - mmspe(u, params)));
        ++cases;
      }
    }
  }
  report(worst <= kExactTol, "MPE_G with isolated channel vertices equals MMSPE",
         fmt("%zu cases, max |diff| = %.3g (tol %.0e)", cases, worst, kExactTol));
}

void duplicated_channels_close_to_pe() {
  std::mt19937_64 rng(1003);
  const auto c = oracle::uniform(10000, rng);
  const double pe = permutation_entropy(c, {2, 1});
  double worst = 0.0;
  for (std::size_t p = 2; p <= 4; ++p) {
    const auto u = MultivariateSignal::from_channels(std::vector<std::vector<double>>(p, c));
    worst = std::max(worst, std::abs(mpe_graph(u, complete_graph(p), {2, 1}) - pe));
  }
  report(worst <= kDuplicateChannelTol, "MPE_G of duplicated channels approaches PE",
         fmt("p in {2,3,4}, n=10000, max |MPE_G - PE| = %.3g (tol %.2g)", worst,
             kDuplicateChannelTol));
}

void brute_force_oracle() {
  std::mt19937_64 rng(1004);
  struct Family {
    const char* name;
    std::function<oracle::Matrix(std::size_t)> make;
  };
  const std::vector<Family> families = {
      {"directed path", oracle::path_matrix},
      {"undirected path",
       [](std::size_t n) {
         auto a = oracle::path_matrix(n);
         for (std::size_t i = 0; i + 1 < n; ++i) a[i + 1][i] = 1.0;
         return a;
       }},
      {"cycle", oracle::cycle_matrix},
      {"complete", oracle::complete_matrix},
      {"star", oracle::star_matrix},
      {"random p=0.5", [&](std::size_t n) { return oracle::random_matrix(n, 0.5, false, rng); }},
      {"random directed p=0.5",
       [&](std::size_t n) { return oracle::random_matrix(n, 0.5, true, rng); }},
  };

  double worst = 0.0;
  std::size_t compared = 0, mismatched_validity = 0;
  for (const auto& family : families) {
    for (std::size_t n = 1; n <= 6; ++n) {
      for (int draw = 0; draw < 5; ++draw) {
        const auto a = family.make(n);
        const auto g = graph_from_matrix(a);
        const auto x = oracle::dyadic(n, rng);
        for (std::size_t m : {2u, 3u}) {
          for (std::size_t delay : {1u, 2u}) {
            const auto ref = oracle::walk_embedding(a, x, m, delay);
            const bool any_valid = std::any_of(ref.valid.begin(), ref.valid.end(), [](bool v) { return v; });
            try {
              const double got = pe_graph(g, x, {m, delay});
              if (!any_valid) {
                ++mismatched_validity;
                continue;
              }
              worst = std::max(worst, std::abs(got - oracle::exact_pe_graph(a, x, m, delay)));
              ++compared;
            } catch (const NoValidPatterns&) {
              if (any_valid) ++mismatched_validity;
            }
          }
        }
      }
    }
  }
  report(worst <= kExactTol && mismatched_validity == 0,
         "PE_G matches walk-enumeration oracle on small graphs",
         fmt("%zu comparisons, max |diff| = %.3g (tol %.0e), validity mismatches %zu", compared,
             worst, kExactTol, mismatched_validity));
}

void lorenz_table_ordering() {
  LorenzTableOptions opt;  // rho {0.8, 0.9, 1.2, 1.3}, m 3..7, repro Lorenz defaults
  const auto t0 = std::chrono::steady_clock::now();
  const auto table = lorenz_table(opt);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::ostringstream csv;
  write_lorenz_table_csv(csv, table);
  std::printf("  lorenz table (%.2fs):\n", seconds);
  std::istringstream lines(csv.str());
  for (std::string line; std::getline(lines, line);) std::printf("    %s\n", line.c_str());

  const auto& v = table.values;  // rows 0.8, 0.9, 1.2, 1.3
  bool ordering = true, decreasing = true, split = true;
  for (std::size_t c = 0; c < table.dimensions.size(); ++c) {
    const double low = std::max(v[0][c], v[1][c]);
    ordering = ordering && v[2][c] > low && v[3][c] > low;
  }
  for (const auto& row : v) {
    for (std::size_t c = 1; c < row.size(); ++c) decreasing = decreasing && row[c] < row[c - 1];
  }
  for (std::size_t c = 0; c < table.dimensions.size(); ++c) {
    split = split && v[0][c] < kLorenzSplit && v[1][c] < kLorenzSplit;
  }
  split = split && v[2][0] > kLorenzSplit && v[3][0] > kLorenzSplit;

  report(ordering, "Lorenz: rho > 1 rows exceed rho < 1 rows for every m",
         fmt("m=3: %.4f, %.4f vs %.4f, %.4f", v[2][0], v[3][0], v[0][0], v[1][0]));
  report(decreasing, "Lorenz: entropy decreases with m in every row",
         fmt("row 0.8: %.4f -> %.4f", v[0].front(), v[0].back()));
  report(split && seconds < 60.0, "Lorenz: rho < 1 below 0.6, rho > 1 at m=3 above 0.6",
         fmt("max rho<1 = %.4f, min rho>1 (m=3) = %.4f, runtime %.2fs",
             std::max(*std::max_element(v[0].begin(), v[0].end()),
                      *std::max_element(v[1].begin(), v[1].end())),
             std::min(v[2][0], v[3][0]), seconds));
}

void henon_sweep_regimes() {
  HenonSweepOptions coarse;
  coarse.step = 0.05;
  const auto rows = henon_sweep(coarse);
  std::printf("  henon coarse grid (a: mpeg / pe_x / mmspe):\n");
  for (const auto& row : rows) {
    std::printf("    %.2f: %.4f / %.4f / %.4f%s\n", row.a, row.mpeg, row.pe_x, row.mmspe,
                row.diverged ? " (diverged)" : "");
  }
  const double gap = rows.back().mpeg - rows.front().mpeg;
  const bool coarse_ok = rows.size() == 9 && !rows.front().diverged && !rows.back().diverged &&
                         std::abs(rows.back().a - 1.4) < 1e-9 && gap >= kHenonGap;
  report(coarse_ok, "Henon: MPE_G(a=1.4) exceeds MPE_G(a=1.0)",
         fmt("gap = %.4f (need >= %.2f)", gap, kHenonGap));

  const auto t0 = std::chrono::steady_clock::now();
  HenonSweepOptions full;
  full.threads = 1;
  const auto all = henon_sweep(full);
  std::ostringstream sink;
  write_henon_sweep_csv(sink, all);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto diverged = std::count_if(all.begin(), all.end(), [](const auto& r) { return r.diverged; });
  report(all.size() == 4001 && seconds < kHenonSweepSeconds, "Henon: full 4001-point sweep",
         fmt("%zu rows (%ld diverged) in %.3fs single-threaded (limit %.0fs)", all.size(),
             static_cast<long>(diverged), seconds, kHenonSweepSeconds));
}

void invariant_suites() {
  std::mt19937_64 rng(1007);
  std::uniform_int_distribution<std::size_t> length(5, 300), dim(2, 6), lag(1, 4), chans(1, 4),
      kind(0, 3);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::size_t fuzzed = 0, out_of_range = 0, monotone_breaks = 0, bad_counts = 0;
  double worst_norm = 0.0;

  for (int trial = 0; trial < 1000; ++trial) {
    const EntropyParams params{dim(rng), lag(rng)};
    const std::size_t n = std::max(length(rng), params.span() + 1);
    std::vector<double> x(n);
    switch (kind(rng)) {
      case 0: for (auto& v : x) v = normal(rng); break;
      case 1: for (auto& v : x) v = std::round(normal(rng) * 2.0); break;  // heavy ties
      case 2: for (std::size_t i = 0; i < n; ++i) x[i] = std::sin(0.3 * static_cast<double>(i)); break;
      default: for (auto& v : x) v = std::exp(3.0 * normal(rng)); break;
    }

    const auto d = pattern_distribution(x, params);
    const auto f = d.frequencies();
    worst_norm = std::max(worst_norm, std::abs(std::accumulate(f.begin(), f.end(), 0.0) - 1.0));
    if (d.total() != n - params.span() || d.distinct() > factorial(params.dimension)) ++bad_counts;

    const std::size_t p = chans(rng);
    std::vector<std::vector<double>> channels(p, x);
    for (std::size_t s = 1; s < p; ++s) channels[s] = oracle::uniform(n, rng);
    const auto u = MultivariateSignal::from_channels(channels);
    const double values[] = {permutation_entropy(x, params), mmspe(u, params),
                             mpe_graph(u, complete_graph(p), params)};
    for (double v : values) {
      if (!(v >= 0.0 && v <= 1.0)) ++out_of_range;
    }
    if (mmspe_distribution(u, params).total() != p * (n - params.span())) ++bad_counts;

    std::vector<double> warped(n);
    for (std::size_t i = 0; i < n; ++i) warped[i] = std::cbrt(x[i]) + 5.0 * x[i];
    if (permutation_entropy(warped, params) != values[0]) ++monotone_breaks;
    ++fuzzed;
  }
  report(out_of_range == 0, "Invariant: every metric lies in [0, 1]",
         fmt("%zu fuzzed inputs, %zu out of range", fuzzed, out_of_range));
  report(monotone_breaks == 0, "Invariant: PE unchanged by strictly increasing maps",
         fmt("%zu inputs, %zu changed", fuzzed, monotone_breaks));
  report(worst_norm <= kExactTol, "Invariant: pattern frequencies sum to 1",
         fmt("max |sum - 1| = %.3g (tol %.0e)", worst_norm, kExactTol));
  report(bad_counts == 0, "Invariant: pattern count is n - (m-1)L (pooled: p times that)",
         fmt("%zu violations", bad_counts));

  double worst_affine = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t p = chans(rng);
    const auto u = random_signal(p, 200, rng);
    std::vector<double> moved(u.data().begin(), u.data().end());
    const double scale = 0.5 + static_cast<double>(trial % 7), offset = -3.0 + 0.1 * trial;
    for (auto& v : moved) v = scale * v + offset;
    const MultivariateSignal w(p, 200, moved);
    const EntropyParams params{2 + static_cast<std::size_t>(trial % 3), 1 + static_cast<std::size_t>(trial % 2)};
    worst_affine = std::max(worst_affine, std::abs(mpe_graph(w, complete_graph(p), params) -
                                                   mpe_graph(u, complete_graph(p), params)));
    const auto a = oracle::random_matrix(30, 0.2, trial % 2 == 0, rng);
    const auto g = graph_from_matrix(a);
    const auto x = oracle::uniform(30, rng);
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = scale * x[i] + offset;
    try {
      worst_affine = std::max(worst_affine, std::abs(pe_graph(g, y, params) - pe_graph(g, x, params)));
    } catch (const NoValidPatterns&) {
    }
  }
  report(worst_affine <= kExactTol, "Invariant: PE_G and MPE_G unchanged by a*x + b, a > 0",
         fmt("max |diff| = %.3g (tol %.0e)", worst_affine, kExactTol));
}

void rk4_order() {
  auto at_one = [](double dt) {
    LorenzParams p;
    p.rho = 0.5;
    p.dt = dt;
    p.steps = static_cast<std::size_t>(std::llround(1.0 / dt)) + 1;
    p.transient = p.steps - 1;
    const auto u = lorenz(p);
    return LorenzState{u.at(0, 0), u.at(1, 0), u.at(2, 0)};
  };
  auto dist = [](const LorenzState& a, const LorenzState& b) {
    return std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
  };
  const auto s1 = at_one(0.05), s2 = at_one(0.025), s3 = at_one(0.0125);
  const double ratio = dist(s1, s2) / dist(s2, s3);
  report(ratio >= kRk4RatioLo && ratio <= kRk4RatioHi, "RK4 fourth-order convergence",
         fmt("ratio = %.3f at t=1, rho=0.5, dt 0.05/0.025/0.0125 (need [%.0f, %.0f])", ratio,
             kRk4RatioLo, kRk4RatioHi));
}

}  // namespace

int main() {
  path_equality();
  isolated_vertices_equal_mmspe();
  duplicated_channels_close_to_pe();
  brute_force_oracle();
  lorenz_table_ordering();
  henon_sweep_regimes();
  invariant_suites();
  rk4_order();
  std::printf("%d criteria failed\n", failures);
  return failures;
}
