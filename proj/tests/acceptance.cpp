// Acceptance suite: one pass/fail line per criterion.
//
//   acceptance <path-to-rrt-cli> [--only=1,3,8]
//
// Exits nonzero if any selected criterion fails. The heavy criteria (4-6)
// run tens of millions of tree vertices; expect a few minutes of wall time.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rrt/montecarlo.hpp"
#include "rrt/rootfind.hpp"
#include "rrt/tree.hpp"
#include "rrt/ulam.hpp"

using namespace rrt;

namespace {

namespace fs = std::filesystem;

std::string g_cli_path;
std::vector<std::string> g_notes;

void note(std::string text) { g_notes.push_back(std::move(text)); }

ExperimentConfig base_config(ExperimentKind kind, std::uint64_t n, std::vector<int> ks,
                             std::uint64_t trials, std::uint64_t seed) {
  ExperimentConfig config;
  config.kind = kind;
  config.n = n;
  config.k_values = std::move(ks);
  config.trials = trials;
  config.master_seed = seed;
  return config;
}

// 1. Exact oracle suite on every increasing tree with n <= 7: enumeration
// counts, exact split uniformity, flip involution/bijection, the flip
// properties, the joint law of (phi, S), and the at-least-half height count.
bool criterion1() {
  ExperimentConfig config;
  config.kind = ExperimentKind::kLemmaVerify;
  config.exhaustive = true;
  config.n_max = 7;
  config.k_values = {1, 2};
  const auto result = run_lemma_verify(config);
  note("trees checked: " + std::to_string(result.lemma->trees_checked));
  for (const auto& f : result.lemma->failures) note("violation: " + f.check + " " + f.witness);
  return result.lemma->passed;
}

// 2. Two-edge-disjoint-paths characterization vs direct membership on 10^4
// random trees at n = 10^3 for k = 1..5.
bool criterion2() {
  std::uint64_t mismatches = 0;
  for (std::uint64_t trial = 0; trial < 10000; ++trial) {
    const auto t = generate_rrt(1000, derive_seed(20001, trial));
    for (std::uint32_t k = 1; k <= 5; ++k) {
      const bool member = confidence_set_rk(t, k).contains(1);
      if (member != root_captured_characterization(t, k)) ++mismatches;
    }
  }
  note("mismatches: " + std::to_string(mismatches) + " / 50000");
  return mismatches == 0;
}

// 3. Height concentration: |mean(ht) - m_n| <= 4 and non-increasing tail
// frequencies for offsets >= 2, at n = 10^3, 10^4, 10^5 with 10^4 trials.
bool criterion3() {
  bool ok = true;
  for (std::uint64_t n : {1000ull, 10000ull, 100000ull}) {
    const auto result = run_height(base_config(ExperimentKind::kHeight, n, {}, 10000, 30003));
    const auto& h = *result.height;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "n=%llu m_n=%d mean_offset=%.4f",
                  static_cast<unsigned long long>(n), h.m, h.mean_offset);
    note(buf);
    if (std::abs(h.mean_offset) > 4.0) {
      note("FAIL: |mean offset| > 4");
      ok = false;
    }
    for (std::size_t j = 2; j + 1 < h.tail_ge.size(); ++j) {
      if (h.tail_ge[j + 1] > h.tail_ge[j]) {
        note("FAIL: tail increases at offset " + std::to_string(j + 1));
        ok = false;
      }
    }
  }
  return ok;
}

// 4. Size stability in n: fix the smallest k with measured error
// <= 0.05 at n = 10^4; the 90% quantile of |R_k| at n = 10^6 must lie
// within a factor 2 of its n = 10^4 value (10^4 trials each).
bool criterion4() {
  std::vector<int> sweep;
  for (int k = 2; k <= 16; ++k) sweep.push_back(k);
  const auto small =
      run_detection(base_config(ExperimentKind::kDetection, 10000, sweep, 10000, 40004));
  int k_star = -1;
  std::uint64_t q90_small = 0;
  for (const auto& s : small.per_k) {
    if (s.error_rate <= 0.05) {
      k_star = s.k;
      q90_small = s.quantiles.q90;
      break;
    }
  }
  if (k_star < 0) {
    note("FAIL: no k in 2..16 reaches error <= 0.05 at n = 10^4");
    return false;
  }
  note("k* = " + std::to_string(k_star) + ", q90(n=10^4) = " + std::to_string(q90_small));

  const auto big =
      run_detection(base_config(ExperimentKind::kDetection, 1000000, {k_star}, 10000, 40005));
  const std::uint64_t q90_big = big.per_k[0].quantiles.q90;
  note("q90(n=10^6) = " + std::to_string(q90_big) +
       ", error(n=10^6) = " + std::to_string(big.per_k[0].error_rate));
  const double lo = static_cast<double>(std::min(q90_small, q90_big));
  const double hi = static_cast<double>(std::max(q90_small, q90_big));
  if (lo <= 0.0 || hi / lo > 2.0) {
    note("FAIL: quantiles differ by more than a factor 2");
    return false;
  }
  return true;
}

// Shared n = 10^5 sweep for criteria 5 and 6.
const ExperimentResult& tradeoff_run() {
  static const ExperimentResult result = [] {
    std::vector<int> sweep;
    for (int k = 2; k <= 16; ++k) sweep.push_back(k);
    auto config = base_config(ExperimentKind::kTradeoff, 100000, sweep, 10000, 50005);
    config.epsilon_grid = {0.2, 0.1, 0.05, 0.02};
    return run_tradeoff(config);
  }();
  return result;
}

// 5. Detection monotonicity over k = 2..12 at n = 10^5: error estimates
// non-increasing up to overlapping 95% intervals.
bool criterion5() {
  const auto& result = tradeoff_run();
  bool ok = true;
  const KSummary* prev = nullptr;
  for (const auto& s : result.per_k) {
    if (s.k < 2 || s.k > 12) continue;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "k=%d error=%.4f ci=[%.4f,%.4f]", s.k, s.error_rate,
                  s.error_ci.lo, s.error_ci.hi);
    note(buf);
    if (prev != nullptr) {
      const bool non_increasing = s.error_rate <= prev->error_rate;
      const bool overlap = s.error_ci.lo <= prev->error_ci.hi && prev->error_ci.lo <= s.error_ci.hi;
      if (!non_increasing && !overlap) {
        note("FAIL: significant increase from k=" + std::to_string(prev->k) + " to k=" +
             std::to_string(s.k));
        ok = false;
      }
    }
    prev = &s;
  }
  return ok;
}

// 6. Size/error tradeoff trend: as epsilon decreases over {0.2, 0.1, 0.05, 0.02},
// the epsilon-quantile of |R_k| at the minimal feasible k never decreases.
bool criterion6() {
  const auto& result = tradeoff_run();
  bool ok = true;
  std::uint64_t last = 0;
  for (const auto& pick : result.tradeoff) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "epsilon=%.2f k=%d feasible=%d size_quantile=%llu",
                  pick.epsilon, pick.k, pick.feasible ? 1 : 0,
                  static_cast<unsigned long long>(pick.size_quantile));
    note(buf);
    if (!pick.feasible) {
      note("FAIL: epsilon infeasible within the sweep");
      ok = false;
      continue;
    }
    if (pick.size_quantile < last) {
      note("FAIL: size quantile decreased");
      ok = false;
    }
    last = pick.size_quantile;
  }
  // informational, not a gate: below the k >= log(1/(4 eps)) threshold the
  // measured error should exceed eps
  const KSummary& lowest_k = result.per_k.front();
  for (const auto& pick : result.tradeoff) {
    if (lowest_k.k < std::log(1.0 / (4.0 * pick.epsilon)) &&
        lowest_k.error_rate > pick.epsilon) {
      char buf[128];
      std::snprintf(buf, sizeof(buf),
                    "note: k=%d < log(1/(4*%.2f)) and error %.4f > %.2f as expected",
                    lowest_k.k, pick.epsilon, lowest_k.error_rate, pick.epsilon);
      note(buf);
      break;
    }
  }
  return ok;
}

// 7. Monte Carlo at n <= 7 within 3 standard errors of enumeration-exact
// error rate and mean |R_k| (10^5 trials per configuration).
bool criterion7() {
  bool ok = true;
  const std::uint64_t trials = 100000;
  for (Vertex n : {5u, 6u, 7u}) {
    for (int back : {1, 2}) {
      const int k = m_n(n) - back;
      const auto exact = exact_detection_stats(n, k);
      const auto mc =
          run_detection(base_config(ExperimentKind::kDetection, n, {k}, trials, 70007));
      double mean_size = 0.0;
      for (const auto& rec : mc.records) mean_size += static_cast<double>(rec.set_size);
      mean_size /= static_cast<double>(trials);

      const double p = exact.error_rate;
      const double se_p = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
      const double se_m = exact.sd_size / std::sqrt(static_cast<double>(trials));
      const double err_gap = std::abs(mc.per_k[0].error_rate - p);
      const double size_gap = std::abs(mean_size - exact.mean_size);
      char buf[192];
      std::snprintf(buf, sizeof(buf),
                    "n=%u k=%d exact_err=%.6f mc_err=%.6f (3se=%.6f) exact_mean=%.4f "
                    "mc_mean=%.4f (3se=%.4f)",
                    n, k, p, mc.per_k[0].error_rate, 3 * se_p, exact.mean_size, mean_size,
                    3 * se_m);
      note(buf);
      if (err_gap > std::max(3 * se_p, 1e-12) || size_gap > std::max(3 * se_m, 1e-12)) {
        note("FAIL: outside 3 standard errors");
        ok = false;
      }
    }
  }
  return ok;
}

int run_command(const std::string& command) {
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return {};
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

// 8. Byte-identical CSV for identical configs under different --threads,
// exercised end to end through the CLI for every record-producing kind.
bool criterion8() {
  const fs::path dir = fs::temp_directory_path() / "rrt_acceptance";
  fs::create_directories(dir);
  const std::vector<std::string> runs = {
      "--kind detection --n 2000 --k 2:6 --trials 500 --seed 42",
      "--kind size --n 2000 --k 3 --trials 500 --seed 43",
      "--kind height --n 5000 --trials 500 --seed 44",
      "--kind uniformity --n 1000 --trials 2000 --seed 45",
      "--kind tradeoff --n 2000 --k 2:6 --trials 500 --seed 46 --epsilon-grid 0.5,0.2",
  };
  bool ok = true;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const fs::path a = dir / ("a" + std::to_string(i) + ".csv");
    const fs::path b = dir / ("b" + std::to_string(i) + ".csv");
    const std::string quiet = " >/dev/null 2>&1";
    if (run_command(g_cli_path + " experiment " + runs[i] + " --threads 1 --out " + a.string() +
                    quiet) != 0 ||
        run_command(g_cli_path + " experiment " + runs[i] + " --threads 2 --out " + b.string() +
                    quiet) != 0) {
      note("FAIL: CLI run error for: " + runs[i]);
      ok = false;
      continue;
    }
    const std::string csv_a = slurp(a);
    if (csv_a.empty() || csv_a != slurp(b)) {
      note("FAIL: CSV differs across thread counts for: " + runs[i]);
      ok = false;
    } else {
      note("identical: " + runs[i]);
    }
  }
  fs::remove_all(dir);
  return ok;
}

struct Criterion {
  int id;
  const char* description;
  bool (*run)();
};

const Criterion kCriteria[] = {
    {1, "exact oracle suite on all trees with n <= 7", criterion1},
    {2, "characterization equivalence on 10^4 trees at n = 10^3", criterion2},
    {3, "height concentration at n = 10^3..10^5", criterion3},
    {4, "confidence-set size stability from n = 10^4 to n = 10^6", criterion4},
    {5, "detection monotonicity over k at n = 10^5", criterion5},
    {6, "size/error tradeoff trend at n = 10^5", criterion6},
    {7, "Monte Carlo within 3 SE of enumeration-exact values", criterion7},
    {8, "byte-identical CSV across thread counts", criterion8},
};

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <path-to-rrt-cli> [--only=1,2,...]\n");
    return 2;
  }
  g_cli_path = argv[1];
  std::set<int> only;
  if (argc > 2 && std::string(argv[2]).starts_with("--only=")) {
    std::stringstream ss(std::string(argv[2]).substr(7));
    std::string token;
    while (std::getline(ss, token, ',')) only.insert(std::stoi(token));
  }

  int failures = 0;
  for (const Criterion& criterion : kCriteria) {
    if (!only.empty() && !only.count(criterion.id)) continue;
    g_notes.clear();
    const auto start = std::chrono::steady_clock::now();
    bool passed = false;
    try {
      passed = criterion.run();
    } catch (const std::exception& e) {
      note(std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %d: %s (%.1fs)\n", passed ? "PASS" : "FAIL", criterion.id,
                criterion.description, seconds);
    for (const auto& line : g_notes) std::printf("    %s\n", line.c_str());
    std::fflush(stdout);
    if (!passed) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
