#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rrt/rootfind.hpp"
#include "rrt/stats.hpp"
#include "rrt/tree.hpp"

namespace rrt {

enum class ExperimentKind { kDetection, kSize, kHeight, kUniformity, kTradeoff, kLemmaVerify };

std::string_view kind_name(ExperimentKind k);
// Accepts "lemma-verify" and "verify" as synonyms.
std::optional<ExperimentKind> kind_from_name(std::string_view name);

// Full description of a Monte Carlo run. Trial `i` always uses the seed
// derive_seed(master_seed, i), so results are independent of thread count
// and execution order.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kDetection;
  std::uint64_t n = 0;
  std::vector<int> k_values;
  std::uint64_t trials = 0;
  std::uint64_t master_seed = 0;
  Algorithm algorithm = Algorithm::kLeafStrip;
  std::vector<double> epsilon_grid;
  unsigned threads = 0;  // 0 = hardware concurrency
  // lemma-verify only:
  bool exhaustive = false;
  Vertex n_max = 7;

  void validate() const;  // throws std::invalid_argument
};

// One row of experiment output. Fields an experiment kind does not measure
// stay zero; `seed` is the derived per-trial seed.
struct TrialRecord {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  bool captured = false;
  std::uint64_t set_size = 0;
  std::uint32_t height = 0;
  int k = 0;
};

struct KSummary {
  int k = 0;
  std::uint32_t rounds = 0;
  std::uint64_t trials = 0;
  double error_rate = 0.0;  // P{1 not in R_k}
  Interval error_ci;
  double joint_rate = 0.0;  // captured and |R_k| < 2^(4k)
  SizeQuantiles quantiles;
  double frac_size_ge_2pow4k = 0.0;
};

struct HeightSummary {
  int m = 0;  // m_n
  double mean_height = 0.0;
  double mean_offset = 0.0;                        // mean(ht - m_n)
  std::map<long long, std::uint64_t> offset_hist;  // key: ht - m_n
  std::vector<double> tail_ge;                     // tail_ge[j] = P{|ht - m_n| >= j}
};

struct UniformityReport {
  double statistic = 0.0;
  std::uint64_t dof = 0;
  double p_value = 1.0;
  std::uint64_t bins = 0;
  bool exact = false;  // true when computed over the full enumeration
};

struct TradeoffPick {
  double epsilon = 0.0;
  bool feasible = false;       // some k in the sweep achieved error <= epsilon
  int k = 0;                   // smallest such k
  std::uint64_t size_quantile = 0;  // epsilon-quantile of |R_k| at that k
};

struct LemmaCheckFailure {
  std::string check;
  std::string witness;
};

struct LemmaVerifyReport {
  bool passed = true;
  std::uint64_t trees_checked = 0;
  std::vector<LemmaCheckFailure> failures;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialRecord> records;  // trial-major, k ascending within a trial
  std::vector<KSummary> per_k;
  std::optional<HeightSummary> height;
  std::optional<UniformityReport> uniformity;
  std::vector<TradeoffPick> tradeoff;
  std::optional<LemmaVerifyReport> lemma;

  bool success() const { return !lemma || lemma->passed; }
};

ExperimentResult run_experiment(const ExperimentConfig& config);

ExperimentResult run_detection(const ExperimentConfig& config);
ExperimentResult run_size(const ExperimentConfig& config);
ExperimentResult run_height(const ExperimentConfig& config);
ExperimentResult run_uniformity(const ExperimentConfig& config);
ExperimentResult run_tradeoff(const ExperimentConfig& config);
ExperimentResult run_lemma_verify(const ExperimentConfig& config);

// Enumeration-exact error rate and |R_k| moments for small n; the oracle
// the Monte Carlo estimates are tested against.
struct ExactSmallN {
  double error_rate = 0.0;
  double mean_size = 0.0;
  double sd_size = 0.0;
  std::uint64_t tree_count = 0;
};
ExactSmallN exact_detection_stats(Vertex n, int k);

// CSV with fixed header "trial,seed,captured,set_size,height,k,n".
std::string to_csv(const ExperimentResult& result);

// JSON document with config echo, tool version and per-kind summaries.
std::string summary_json(const ExperimentResult& result);

}  // namespace rrt
