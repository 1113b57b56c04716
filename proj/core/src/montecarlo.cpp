#include "rrt/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "rrt/ulam.hpp"
#include "rrt/version.hpp"

namespace rrt {

std::string_view kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::kDetection: return "detection";
    case ExperimentKind::kSize: return "size";
    case ExperimentKind::kHeight: return "height";
    case ExperimentKind::kUniformity: return "uniformity";
    case ExperimentKind::kTradeoff: return "tradeoff";
    case ExperimentKind::kLemmaVerify: return "lemma-verify";
  }
  return "?";
}

std::optional<ExperimentKind> kind_from_name(std::string_view name) {
  if (name == "detection") return ExperimentKind::kDetection;
  if (name == "size") return ExperimentKind::kSize;
  if (name == "height") return ExperimentKind::kHeight;
  if (name == "uniformity") return ExperimentKind::kUniformity;
  if (name == "tradeoff") return ExperimentKind::kTradeoff;
  if (name == "lemma-verify" || name == "verify") return ExperimentKind::kLemmaVerify;
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  const bool sweep = kind == ExperimentKind::kDetection || kind == ExperimentKind::kSize ||
                     kind == ExperimentKind::kTradeoff;
  if (sweep && k_values.empty()) {
    throw std::invalid_argument("config: k_values must be non-empty for " +
                                std::string(kind_name(kind)));
  }
  for (int k : k_values) {
    if (k < 0) throw std::invalid_argument("config: k values must be >= 0");
  }
  if (kind == ExperimentKind::kLemmaVerify) {
    for (int k : k_values) {
      if (k < 1) throw std::invalid_argument("config: lemma-verify needs k >= 1");
    }
    if (exhaustive) {
      if (n_max < 1 || n_max > kMaxEnumerationN) {
        throw std::invalid_argument("config: exhaustive n_max must be in [1, " +
                                    std::to_string(kMaxEnumerationN) + "]");
      }
      return;  // trials and n unused
    }
  }
  if (kind == ExperimentKind::kUniformity && exhaustive) {
    if (n < 2 || n > kMaxEnumerationN) {
      throw std::invalid_argument("config: exact uniformity needs 2 <= n <= " +
                                  std::to_string(kMaxEnumerationN));
    }
    return;
  }
  if (n < 1) throw std::invalid_argument("config: n must be >= 1");
  if (kind == ExperimentKind::kUniformity && n < 2) {
    throw std::invalid_argument("config: uniformity needs n >= 2");
  }
  if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  for (double e : epsilon_grid) {
    if (!(e > 0.0 && e <= 1.0)) {
      throw std::invalid_argument("config: epsilon values must lie in (0, 1]");
    }
  }
}

namespace {

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Runs body(trial) for every trial index. Each worker gets its own state
// from make_worker(); bodies may only touch their own output slots, which
// keeps results identical for any thread count.
template <class MakeWorker>
void parallel_trials(std::uint64_t trials, unsigned threads, MakeWorker make_worker) {
  if (trials == 0) return;
  threads = static_cast<unsigned>(
      std::min<std::uint64_t>(resolve_threads(threads), trials));
  if (threads <= 1) {
    auto work = make_worker();
    for (std::uint64_t i = 0; i < trials; ++i) work(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      auto work = make_worker();
      try {
        for (;;) {
          const std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
          if (i >= trials) break;
          work(i);
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(trials);
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::uint64_t pow2_4k(int k) {
  const int shift = 4 * k;
  return shift >= 64 ? UINT64_MAX : std::uint64_t{1} << shift;
}

std::vector<int> sorted_unique(std::vector<int> ks) {
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

// Shared trial loop for detection / size / tradeoff: one tree per trial,
// a single full peel serves every k in the sweep.
ExperimentResult run_sweep(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result;
  result.config = config;

  const auto ks = sorted_unique(config.k_values);
  const std::uint64_t n = config.n;
  const int m = m_n(n);
  std::vector<std::uint32_t> rounds_of(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    rounds_of[i] = m > ks[i] ? static_cast<std::uint32_t>(m - ks[i]) : 0;
  }

  result.records.assign(config.trials * ks.size(), TrialRecord{});
  auto* records = result.records.data();
  const Algorithm algo = config.algorithm;

  parallel_trials(config.trials, config.threads, [&] {
    struct Scratch {
      std::vector<Vertex> parent;
      std::vector<std::uint32_t> depth;
      Adjacency adj;
      PeelProfile profile;
      std::vector<std::uint64_t> scores;
      std::vector<Vertex> rank;
    };
    return [&, s = Scratch{}](std::uint64_t trial) mutable {
      const std::uint64_t seed = derive_seed(config.master_seed, trial);
      generate_rrt_parents(static_cast<Vertex>(n), seed, s.parent);
      s.adj.assign(s.parent);
      peel_profile(s.adj, s.profile);
      const std::uint32_t height = tree_height(s.parent, s.depth);

      // Baseline preparation: rank of vertex 1 under Jordan scores, or the
      // position of vertex 1 in the greedy deletion sequence.
      std::uint64_t rank_of_1 = 0;
      std::uint64_t greedy_index_1 = UINT64_MAX;  // never removed
      if (algo == Algorithm::kJordan) {
        s.scores = jordan_scores(s.adj);
        s.rank.resize(n);
        std::iota(s.rank.begin(), s.rank.end(), 1);
        std::sort(s.rank.begin(), s.rank.end(), [&](Vertex a, Vertex b) {
          return s.scores[a] != s.scores[b] ? s.scores[a] < s.scores[b] : a < b;
        });
        rank_of_1 = static_cast<std::uint64_t>(
            std::find(s.rank.begin(), s.rank.end(), Vertex{1}) - s.rank.begin());
      } else if (algo == Algorithm::kGreedy) {
        const auto order = greedy_removal_order(s.adj, derive_seed(seed, 1));
        const auto it = std::find(order.begin(), order.end(), Vertex{1});
        if (it != order.end()) greedy_index_1 = static_cast<std::uint64_t>(it - order.begin());
      }

      for (std::size_t i = 0; i < ks.size(); ++i) {
        TrialRecord& rec = records[trial * ks.size() + i];
        rec.trial = trial;
        rec.seed = seed;
        rec.k = ks[i];
        rec.height = height;
        const std::uint64_t strip_size = s.profile.survivors(rounds_of[i]);
        rec.set_size = strip_size;
        switch (algo) {
          case Algorithm::kLeafStrip:
            rec.captured = s.profile.alive(1, rounds_of[i]);
            break;
          case Algorithm::kJordan:
            // matched-size baseline: the |R_k| best-ranked vertices
            rec.captured = strip_size > 0 && rank_of_1 < strip_size;
            break;
          case Algorithm::kGreedy:
            rec.captured = strip_size > 0 && greedy_index_1 >= n - strip_size;
            break;
        }
      }
    };
  });

  // Per-k summaries, aggregated in deterministic record order.
  result.per_k.resize(ks.size());
  std::vector<std::uint64_t> sizes(config.trials);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    KSummary& summary = result.per_k[i];
    summary.k = ks[i];
    summary.rounds = rounds_of[i];
    summary.trials = config.trials;
    const std::uint64_t cap = pow2_4k(ks[i]);
    std::uint64_t missed = 0;
    std::uint64_t joint = 0;
    std::uint64_t over_cap = 0;
    for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
      const TrialRecord& rec = result.records[trial * ks.size() + i];
      sizes[trial] = rec.set_size;
      if (!rec.captured) ++missed;
      if (rec.captured && rec.set_size < cap) ++joint;
      if (rec.set_size >= cap) ++over_cap;
    }
    const double trials_d = static_cast<double>(config.trials);
    summary.error_rate = static_cast<double>(missed) / trials_d;
    summary.error_ci = wilson_interval(missed, config.trials);
    summary.joint_rate = static_cast<double>(joint) / trials_d;
    summary.frac_size_ge_2pow4k = static_cast<double>(over_cap) / trials_d;
    summary.quantiles = size_quantiles(sizes);
  }
  return result;
}

}  // namespace

ExperimentResult run_detection(const ExperimentConfig& config) { return run_sweep(config); }
ExperimentResult run_size(const ExperimentConfig& config) { return run_sweep(config); }

ExperimentResult run_tradeoff(const ExperimentConfig& config) {
  ExperimentResult result = run_sweep(config);
  // For each epsilon: the smallest k whose measured error is <= epsilon,
  // and the epsilon-quantile of |R_k| at that k.
  for (double eps : result.config.epsilon_grid) {
    TradeoffPick pick;
    pick.epsilon = eps;
    for (std::size_t i = 0; i < result.per_k.size(); ++i) {
      if (result.per_k[i].error_rate <= eps) {
        pick.feasible = true;
        pick.k = result.per_k[i].k;
        std::vector<std::uint64_t> sizes(result.config.trials);
        for (std::uint64_t trial = 0; trial < result.config.trials; ++trial) {
          sizes[trial] = result.records[trial * result.per_k.size() + i].set_size;
        }
        std::sort(sizes.begin(), sizes.end());
        pick.size_quantile = nearest_rank_quantile(sizes, eps);
        break;
      }
    }
    result.tradeoff.push_back(pick);
  }
  return result;
}

ExperimentResult run_height(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result;
  result.config = config;
  result.records.assign(config.trials, TrialRecord{});
  auto* records = result.records.data();

  parallel_trials(config.trials, config.threads, [&] {
    struct Scratch {
      std::vector<Vertex> parent;
      std::vector<std::uint32_t> depth;
    };
    return [&, s = Scratch{}](std::uint64_t trial) mutable {
      const std::uint64_t seed = derive_seed(config.master_seed, trial);
      generate_rrt_parents(static_cast<Vertex>(config.n), seed, s.parent);
      TrialRecord& rec = records[trial];
      rec.trial = trial;
      rec.seed = seed;
      rec.height = tree_height(s.parent, s.depth);
    };
  });

  HeightSummary summary;
  summary.m = m_n(config.n);
  double height_sum = 0.0;
  long long max_abs = 0;
  for (const TrialRecord& rec : result.records) {
    const long long offset = static_cast<long long>(rec.height) - summary.m;
    height_sum += static_cast<double>(rec.height);
    ++summary.offset_hist[offset];
    max_abs = std::max(max_abs, std::llabs(offset));
  }
  summary.mean_height = height_sum / static_cast<double>(config.trials);
  summary.mean_offset = summary.mean_height - summary.m;
  summary.tail_ge.assign(static_cast<std::size_t>(max_abs) + 1, 0.0);
  for (const auto& [offset, count] : summary.offset_hist) {
    const auto abs_off = static_cast<std::size_t>(std::llabs(offset));
    for (std::size_t j = 0; j <= abs_off; ++j) {
      summary.tail_ge[j] += static_cast<double>(count);
    }
  }
  for (double& x : summary.tail_ge) x /= static_cast<double>(config.trials);
  result.height = summary;
  return result;
}

ExperimentResult run_uniformity(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result;
  result.config = config;
  UniformityReport report;

  if (config.exhaustive) {
    // Enumeration-exact law of |T^{2,down}|: every value in {1..n-1} occurs
    // exactly (n-2)! times, so the statistic is identically zero when the
    // implementation is right.
    const auto n = static_cast<Vertex>(config.n);
    std::vector<std::uint64_t> counts(n - 1, 0);
    std::uint64_t total = 0;
    for_each_increasing_tree(n, [&](const IncreasingTree& t) {
      ++counts[lower_split_size(t) - 1];
      ++total;
    });
    const std::vector<double> expected(n - 1,
                                       static_cast<double>(total) / static_cast<double>(n - 1));
    const ChiSquareResult chi = chi_square_test(counts, expected);
    report = {chi.statistic, chi.dof, chi.p_value, chi.bins, true};
    result.uniformity = report;
    return result;
  }

  result.records.assign(config.trials, TrialRecord{});
  auto* records = result.records.data();
  parallel_trials(config.trials, config.threads, [&] {
    return [&, parent = std::vector<Vertex>{}](std::uint64_t trial) mutable {
      const std::uint64_t seed = derive_seed(config.master_seed, trial);
      generate_rrt_parents(static_cast<Vertex>(config.n), seed, parent);
      TrialRecord& rec = records[trial];
      rec.trial = trial;
      rec.seed = seed;
      rec.set_size = lower_split_size(parent);
    };
  });

  // Equal-width bins over {1..n-1}, sized so every expected count is >= 20.
  const std::uint64_t values = config.n - 1;
  std::uint64_t bins = std::min<std::uint64_t>(values, config.trials / 20);
  bins = std::max<std::uint64_t>(bins, 1);
  std::vector<std::uint64_t> observed(bins, 0);
  std::vector<double> expected(bins, 0.0);
  for (std::uint64_t x = 1; x <= values; ++x) {
    expected[(x - 1) * bins / values] += static_cast<double>(config.trials) /
                                         static_cast<double>(values);
  }
  for (const TrialRecord& rec : result.records) {
    ++observed[(rec.set_size - 1) * bins / values];
  }
  if (bins < 2) {
    report = {0.0, 0, 1.0, bins, false};
  } else {
    const ChiSquareResult chi = chi_square_test(observed, expected);
    report = {chi.statistic, chi.dof, chi.p_value, chi.bins, false};
  }
  result.uniformity = report;
  return result;
}

namespace {

std::string serialize_parents(const IncreasingTree& t) {
  std::string out;
  for (Vertex v = 2; v <= t.n(); ++v) {
    out += std::to_string(t.parent_array()[v]);
    out += ',';
  }
  return out;
}

std::string serialize_embedding_and_set(const std::vector<UlamNode>& phi,
                                        const std::vector<Vertex>& s_set) {
  std::string out;
  for (std::size_t v = 1; v < phi.size(); ++v) {
    out += phi[v].to_string();
    out += ';';
  }
  out += '|';
  for (Vertex v : s_set) {
    out += std::to_string(v);
    out += ',';
  }
  return out;
}

void add_failure(LemmaVerifyReport& report, std::string check, std::string witness) {
  report.passed = false;
  if (report.failures.size() < 32) {
    report.failures.push_back({std::move(check), std::move(witness)});
  }
}

// All exact small-n checks for one (n, k): involution, bijection, the flip
// properties, and the S-machinery counts for every height threshold.
void lemma_verify_exhaustive_nk(Vertex n, std::uint32_t k, LemmaVerifyReport& report) {
  const std::uint32_t j = 4 * k;
  const auto trees = all_increasing_trees(n);
  const std::uint32_t max_h = n > 1 ? n - 1 : 1;

  std::set<std::string> images;
  // per height threshold: multisets for the joint law, counters for the
  // at-least-half property
  std::vector<std::map<std::string, std::int64_t>> joint_balance(max_h + 1);
  std::vector<std::uint64_t> s_nonempty(max_h + 1, 0);
  std::vector<std::uint64_t> s_tall(max_h + 1, 0);

  for (const IncreasingTree& t : trees) {
    const std::string tag = serialize_parents(t);
    const IncreasingTree tbar = flip_tree(t, j);
    images.insert(serialize_parents(tbar));
    if (flip_tree(tbar, j) != t) {
      add_failure(report, "flip-involution", "n=" + std::to_string(n) + " tree=" + tag);
    }

    for (std::uint32_t h = 1; h <= max_h; ++h) {
      const auto rep = verify_flip_properties(t, k, h);
      if (!rep.passed()) {
        add_failure(report, "flip-properties",
                    "n=" + std::to_string(n) + " k=" + std::to_string(k) +
                        " h=" + std::to_string(h) + " tree=" + tag);
        break;
      }
    }

    // joint law (phi, S) vs (phibar, Sbar), and the height-2k count
    const Embedding phi(t);
    const auto heights_t = t.subtree_heights();
    std::vector<UlamNode> phibar(static_cast<std::size_t>(n) + 1);
    for (Vertex v = 1; v <= n; ++v) {
      phibar[v] = ell_inv(flip_f(j, ell(phi.node(v))));
    }
    const auto heights_bar = tbar.subtree_heights();
    for (std::uint32_t h = 1; h <= max_h; ++h) {
      std::vector<Vertex> s_t;
      std::vector<Vertex> s_b;
      bool tall = false;
      for (Vertex v = 1; v <= n; ++v) {
        if (phi.zone_of(v) == j && heights_t[v] >= h) {
          s_t.push_back(v);
          if (phi.node(v).depth() >= 2 * k) tall = true;
        }
        if (phibar[v].zone() == j && heights_bar[v] >= h) s_b.push_back(v);
      }
      ++joint_balance[h][serialize_embedding_and_set(phi.nodes(), s_t)];
      --joint_balance[h][serialize_embedding_and_set(phibar, s_b)];
      if (!s_t.empty()) {
        ++s_nonempty[h];
        if (tall) ++s_tall[h];
      }
    }
  }

  if (images.size() != trees.size()) {
    add_failure(report, "flip-bijection",
                "n=" + std::to_string(n) + " k=" + std::to_string(k) + " images=" +
                    std::to_string(images.size()) + "/" + std::to_string(trees.size()));
  }
  for (std::uint32_t h = 1; h <= max_h; ++h) {
    for (const auto& [key, balance] : joint_balance[h]) {
      if (balance != 0) {
        add_failure(report, "joint-law",
                    "n=" + std::to_string(n) + " k=" + std::to_string(k) +
                        " h=" + std::to_string(h) + " key=" + key);
        break;
      }
    }
    if (2 * s_tall[h] < s_nonempty[h]) {
      add_failure(report, "tall-fraction",
                  "n=" + std::to_string(n) + " k=" + std::to_string(k) +
                      " h=" + std::to_string(h) + " tall=" + std::to_string(s_tall[h]) +
                      " nonempty=" + std::to_string(s_nonempty[h]));
    }
  }
  report.trees_checked += trees.size();
}

}  // namespace

ExperimentResult run_lemma_verify(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result;
  result.config = config;
  LemmaVerifyReport report;
  const std::vector<int> ks = config.k_values.empty() ? std::vector<int>{1}
                                                      : sorted_unique(config.k_values);

  if (config.exhaustive) {
    for (Vertex n = 1; n <= config.n_max; ++n) {
      // enumeration count
      std::uint64_t count = 0;
      for_each_increasing_tree(n, [&](const IncreasingTree&) { ++count; });
      if (count != increasing_tree_count(n)) {
        add_failure(report, "enumeration-count",
                    "n=" + std::to_string(n) + " count=" + std::to_string(count));
      }
      // exact uniformity of |T^{2,down}|
      if (n >= 2) {
        std::vector<std::uint64_t> counts(n - 1, 0);
        for_each_increasing_tree(n, [&](const IncreasingTree& t) {
          ++counts[lower_split_size(t) - 1];
        });
        const std::uint64_t each = increasing_tree_count(n) / (n - 1);
        for (Vertex s = 1; s <= n - 1; ++s) {
          if (counts[s - 1] != each) {
            add_failure(report, "split-uniformity",
                        "n=" + std::to_string(n) + " size=" + std::to_string(s) + " count=" +
                            std::to_string(counts[s - 1]) + " want=" + std::to_string(each));
          }
        }
      }
      if (n >= 2) {
        for (int k : ks) lemma_verify_exhaustive_nk(n, static_cast<std::uint32_t>(k), report);
      } else {
        ++report.trees_checked;  // the single-vertex tree: nothing to flip
      }
    }
  } else {
    std::mutex report_mutex;
    std::atomic<std::uint64_t> checked{0};
    parallel_trials(config.trials, config.threads, [&] {
      return [&](std::uint64_t trial) {
        const std::uint64_t seed = derive_seed(config.master_seed, trial);
        const IncreasingTree t = generate_rrt(static_cast<Vertex>(config.n), seed);
        for (int k : ks) {
          const auto rep = verify_flip_properties(t, static_cast<std::uint32_t>(k));
          const bool involution =
              flip_tree(flip_tree(t, 4 * static_cast<std::uint32_t>(k)),
                        4 * static_cast<std::uint32_t>(k)) == t;
          if (!rep.passed() || !involution) {
            std::lock_guard lock(report_mutex);
            add_failure(report, !involution ? "flip-involution" : "flip-properties",
                        "n=" + std::to_string(config.n) + " seed=" + std::to_string(seed) +
                            " k=" + std::to_string(k));
          }
        }
        checked.fetch_add(1, std::memory_order_relaxed);
      };
    });
    report.trees_checked = checked.load();
  }

  result.lemma = std::move(report);
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  switch (config.kind) {
    case ExperimentKind::kDetection: return run_detection(config);
    case ExperimentKind::kSize: return run_size(config);
    case ExperimentKind::kHeight: return run_height(config);
    case ExperimentKind::kUniformity: return run_uniformity(config);
    case ExperimentKind::kTradeoff: return run_tradeoff(config);
    case ExperimentKind::kLemmaVerify: return run_lemma_verify(config);
  }
  throw std::invalid_argument("run_experiment: unknown kind");
}

ExactSmallN exact_detection_stats(Vertex n, int k) {
  ExactSmallN stats;
  const std::uint32_t rounds = rk_rounds(n, static_cast<std::uint32_t>(std::max(k, 0)));
  std::uint64_t missed = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t count = 0;
  for_each_increasing_tree(n, [&](const IncreasingTree& t) {
    const ConfidenceSet set = leaf_strip(Adjacency(t), rounds);
    if (!set.contains(1)) ++missed;
    const double size = static_cast<double>(set.size());
    sum += size;
    sum_sq += size * size;
    ++count;
  });
  stats.tree_count = count;
  stats.error_rate = static_cast<double>(missed) / static_cast<double>(count);
  stats.mean_size = sum / static_cast<double>(count);
  const double variance = sum_sq / static_cast<double>(count) - stats.mean_size * stats.mean_size;
  stats.sd_size = variance > 0.0 ? std::sqrt(variance) : 0.0;
  return stats;
}

std::string to_csv(const ExperimentResult& result) {
  std::string out = "trial,seed,captured,set_size,height,k,n\n";
  out.reserve(out.size() + result.records.size() * 40);
  const std::string n_str = std::to_string(result.config.n);
  for (const TrialRecord& rec : result.records) {
    out += std::to_string(rec.trial);
    out += ',';
    out += std::to_string(rec.seed);
    out += ',';
    out += rec.captured ? '1' : '0';
    out += ',';
    out += std::to_string(rec.set_size);
    out += ',';
    out += std::to_string(rec.height);
    out += ',';
    out += std::to_string(rec.k);
    out += ',';
    out += n_str;
    out += '\n';
  }
  return out;
}

std::string summary_json(const ExperimentResult& result) {
  nlohmann::json doc;
  doc["tool"] = "rrt";
  doc["version"] = kVersion;
  const ExperimentConfig& config = result.config;
  doc["config"] = {
      {"kind", kind_name(config.kind)},
      {"n", config.n},
      {"k_values", config.k_values},
      {"trials", config.trials},
      {"master_seed", config.master_seed},
      {"algorithm", algorithm_name(config.algorithm)},
      {"epsilon_grid", config.epsilon_grid},
      {"threads", config.threads},
      {"exhaustive", config.exhaustive},
      {"n_max", config.n_max},
  };
  if (!result.per_k.empty()) {
    nlohmann::json rows = nlohmann::json::array();
    for (const KSummary& s : result.per_k) {
      rows.push_back({
          {"k", s.k},
          {"rounds", s.rounds},
          {"trials", s.trials},
          {"error_rate", s.error_rate},
          {"error_ci", {s.error_ci.lo, s.error_ci.hi}},
          {"joint_rate", s.joint_rate},
          {"size_q50", s.quantiles.q50},
          {"size_q90", s.quantiles.q90},
          {"size_q99", s.quantiles.q99},
          {"size_max", s.quantiles.max},
          {"frac_size_ge_2pow4k", s.frac_size_ge_2pow4k},
      });
    }
    doc["per_k"] = std::move(rows);
  }
  if (result.height) {
    const HeightSummary& h = *result.height;
    nlohmann::json hist = nlohmann::json::object();
    for (const auto& [offset, count] : h.offset_hist) hist[std::to_string(offset)] = count;
    doc["height"] = {
        {"m_n", h.m},
        {"mean_height", h.mean_height},
        {"mean_offset", h.mean_offset},
        {"offset_histogram", std::move(hist)},
        {"tail_ge", h.tail_ge},
    };
  }
  if (result.uniformity) {
    const UniformityReport& u = *result.uniformity;
    doc["uniformity"] = {
        {"statistic", u.statistic}, {"dof", u.dof},   {"p_value", u.p_value},
        {"bins", u.bins},           {"exact", u.exact},
    };
  }
  if (!result.tradeoff.empty()) {
    nlohmann::json rows = nlohmann::json::array();
    for (const TradeoffPick& pick : result.tradeoff) {
      rows.push_back({
          {"epsilon", pick.epsilon},
          {"feasible", pick.feasible},
          {"k", pick.k},
          {"size_quantile", pick.size_quantile},
      });
    }
    doc["tradeoff"] = std::move(rows);
  }
  if (result.lemma) {
    nlohmann::json failures = nlohmann::json::array();
    for (const LemmaCheckFailure& f : result.lemma->failures) {
      failures.push_back({{"check", f.check}, {"witness", f.witness}});
    }
    doc["lemma_verify"] = {
        {"passed", result.lemma->passed},
        {"trees_checked", result.lemma->trees_checked},
        {"failures", std::move(failures)},
    };
  }
  return doc.dump(2) + "\n";
}

}  // namespace rrt
