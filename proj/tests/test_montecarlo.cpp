#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include <json.hpp>

#include "rrt/montecarlo.hpp"
#include "rrt/rng.hpp"
#include "test_util.hpp"

using namespace rrt;

namespace {

ExperimentConfig sweep_config(ExperimentKind kind, std::uint64_t n, std::vector<int> ks,
                              std::uint64_t trials, std::uint64_t seed) {
  ExperimentConfig config;
  config.kind = kind;
  config.n = n;
  config.k_values = std::move(ks);
  config.trials = trials;
  config.master_seed = seed;
  return config;
}

}  // namespace

TEST_CASE("seed derivation is a frozen pure function") {
  CHECK(derive_seed(0, 0) == 16294208416658607535ull);
  CHECK(derive_seed(0, 1) == 7960286522194355700ull);
  CHECK(derive_seed(42, 0) == 13679457532755275413ull);
  CHECK(derive_seed(42, 7) == 14769051326987775908ull);

  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(derive_seed(1, i));
  CHECK(seen.size() == 10000);
}

TEST_CASE("rng stream is frozen") {
  Rng r(99);
  CHECK(r.next() == 6432450796990294708ull);
  CHECK(r.next() == 10403964113915512446ull);
  Rng r2(99);
  const std::vector<std::uint64_t> draws{3, 5, 3, 8, 7, 2, 2, 0};
  for (std::uint64_t want : draws) CHECK(r2.below(10) == want);
}

TEST_CASE("config validation") {
  ExperimentConfig config;
  config.kind = ExperimentKind::kDetection;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);  // no k values
  config.k_values = {1};
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);  // n = 0
  config.n = 10;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);  // trials = 0
  config.trials = 5;
  CHECK_NOTHROW(config.validate());
  config.k_values = {-1};
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.k_values = {1};
  config.epsilon_grid = {0.0};
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.epsilon_grid = {1.0, 0.2};
  CHECK_NOTHROW(config.validate());

  ExperimentConfig lemma;
  lemma.kind = ExperimentKind::kLemmaVerify;
  lemma.exhaustive = true;
  lemma.n_max = 20;
  CHECK_THROWS_AS(lemma.validate(), std::invalid_argument);
  lemma.n_max = 6;
  CHECK_NOTHROW(lemma.validate());
}

TEST_CASE("kind names round trip") {
  for (ExperimentKind kind :
       {ExperimentKind::kDetection, ExperimentKind::kSize, ExperimentKind::kHeight,
        ExperimentKind::kUniformity, ExperimentKind::kTradeoff, ExperimentKind::kLemmaVerify}) {
    CHECK(kind_from_name(kind_name(kind)) == kind);
  }
  CHECK(kind_from_name("verify") == ExperimentKind::kLemmaVerify);
  CHECK_FALSE(kind_from_name("nope").has_value());
}

TEST_CASE("detection at n=3 against the enumeration oracle") {
  // m_3 = 3. k = 3 gives zero rounds: error is exactly 0.
  auto result = run_detection(sweep_config(ExperimentKind::kDetection, 3, {3}, 500, 7));
  CHECK(result.per_k[0].error_rate == 0.0);
  CHECK(result.per_k[0].rounds == 0);
  CHECK(result.per_k[0].quantiles.max == 3);

  // k = 2 gives one round: exactly half of the two trees keep the root.
  const auto exact = exact_detection_stats(3, 2);
  CHECK(exact.error_rate == 0.5);
  CHECK(exact.tree_count == 2);

  result = run_detection(sweep_config(ExperimentKind::kDetection, 3, {2}, 20000, 7));
  const double se = std::sqrt(0.25 / 20000.0);
  CHECK(std::abs(result.per_k[0].error_rate - 0.5) <= 3.0 * se);
}

TEST_CASE("exact small-n stats match hand counts") {
  // n=5, one round (k=3): the root survives iff it has >= 2 children,
  // and exactly 6 of the 24 trees give it a single child.
  const auto stats = exact_detection_stats(5, 3);
  CHECK(stats.tree_count == 24);
  CHECK(stats.error_rate == doctest::Approx(0.25));
}

TEST_CASE("monte carlo matches enumeration within 3 standard errors") {
  for (Vertex n : {5u, 6u, 7u}) {
    for (int rounds_back : {1, 2}) {
      const int k = m_n(n) - rounds_back;
      REQUIRE(k >= 0);
      const auto exact = exact_detection_stats(n, k);
      const std::uint64_t trials = 40000;
      const auto result =
          run_detection(sweep_config(ExperimentKind::kDetection, n, {k}, trials, 99));
      const double p = exact.error_rate;
      const double se_p = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
      CHECK(std::abs(result.per_k[0].error_rate - p) <= std::max(3.0 * se_p, 1e-12));

      double mean_size = 0.0;
      for (std::uint64_t trial = 0; trial < trials; ++trial) {
        mean_size += static_cast<double>(result.records[trial].set_size);
      }
      mean_size /= static_cast<double>(trials);
      const double se_m = exact.sd_size / std::sqrt(static_cast<double>(trials));
      CHECK(std::abs(mean_size - exact.mean_size) <= std::max(3.0 * se_m, 1e-12));
    }
  }
}

TEST_CASE("records are reproducible and thread-count independent") {
  for (ExperimentKind kind :
       {ExperimentKind::kDetection, ExperimentKind::kHeight, ExperimentKind::kUniformity}) {
    auto config = sweep_config(kind, 500, {1, 3}, 400, 2024);
    if (kind != ExperimentKind::kDetection) config.k_values.clear();
    config.threads = 1;
    const auto one = run_experiment(config);
    config.threads = 4;
    const auto four = run_experiment(config);
    REQUIRE(one.records.size() == four.records.size());
    for (std::size_t i = 0; i < one.records.size(); ++i) {
      REQUIRE(one.records[i].seed == four.records[i].seed);
      REQUIRE(one.records[i].set_size == four.records[i].set_size);
      REQUIRE(one.records[i].captured == four.records[i].captured);
      REQUIRE(one.records[i].height == four.records[i].height);
    }
    CHECK(to_csv(one) == to_csv(four));
  }
}

TEST_CASE("zero rounds keep the whole tree") {
  const auto config = sweep_config(ExperimentKind::kSize, 50, {100}, 64, 5);
  const auto result = run_size(config);
  CHECK(result.per_k[0].rounds == 0);
  CHECK(result.per_k[0].error_rate == 0.0);
  CHECK(result.per_k[0].quantiles.q50 == 50);
  CHECK(result.per_k[0].quantiles.max == 50);
}

TEST_CASE("summary sanity on a random run") {
  const auto result =
      run_detection(sweep_config(ExperimentKind::kDetection, 300, {1, 2, 3}, 500, 31));
  for (const auto& s : result.per_k) {
    CHECK(s.error_rate >= 0.0);
    CHECK(s.error_rate <= 1.0);
    CHECK(s.error_ci.lo <= s.error_rate);
    CHECK(s.error_ci.hi >= s.error_rate);
    CHECK(s.quantiles.q50 <= s.quantiles.q90);
    CHECK(s.quantiles.q90 <= s.quantiles.q99);
    CHECK(s.quantiles.q99 <= s.quantiles.max);
  }
}

TEST_CASE("height experiment") {
  SUBCASE("n=1 is a constant offset of -1") {
    auto config = sweep_config(ExperimentKind::kHeight, 1, {}, 50, 3);
    const auto result = run_height(config);
    REQUIRE(result.height.has_value());
    CHECK(result.height->m == 1);
    CHECK(result.height->mean_offset == doctest::Approx(-1.0));
    CHECK(result.height->offset_hist.at(-1) == 50);
  }
  SUBCASE("tails are non-increasing") {
    auto config = sweep_config(ExperimentKind::kHeight, 2000, {}, 2000, 77);
    const auto result = run_height(config);
    REQUIRE(result.height.has_value());
    const auto& tail = result.height->tail_ge;
    REQUIRE(!tail.empty());
    CHECK(tail[0] == doctest::Approx(1.0));
    for (std::size_t j = 1; j < tail.size(); ++j) REQUIRE(tail[j] <= tail[j - 1]);
  }
}

TEST_CASE("uniformity experiment") {
  SUBCASE("exact enumeration is perfectly uniform") {
    ExperimentConfig config;
    config.kind = ExperimentKind::kUniformity;
    config.n = 3;
    config.exhaustive = true;
    const auto result = run_uniformity(config);
    REQUIRE(result.uniformity.has_value());
    CHECK(result.uniformity->statistic == 0.0);
    CHECK(result.uniformity->exact);
    CHECK(result.uniformity->p_value == 1.0);
  }
  SUBCASE("degenerate n=2") {
    auto config = sweep_config(ExperimentKind::kUniformity, 2, {}, 100, 1);
    const auto result = run_uniformity(config);
    REQUIRE(result.uniformity.has_value());
    CHECK(result.uniformity->bins == 1);
    CHECK(result.uniformity->p_value == 1.0);
    for (const auto& rec : result.records) CHECK(rec.set_size == 1);
  }
  SUBCASE("n=1000 does not reject at 1e-3") {
    auto config = sweep_config(ExperimentKind::kUniformity, 1000, {}, 100000, 12345);
    const auto result = run_uniformity(config);
    REQUIRE(result.uniformity.has_value());
    CHECK(result.uniformity->p_value > 1e-3);
  }
}

TEST_CASE("tradeoff picks") {
  auto config = sweep_config(ExperimentKind::kTradeoff, 300, {1, 2, 3, 4, 5, 6, 7}, 400, 8);
  config.epsilon_grid = {1.0, 0.5};
  const auto result = run_tradeoff(config);
  REQUIRE(result.tradeoff.size() == 2);
  // epsilon = 1 is satisfied by the smallest k in the sweep
  CHECK(result.tradeoff[0].feasible);
  CHECK(result.tradeoff[0].k == 1);
  if (result.tradeoff[1].feasible) {
    CHECK(result.tradeoff[1].k >= result.tradeoff[0].k);
  }
}

TEST_CASE("lemma verification") {
  SUBCASE("exhaustive n <= 6") {
    ExperimentConfig config;
    config.kind = ExperimentKind::kLemmaVerify;
    config.exhaustive = true;
    config.n_max = 6;
    config.k_values = {1};
    const auto result = run_lemma_verify(config);
    REQUIRE(result.lemma.has_value());
    CHECK(result.lemma->passed);
    CHECK(result.lemma->failures.empty());
    CHECK(result.lemma->trees_checked == 1 + 1 + 2 + 6 + 24 + 120);
    CHECK(result.success());
  }
  SUBCASE("sampled mode") {
    auto config = sweep_config(ExperimentKind::kLemmaVerify, 300, {1, 2}, 50, 4);
    const auto result = run_lemma_verify(config);
    REQUIRE(result.lemma.has_value());
    CHECK(result.lemma->passed);
    CHECK(result.lemma->trees_checked == 50);
  }
}

TEST_CASE("csv shape") {
  const auto result = run_detection(sweep_config(ExperimentKind::kDetection, 20, {1, 2}, 3, 6));
  const std::string csv = to_csv(result);
  CHECK(csv.starts_with("trial,seed,captured,set_size,height,k,n\n"));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 3 * 2);
  // trial-major, k ascending within a trial
  CHECK(result.records[0].trial == 0);
  CHECK(result.records[0].k == 1);
  CHECK(result.records[1].trial == 0);
  CHECK(result.records[1].k == 2);
  CHECK(result.records[2].trial == 1);
}

TEST_CASE("summary json parses and echoes the config") {
  auto config = sweep_config(ExperimentKind::kDetection, 25, {1, 2}, 10, 123456789);
  config.epsilon_grid = {0.5};
  const auto result = run_detection(config);
  const auto doc = nlohmann::json::parse(summary_json(result));
  CHECK(doc["tool"] == "rrt");
  CHECK(doc["config"]["kind"] == "detection");
  CHECK(doc["config"]["n"] == 25);
  CHECK(doc["config"]["master_seed"] == 123456789);
  CHECK(doc["per_k"].size() == 2);
  CHECK(doc["per_k"][0]["k"] == 1);
  CHECK(doc["per_k"][0].contains("error_ci"));
}
