// Microbenchmarks for the Monte Carlo hot path.
//
//   cmake --build build && ./build/benchmarks/bench_core

#include <benchmark/benchmark.h>

#include "rrt/rootfind.hpp"
#include "rrt/tree.hpp"
#include "rrt/ulam.hpp"

namespace {

using namespace rrt;

void BM_Generate(benchmark::State& state) {
  const auto n = static_cast<Vertex>(state.range(0));
  std::vector<Vertex> parent;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    generate_rrt_parents(n, seed++, parent);
    benchmark::DoNotOptimize(parent.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Generate)->Arg(1000)->Arg(100000)->Arg(1000000);

void BM_PeelProfile(benchmark::State& state) {
  const auto n = static_cast<Vertex>(state.range(0));
  std::vector<Vertex> parent;
  generate_rrt_parents(n, 7, parent);
  Adjacency adj;
  adj.assign(parent);
  PeelProfile profile;
  for (auto _ : state) {
    peel_profile(adj, profile);
    benchmark::DoNotOptimize(profile.removal_round.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_PeelProfile)->Arg(1000)->Arg(100000)->Arg(1000000);

void BM_SweepTrial(benchmark::State& state) {
  // generation + adjacency + peel + height: one full detection trial
  const auto n = static_cast<Vertex>(state.range(0));
  std::vector<Vertex> parent;
  std::vector<std::uint32_t> depth;
  Adjacency adj;
  PeelProfile profile;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    generate_rrt_parents(n, seed++, parent);
    adj.assign(parent);
    peel_profile(adj, profile);
    benchmark::DoNotOptimize(tree_height(parent, depth));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SweepTrial)->Arg(100000)->Arg(1000000);

void BM_Embed(benchmark::State& state) {
  const auto t = generate_rrt(static_cast<Vertex>(state.range(0)), 11);
  for (auto _ : state) {
    Embedding phi(t);
    benchmark::DoNotOptimize(phi.nodes().data());
  }
}
BENCHMARK(BM_Embed)->Arg(1000)->Arg(10000);

void BM_FlipTree(benchmark::State& state) {
  const auto t = generate_rrt(static_cast<Vertex>(state.range(0)), 13);
  for (auto _ : state) {
    const auto flipped = flip_tree(t, 4);
    benchmark::DoNotOptimize(flipped.parent_array().data());
  }
}
BENCHMARK(BM_FlipTree)->Arg(1000)->Arg(10000);

void BM_JordanScores(benchmark::State& state) {
  const auto t = generate_rrt(static_cast<Vertex>(state.range(0)), 17);
  const Adjacency adj(t);
  for (auto _ : state) {
    const auto scores = jordan_scores(adj);
    benchmark::DoNotOptimize(scores.data());
  }
}
BENCHMARK(BM_JordanScores)->Arg(1000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
