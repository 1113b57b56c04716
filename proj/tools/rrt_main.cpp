// Command-line front end: generation, stripping, embedding inspection,
// flipping, and seeded Monte Carlo experiments.
//
// Exit codes: 0 success, 1 usage error, 2 runtime or verification failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rrt/montecarlo.hpp"
#include "rrt/rootfind.hpp"
#include "rrt/tree.hpp"
#include "rrt/tree_io.hpp"
#include "rrt/ulam.hpp"
#include "rrt/version.hpp"

namespace {

using namespace rrt;

// Flat key=value (or "key value") config file mirroring the long flags;
// '#' lines are comments. Command-line flags override file values.
std::map<std::string, std::string> read_flat_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config file " + path);
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos || line[begin] == '#') continue;
    auto sep = line.find('=');
    if (sep == std::string::npos) sep = line.find_first_of(" \t", begin);
    if (sep == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value");
    }
    auto trim = [](std::string s) {
      const auto first = s.find_first_not_of(" \t\r");
      if (first == std::string::npos) return std::string{};
      const auto last = s.find_last_not_of(" \t\r");
      return s.substr(first, last - first + 1);
    };
    const std::string key = trim(line.substr(0, sep));
    const std::string value = trim(line.substr(sep + 1));
    if (key.empty() || value.empty()) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value");
    }
    out[key] = value;
  }
  return out;
}

bool parse_bool(const std::string& value) {
  if (value == "1" || value == "true" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "no") return false;
  throw std::invalid_argument("expected a boolean, got '" + value + "'");
}

std::vector<double> parse_double_list(const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string token;
  while (std::getline(ss, token, ',')) out.push_back(std::stod(token));
  return out;
}

std::vector<int> parse_k_sweep(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return {std::stoi(spec)};
  const int lo = std::stoi(spec.substr(0, colon));
  const int hi = std::stoi(spec.substr(colon + 1));
  if (hi < lo) throw std::invalid_argument("--k sweep a:b needs a <= b");
  std::vector<int> ks;
  for (int k = lo; k <= hi; ++k) ks.push_back(k);
  return ks;
}

std::string format_row(const KSummary& s) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "k=%d rounds=%u error=%.6f ci=[%.6f,%.6f] joint=%.6f q50=%llu q90=%llu "
                "q99=%llu max=%llu frac_ge_2pow4k=%.6f",
                s.k, s.rounds, s.error_rate, s.error_ci.lo, s.error_ci.hi, s.joint_rate,
                static_cast<unsigned long long>(s.quantiles.q50),
                static_cast<unsigned long long>(s.quantiles.q90),
                static_cast<unsigned long long>(s.quantiles.q99),
                static_cast<unsigned long long>(s.quantiles.max), s.frac_size_ge_2pow4k);
  return buf;
}

void print_result(const ExperimentResult& result) {
  for (const KSummary& s : result.per_k) std::cout << format_row(s) << '\n';
  if (result.height) {
    const HeightSummary& h = *result.height;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "m_n=%d mean_height=%.4f mean_offset=%.4f", h.m,
                  h.mean_height, h.mean_offset);
    std::cout << buf << '\n';
  }
  if (result.uniformity) {
    const UniformityReport& u = *result.uniformity;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "chi2=%.6f dof=%llu p_value=%.6g bins=%llu exact=%d",
                  u.statistic, static_cast<unsigned long long>(u.dof), u.p_value,
                  static_cast<unsigned long long>(u.bins), u.exact ? 1 : 0);
    std::cout << buf << '\n';
  }
  for (const TradeoffPick& pick : result.tradeoff) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "epsilon=%.6f feasible=%d k=%d size_quantile=%llu",
                  pick.epsilon, pick.feasible ? 1 : 0, pick.k,
                  static_cast<unsigned long long>(pick.size_quantile));
    std::cout << buf << '\n';
  }
  if (result.lemma) {
    std::cout << "lemma-verify passed=" << (result.lemma->passed ? 1 : 0)
              << " trees_checked=" << result.lemma->trees_checked << '\n';
    for (const LemmaCheckFailure& f : result.lemma->failures) {
      std::cout << "FAIL " << f.check << ": " << f.witness << '\n';
    }
  }
}

void write_experiment_outputs(const ExperimentResult& result, const std::string& out) {
  if (result.config.kind == ExperimentKind::kLemmaVerify) {
    write_file_atomic(out, summary_json(result));
    return;
  }
  write_file_atomic(out, to_csv(result));
  std::filesystem::path json_path(out);
  json_path.replace_extension(".json");
  write_file_atomic(json_path, summary_json(result));
}

int run_config(const ExperimentConfig& config, const std::string& out) {
  const ExperimentResult result = run_experiment(config);
  print_result(result);
  if (!out.empty()) write_experiment_outputs(result, out);
  if (!result.success() && out.empty()) {
    std::cout << summary_json(result);  // machine-readable failure report
  }
  return result.success() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"leaf-stripping root finding in uniform attachment trees"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a uniform attachment tree");
  std::uint64_t gen_n = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--n", gen_n, "Tree size")->required();
  gen->add_option("--seed", gen_seed, "PRNG seed");
  gen->add_option("--out", gen_out, "Output edge-list path")->required();

  // strip
  auto* strip = app.add_subcommand("strip", "Leaf-strip a tree and print survivors");
  std::string strip_in;
  int strip_k = 0;
  std::int64_t strip_rounds = -1;
  std::string strip_format = "plain";
  strip->add_option("input", strip_in, "Edge-list file")->required();
  auto* opt_k = strip->add_option("--k", strip_k, "Strip for m_n - k rounds");
  auto* opt_rounds = strip->add_option("--rounds", strip_rounds, "Explicit round count");
  opt_k->excludes(opt_rounds);
  opt_rounds->excludes(opt_k);
  strip->add_option("--format", strip_format, "Output format: plain | lines")
      ->check(CLI::IsMember({"plain", "lines"}));

  // embed
  auto* embed = app.add_subcommand("embed", "Print the Ulam-Harris embedding of a tree");
  std::string embed_in;
  std::string embed_out;
  embed->add_option("input", embed_in, "Edge-list file (increasing tree)")->required();
  embed->add_option("--out", embed_out, "Write dump here instead of stdout");

  // flip
  auto* flip = app.add_subcommand("flip", "Apply the zone-4k flipping involution");
  std::string flip_in;
  int flip_k = 0;
  std::string flip_out;
  flip->add_option("input", flip_in, "Edge-list file (increasing tree)")->required();
  flip->add_option("--k", flip_k, "Flip up to zone 4k")->required();
  flip->add_option("--out", flip_out, "Output edge-list path")->required();

  // experiment
  auto* exp = app.add_subcommand("experiment", "Run a seeded Monte Carlo experiment");
  std::string exp_config;
  std::string exp_kind;
  std::uint64_t exp_n = 0;
  std::string exp_k;
  std::uint64_t exp_trials = 0;
  std::uint64_t exp_seed = 0;
  std::string exp_algorithm = "leafstrip";
  std::string exp_out;
  unsigned exp_threads = 0;
  std::vector<double> exp_eps;
  bool exp_exhaustive = false;
  std::uint64_t exp_nmax = 7;
  exp->add_option("--config", exp_config, "Flat key=value file mirroring the long flags");
  auto* exp_kind_opt =
      exp->add_option("--kind", exp_kind,
                      "detection | size | height | uniformity | tradeoff | lemma-verify");
  auto* exp_n_opt = exp->add_option("--n", exp_n, "Tree size");
  auto* exp_k_opt = exp->add_option("--k", exp_k, "k value or inclusive sweep a:b");
  auto* exp_trials_opt = exp->add_option("--trials", exp_trials, "Number of trials");
  auto* exp_seed_opt = exp->add_option("--seed", exp_seed, "Master seed");
  auto* exp_algo_opt =
      exp->add_option("--algorithm", exp_algorithm, "leafstrip | jordan | greedy");
  auto* exp_out_opt =
      exp->add_option("--out", exp_out, "CSV output path (JSON summary written alongside)");
  auto* exp_threads_opt = exp->add_option("--threads", exp_threads, "Worker threads (0 = hardware)");
  auto* exp_eps_opt = exp->add_option("--epsilon-grid", exp_eps, "Comma-separated epsilon values")
                          ->delimiter(',');
  auto* exp_exh_opt = exp->add_flag("--exhaustive", exp_exhaustive, "Exact enumeration mode (small n)");
  auto* exp_nmax_opt = exp->add_option("--n-max", exp_nmax, "Largest n in exhaustive mode");

  // verify: shortcut for experiment --kind lemma-verify
  auto* verify = app.add_subcommand("verify", "Run the lemma verification suite");
  std::uint64_t ver_n = 0;
  std::string ver_k;
  std::uint64_t ver_trials = 0;
  std::uint64_t ver_seed = 0;
  std::string ver_out;
  unsigned ver_threads = 0;
  bool ver_exhaustive = false;
  std::uint64_t ver_nmax = 7;
  verify->add_option("--n", ver_n, "Tree size (sampled mode)");
  verify->add_option("--k", ver_k, "k value or inclusive sweep a:b");
  verify->add_option("--trials", ver_trials, "Sampled trees (sampled mode)");
  verify->add_option("--seed", ver_seed, "Master seed");
  verify->add_option("--out", ver_out, "JSON report path");
  verify->add_option("--threads", ver_threads, "Worker threads (0 = hardware)");
  verify->add_flag("--exhaustive", ver_exhaustive, "Check every tree with n <= n-max");
  verify->add_option("--n-max", ver_nmax, "Largest n in exhaustive mode");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (gen->parsed()) {
      const IncreasingTree t = generate_rrt(static_cast<Vertex>(gen_n), gen_seed);
      write_file_atomic(gen_out, to_edge_list(t));
      return 0;
    }
    if (strip->parsed()) {
      const UnrootedTree t = read_unrooted_tree_file(strip_in);
      std::uint32_t rounds = 0;
      if (opt_k->count() > 0) {
        if (strip_k < 0) throw std::invalid_argument("--k must be >= 0");
        rounds = rk_rounds(t.n, static_cast<std::uint32_t>(strip_k));
      } else if (opt_rounds->count() > 0) {
        if (strip_rounds < 0) throw std::invalid_argument("--rounds must be >= 0");
        rounds = static_cast<std::uint32_t>(strip_rounds);
      } else {
        throw std::invalid_argument("strip: exactly one of --k / --rounds is required");
      }
      const ConfidenceSet survivors = leaf_strip(t, rounds);
      if (strip_format == "lines") {
        for (Vertex v : survivors.vertices) std::cout << v << '\n';
      } else if (!survivors.vertices.empty()) {
        for (std::size_t i = 0; i < survivors.vertices.size(); ++i) {
          std::cout << (i ? " " : "") << survivors.vertices[i];
        }
        std::cout << '\n';
      }
      return 0;
    }
    if (embed->parsed()) {
      const IncreasingTree t = read_increasing_tree_file(embed_in);
      const std::string dump = embedding_dump(t, Embedding(t));
      if (embed_out.empty()) {
        std::cout << dump;
      } else {
        write_file_atomic(embed_out, dump);
      }
      return 0;
    }
    if (flip->parsed()) {
      if (flip_k < 1) throw std::invalid_argument("flip: --k must be >= 1");
      const IncreasingTree t = read_increasing_tree_file(flip_in);
      const IncreasingTree flipped = flip_tree(t, 4 * static_cast<std::uint32_t>(flip_k));
      write_file_atomic(flip_out, to_edge_list(flipped));
      return 0;
    }
    if (exp->parsed()) {
      if (!exp_config.empty()) {
        // file values fill in anything not given on the command line
        for (const auto& [key, value] : read_flat_config(exp_config)) {
          if (key == "kind" && exp_kind_opt->count() == 0) exp_kind = value;
          else if (key == "n" && exp_n_opt->count() == 0) exp_n = std::stoull(value);
          else if (key == "k" && exp_k_opt->count() == 0) exp_k = value;
          else if (key == "trials" && exp_trials_opt->count() == 0) exp_trials = std::stoull(value);
          else if (key == "seed" && exp_seed_opt->count() == 0) exp_seed = std::stoull(value);
          else if (key == "algorithm" && exp_algo_opt->count() == 0) exp_algorithm = value;
          else if (key == "out" && exp_out_opt->count() == 0) exp_out = value;
          else if (key == "threads" && exp_threads_opt->count() == 0)
            exp_threads = static_cast<unsigned>(std::stoul(value));
          else if (key == "epsilon-grid" && exp_eps_opt->count() == 0)
            exp_eps = parse_double_list(value);
          else if (key == "exhaustive" && exp_exh_opt->count() == 0)
            exp_exhaustive = parse_bool(value);
          else if (key == "n-max" && exp_nmax_opt->count() == 0) exp_nmax = std::stoull(value);
          else if (key != "kind" && key != "n" && key != "k" && key != "trials" &&
                   key != "seed" && key != "algorithm" && key != "out" && key != "threads" &&
                   key != "epsilon-grid" && key != "exhaustive" && key != "n-max")
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
      }
      if (exp_kind.empty()) throw std::invalid_argument("--kind is required");
      ExperimentConfig config;
      const auto kind = kind_from_name(exp_kind);
      if (!kind) throw std::invalid_argument("unknown --kind '" + exp_kind + "'");
      config.kind = *kind;
      config.n = exp_n;
      if (!exp_k.empty()) config.k_values = parse_k_sweep(exp_k);
      config.trials = exp_trials;
      config.master_seed = exp_seed;
      const auto algo = algorithm_from_name(exp_algorithm);
      if (!algo) throw std::invalid_argument("unknown --algorithm '" + exp_algorithm + "'");
      config.algorithm = *algo;
      config.epsilon_grid = exp_eps;
      config.threads = exp_threads;
      config.exhaustive = exp_exhaustive;
      config.n_max = static_cast<Vertex>(exp_nmax);
      return run_config(config, exp_out);
    }
    if (verify->parsed()) {
      ExperimentConfig config;
      config.kind = ExperimentKind::kLemmaVerify;
      config.n = ver_n;
      if (!ver_k.empty()) config.k_values = parse_k_sweep(ver_k);
      config.trials = ver_trials;
      config.master_seed = ver_seed;
      config.threads = ver_threads;
      config.exhaustive = ver_exhaustive;
      config.n_max = static_cast<Vertex>(ver_nmax);
      return run_config(config, ver_out);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
