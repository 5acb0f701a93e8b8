#include "vpm/experiment.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "vpm/bvpm.hpp"
#include "vpm/dispatch.hpp"
#include "vpm/generate.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vpm {

namespace {

constexpr long long kCellScenarioCap = 1LL << 20;

}  // namespace

std::vector<ExperimentCell> run_diversity_experiment(const ExperimentConfig& config) {
  struct CellSpec {
    long long m;
    int q;
    double epsilon;
  };
  std::vector<CellSpec> specs;
  for (long long m : config.voter_counts)
    for (int q : config.group_counts)
      for (double eps : config.epsilons) specs.push_back({m, q, eps});

  const ScoringRule rule =
      config.scoring == "plurality" ? ScoringRule::plurality(config.candidates)
      : config.scoring == "veto"    ? ScoringRule::veto(config.candidates)
      : config.scoring == "borda"   ? ScoringRule::borda(config.candidates)
                                    : ScoringRule::k_approval(config.candidates, config.approval_k);
  const ScorePartition partition = score_partition(rule, config.objective);
  const long long r = partition.unique_count();

  std::vector<ExperimentCell> cells(specs.size());
  // Cells are independent; results merge by index so the table is identical
  // however many workers run.
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (config.parallel)
#endif
  for (size_t idx = 0; idx < specs.size(); ++idx) {
    const CellSpec& spec = specs[idx];
    ExperimentCell cell;
    cell.m = spec.m;
    cell.q = spec.q;
    cell.epsilon = spec.epsilon;

    double scen = 1;
    for (int g = 0; g < spec.q; ++g) scen *= static_cast<double>(r);
    if (spec.q > spec.m || scen > static_cast<double>(kCellScenarioCap)) {
      cell.skipped = true;
      cell.scenarios = scen > static_cast<double>(kCellScenarioCap) ? kCellScenarioCap : 0;
      cell.yes_rate = std::nan("");
      cell.mean_ms = std::nan("");
      cells[idx] = cell;
      continue;
    }

    RandomInstanceSpec gen;
    gen.issue_space = config.issue_space;
    gen.dimension = config.dimension;
    gen.candidates = config.candidates;
    gen.voters = spec.m;
    gen.groups = spec.q;
    gen.norm = config.norm;
    gen.scoring = config.scoring;
    gen.approval_k = config.approval_k;
    gen.objective = config.objective;
    gen.epsilon = spec.epsilon;

    long long yes = 0;
    double total_ms = 0;
    for (int trial = 0; trial < config.trials; ++trial) {
      const uint64_t seed = config.seed + 1000003ULL * idx + trial;
      const Instance inst = random_instance(gen, seed);
      SolveOptions opt;
      opt.parallel = false;  // cells already occupy the worker pool
      const auto t0 = std::chrono::steady_clock::now();
      const Verdict verdict = solve_with(inst, "auto", opt);
      const auto t1 = std::chrono::steady_clock::now();
      total_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();
      yes += verdict.yes;
      cell.scenarios = verdict.scenarios_total;
    }
    cell.trials = config.trials;
    cell.yes_rate = config.trials > 0 ? static_cast<double>(yes) / config.trials : 0;
    cell.mean_ms = config.trials > 0 ? total_ms / config.trials : 0;
    cells[idx] = cell;
  }
  return cells;
}

std::string experiment_csv(const ExperimentConfig& config,
                           const std::vector<ExperimentCell>& cells) {
  std::ostringstream out;
  out << "issue_space,norm,objective,m,q,epsilon,trials,yes_rate,mean_ms,scenarios\n";
  out.precision(17);
  for (const ExperimentCell& cell : cells) {
    out << to_string(config.issue_space) << "," << config.norm.str() << ","
        << to_string(config.objective) << "," << cell.m << "," << cell.q << "," << cell.epsilon
        << "," << cell.trials << ",";
    if (cell.skipped)
      out << "nan,nan," << cell.scenarios;
    else
      out << cell.yes_rate << "," << cell.mean_ms << "," << cell.scenarios;
    out << "\n";
  }
  return out.str();
}

}  // namespace vpm
