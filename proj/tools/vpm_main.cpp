// Command-line front end: solve/verify/oracle plus instance generators and
// the opinion-diversity experiment runner.
//
// Exit codes for solve/oracle: 0 = YES, 1 = NO, 2 = refused/unsupported,
// 3 = error. verify: 0 = certified, 1 = rejected, 3 = error.

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "vpm/balls.hpp"
#include "vpm/boxes.hpp"
#include "vpm/bvpm.hpp"
#include "vpm/dispatch.hpp"
#include "vpm/experiment.hpp"
#include "vpm/generate.hpp"
#include "vpm/io.hpp"
#include "vpm/oracle.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace vpm;

Json vec_json(const Vec& v) {
  Json arr = Json::array();
  for (double x : v) arr.push_back(x);
  return arr;
}

void emit(const std::string& format, const Json& doc, const std::string& text) {
  if (format == "json")
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << text;
}

NormSpec parse_norm_flag(const std::string& s) {
  if (s == "inf") return NormSpec::linf();
  return NormSpec::lp(std::stoi(s));
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    save_text(path, text);
}

int run_solve(const std::string& instance_path, const std::string& solver,
              const std::string& format, double timeout, bool serial) {
  const ParsedInstance parsed = load_instance(instance_path);
  for (const std::string& w : parsed.warnings) std::cerr << "warning: " << w << "\n";

  SolveOptions opt;
  opt.parallel = !serial;
  opt.timeout_seconds = timeout;

  const auto t0 = std::chrono::steady_clock::now();
  const Verdict verdict = solve_with(parsed.instance, solver, opt);
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  Json doc;
  doc["decision"] = verdict.yes ? "YES" : "NO";
  doc["solver"] = verdict.solver;
  doc["time_ms"] = ms;
  doc["scenarios_total"] = verdict.scenarios_total;
  doc["scenarios_solved"] = verdict.scenarios_solved;
  doc["points_examined"] = verdict.points_examined;
  std::ostringstream text;
  text << "decision: " << (verdict.yes ? "YES" : "NO") << "\n"
       << "solver: " << verdict.solver << "\n"
       << "time_ms: " << ms << "\n"
       << "scenarios: " << verdict.scenarios_total << "\n";
  if (verdict.yes) {
    const Certification cert = verify_witness(parsed.instance, verdict.witness);
    doc["witness"] = vec_json(verdict.witness);
    doc["certified"] = cert.pass();
    doc["budget_slack"] = cert.budget_slack;
    doc["scores"] = vec_json(verdict.scores);
    text << "witness:";
    for (double x : verdict.witness) text << " " << x;
    text << "\ncertified: " << (cert.pass() ? "yes" : "NO (" + cert.failure + ")") << "\n";
    text << "budget_slack: " << cert.budget_slack << "\nscores:";
    for (double s : verdict.scores) text << " " << s;
    text << "\n";
    if (!cert.pass()) {
      emit(format, doc, text.str());
      return 3;  // a solver YES must certify
    }
  }
  emit(format, doc, text.str());
  return verdict.yes ? 0 : 1;
}

int run_oracle(const std::string& instance_path, long long samples, uint64_t seed,
               const std::string& format) {
  const ParsedInstance parsed = load_instance(instance_path);
  const Instance& inst = parsed.instance;
  OracleReport rep;
  std::string engine;
  if (inst.issue_space == IssueSpace::binary) {
    rep = brute_force_bvpm(inst);
    engine = "brute-force";
  } else if (inst.norm.is_inf()) {
    rep = endpoint_oracle_linf(inst);
    engine = "endpoint-grid";
  } else {
    rep = sampling_oracle(inst, samples, seed);
    engine = "sampling";
  }

  Json doc;
  doc["decision"] = rep.yes ? "YES" : (rep.exhaustive ? "NO" : "not found");
  doc["engine"] = engine;
  doc["exhaustive"] = rep.exhaustive;
  doc["points_examined"] = rep.points_examined;
  std::ostringstream text;
  text << "decision: " << doc["decision"].get<std::string>() << "\n"
       << "engine: " << engine << "\n"
       << "exhaustive: " << (rep.exhaustive ? "true" : "false") << "\n"
       << "points_examined: " << rep.points_examined << "\n";
  if (rep.yes) {
    doc["witness"] = vec_json(rep.witness);
    text << "witness:";
    for (double x : rep.witness) text << " " << x;
    text << "\n";
  }
  emit(format, doc, text.str());
  return rep.yes ? 0 : 1;
}

int run_verify(const std::string& instance_path, const std::string& witness_text,
               const std::string& format) {
  const ParsedInstance parsed = load_instance(instance_path);
  std::string payload = witness_text;
  if (!payload.empty() && payload[0] == '@') payload = read_text(payload.substr(1));
  const Json arr = Json::parse(payload);
  Vec witness;
  for (const auto& x : arr) witness.push_back(x.get<double>());

  const Certification cert = verify_witness(parsed.instance, witness);
  Json doc;
  doc["certified"] = cert.pass();
  doc["budget_ok"] = cert.budget_ok;
  doc["outcome_ok"] = cert.outcome_ok;
  doc["measured_distance"] = cert.measured_distance;
  doc["budget_slack"] = cert.budget_slack;
  doc["scores"] = vec_json(cert.tally.scores);
  if (!cert.pass()) doc["failure"] = cert.failure;
  std::ostringstream text;
  text << "certified: " << (cert.pass() ? "yes" : "no") << "\n"
       << "budget_ok: " << cert.budget_ok << " (distance " << cert.measured_distance << ")\n"
       << "outcome_ok: " << cert.outcome_ok << "\nscores:";
  for (double s : cert.tally.scores) text << " " << s;
  text << "\n";
  if (!cert.pass()) text << "failure: " << cert.failure << "\n";
  emit(format, doc, text.str());
  return cert.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"election control by perception manipulation in spatial voting"};
  app.require_subcommand(1);

  // solve
  std::string instance_path, solver = "auto", format = "text";
  double timeout = 0;
  bool serial = false;
  auto* solve = app.add_subcommand("solve", "solve an instance file");
  solve->add_option("instance", instance_path, "instance JSON path")->required();
  solve->add_option("--solver", solver,
                    "auto|bvpm|two-cand|linf-issues|linf-voters|l2-issues|l2-voters|oracle");
  solve->add_option("--output", format, "text|json");
  solve->add_option("--timeout", timeout, "soft wall-clock limit in seconds");
  solve->add_flag("--serial", serial, "disable the parallel scenario scan");

  // verify
  std::string witness_text;
  auto* verify = app.add_subcommand("verify", "certify a witness against an instance");
  verify->add_option("instance", instance_path, "instance JSON path")->required();
  verify->add_option("--witness", witness_text, "JSON array, or @file")->required();
  verify->add_option("--output", format, "text|json");

  // oracle
  long long samples = 1000000;
  uint64_t seed = 1;
  auto* oracle = app.add_subcommand("oracle", "ground-truth engines");
  oracle->add_option("instance", instance_path, "instance JSON path")->required();
  oracle->add_option("--samples", samples, "sample count for the one-sided engine");
  oracle->add_option("--seed", seed, "sampling seed");
  oracle->add_option("--output", format, "text|json");

  // gen-random
  RandomInstanceSpec gen;
  std::string gen_space = "binary", gen_norm = "1", gen_objective = "constructive";
  std::string out_path;
  auto* gen_random = app.add_subcommand("gen-random", "seeded random instance");
  gen_random->add_option("--issue-space", gen_space, "binary|real");
  gen_random->add_option("--dim", gen.dimension, "issue count");
  gen_random->add_option("--candidates", gen.candidates, "candidate count");
  gen_random->add_option("--voters", gen.voters, "voter count");
  gen_random->add_option("--groups", gen.groups, "distinct opinion count (0 = diverse)");
  gen_random->add_option("--norm", gen_norm, "p or inf");
  gen_random->add_option("--epsilon", gen.epsilon, "budget");
  gen_random->add_option("--objective", gen_objective, "constructive|destructive");
  gen_random->add_option("--scoring", gen.scoring, "plurality|veto|borda|k_approval");
  gen_random->add_option("--k", gen.approval_k, "k for k_approval");
  gen_random->add_option("--seed", seed, "rng seed");
  gen_random->add_option("--out", out_path, "output path (default stdout)");

  // gen-sat
  std::string cnf_path, variant = "destructive-linf", decoder_out;
  int lp_order = 2;
  auto* gen_sat = app.add_subcommand("gen-sat", "instance from a DIMACS 3-CNF");
  gen_sat->add_option("cnf", cnf_path, "DIMACS CNF path")->required();
  gen_sat->add_option("--variant", variant,
                      "destructive-linf|constructive-linf|destructive-lp|constructive-lp");
  gen_sat->add_option("--p", lp_order, "norm order for the lp variants");
  gen_sat->add_option("--out", out_path, "output path (default stdout)");
  gen_sat->add_option("--decoder-out", decoder_out, "write decoder metadata JSON here");

  // gen-bisc
  int bisc_dim = 4, bisc_voters = 3, bisc_p = 1;
  auto* gen_bisc = app.add_subcommand("gen-bisc", "random issue-subset instance, reduced");
  gen_bisc->add_option("--dim", bisc_dim, "issue count");
  gen_bisc->add_option("--voters", bisc_voters, "voter count");
  gen_bisc->add_option("--p", bisc_p, "norm order of the emitted instance");
  gen_bisc->add_option("--seed", seed, "rng seed");
  gen_bisc->add_option("--out", out_path, "output path (default stdout)");

  // experiment
  ExperimentConfig config;
  std::string exp_norm = "1", exp_objective = "constructive", exp_space = "binary";
  std::vector<long long> exp_voters{1000};
  std::vector<int> exp_groups{3};
  std::vector<double> exp_eps{1};
  auto* experiment = app.add_subcommand("experiment", "opinion-diversity sweep, CSV output");
  experiment->add_option("--voters", exp_voters, "electorate sizes")->delimiter(',');
  experiment->add_option("--groups", exp_groups, "opinion-group counts")->delimiter(',');
  experiment->add_option("--epsilons", exp_eps, "budgets")->delimiter(',');
  experiment->add_option("--dim", config.dimension, "issue count");
  experiment->add_option("--candidates", config.candidates, "candidate count");
  experiment->add_option("--norm", exp_norm, "p or inf");
  experiment->add_option("--scoring", config.scoring, "plurality|veto|borda|k_approval");
  experiment->add_option("--objective", exp_objective, "constructive|destructive");
  experiment->add_option("--trials", config.trials, "instances per cell");
  experiment->add_option("--seed", config.seed, "rng seed");
  experiment->add_flag("--serial", serial, "run cells sequentially");
  experiment->add_option("--out", out_path, "CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      if (solver == "oracle") return run_oracle(instance_path, samples, seed, format);
      return run_solve(instance_path, solver, format, timeout, serial);
    }
    if (verify->parsed()) return run_verify(instance_path, witness_text, format);
    if (oracle->parsed()) return run_oracle(instance_path, samples, seed, format);

    if (gen_random->parsed()) {
      gen.issue_space = gen_space == "binary" ? IssueSpace::binary : IssueSpace::real;
      gen.norm = parse_norm_flag(gen_norm);
      gen.objective =
          gen_objective == "destructive" ? Objective::destructive : Objective::constructive;
      write_output(out_path, serialize_instance(random_instance(gen, seed)));
      return 0;
    }
    if (gen_sat->parsed()) {
      const SatFormula f = parse_dimacs(read_text(cnf_path));
      ReductionOutput out;
      if (variant == "destructive-linf")
        out = sat_to_rvpm_destructive_linf(f);
      else if (variant == "constructive-linf")
        out = sat_to_rvpm_constructive_linf(f);
      else if (variant == "destructive-lp")
        out = sat_to_rvpm_destructive_lp(f, lp_order);
      else if (variant == "constructive-lp")
        out = sat_to_rvpm_constructive_lp(f, lp_order);
      else
        throw std::invalid_argument("unknown variant \"" + variant + "\"");
      write_output(out_path, serialize_instance(out.instance));
      if (!decoder_out.empty()) {
        Json meta;
        meta["kind"] = "coordinate_signs";
        meta["num_vars"] = out.decoder.num_vars;
        meta["coords"] = out.decoder.coords;
        meta["magnitude"] = out.decoder.magnitude;
        Json forced = Json::array();
        for (const auto& [coord, value] : out.decoder.forced)
          forced.push_back(Json{{"coord", coord}, {"value", value}});
        meta["forced"] = forced;
        meta["dummy_voters"] = out.dummy_voters;
        if (out.alpha > 0) {
          meta["alpha"] = out.alpha;
          meta["ell"] = out.ell;
        }
        save_text(decoder_out, meta.dump(2) + "\n");
      }
      return 0;
    }
    if (gen_bisc->parsed()) {
      const BiscInstance bisc = random_bisc(bisc_dim, bisc_voters, seed);
      write_output(out_path, serialize_instance(bisc_to_bvpm(bisc, bisc_p).instance));
      return 0;
    }
    if (experiment->parsed()) {
      config.issue_space = exp_space == "binary" ? IssueSpace::binary : IssueSpace::real;
      config.norm = parse_norm_flag(exp_norm);
      config.objective =
          exp_objective == "destructive" ? Objective::destructive : Objective::constructive;
      config.voter_counts = exp_voters;
      config.group_counts = exp_groups;
      config.epsilons = exp_eps;
      config.parallel = !serial;
      const auto cells = run_diversity_experiment(config);
      for (const auto& cell : cells)
        if (cell.skipped)
          std::cerr << "note: cell m=" << cell.m << " q=" << cell.q
                    << " skipped (outside tractability caps)\n";
      write_output(out_path, experiment_csv(config, cells));
      return 0;
    }
  } catch (const RefusalError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
