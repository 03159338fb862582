#include "satdiv/harness.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace satdiv;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitExperiment = 3;

Formula load_formula(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open " + path, 0);
  return parse_dimacs(in);
}

int cmd_generate(const GenConfig& base, int count, const std::string& out_dir) {
  fs::create_directories(out_dir);
  for (int i = 0; i < count; ++i) {
    GenConfig cfg = base;
    cfg.seed = base.seed + static_cast<std::uint64_t>(i);
    GenResult result = gen_satisfiable(cfg);
    fs::path path = fs::path(out_dir) / instance_filename(cfg);
    std::ofstream out(path);
    if (!out)
      throw GenerationError("cannot write " + path.string());
    out << instance_dimacs(cfg, result.formula, result.rejects);
    std::cout << path.string() << " (rejects=" << result.rejects << ")\n";
  }
  return 0;
}

int cmd_run(const std::string& instance, RunConfig cfg, const std::string& traj_path) {
  Formula f = load_formula(instance);
  RunResult result = run_variant(f, cfg);

  if (!traj_path.empty()) {
    std::ofstream out(traj_path);
    if (!out)
      throw ConfigError("cannot write trajectory file " + traj_path);
    write_trajectory_csv(result.trajectory, out,
                         "instance=" + instance + " variant=" + to_string(cfg.variant) +
                             " fitness=" + to_string(cfg.fitness) + " seed=" +
                             std::to_string(cfg.seed));
  }

  std::cout << "variant=" << to_string(cfg.variant) << " fitness=" << to_string(cfg.fitness)
            << " population=" << result.population.size() << " h1_raw=" << fmt_double(result.h1_raw)
            << " h1_norm=" << fmt_double(result.h1_normalized)
            << " h2_raw=" << fmt_double(result.h2_raw)
            << " h2_norm=" << fmt_double(result.h2_normalized) << " unsat=" << result.unsat_count
            << '\n';
  return 0;
}

int cmd_experiment(const std::string& spec_path) {
  ExperimentSpec spec = parse_spec_file(spec_path);
  std::vector<ResultRow> rows = run_experiment(spec);
  std::cout << "m variant fitness instances failures mean_h1 median_h1 mean_h2 median_h2 "
               "unsat_total wall_s\n";
  for (const ResultRow& row : rows) {
    std::cout << row.m << ' ' << to_string(row.variant) << ' ' << to_string(row.fitness) << ' '
              << row.instances << ' ' << row.failures << ' ' << fmt_double(row.mean_h1) << ' '
              << fmt_double(row.median_h1) << ' ' << fmt_double(row.mean_h2) << ' '
              << fmt_double(row.median_h2) << ' ' << row.unsat_total << ' '
              << fmt_double(row.wall_seconds) << '\n';
  }
  std::cout << "outputs written to " << spec.output_dir << '\n';
  return 0;
}

int cmd_stats(const std::string& input, MeasureKind measure, double alpha) {
  std::ifstream in(input);
  if (!in)
    throw ConfigError("cannot open " + input);
  std::cout << stats_report(in, measure, alpha);
  return 0;
}

int cmd_solve(const std::string& instance, const SolverConfig& cfg) {
  Formula f = load_formula(instance);
  SolveResult result = solve(f, cfg);
  if (!result.sat()) {
    std::cout << "s UNSATISFIABLE\n";
    return 0;
  }
  std::cout << "s SATISFIABLE\nv";
  for (int var = 1; var <= f.num_vars(); ++var)
    std::cout << ' ' << (result.model->value_of(var) ? var : -var);
  std::cout << " 0\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"satdiv: diverse satisfying assignments for CNF-SAT formulas"};
  app.require_subcommand(1);

  // generate
  GenConfig gen;
  int gen_count = 1;
  std::string gen_dist = "uniform";
  std::string gen_out = ".";
  auto* generate = app.add_subcommand("generate", "generate satisfiable random k-CNF instances");
  generate->add_option("--dist", gen_dist, "variable distribution: uniform|powerlaw")
      ->check(CLI::IsMember({"uniform", "powerlaw"}));
  generate->add_option("--n", gen.n, "variable count");
  generate->add_option("--m", gen.m, "clause count");
  generate->add_option("--k", gen.k, "clause length");
  generate->add_option("--beta", gen.beta, "power-law exponent (> 2)");
  generate->add_option("--seed", gen.seed, "base seed; instance i uses seed+i");
  generate->add_option("--count", gen_count, "number of instances");
  generate->add_option("--max-rejects", gen.max_rejects, "whole-formula redraw budget");
  generate->add_option("--out", gen_out, "output directory");

  // run
  RunConfig run_cfg;
  std::string run_instance, run_variant_name = "basic", run_measure = "H1", run_traj;
  auto* run = app.add_subcommand("run", "run one algorithm variant on one instance");
  run->add_option("--instance", run_instance, "DIMACS CNF file")->required();
  run->add_option("--variant", run_variant_name,
                  "basic|bitflip|edo_mutation|edo_crossover")
      ->check(CLI::IsMember({"basic", "bitflip", "edo_mutation", "edo_crossover"}));
  run->add_option("--measure", run_measure, "fitness measure: H1|H2")
      ->check(CLI::IsMember({"H1", "H2"}));
  run->add_option("--seed", run_cfg.seed, "run seed");
  run->add_option("--mu", run_cfg.mu, "population size");
  run->add_option("--iterations", run_cfg.iterations, "evolutionary iterations");
  run->add_option("--l", run_cfg.fixset_size, "initial fix-set size (EDO)");
  run->add_option("--traj", run_traj, "write per-iteration trajectory CSV here");

  // experiment
  std::string exp_spec;
  auto* experiment = app.add_subcommand("experiment", "run a full experiment from a spec file");
  experiment->add_option("--spec", exp_spec, "flat key=value spec file")->required();

  // stats
  std::string stats_input, stats_measure = "H1";
  double stats_alpha = 0.05;
  auto* stats = app.add_subcommand("stats", "Kruskal-Wallis report over a per-instance CSV");
  stats->add_option("--input", stats_input, "per-instance CSV from `experiment`")->required();
  stats->add_option("--measure", stats_measure, "H1|H2")
      ->check(CLI::IsMember({"H1", "H2"}));
  stats->add_option("--alpha", stats_alpha, "significance level");

  // solve
  std::string solve_instance, solve_engine = "builtin", solve_command;
  auto* solve_cmd = app.add_subcommand("solve", "plain SAT check of a DIMACS file");
  solve_cmd->add_option("instance", solve_instance, "DIMACS CNF file")->required();
  solve_cmd->add_option("--engine", solve_engine, "builtin|external")
      ->check(CLI::IsMember({"builtin", "external"}));
  solve_cmd->add_option("--command", solve_command, "external solver command");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*generate) {
      gen.dist = gen_dist == "uniform" ? VarDist::uniform : VarDist::powerlaw;
      return cmd_generate(gen, gen_count, gen_out);
    }
    if (*run) {
      run_cfg.variant = variant_from_string(run_variant_name);
      run_cfg.fitness = measure_from_string(run_measure);
      return cmd_run(run_instance, run_cfg, run_traj);
    }
    if (*experiment)
      return cmd_experiment(exp_spec);
    if (*stats)
      return cmd_stats(stats_input, measure_from_string(stats_measure), stats_alpha);
    if (*solve_cmd) {
      SolverConfig cfg;
      if (solve_engine == "external") {
        cfg.engine = Engine::external;
        cfg.command = solve_command;
      }
      return cmd_solve(solve_instance, cfg);
    }
  } catch (const ExperimentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitExperiment;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
