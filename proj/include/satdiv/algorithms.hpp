#pragma once

#include "satdiv/cnf.hpp"
#include "satdiv/diversity.hpp"
#include "satdiv/solver.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace satdiv {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Variant { basic, bitflip, edo_mutation, edo_crossover };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

std::string to_string(MeasureKind k);
MeasureKind measure_from_string(const std::string& s);

struct RunConfig {
  int mu = 20;
  int iterations = 2000;
  int fixset_size = 10;                 // l, EDO initialization
  MeasureKind fitness = MeasureKind::H1;
  Variant variant = Variant::basic;
  std::uint64_t seed = 0;
  SolverConfig solver;
  int init_retry_factor = 50;           // EDO init aborts after factor * mu failed draws
};

struct TrajectoryPoint {
  int iteration;            // 1-based
  double h1;
  double h2;
  long long unsat_count;    // cumulative UNSAT results of modified formulas
  bool accepted;            // offspring survived survivor selection
};

using Trajectory = std::vector<TrajectoryPoint>;

struct RunResult {
  Population population;
  std::vector<FixSet> fixsets;   // EDO only: Y, paired with population members
  Trajectory trajectory;
  long long unsat_count = 0;
  double h1_raw = 0, h2_raw = 0;
  double h1_normalized = 0, h2_normalized = 0;

  RunResult() : population(0) {}
  explicit RunResult(int mu) : population(mu) {}
};

// Repeatedly solve, block the model, repeat; stops at mu models or Unsat.
// Blocking clauses stay in the formula for the whole run and are removed
// before returning.
RunResult basic_enumeration(Formula& f, const RunConfig& cfg);

// One initial model, then per iteration fix a 1/n bit-flip selection of a
// random member's variables, solve, insert the model, and drop the least
// contributor once the population exceeds mu. Throws ConfigError when the
// formula itself is unsatisfiable.
RunResult bitflip_ea(Formula& f, const RunConfig& cfg);

// Fix-set EDO: initialize Y with random size-l fix-sets whose completions
// are satisfiable, then evolve by mutation (or crossover followed by
// mutation), keeping P and Y paired. Throws ConfigError when the formula is
// unsatisfiable or initialization exceeds its retry budget.
RunResult edo_ea(Formula& f, const RunConfig& cfg);

// Dispatch on cfg.variant.
RunResult run_variant(Formula& f, const RunConfig& cfg);

} // namespace satdiv
