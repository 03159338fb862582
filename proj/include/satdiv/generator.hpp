#pragma once

#include "satdiv/cnf.hpp"
#include "satdiv/rng.hpp"
#include "satdiv/solver.hpp"

#include <cstdint>
#include <string>

namespace satdiv {

class GenerationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class VarDist { uniform, powerlaw };

struct GenConfig {
  int n = 100;
  int m = 210;
  int k = 3;
  VarDist dist = VarDist::uniform;
  double beta = 2.75;            // power-law exponent, > 2
  std::uint64_t seed = 0;
  int max_rejects = 1000;

  void validate() const;
};

// k distinct variables, sampled uniformly or with probability proportional
// to i^(-1/(beta-1)) (repeats within the clause rejected); each literal
// negated independently with probability 1/2.
Clause gen_clause(const GenConfig& cfg, Rng& rng);

// One complete m-clause draw, no satisfiability filter.
Formula gen_formula(const GenConfig& cfg, Rng& rng);

struct GenResult {
  Formula formula;
  int rejects = 0;   // whole-formula redraws before the accepted one
};

// Redraws whole formulas until one is satisfiable (solver-verified).
// Throws GenerationError when cfg.max_rejects is exceeded.
GenResult gen_satisfiable(const GenConfig& cfg,
                          const SolverConfig& solver_cfg = {});

// "<dist>_n<n>_m<m>_k<k>_seed<seed>.cnf"
std::string instance_filename(const GenConfig& cfg);

// DIMACS text with a comment line recording the full GenConfig.
std::string instance_dimacs(const GenConfig& cfg, const Formula& f, int rejects);

} // namespace satdiv
