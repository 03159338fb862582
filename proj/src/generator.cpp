#include "satdiv/generator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace satdiv {

void GenConfig::validate() const {
  if (n < 1)
    throw std::invalid_argument("generator: n must be >= 1");
  if (k < 1 || k > n)
    throw std::invalid_argument("generator: k must be in 1..n");
  if (m < 0)
    throw std::invalid_argument("generator: m must be >= 0");
  if (dist == VarDist::powerlaw && beta <= 2.0)
    throw std::invalid_argument("generator: power-law exponent must be > 2");
}

namespace {

// Cumulative weights for power-law variable selection: variable i drawn
// with probability proportional to i^(-1/(beta-1)).
std::vector<double> powerlaw_cumulative(int n, double beta) {
  std::vector<double> cum(static_cast<std::size_t>(n));
  const double exponent = -1.0 / (beta - 1.0);
  double acc = 0.0;
  for (int i = 1; i <= n; ++i) {
    acc += std::pow(static_cast<double>(i), exponent);
    cum[static_cast<std::size_t>(i - 1)] = acc;
  }
  return cum;
}

int draw_powerlaw(const std::vector<double>& cum, Rng& rng) {
  double u = rng.real() * cum.back();
  auto it = std::upper_bound(cum.begin(), cum.end(), u);
  if (it == cum.end())
    --it;
  return static_cast<int>(it - cum.begin()) + 1;
}

} // namespace

Clause gen_clause(const GenConfig& cfg, Rng& rng) {
  cfg.validate();
  std::vector<double> cum;
  if (cfg.dist == VarDist::powerlaw)
    cum = powerlaw_cumulative(cfg.n, cfg.beta);

  std::vector<int> vars;
  vars.reserve(static_cast<std::size_t>(cfg.k));
  while (static_cast<int>(vars.size()) < cfg.k) {
    int var = cfg.dist == VarDist::uniform ? rng.below_int(cfg.n) + 1
                                           : draw_powerlaw(cum, rng);
    if (std::find(vars.begin(), vars.end(), var) == vars.end())
      vars.push_back(var);
  }
  std::vector<Lit> lits;
  lits.reserve(vars.size());
  for (int var : vars)
    lits.emplace_back(var, rng.coin());
  return Clause(std::move(lits));
}

Formula gen_formula(const GenConfig& cfg, Rng& rng) {
  cfg.validate();
  std::vector<double> cum;
  if (cfg.dist == VarDist::powerlaw)
    cum = powerlaw_cumulative(cfg.n, cfg.beta);

  std::vector<Clause> clauses;
  clauses.reserve(static_cast<std::size_t>(cfg.m));
  std::vector<int> vars;
  for (int ci = 0; ci < cfg.m; ++ci) {
    vars.clear();
    while (static_cast<int>(vars.size()) < cfg.k) {
      int var = cfg.dist == VarDist::uniform ? rng.below_int(cfg.n) + 1
                                             : draw_powerlaw(cum, rng);
      if (std::find(vars.begin(), vars.end(), var) == vars.end())
        vars.push_back(var);
    }
    std::vector<Lit> lits;
    lits.reserve(vars.size());
    for (int var : vars)
      lits.emplace_back(var, rng.coin());
    clauses.emplace_back(std::move(lits));
  }
  return Formula(cfg.n, std::move(clauses));
}

GenResult gen_satisfiable(const GenConfig& cfg, const SolverConfig& solver_cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  for (int attempt = 0; attempt <= cfg.max_rejects; ++attempt) {
    Formula f = gen_formula(cfg, rng);
    if (solve(f, solver_cfg).sat())
      return GenResult{std::move(f), attempt};
  }
  throw GenerationError("no satisfiable formula within " + std::to_string(cfg.max_rejects) +
                        " rejections (n=" + std::to_string(cfg.n) +
                        ", m=" + std::to_string(cfg.m) + ", k=" + std::to_string(cfg.k) + ")");
}

namespace {

std::string dist_name(VarDist d) {
  return d == VarDist::uniform ? "uniform" : "powerlaw";
}

std::string beta_text(double beta) {
  std::ostringstream out;
  out << beta;
  return out.str();
}

} // namespace

std::string instance_filename(const GenConfig& cfg) {
  std::ostringstream out;
  out << dist_name(cfg.dist) << "_n" << cfg.n << "_m" << cfg.m << "_k" << cfg.k << "_seed"
      << cfg.seed << ".cnf";
  return out.str();
}

std::string instance_dimacs(const GenConfig& cfg, const Formula& f, int rejects) {
  std::ostringstream meta;
  meta << "generator dist=" << dist_name(cfg.dist) << " n=" << cfg.n << " m=" << cfg.m
       << " k=" << cfg.k;
  if (cfg.dist == VarDist::powerlaw)
    meta << " beta=" << beta_text(cfg.beta);
  meta << " seed=" << cfg.seed << " max_rejects=" << cfg.max_rejects
       << " rejects=" << rejects;
  return write_dimacs(f, {meta.str()});
}

} // namespace satdiv
