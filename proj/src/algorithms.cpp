#include "satdiv/algorithms.hpp"

#include "satdiv/operators.hpp"
#include "satdiv/rng.hpp"

#include <utility>

namespace satdiv {

std::string to_string(Variant v) {
  switch (v) {
  case Variant::basic: return "basic";
  case Variant::bitflip: return "bitflip";
  case Variant::edo_mutation: return "edo_mutation";
  case Variant::edo_crossover: return "edo_crossover";
  }
  return "?";
}

Variant variant_from_string(const std::string& s) {
  if (s == "basic") return Variant::basic;
  if (s == "bitflip") return Variant::bitflip;
  if (s == "edo_mutation") return Variant::edo_mutation;
  if (s == "edo_crossover") return Variant::edo_crossover;
  throw ConfigError("unknown variant '" + s + "'");
}

std::string to_string(MeasureKind k) {
  return k == MeasureKind::H1 ? "H1" : "H2";
}

MeasureKind measure_from_string(const std::string& s) {
  if (s == "H1" || s == "h1") return MeasureKind::H1;
  if (s == "H2" || s == "h2") return MeasureKind::H2;
  throw ConfigError("unknown measure '" + s + "'");
}

namespace {

// Pops exactly the scopes pushed through it, even on exceptions.
class ScopeStack {
public:
  explicit ScopeStack(Formula& f) : formula_(f) {}
  ~ScopeStack() {
    while (count_ > 0) {
      formula_.pop_scope();
      --count_;
    }
  }
  void push(std::vector<Clause> clauses) {
    formula_.push_scope(std::move(clauses));
    ++count_;
  }

private:
  Formula& formula_;
  std::size_t count_ = 0;
};

struct RunContext {
  Measure m1;
  Measure m2;
  const Measure& fitness(const RunConfig& cfg) const {
    return cfg.fitness == MeasureKind::H1 ? m1 : m2;
  }
};

RunContext make_context(const Formula& f) {
  return RunContext{Measure::h1(f.num_vars()), Measure::h2(f)};
}

void record(Trajectory& t, int iteration, const Population& p, const RunContext& ctx,
            long long unsat, bool accepted) {
  double h1 = p.size() > 0 ? entropy(p, ctx.m1) : 0.0;
  double h2 = p.size() > 0 ? entropy(p, ctx.m2) : 0.0;
  t.push_back({iteration, h1, h2, unsat, accepted});
}

void check_common(const Formula& f, const RunConfig& cfg) {
  if (cfg.mu < 2)
    throw ConfigError("population size mu must be >= 2");
  if (cfg.iterations < 0)
    throw ConfigError("iteration budget must be >= 0");
  if (f.num_vars() < 1)
    throw ConfigError("formula has no variables");
}

void finalize(RunResult& result, const Formula& f, const RunContext& ctx) {
  // Feasibility is re-checked by direct clause evaluation, independent of
  // whatever the solver reported during the run.
  for (const Assignment& x : result.population.members())
    if (!f.satisfied_by(x))
      throw SolverError("internal error: population member fails re-evaluation");
  if (result.population.size() > 0) {
    result.h1_raw = entropy(result.population, ctx.m1);
    result.h2_raw = entropy(result.population, ctx.m2);
    result.h1_normalized = normalized(result.h1_raw, ctx.m1);
    result.h2_normalized = normalized(result.h2_raw, ctx.m2);
  }
  if (!result.trajectory.empty())
    result.unsat_count = result.trajectory.back().unsat_count;
}

} // namespace

RunResult basic_enumeration(Formula& f, const RunConfig& cfg) {
  check_common(f, cfg);
  RunContext ctx = make_context(f);
  RunResult result(cfg.mu);

  long long unsat = 0;
  int iteration = 0;
  {
    ScopeStack blocked(f);
    while (result.population.size() < static_cast<std::size_t>(cfg.mu)) {
      ++iteration;
      SolveResult res = solve(f, cfg.solver);
      if (!res.sat()) {
        ++unsat;
        record(result.trajectory, iteration, result.population, ctx, unsat, false);
        break;
      }
      result.population.add(*res.model);
      blocked.push({blocking_clause(*res.model)});
      record(result.trajectory, iteration, result.population, ctx, unsat, true);
    }
  }  // blocking clauses removed here

  finalize(result, f, ctx);
  return result;
}

RunResult bitflip_ea(Formula& f, const RunConfig& cfg) {
  check_common(f, cfg);
  RunContext ctx = make_context(f);
  const Measure& fit = ctx.fitness(cfg);
  RunResult result(cfg.mu);
  Rng rng(cfg.seed);

  SolveResult first = solve(f, cfg.solver);
  if (!first.sat())
    throw ConfigError("formula unsatisfiable");
  result.population.add(*first.model);

  long long unsat = 0;
  for (int iteration = 1; iteration <= cfg.iterations; ++iteration) {
    const Assignment& parent = result.population[rng.index(result.population.size())];
    FixSet flips = bitflip_fixset(parent, rng);

    SolveResult res;
    {
      ScopeStack scope(f);
      scope.push(fixing_clauses(flips));
      res = solve(f, cfg.solver);
    }

    bool accepted = false;
    if (res.sat()) {
      result.population.add(*res.model);
      accepted = true;
      if (result.population.size() > static_cast<std::size_t>(cfg.mu)) {
        std::size_t victim = least_contributor(result.population, fit);
        accepted = victim != result.population.size() - 1;
        result.population.remove(victim);
      }
    } else {
      ++unsat;
    }
    record(result.trajectory, iteration, result.population, ctx, unsat, accepted);
  }

  finalize(result, f, ctx);
  return result;
}

RunResult edo_ea(Formula& f, const RunConfig& cfg) {
  check_common(f, cfg);
  if (cfg.variant != Variant::edo_mutation && cfg.variant != Variant::edo_crossover)
    throw ConfigError("edo_ea requires an EDO variant");
  if (cfg.fixset_size < 1 || cfg.fixset_size > f.num_vars())
    throw ConfigError("fix-set size l must be in 1..n");

  RunContext ctx = make_context(f);
  const Measure& fit = ctx.fitness(cfg);
  RunResult result(cfg.mu);
  Rng rng(cfg.seed);

  if (!solve(f, cfg.solver).sat())
    throw ConfigError("formula unsatisfiable");

  // Initialization: random fix-sets of size l whose completions are
  // satisfiable, until the population is full.
  const long long retry_budget =
      static_cast<long long>(cfg.init_retry_factor) * cfg.mu;
  long long failures = 0;
  while (result.population.size() < static_cast<std::size_t>(cfg.mu)) {
    if (failures >= retry_budget)
      throw ConfigError("EDO initialization exceeded its retry budget: " +
                        std::to_string(failures) + " failed draws, " +
                        std::to_string(result.population.size()) + "/" +
                        std::to_string(cfg.mu) + " members found");
    FixSet y = random_fixset(cfg.fixset_size, f.num_vars(), rng);
    SolveResult res;
    {
      ScopeStack scope(f);
      scope.push(fixing_clauses(y));
      res = solve(f, cfg.solver);
    }
    if (res.sat()) {
      result.population.add(*res.model);
      result.fixsets.push_back(std::move(y));
    } else {
      ++failures;
    }
  }

  long long unsat = 0;
  for (int iteration = 1; iteration <= cfg.iterations; ++iteration) {
    FixSet offspring;
    if (cfg.variant == Variant::edo_mutation) {
      const FixSet& parent = result.fixsets[rng.index(result.fixsets.size())];
      offspring = fixset_mutation(parent, f.num_vars(), rng);
    } else {
      // Two distinct parents, sampled without replacement.
      std::size_t i = rng.index(result.fixsets.size());
      std::size_t j = rng.index(result.fixsets.size() - 1);
      if (j >= i)
        ++j;
      offspring = fixset_mutation(
          fixset_crossover(result.fixsets[i], result.fixsets[j], rng), f.num_vars(), rng);
    }

    SolveResult res;
    {
      ScopeStack scope(f);
      scope.push(fixing_clauses(offspring));
      res = solve(f, cfg.solver);
    }

    bool accepted = false;
    if (res.sat()) {
      result.population.add(*res.model);
      result.fixsets.push_back(std::move(offspring));
      std::size_t victim = least_contributor(result.population, fit);
      accepted = victim != result.population.size() - 1;
      result.population.remove(victim);
      result.fixsets.erase(result.fixsets.begin() + static_cast<std::ptrdiff_t>(victim));
    } else {
      ++unsat;
    }
    record(result.trajectory, iteration, result.population, ctx, unsat, accepted);
  }

  finalize(result, f, ctx);
  return result;
}

RunResult run_variant(Formula& f, const RunConfig& cfg) {
  switch (cfg.variant) {
  case Variant::basic: return basic_enumeration(f, cfg);
  case Variant::bitflip: return bitflip_ea(f, cfg);
  case Variant::edo_mutation:
  case Variant::edo_crossover: return edo_ea(f, cfg);
  }
  throw ConfigError("unknown variant");
}

} // namespace satdiv
