#include "satdiv/generator.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace satdiv;

TEST_CASE("k = n clauses mention every variable") {
  GenConfig cfg;
  cfg.n = 6;
  cfg.m = 1;
  cfg.k = 6;
  Rng rng(1);
  for (int rep = 0; rep < 30; ++rep) {
    Clause c = gen_clause(cfg, rng);
    std::set<int> vars;
    for (Lit l : c.literals())
      vars.insert(l.var());
    CHECK(vars.size() == 6);
  }
}

TEST_CASE("uniform variable frequencies are binomial") {
  GenConfig cfg;
  cfg.n = 100;
  cfg.m = 1;
  cfg.k = 3;
  cfg.dist = VarDist::uniform;
  Rng rng(2);

  std::vector<int> count(101, 0);
  const int draws = 100000;
  for (int rep = 0; rep < draws; ++rep) {
    Clause c = gen_clause(cfg, rng);
    for (Lit l : c.literals())
      ++count[static_cast<std::size_t>(l.var())];
  }

  // Inclusion probability 3/100 per clause: mean 3000, sigma ~53.9. The
  // band is 4 sigma because it is applied to all 100 variables at once.
  for (int var = 1; var <= 100; ++var) {
    double c = count[static_cast<std::size_t>(var)];
    CHECK(c > 3000 - 4 * 53.9);
    CHECK(c < 3000 + 4 * 53.9);
  }
}

TEST_CASE("power-law frequencies fit the declared exponent") {
  GenConfig cfg;
  cfg.n = 100;
  cfg.m = 1;
  cfg.k = 3;
  cfg.dist = VarDist::powerlaw;
  cfg.beta = 2.75;
  Rng rng(3);

  std::vector<double> count(101, 0.0);
  const int draws = 100000;
  for (int rep = 0; rep < draws; ++rep) {
    Clause c = gen_clause(cfg, rng);
    for (Lit l : c.literals())
      ++count[static_cast<std::size_t>(l.var())];
  }

  // Least-squares slope of log(count) on log(rank); expected -1/(beta-1).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int var = 1; var <= 100; ++var) {
    double x = std::log(static_cast<double>(var));
    double y = std::log(count[static_cast<std::size_t>(var)]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double slope = (100 * sxy - sx * sy) / (100 * sxx - sx * sx);
  CHECK(slope == doctest::Approx(-1.0 / 1.75).epsilon(0.175));  // +-0.1 absolute
}

TEST_CASE("negation is a fair coin") {
  GenConfig cfg;
  cfg.n = 50;
  cfg.m = 1;
  cfg.k = 3;
  Rng rng(4);
  int negated = 0;
  const int draws = 20000;
  for (int rep = 0; rep < draws; ++rep) {
    Clause c = gen_clause(cfg, rng);
    for (Lit l : c.literals())
      negated += l.negated() ? 1 : 0;
  }
  CHECK(static_cast<double>(negated) / (3 * draws) == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("gen_satisfiable returns a solver-verified formula") {
  GenConfig cfg;
  cfg.n = 100;
  cfg.m = 210;
  cfg.k = 3;
  cfg.dist = VarDist::uniform;
  cfg.seed = 5;
  GenResult result = gen_satisfiable(cfg);
  CHECK(result.rejects == 0);  // ratio 2.1 is far below threshold
  CHECK(solve(result.formula).sat());
  CHECK(occurrence_counts(result.formula).total == 630);
}

TEST_CASE("m = 0 is trivially satisfiable") {
  GenConfig cfg;
  cfg.n = 5;
  cfg.m = 0;
  cfg.k = 3;
  GenResult result = gen_satisfiable(cfg);
  CHECK(result.rejects == 0);
  CHECK(result.formula.num_base_clauses() == 0);
}

TEST_CASE("generation replays exactly from the config seed") {
  GenConfig cfg;
  cfg.n = 30;
  cfg.m = 80;
  cfg.k = 3;
  cfg.dist = VarDist::powerlaw;
  cfg.seed = 6;
  GenResult a = gen_satisfiable(cfg);
  GenResult b = gen_satisfiable(cfg);
  CHECK(write_dimacs(a.formula) == write_dimacs(b.formula));
  CHECK(a.rejects == b.rejects);
}

TEST_CASE("reject budget exhaustion raises a generation error") {
  // n=3, k=3, m=60: sign patterns cover all 8 clauses with near certainty,
  // so nearly every draw is unsatisfiable.
  GenConfig cfg;
  cfg.n = 3;
  cfg.m = 60;
  cfg.k = 3;
  cfg.seed = 7;
  cfg.max_rejects = 4;
  CHECK_THROWS_AS(gen_satisfiable(cfg), GenerationError);
}

TEST_CASE("config validation") {
  GenConfig cfg;
  cfg.n = 3;
  cfg.k = 4;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.k = 3;
  cfg.dist = VarDist::powerlaw;
  cfg.beta = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("instance naming and comment header") {
  GenConfig cfg;
  cfg.n = 100;
  cfg.m = 210;
  cfg.k = 3;
  cfg.dist = VarDist::powerlaw;
  cfg.seed = 42;
  CHECK(instance_filename(cfg) == "powerlaw_n100_m210_k3_seed42.cnf");

  Rng rng(cfg.seed);
  Formula f = gen_formula(cfg, rng);
  std::string text = instance_dimacs(cfg, f, 2);
  CHECK(text.find("c generator dist=powerlaw") == 0);
  CHECK(text.find("beta=2.75") != std::string::npos);
  CHECK(text.find("rejects=2") != std::string::npos);
  Formula parsed = parse_dimacs(text);
  CHECK(parsed.num_base_clauses() == 210);
}
