#include "satdiv/cnf.hpp"
#include "satdiv/generator.hpp"
#include "satdiv/solver.hpp"

#include <doctest.h>

#include <string>

using namespace satdiv;

namespace {

Clause clause(std::initializer_list<int> dimacs_lits) {
  std::vector<Lit> lits;
  for (int l : dimacs_lits)
    lits.push_back(Lit::from_dimacs(l));
  return Clause(std::move(lits));
}

Assignment assignment(std::initializer_list<bool> values) {
  return Assignment(std::vector<bool>(values));
}

} // namespace

TEST_CASE("parse_dimacs reads header and clauses") {
  Formula f = parse_dimacs("p cnf 2 2\n1 -2 0\n-1 2 0\n");
  CHECK(f.num_vars() == 2);
  REQUIRE(f.num_base_clauses() == 2);
  CHECK(f.base_clauses()[0] == clause({1, -2}));
  CHECK(f.base_clauses()[1] == clause({-1, 2}));

  Formula g = parse_dimacs("p cnf 1 1\n1 0\n");
  CHECK(g.num_vars() == 1);
  CHECK(g.base_clauses()[0] == clause({1}));
}

TEST_CASE("parse_dimacs accepts comments and multi-line clauses") {
  Formula f = parse_dimacs("c header comment\np cnf 3 2\nc mid comment\n1 2\n3 0\n-3 0\n");
  CHECK(f.num_vars() == 3);
  CHECK(f.num_base_clauses() == 2);
  CHECK(f.base_clauses()[0] == clause({1, 2, 3}));
}

TEST_CASE("parse_dimacs rejects malformed input with line numbers") {
  CHECK_THROWS_AS(parse_dimacs(""), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p dnf 1 1\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 x 0\n"), ParseError);

  try {
    parse_dimacs("p cnf 2 1\n3 0\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("literal 3 exceeds n=2") != std::string::npos);
  }

  // Too few clauses, too many clauses, empty clause.
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 2\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 0\n2 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n0\n"), ParseError);
}

TEST_CASE("write_dimacs emits the exact format") {
  CHECK(write_dimacs(Formula(1, {clause({1})})) == "p cnf 1 1\n1 0\n");
  CHECK(write_dimacs(Formula(2, {clause({-1, 2})})) == "p cnf 2 1\n-1 2 0\n");
}

TEST_CASE("dimacs round-trip on generated instances") {
  GenConfig cfg;
  cfg.n = 60;
  cfg.m = 150;
  cfg.k = 3;
  cfg.dist = VarDist::powerlaw;
  cfg.seed = 7;
  Rng rng(cfg.seed);
  Formula f = gen_formula(cfg, rng);
  Formula g = parse_dimacs(write_dimacs(f));
  CHECK(g.num_vars() == f.num_vars());
  REQUIRE(g.num_base_clauses() == f.num_base_clauses());
  for (std::size_t i = 0; i < f.num_base_clauses(); ++i)
    CHECK(g.base_clauses()[i] == f.base_clauses()[i]);
}

TEST_CASE("clause invariants") {
  CHECK_THROWS_AS(Clause({}), std::invalid_argument);
  CHECK_THROWS_AS(clause({1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(clause({1, -1}), std::invalid_argument);
  CHECK_THROWS_AS(Lit(0, false), std::invalid_argument);
}

TEST_CASE("blocking_clause flips every variable") {
  CHECK(blocking_clause(assignment({true, false, true})) == clause({-1, 2, -3}));
  CHECK(blocking_clause(assignment({false})) == clause({1}));
}

TEST_CASE("blocking_clause excludes exactly the blocked assignment") {
  // Brute force over all 8 assignments for each blocked point.
  for (int blocked = 0; blocked < 8; ++blocked) {
    Assignment x(3);
    for (int i = 0; i < 3; ++i)
      x.set(static_cast<std::size_t>(i), (blocked >> (2 - i)) & 1);
    Clause c = blocking_clause(x);
    for (int other = 0; other < 8; ++other) {
      Assignment y(3);
      for (int i = 0; i < 3; ++i)
        y.set(static_cast<std::size_t>(i), (other >> (2 - i)) & 1);
      CHECK(c.satisfied_by(y) == (other != blocked));
    }
  }
}

TEST_CASE("fixing_clauses builds unit clauses") {
  FixSet y;
  y.entries = {{3, true}, {7, false}};
  std::vector<Clause> clauses = fixing_clauses(y);
  REQUIRE(clauses.size() == 2);
  CHECK(clauses[0] == clause({3}));
  CHECK(clauses[1] == clause({-7}));
  CHECK(fixing_clauses(FixSet{}).empty());
}

TEST_CASE("models under fixing clauses agree with the fix-set") {
  Formula f = parse_dimacs("p cnf 4 2\n1 2 3 0\n-2 4 0\n");
  FixSet y;
  y.entries = {{2, true}, {3, false}};
  f.push_scope(fixing_clauses(y));
  SolveResult res = solve(f);
  f.pop_scope();
  REQUIRE(res.sat());
  CHECK(res.model->value_of(2) == true);
  CHECK(res.model->value_of(3) == false);
}

TEST_CASE("scope stack is LIFO and restores the clause list") {
  Formula f = parse_dimacs("p cnf 3 2\n1 2 0\n-1 3 0\n");
  const std::string before = write_dimacs(f);

  f.push_scope({clause({3}), clause({-2})});
  CHECK(f.num_clauses() == 4);
  f.push_scope({clause({2, 3})});
  CHECK(f.num_clauses() == 5);
  f.pop_scope();
  CHECK(f.num_clauses() == 4);
  f.pop_scope();
  CHECK(f.num_clauses() == 2);
  CHECK(f.scope_depth() == 0);
  CHECK(write_dimacs(f) == before);

  CHECK_THROWS_AS(f.pop_scope(), std::logic_error);
}

TEST_CASE("scoped clauses are range-checked") {
  Formula f = parse_dimacs("p cnf 2 1\n1 2 0\n");
  CHECK_THROWS_AS(f.push_scope({clause({3})}), std::invalid_argument);
}

TEST_CASE("occurrence counts") {
  Formula f = parse_dimacs("p cnf 3 2\n1 -2 0\n1 3 0\n");
  OccurrenceCounts oc = occurrence_counts(f);
  CHECK(oc.r == std::vector<int>{2, 1, 1});
  CHECK(oc.total == 4);
}

TEST_CASE("k-uniform formulas have C = k*m") {
  GenConfig cfg;
  cfg.n = 100;
  cfg.m = 210;
  cfg.k = 3;
  cfg.dist = VarDist::powerlaw;
  cfg.seed = 3;
  Rng rng(cfg.seed);
  Formula f = gen_formula(cfg, rng);
  OccurrenceCounts oc = occurrence_counts(f);
  long long sum = 0;
  for (int r : oc.r)
    sum += r;
  CHECK(oc.total == sum);
  CHECK(oc.total == 3 * 210);
}

TEST_CASE("occurrence counts ignore scoped clauses") {
  Formula f = parse_dimacs("p cnf 2 1\n1 2 0\n");
  f.push_scope({clause({-1})});
  CHECK(occurrence_counts(f).total == 2);
  f.pop_scope();
}
