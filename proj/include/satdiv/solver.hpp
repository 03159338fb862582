#pragma once

#include "satdiv/cnf.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace satdiv {

class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Engine { builtin, external };

struct SolverConfig {
  Engine engine = Engine::builtin;
  std::string command;          // external engine: invoked as `command <file.cnf>`
  std::uint64_t seed = 0;       // reserved; the builtin engine is fully deterministic
  double activity_decay = 0.95;
  int restart_base = 100;       // geometric restart schedule: base * factor^k conflicts
  double restart_factor = 1.5;
  int learnt_limit = 4000;      // reduce learnt DB above this many clauses
};

// Sat carries a total model; Unsat means no satisfying assignment exists.
struct SolveResult {
  std::optional<Assignment> model;
  bool sat() const { return model.has_value(); }
};

// Complete decision procedure over base + scoped clauses. Every Sat model is
// re-evaluated against the formula before it is returned.
SolveResult solve(const Formula& f, const SolverConfig& cfg = {});

// All satisfying assignments (up to cap) in lexicographic order of the
// Boolean vector. Brute force; refuses n > 25.
std::vector<Assignment> enumerate_models(const Formula& f,
                                         std::size_t cap = static_cast<std::size_t>(-1));

// Subprocess adapter: writes DIMACS to a temp file, runs `command <file>`,
// parses SAT-competition style output. Models are validated locally; a
// subprocess failure or inconsistent model raises SolverError (distinct
// from Unsat).
SolveResult external_solve(const Formula& f, const std::string& command);

} // namespace satdiv
