#include "satdiv/solver.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace satdiv {

namespace {

// Literal encoding inside the engine: 2 * var0 + sign, var0 0-based,
// sign 1 = negated. negation toggles the low bit.
constexpr int kNoReason = -1;

class CdclEngine {
public:
  CdclEngine(const Formula& f, const SolverConfig& cfg)
      : nvars_(f.num_vars()), cfg_(cfg) {
    assign_.assign(nvars_, -1);
    level_.assign(nvars_, 0);
    reason_.assign(nvars_, kNoReason);
    phase_.assign(nvars_, 0);  // phase saving, initialized to false
    activity_.assign(nvars_, 0.0);
    seen_.assign(nvars_, 0);
    watches_.assign(2 * static_cast<std::size_t>(nvars_), {});
    f.for_each_clause([&](const Clause& c) { add_clause(c); });
  }

  std::optional<Assignment> run() {
    if (!ok_)
      return std::nullopt;
    if (propagate() >= 0)
      return std::nullopt;

    long long conflicts_since_restart = 0;
    double restart_budget = cfg_.restart_base;

    for (;;) {
      int confl = propagate();
      if (confl >= 0) {
        if (decision_level() == 0)
          return std::nullopt;
        ++conflicts_since_restart;
        int back_level;
        analyze(confl, learnt_buf_, back_level);
        backtrack(back_level);
        record_learnt(learnt_buf_);
        decay_activities();
        if (conflicts_since_restart >= static_cast<long long>(restart_budget)) {
          conflicts_since_restart = 0;
          restart_budget *= cfg_.restart_factor;
          backtrack(0);
        }
      } else {
        if (num_learnts_ > cfg_.learnt_limit)
          reduce_learnts();
        int v = pick_branch_var();
        if (v < 0)
          return extract_model();
        trail_lim_.push_back(static_cast<int>(trail_.size()));
        enqueue(2 * v + (phase_[v] ? 0 : 1), kNoReason);
      }
    }
  }

private:
  struct Cls {
    std::vector<int> lits;
    double activity = 0.0;
    bool learnt = false;
    bool deleted() const { return lits.empty(); }
  };

  struct Watch {
    int clause;
    int blocker;   // some other literal of the clause; if true, skip the visit
  };

  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  // -1 undef, 0 false, 1 true
  int value(int lit) const {
    int a = assign_[lit >> 1];
    if (a < 0)
      return -1;
    return a ^ (lit & 1);
  }

  bool enqueue(int lit, int reason) {
    int v = lit >> 1;
    if (assign_[v] >= 0)
      return value(lit) == 1;
    assign_[v] = (lit & 1) ^ 1;
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_.push_back(lit);
    return true;
  }

  void add_clause(const Clause& c) {
    if (!ok_)
      return;
    std::vector<int> lits;
    lits.reserve(c.size());
    for (Lit l : c.literals())
      lits.push_back(l.code());
    if (lits.size() == 1) {
      ok_ = enqueue(lits[0], kNoReason);
      return;
    }
    int idx = static_cast<int>(clauses_.size());
    watches_[static_cast<std::size_t>(lits[0] ^ 1)].push_back({idx, lits[1]});
    watches_[static_cast<std::size_t>(lits[1] ^ 1)].push_back({idx, lits[0]});
    clauses_.push_back({std::move(lits), 0.0, false});
  }

  // Returns the index of a conflicting clause, or -1.
  int propagate() {
    while (qhead_ < trail_.size()) {
      int p = trail_[qhead_++];
      // Clauses watching ~p must find a new watch, become unit, or conflict.
      auto& wlist = watches_[static_cast<std::size_t>(p)];
      std::size_t read = 0, write = 0;
      int confl = -1;

      while (read < wlist.size()) {
        Watch w = wlist[read];
        if (value(w.blocker) == 1) {
          wlist[write++] = wlist[read++];
          continue;
        }
        Cls& c = clauses_[static_cast<std::size_t>(w.clause)];
        int* lits = c.lits.data();
        int falsified = p ^ 1;
        if (lits[0] == falsified)
          std::swap(lits[0], lits[1]);

        if (value(lits[0]) == 1) {
          wlist[write++] = {w.clause, lits[0]};
          ++read;
          continue;
        }

        bool moved = false;
        for (std::size_t k = 2; k < c.lits.size(); ++k) {
          if (value(lits[k]) != 0) {
            std::swap(lits[1], lits[k]);
            watches_[static_cast<std::size_t>(lits[1] ^ 1)].push_back({w.clause, lits[0]});
            moved = true;
            ++read;
            break;
          }
        }
        if (moved)
          continue;

        // No replacement: lits[0] is unit or the clause conflicts.
        wlist[write++] = {w.clause, lits[0]};
        ++read;
        if (!enqueue(lits[0], w.clause)) {
          confl = w.clause;
          break;
        }
      }
      while (read < wlist.size())
        wlist[write++] = wlist[read++];
      wlist.resize(write);
      if (confl >= 0)
        return confl;
    }
    return -1;
  }

  // First-UIP conflict analysis; out[0] is the asserting literal.
  void analyze(int confl, std::vector<int>& out, int& back_level) {
    out.clear();
    out.push_back(-1);
    int path = 0;
    int p = -1;
    int idx = static_cast<int>(trail_.size()) - 1;

    for (;;) {
      Cls& c = clauses_[static_cast<std::size_t>(confl)];
      if (c.learnt)
        bump_clause(c);
      for (int q : c.lits) {
        if (p >= 0 && q == p)
          continue;
        int v = q >> 1;
        if (!seen_[v] && level_[v] > 0) {
          seen_[v] = 1;
          bump_var(v);
          if (level_[v] >= decision_level())
            ++path;
          else
            out.push_back(q);
        }
      }
      while (!seen_[trail_[static_cast<std::size_t>(idx)] >> 1])
        --idx;
      p = trail_[static_cast<std::size_t>(idx)];
      --idx;
      seen_[p >> 1] = 0;
      --path;
      if (path <= 0)
        break;
      confl = reason_[p >> 1];
    }
    out[0] = p ^ 1;

    for (std::size_t i = 1; i < out.size(); ++i)
      seen_[out[i] >> 1] = 0;

    if (out.size() == 1) {
      back_level = 0;
    } else {
      std::size_t max_i = 1;
      for (std::size_t i = 2; i < out.size(); ++i)
        if (level_[out[i] >> 1] > level_[out[max_i] >> 1])
          max_i = i;
      std::swap(out[1], out[max_i]);
      back_level = level_[out[1] >> 1];
    }
  }

  void record_learnt(const std::vector<int>& lits) {
    if (lits.size() == 1) {
      enqueue(lits[0], kNoReason);
      return;
    }
    int idx = static_cast<int>(clauses_.size());
    watches_[static_cast<std::size_t>(lits[0] ^ 1)].push_back({idx, lits[1]});
    watches_[static_cast<std::size_t>(lits[1] ^ 1)].push_back({idx, lits[0]});
    clauses_.push_back({lits, clause_inc_, true});
    ++num_learnts_;
    enqueue(lits[0], idx);
  }

  void backtrack(int target) {
    if (decision_level() <= target)
      return;
    std::size_t limit = static_cast<std::size_t>(trail_lim_[static_cast<std::size_t>(target)]);
    for (std::size_t i = trail_.size(); i-- > limit;) {
      int v = trail_[i] >> 1;
      phase_[v] = static_cast<std::uint8_t>(assign_[v]);
      assign_[v] = -1;
      reason_[v] = kNoReason;
    }
    trail_.resize(limit);
    trail_lim_.resize(static_cast<std::size_t>(target));
    qhead_ = limit;
  }

  // Highest activity wins; index order breaks ties, so the search is
  // deterministic for a fixed formula and config.
  int pick_branch_var() const {
    int best = -1;
    double best_act = -1.0;
    for (int v = 0; v < nvars_; ++v)
      if (assign_[v] < 0 && activity_[v] > best_act) {
        best = v;
        best_act = activity_[v];
      }
    return best;
  }

  void bump_var(int v) {
    activity_[v] += var_inc_;
    if (activity_[v] > 1e100) {
      for (double& a : activity_)
        a *= 1e-100;
      var_inc_ *= 1e-100;
    }
  }

  void bump_clause(Cls& c) {
    c.activity += clause_inc_;
    if (c.activity > 1e20) {
      for (Cls& cl : clauses_)
        if (cl.learnt)
          cl.activity *= 1e-20;
      clause_inc_ *= 1e-20;
    }
  }

  void decay_activities() {
    var_inc_ /= cfg_.activity_decay;
    clause_inc_ /= 0.999;
  }

  void reduce_learnts() {
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(num_learnts_));
    for (int i = 0; i < static_cast<int>(clauses_.size()); ++i)
      if (clauses_[static_cast<std::size_t>(i)].learnt &&
          !clauses_[static_cast<std::size_t>(i)].deleted())
        order.push_back(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      double aa = clauses_[static_cast<std::size_t>(a)].activity;
      double ab = clauses_[static_cast<std::size_t>(b)].activity;
      if (aa != ab)
        return aa < ab;
      return a < b;
    });

    std::size_t target = order.size() / 2;
    std::size_t removed = 0;
    for (int idx : order) {
      if (removed >= target)
        break;
      Cls& c = clauses_[static_cast<std::size_t>(idx)];
      if (c.lits.size() <= 2)
        continue;
      int v = c.lits[0] >> 1;
      if (assign_[v] >= 0 && reason_[v] == idx)
        continue;  // reason clause for a current assignment
      c.lits.clear();
      --num_learnts_;
      ++removed;
    }
    for (auto& wlist : watches_) {
      std::erase_if(wlist, [&](const Watch& w) {
        return clauses_[static_cast<std::size_t>(w.clause)].deleted();
      });
    }
  }

  std::optional<Assignment> extract_model() const {
    Assignment model(static_cast<std::size_t>(nvars_));
    for (int v = 0; v < nvars_; ++v)
      model.set(static_cast<std::size_t>(v), assign_[v] == 1);  // undef -> false
    return model;
  }

  int nvars_;
  SolverConfig cfg_;
  bool ok_ = true;

  std::vector<Cls> clauses_;
  std::vector<std::vector<Watch>> watches_;
  std::vector<std::int8_t> assign_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<std::uint8_t> phase_;
  std::vector<double> activity_;
  std::vector<std::uint8_t> seen_;
  std::vector<int> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<int> learnt_buf_;
  int num_learnts_ = 0;
  double var_inc_ = 1.0;
  double clause_inc_ = 1.0;
};

} // namespace

SolveResult solve(const Formula& f, const SolverConfig& cfg) {
  if (cfg.engine == Engine::external)
    return external_solve(f, cfg.command);
  CdclEngine engine(f, cfg);
  std::optional<Assignment> model = engine.run();
  if (model && !f.satisfied_by(*model))
    throw SolverError("internal error: model fails re-evaluation");
  return SolveResult{std::move(model)};
}

std::vector<Assignment> enumerate_models(const Formula& f, std::size_t cap) {
  const int n = f.num_vars();
  if (n > 25)
    throw std::invalid_argument("enumerate_models refuses n > 25 (got n=" +
                                std::to_string(n) + ")");
  std::vector<Assignment> models;
  Assignment x(static_cast<std::size_t>(n));
  const std::uint64_t total = 1ULL << n;
  for (std::uint64_t v = 0; v < total && models.size() < cap; ++v) {
    // x1 is the most significant bit: ascending v is lexicographic order.
    for (int i = 0; i < n; ++i)
      x.set(static_cast<std::size_t>(i), (v >> (n - 1 - i)) & 1);
    if (f.satisfied_by(x))
      models.push_back(x);
  }
  return models;
}

namespace {

struct TempCnfFile {
  std::string path;

  explicit TempCnfFile(const Formula& f) {
    std::string tmpl =
        (std::filesystem::temp_directory_path() / "satdiv_XXXXXX").string();
    std::vector<char> buf(tmpl.begin(), tmpl.end());
    buf.push_back('\0');
    int fd = mkstemp(buf.data());
    if (fd < 0)
      throw SolverError("cannot create temporary CNF file");
    close(fd);
    path.assign(buf.data());
    std::ofstream out(path);
    write_dimacs(f, out);
    if (!out)
      throw SolverError("cannot write temporary CNF file " + path);
  }

  ~TempCnfFile() {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
};

bool line_is_comment(const std::string& line) {
  return !line.empty() && line[0] == 'c' && (line.size() == 1 || std::isspace(line[1]));
}

} // namespace

SolveResult external_solve(const Formula& f, const std::string& command) {
  if (command.empty())
    throw SolverError("external solver command is empty");
  TempCnfFile tmp(f);

  std::string cmdline = command + " '" + tmp.path + "' 2>/dev/null";
  FILE* pipe = popen(cmdline.c_str(), "r");
  if (!pipe)
    throw SolverError("cannot start external solver: " + command);
  std::string output;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    output.append(buf.data(), got);
  int rc = pclose(pipe);

  // Status line: "UNSAT"/"s UNSATISFIABLE" or "SAT"/"s SATISFIABLE".
  // UNSAT is matched first since it contains SAT as a substring.
  int status = -1;  // -1 unknown, 0 unsat, 1 sat
  std::vector<int> model_lits;
  bool terminated = false;

  std::istringstream lines(output);
  std::string line;
  while (std::getline(lines, line)) {
    if (line_is_comment(line))
      continue;
    if (status == -1) {
      if (line.find("UNSAT") != std::string::npos) {
        status = 0;
        continue;
      }
      if (line.find("SAT") != std::string::npos) {
        status = 1;
        continue;
      }
    }
    // Model literals: "v"-prefixed or bare integer lines, zero-terminated.
    std::string body = line;
    if (!body.empty() && (body[0] == 'v' || body[0] == 'V'))
      body = body.substr(1);
    std::istringstream toks(body);
    int lit;
    while (!terminated && toks >> lit) {
      if (lit == 0) {
        terminated = true;
        break;
      }
      model_lits.push_back(lit);
    }
  }

  if (status == -1) {
    if (rc != 0)
      throw SolverError("external solver exited with status " + std::to_string(rc) +
                        " and no recognizable result");
    throw SolverError("external solver produced no recognizable status line");
  }
  if (status == 0)
    return SolveResult{std::nullopt};

  Assignment model(static_cast<std::size_t>(f.num_vars()));
  for (int lit : model_lits) {
    int var = lit < 0 ? -lit : lit;
    if (var < 1 || var > f.num_vars())
      throw SolverError("external model mentions variable " + std::to_string(var) +
                        " outside 1.." + std::to_string(f.num_vars()));
    model.set(static_cast<std::size_t>(var - 1), lit > 0);
  }
  if (!f.satisfied_by(model))
    throw SolverError("external model does not satisfy the formula");
  return SolveResult{std::move(model)};
}

} // namespace satdiv
