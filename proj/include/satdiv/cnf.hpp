#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace satdiv {

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

// A literal over a 1-indexed variable (DIMACS convention). Internally the
// variable index is stored 0-based; index() exposes it for array access.
class Lit {
public:
  Lit(int var, bool negated) : code_(2 * (var - 1) + (negated ? 1 : 0)) {
    if (var < 1)
      throw std::invalid_argument("variable index must be >= 1");
  }

  // From a signed DIMACS integer (nonzero).
  static Lit from_dimacs(int lit) { return Lit(lit < 0 ? -lit : lit, lit < 0); }

  int var() const { return code_ / 2 + 1; }     // 1-indexed
  int index() const { return code_ / 2; }       // 0-indexed
  bool negated() const { return (code_ & 1) != 0; }
  int code() const { return code_; }            // 0-based literal index, 2*index()+neg
  int to_dimacs() const { return negated() ? -var() : var(); }
  Lit negation() const { return Lit(var(), !negated()); }

  friend bool operator==(Lit a, Lit b) { return a.code_ == b.code_; }
  friend bool operator!=(Lit a, Lit b) { return a.code_ != b.code_; }
  friend bool operator<(Lit a, Lit b) { return a.code_ < b.code_; }

private:
  int code_;
};

// Total truth assignment over variables 1..n; operator[] is 0-indexed.
class Assignment {
public:
  Assignment() = default;
  explicit Assignment(std::size_t n, bool value = false) : values_(n, value) {}
  explicit Assignment(std::vector<bool> values) : values_(std::move(values)) {}

  std::size_t size() const { return values_.size(); }
  bool operator[](std::size_t i) const { return values_[i]; }
  void set(std::size_t i, bool v) { values_[i] = v; }
  bool value_of(int var) const { return values_[static_cast<std::size_t>(var - 1)]; }

  const std::vector<bool>& values() const { return values_; }

  friend bool operator==(const Assignment& a, const Assignment& b) {
    return a.values_ == b.values_;
  }
  friend bool operator<(const Assignment& a, const Assignment& b) {
    return a.values_ < b.values_;
  }

private:
  std::vector<bool> values_;
};

// Non-empty disjunction of literals on pairwise distinct variables.
// Duplicate or complementary literals are rejected at construction.
class Clause {
public:
  explicit Clause(std::vector<Lit> lits);

  const std::vector<Lit>& literals() const { return lits_; }
  std::size_t size() const { return lits_.size(); }

  bool satisfied_by(const Assignment& x) const;

  friend bool operator==(const Clause& a, const Clause& b) { return a.lits_ == b.lits_; }

private:
  std::vector<Lit> lits_;
};

// The EDO genotype: variables forced to fixed values before solving.
// Entries are ordered; indices are 1-based and pairwise distinct.
struct FixSet {
  struct Entry {
    int var;     // 1-indexed
    bool value;
    friend bool operator==(const Entry& a, const Entry& b) {
      return a.var == b.var && a.value == b.value;
    }
  };
  std::vector<Entry> entries;

  std::size_t size() const { return entries.size(); }
  bool contains_var(int var) const;

  friend bool operator==(const FixSet& a, const FixSet& b) { return a.entries == b.entries; }
};

// CNF formula over n variables. base clauses are the original m clauses;
// scoped clauses are groups added temporarily (LIFO) by the algorithms.
class Formula {
public:
  Formula() : n_(0) {}
  Formula(int n, std::vector<Clause> clauses);

  int num_vars() const { return n_; }
  std::size_t num_base_clauses() const { return base_.size(); }
  std::size_t num_clauses() const;  // base + all scoped

  const std::vector<Clause>& base_clauses() const { return base_; }

  void push_scope(std::vector<Clause> clauses);
  void pop_scope();
  std::size_t scope_depth() const { return scopes_.size(); }

  // Visits base clauses, then scoped groups oldest first.
  template <typename F>
  void for_each_clause(F&& fn) const {
    for (const Clause& c : base_)
      fn(c);
    for (const auto& group : scopes_)
      for (const Clause& c : group)
        fn(c);
  }

  bool satisfied_by(const Assignment& x) const;

  void check_clause(const Clause& c) const;  // range-check literals against n

private:
  int n_;
  std::vector<Clause> base_;
  std::vector<std::vector<Clause>> scopes_;
};

// Removes the pushed scope when leaving the enclosing block, so a thrown
// exception cannot leave temporary clauses behind.
class ScopedClauses {
public:
  ScopedClauses(Formula& f, std::vector<Clause> clauses) : formula_(f) {
    formula_.push_scope(std::move(clauses));
  }
  ~ScopedClauses() { formula_.pop_scope(); }
  ScopedClauses(const ScopedClauses&) = delete;
  ScopedClauses& operator=(const ScopedClauses&) = delete;

private:
  Formula& formula_;
};

Formula parse_dimacs(std::istream& in);
Formula parse_dimacs(const std::string& text);

void write_dimacs(const Formula& f, std::ostream& out,
                  const std::vector<std::string>& comments = {});
std::string write_dimacs(const Formula& f,
                         const std::vector<std::string>& comments = {});

// Clause falsified by exactly x: literal i carries the flipped polarity.
Clause blocking_clause(const Assignment& x);

// One unit clause per fixed variable.
std::vector<Clause> fixing_clauses(const FixSet& y);

struct OccurrenceCounts {
  std::vector<int> r;       // per-variable occurrence count, index 0 = variable 1
  long long total;          // C = sum of r = sum of clause lengths
};

// Counts over base clauses only.
OccurrenceCounts occurrence_counts(const Formula& f);

} // namespace satdiv
