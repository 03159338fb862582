#include "satdiv/cnf.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>

namespace satdiv {

Clause::Clause(std::vector<Lit> lits) : lits_(std::move(lits)) {
  if (lits_.empty())
    throw std::invalid_argument("clause must be non-empty");
  std::vector<int> vars;
  vars.reserve(lits_.size());
  for (Lit l : lits_)
    vars.push_back(l.var());
  std::sort(vars.begin(), vars.end());
  if (std::adjacent_find(vars.begin(), vars.end()) != vars.end())
    throw std::invalid_argument("clause mentions a variable twice");
}

bool Clause::satisfied_by(const Assignment& x) const {
  for (Lit l : lits_)
    if (x[static_cast<std::size_t>(l.index())] != l.negated())
      return true;
  return false;
}

bool FixSet::contains_var(int var) const {
  for (const Entry& e : entries)
    if (e.var == var)
      return true;
  return false;
}

Formula::Formula(int n, std::vector<Clause> clauses) : n_(n), base_(std::move(clauses)) {
  if (n < 0)
    throw std::invalid_argument("variable count must be non-negative");
  for (const Clause& c : base_)
    check_clause(c);
}

void Formula::check_clause(const Clause& c) const {
  for (Lit l : c.literals())
    if (l.var() > n_)
      throw std::invalid_argument("literal on variable " + std::to_string(l.var()) +
                                  " exceeds n=" + std::to_string(n_));
}

std::size_t Formula::num_clauses() const {
  std::size_t total = base_.size();
  for (const auto& group : scopes_)
    total += group.size();
  return total;
}

void Formula::push_scope(std::vector<Clause> clauses) {
  for (const Clause& c : clauses)
    check_clause(c);
  scopes_.push_back(std::move(clauses));
}

void Formula::pop_scope() {
  if (scopes_.empty())
    throw std::logic_error("pop_scope on empty scope stack");
  scopes_.pop_back();
}

bool Formula::satisfied_by(const Assignment& x) const {
  if (x.size() != static_cast<std::size_t>(n_))
    return false;
  bool ok = true;
  for_each_clause([&](const Clause& c) { ok = ok && c.satisfied_by(x); });
  return ok;
}

namespace {

// Tokenizer that tracks line numbers for error reporting.
struct DimacsReader {
  std::istream& in;
  int line = 1;

  // Skips whitespace and comment lines; returns false at EOF.
  bool skip_to_token() {
    for (;;) {
      int ch = in.peek();
      if (ch == EOF)
        return false;
      if (ch == '\n') {
        in.get();
        ++line;
      } else if (std::isspace(ch)) {
        in.get();
      } else if (ch == 'c') {
        std::string rest;
        std::getline(in, rest);
        ++line;
      } else {
        return true;
      }
    }
  }

  int read_int(const char* what) {
    if (!skip_to_token())
      throw ParseError(std::string("unexpected end of input, expected ") + what, line);
    int value;
    if (!(in >> value))
      throw ParseError(std::string("expected ") + what, line);
    return value;
  }
};

} // namespace

Formula parse_dimacs(std::istream& in) {
  DimacsReader rd{in};
  if (!rd.skip_to_token())
    throw ParseError("missing DIMACS header", rd.line);

  std::string word;
  in >> word;
  if (word != "p")
    throw ParseError("malformed header, expected 'p cnf <n> <m>'", rd.line);
  in >> word;
  if (word != "cnf")
    throw ParseError("malformed header, expected 'p cnf <n> <m>'", rd.line);
  int n, m;
  if (!(in >> n >> m) || n < 0 || m < 0)
    throw ParseError("malformed header, expected 'p cnf <n> <m>'", rd.line);

  std::vector<Clause> clauses;
  clauses.reserve(static_cast<std::size_t>(m));
  std::vector<Lit> lits;
  for (int ci = 0; ci < m; ++ci) {
    lits.clear();
    if (!rd.skip_to_token())
      throw ParseError("clause count mismatch: header m=" + std::to_string(m) + " but only " +
                           std::to_string(ci) + " clauses present",
                       rd.line);
    const int clause_line = rd.line;
    for (;;) {
      int lit = rd.read_int("literal");
      if (lit == 0)
        break;
      int var = lit < 0 ? -lit : lit;
      if (var > n)
        throw ParseError("literal " + std::to_string(lit) + " exceeds n=" + std::to_string(n),
                         rd.line);
      lits.push_back(Lit::from_dimacs(lit));
    }
    if (lits.empty())
      throw ParseError("empty clause", rd.line);
    try {
      clauses.emplace_back(lits);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), clause_line);
    }
  }
  if (rd.skip_to_token()) {
    // Anything left but comments means the header count was wrong.
    throw ParseError("clause count mismatch: more clauses than header m=" + std::to_string(m),
                     rd.line);
  }
  return Formula(n, std::move(clauses));
}

Formula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

void write_dimacs(const Formula& f, std::ostream& out,
                  const std::vector<std::string>& comments) {
  for (const std::string& c : comments)
    out << "c " << c << '\n';
  out << "p cnf " << f.num_vars() << ' ' << f.num_base_clauses() << '\n';
  for (const Clause& c : f.base_clauses()) {
    for (Lit l : c.literals())
      out << l.to_dimacs() << ' ';
    out << "0\n";
  }
}

std::string write_dimacs(const Formula& f, const std::vector<std::string>& comments) {
  std::ostringstream out;
  write_dimacs(f, out, comments);
  return out.str();
}

Clause blocking_clause(const Assignment& x) {
  std::vector<Lit> lits;
  lits.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    lits.emplace_back(static_cast<int>(i) + 1, /*negated=*/x[i]);
  return Clause(std::move(lits));
}

std::vector<Clause> fixing_clauses(const FixSet& y) {
  std::vector<Clause> clauses;
  clauses.reserve(y.entries.size());
  for (const FixSet::Entry& e : y.entries)
    clauses.emplace_back(std::vector<Lit>{Lit(e.var, /*negated=*/!e.value)});
  return clauses;
}

OccurrenceCounts occurrence_counts(const Formula& f) {
  OccurrenceCounts oc;
  oc.r.assign(static_cast<std::size_t>(f.num_vars()), 0);
  oc.total = 0;
  for (const Clause& c : f.base_clauses())
    for (Lit l : c.literals()) {
      ++oc.r[static_cast<std::size_t>(l.index())];
      ++oc.total;
    }
  return oc;
}

} // namespace satdiv
