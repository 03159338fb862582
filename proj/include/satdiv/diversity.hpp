#pragma once

#include "satdiv/cnf.hpp"

#include <cstddef>
#include <vector>

namespace satdiv {

enum class MeasureKind { H1, H2 };

// H1 sums the per-variable entropy contributions; H2 weights each variable
// by its occurrence count r in the formula.
struct Measure {
  MeasureKind kind = MeasureKind::H1;
  int n = 0;
  std::vector<int> r;      // required for H2; index 0 = variable 1
  long long total = 0;     // C = sum of r

  static Measure h1(int n) { return Measure{MeasureKind::H1, n, {}, 0}; }
  static Measure h2(const Formula& f);
};

// Per-variable contribution h(f) = -(f/mu) ln(f/mu), 0 when f = 0.
// Range [0, 1/e]; maximum near f = mu/e.
double contribution(int f, int mu);

// Set of assignments with a cached per-variable count of True values.
// Size may exceed mu by one, transiently, between offspring insertion and
// survivor removal.
class Population {
public:
  explicit Population(int mu) : mu_(mu) {}

  int mu() const { return mu_; }
  std::size_t size() const { return members_.size(); }
  const Assignment& operator[](std::size_t i) const { return members_[i]; }
  const std::vector<Assignment>& members() const { return members_; }

  // f_i = number of members with variable i+1 set to True.
  const std::vector<int>& true_counts() const { return counts_; }

  void add(const Assignment& x);
  void remove(std::size_t idx);

  // Recomputes the counts from scratch (test hook for cache consistency).
  std::vector<int> recounted() const;

private:
  int mu_;
  std::vector<Assignment> members_;
  std::vector<int> counts_;
};

// Population entropy with the current population size as the denominator.
double entropy(const Population& p, const Measure& m);

// n/e for H1, C/e for H2: the (weighted) variable count times the maximal
// per-variable contribution h(mu/e) = 1/e. No population can exceed it, so
// normalized values land in [0, 1].
double max_entropy(const Measure& m);

double normalized(double h_val, const Measure& m);
double normalized_clamped(double h_val, const Measure& m);

// Index of a member whose removal leaves maximal entropy; ties resolved to
// the largest index so a just-appended offspring loses ties (a rejected
// offspring restores the population exactly).
std::size_t least_contributor(const Population& p, const Measure& m);

} // namespace satdiv
