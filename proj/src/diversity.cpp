#include "satdiv/diversity.hpp"

#include <cmath>
#include <stdexcept>

namespace satdiv {

Measure Measure::h2(const Formula& f) {
  OccurrenceCounts oc = occurrence_counts(f);
  return Measure{MeasureKind::H2, f.num_vars(), std::move(oc.r), oc.total};
}

double contribution(int f, int mu) {
  if (f < 0 || f > mu || mu < 1)
    throw std::invalid_argument("contribution requires 0 <= f <= mu, mu >= 1");
  if (f == 0)
    return 0.0;
  double ratio = static_cast<double>(f) / static_cast<double>(mu);
  return -ratio * std::log(ratio);
}

void Population::add(const Assignment& x) {
  if (counts_.empty())
    counts_.assign(x.size(), 0);
  if (x.size() != counts_.size())
    throw std::invalid_argument("assignment length differs from population's");
  if (members_.size() > static_cast<std::size_t>(mu_))
    throw std::logic_error("population already beyond mu + 1");
  members_.push_back(x);
  for (std::size_t i = 0; i < x.size(); ++i)
    counts_[i] += x[i] ? 1 : 0;
}

void Population::remove(std::size_t idx) {
  if (idx >= members_.size())
    throw std::out_of_range("population member index out of range");
  const Assignment& x = members_[idx];
  for (std::size_t i = 0; i < x.size(); ++i)
    counts_[i] -= x[i] ? 1 : 0;
  members_.erase(members_.begin() + static_cast<std::ptrdiff_t>(idx));
}

std::vector<int> Population::recounted() const {
  std::vector<int> counts(counts_.size(), 0);
  for (const Assignment& x : members_)
    for (std::size_t i = 0; i < x.size(); ++i)
      counts[i] += x[i] ? 1 : 0;
  return counts;
}

namespace {

void check_measure(const Population& p, const Measure& m) {
  if (p.true_counts().size() != static_cast<std::size_t>(m.n) && !p.members().empty())
    throw std::invalid_argument("measure variable count differs from population's");
  if (m.kind == MeasureKind::H2 && m.r.size() != static_cast<std::size_t>(m.n))
    throw std::invalid_argument("H2 requires an occurrence vector of length n");
}

} // namespace

double entropy(const Population& p, const Measure& m) {
  if (p.size() == 0)
    throw std::invalid_argument("entropy of an empty population");
  check_measure(p, m);
  const int size = static_cast<int>(p.size());
  const std::vector<int>& f = p.true_counts();
  double h = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    double hi = contribution(f[i], size);
    h += m.kind == MeasureKind::H2 ? static_cast<double>(m.r[i]) * hi : hi;
  }
  return h;
}

double max_entropy(const Measure& m) {
  const double per_var_max = std::exp(-1.0);
  if (m.kind == MeasureKind::H1)
    return static_cast<double>(m.n) * per_var_max;
  return static_cast<double>(m.total) * per_var_max;
}

double normalized(double h_val, const Measure& m) {
  return h_val / max_entropy(m);
}

double normalized_clamped(double h_val, const Measure& m) {
  double v = normalized(h_val, m);
  if (v < 0.0)
    return 0.0;
  if (v > 1.0)
    return 1.0;
  return v;
}

std::size_t least_contributor(const Population& p, const Measure& m) {
  if (p.size() < 2)
    throw std::invalid_argument("least_contributor requires at least 2 members");
  check_measure(p, m);

  const int reduced = static_cast<int>(p.size()) - 1;
  const std::vector<int>& f = p.true_counts();
  const std::size_t n = f.size();

  // h value of variable i in P minus one member, by whether that member has
  // the variable set. Precomputing keeps every candidate's sum in the same
  // order (ascending i) as a from-scratch evaluation, so arg-max comparisons
  // are exact.
  std::vector<double> h_keep(n), h_drop(n);
  for (std::size_t i = 0; i < n; ++i) {
    double w = m.kind == MeasureKind::H2 ? static_cast<double>(m.r[i]) : 1.0;
    // f[i] == size only if every member is true at i (then no member keeps
    // f[i]); f[i] == 0 only if none is (then no member drops it).
    h_keep[i] = f[i] <= reduced ? w * contribution(f[i], reduced) : 0.0;
    h_drop[i] = f[i] > 0 ? w * contribution(f[i] - 1, reduced) : 0.0;
  }

  std::size_t best = 0;
  double best_h = -1.0;
  for (std::size_t idx = 0; idx < p.size(); ++idx) {
    const Assignment& x = p[idx];
    double h = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      h += x[i] ? h_drop[i] : h_keep[i];
    if (h >= best_h) {  // >= resolves ties toward the largest index
      best_h = h;
      best = idx;
    }
  }
  return best;
}

} // namespace satdiv
