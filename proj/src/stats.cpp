#include "satdiv/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace satdiv {

namespace {

// Regularized lower incomplete gamma P(a, x) by power series; valid for
// x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int i = 0; i < 1000; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16)
      break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by continued fraction
// (modified Lentz); valid for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 1000; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny)
      d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny)
      c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16)
      break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

} // namespace

double chi_squared_sf(double x, int df) {
  if (df < 1)
    throw std::invalid_argument("chi_squared_sf requires df >= 1");
  if (x <= 0.0)
    return 1.0;
  double a = 0.5 * static_cast<double>(df);
  double half = 0.5 * x;
  if (half < a + 1.0)
    return 1.0 - gamma_p_series(a, half);
  return gamma_q_cf(a, half);
}

double median(std::vector<double> values) {
  if (values.empty())
    throw std::invalid_argument("median of empty sample");
  std::sort(values.begin(), values.end());
  std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1)
    return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

namespace {

// Midranks over the pooled sample plus the tie-correction term
// sum(t^3 - t) over tie groups.
struct Ranked {
  std::vector<double> rank;   // aligned with the pooled values
  double tie_term = 0.0;
};

Ranked midranks(const std::vector<double>& pooled) {
  const std::size_t n = pooled.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i)
    order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });

  Ranked out;
  out.rank.assign(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]])
      ++j;
    double t = static_cast<double>(j - i + 1);
    double avg = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
    for (std::size_t k = i; k <= j; ++k)
      out.rank[order[k]] = avg;
    if (t > 1.0)
      out.tie_term += t * t * t - t;
    i = j + 1;
  }
  return out;
}

} // namespace

KruskalResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2)
    throw std::invalid_argument("kruskal_wallis requires >= 2 groups");
  for (const auto& g : groups)
    if (g.size() < 2)
      throw std::invalid_argument("kruskal_wallis requires >= 2 observations per group");

  std::vector<double> pooled;
  std::vector<std::size_t> group_of;
  for (std::size_t g = 0; g < groups.size(); ++g)
    for (double v : groups[g]) {
      pooled.push_back(v);
      group_of.push_back(g);
    }

  const double n = static_cast<double>(pooled.size());
  Ranked rk = midranks(pooled);

  std::vector<double> rank_sum(groups.size(), 0.0);
  for (std::size_t i = 0; i < pooled.size(); ++i)
    rank_sum[group_of[i]] += rk.rank[i];

  double h = 0.0;
  for (std::size_t g = 0; g < groups.size(); ++g)
    h += rank_sum[g] * rank_sum[g] / static_cast<double>(groups[g].size());
  h = 12.0 / (n * (n + 1.0)) * h - 3.0 * (n + 1.0);

  double correction = 1.0 - rk.tie_term / (n * n * n - n);
  KruskalResult result;
  result.df = static_cast<int>(groups.size()) - 1;
  if (correction <= 0.0) {
    // Every observation identical: no evidence of any difference.
    result.h = 0.0;
    result.p = 1.0;
    return result;
  }
  result.h = h / correction;
  if (result.h < 0.0)
    result.h = 0.0;
  result.p = result.h == 0.0 ? 1.0 : chi_squared_sf(result.h, result.df);
  return result;
}

PairwiseComparisons pairwise_tests(const std::vector<std::vector<double>>& groups,
                                   double alpha) {
  const std::size_t g = groups.size();
  if (g < 2)
    throw std::invalid_argument("pairwise_tests requires >= 2 groups");

  PairwiseComparisons cmp;
  cmp.alpha = alpha;
  cmp.corrected_alpha = alpha / (static_cast<double>(g) * (static_cast<double>(g) - 1.0) / 2.0);
  cmp.verdict.assign(g, std::vector<PairVerdict>(g, PairVerdict::tie));
  cmp.p_value.assign(g, std::vector<double>(g, 1.0));

  std::vector<double> med(g);
  for (std::size_t i = 0; i < g; ++i)
    med[i] = median(groups[i]);

  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = i + 1; j < g; ++j) {
      double p = kruskal_wallis({groups[i], groups[j]}).p;
      cmp.p_value[i][j] = cmp.p_value[j][i] = p;
      if (p < cmp.corrected_alpha && med[i] != med[j]) {
        bool i_better = med[i] > med[j];
        cmp.verdict[i][j] = i_better ? PairVerdict::better : PairVerdict::worse;
        cmp.verdict[j][i] = i_better ? PairVerdict::worse : PairVerdict::better;
      }
    }
  }
  return cmp;
}

std::string verdict_row(const PairwiseComparisons& cmp, std::size_t group) {
  std::string out;
  for (std::size_t j = 0; j < cmp.verdict.size(); ++j) {
    if (j == group)
      continue;
    out += std::to_string(j + 1);
    switch (cmp.verdict[group][j]) {
    case PairVerdict::better: out += '+'; break;
    case PairVerdict::worse: out += '-'; break;
    case PairVerdict::tie: out += '*'; break;
    }
  }
  return out;
}

} // namespace satdiv
