#pragma once

#include <string>
#include <vector>

namespace satdiv {

// Upper tail of the chi-squared distribution with df degrees of freedom.
double chi_squared_sf(double x, int df);

double median(std::vector<double> values);

struct KruskalResult {
  double h = 0;   // tie-corrected rank statistic
  double p = 1;   // chi-squared approximation, df = groups - 1
  int df = 0;
};

// Requires >= 2 groups with >= 2 observations each. All observations
// identical yields H = 0, p = 1.
KruskalResult kruskal_wallis(const std::vector<std::vector<double>>& groups);

// '+' median greater and significant, '-' median smaller and significant,
// '*' no significant difference at the Bonferroni-corrected level.
enum class PairVerdict { better, worse, tie };

struct PairwiseComparisons {
  double alpha = 0.05;
  double corrected_alpha = 0;                      // alpha / number of pairs
  std::vector<std::vector<PairVerdict>> verdict;   // [i][j], i != j
  std::vector<std::vector<double>> p_value;        // [i][j] two-group test
};

// Pairwise two-group rank tests with Bonferroni correction; verdicts follow
// the group medians.
PairwiseComparisons pairwise_tests(const std::vector<std::vector<double>>& groups,
                                   double alpha = 0.05);

// Verdict row for one group in compact notation, e.g. "2+3-4*" (1-based
// group numbers, own group omitted).
std::string verdict_row(const PairwiseComparisons& cmp, std::size_t group);

} // namespace satdiv
