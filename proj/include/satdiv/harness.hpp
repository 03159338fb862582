#pragma once

#include "satdiv/algorithms.hpp"
#include "satdiv/generator.hpp"
#include "satdiv/stats.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace satdiv {

class ExperimentError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ExperimentSpec {
  VarDist dist = VarDist::powerlaw;
  int n = 100;
  int k = 3;
  double beta = 2.75;
  int m_min = 210;
  int m_max = 380;
  int m_step = 10;
  int instances_per_m = 30;
  std::vector<Variant> variants = {Variant::basic, Variant::bitflip,
                                   Variant::edo_mutation, Variant::edo_crossover};
  MeasureKind fitness = MeasureKind::H1;
  int mu = 20;
  int iterations = 2000;
  int l_max = 10;   // fix-set size at the smallest m
  int l_min = 4;    // fix-set size at the largest m
  std::uint64_t master_seed = 1;
  std::string output_dir = "out";
  int parallelism = 1;
  int max_rejects = 1000;

  std::vector<int> m_values() const;
  void validate() const;
};

ExperimentSpec parse_spec(std::istream& in);
ExperimentSpec parse_spec_file(const std::string& path);

// Fix-set size schedule: l_max at m_min decreasing linearly (rounded) to
// l_min at m_max.
int fixset_size_for(int m, int m_min, int m_max, int l_max = 10, int l_min = 4);

// Seed derivation. Instance seeds do not involve the variant, so adding
// variants never perturbs instance generation; run seeds do not involve the
// fitness measure, so fitness-swap comparisons are seed-paired.
std::uint64_t instance_seed(std::uint64_t master, int m, int instance_index);
std::uint64_t run_seed(std::uint64_t master, int m, int instance_index, Variant v);

struct ResultRow {
  int m = 0;
  Variant variant = Variant::basic;
  MeasureKind fitness = MeasureKind::H1;
  int instances = 0;
  int failures = 0;
  double mean_h1 = 0, median_h1 = 0;     // normalized, clamped to [0,1]
  double mean_h2 = 0, median_h2 = 0;
  std::vector<double> h1_values;         // per-instance normalized H1
  std::vector<double> h2_values;
  long long unsat_total = 0;
  double wall_seconds = 0;               // not written to CSV (reproducibility)
};

// Generates (or reuses previously generated) instances per m, runs every
// configured variant once per instance with derived seeds, writes
// per-instance and per-run trajectory CSVs plus an aggregate CSV and
// plot-data files under spec.output_dir. Deterministic given the master
// seed. More than 50% failed runs in any cell raises ExperimentError.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

// Plot-ready trajectories: per-instance and mean series of one cell with
// columns (iteration, normalized_H, normalized_unsat_count), both series
// min-max normalized; a constant series normalizes to zeros.
void emit_plotdata(const std::vector<Trajectory>& cell_trajectories,
                   MeasureKind fitness, const std::string& out_dir,
                   const std::string& cell_label);

void write_trajectory_csv(const Trajectory& t, std::ostream& out,
                          const std::string& header_comment = {});

// min-max normalization helper used by emit_plotdata; min == max maps to 0.
std::vector<double> minmax_normalized(const std::vector<double>& series);

// Deterministic double formatting for all CSV output (round-trip exact).
std::string fmt_double(double v);

// Kruskal-Wallis report over per-instance CSVs produced by run_experiment:
// for every m in the file, groups are the variants' values of the chosen
// measure; emits the H statistic, p value, and pairwise verdict notation.
std::string stats_report(std::istream& per_instance_csv, MeasureKind measure,
                         double alpha = 0.05);

} // namespace satdiv
