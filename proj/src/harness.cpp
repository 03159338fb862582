#include "satdiv/harness.hpp"

#include "satdiv/rng.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;

namespace satdiv {

std::vector<int> ExperimentSpec::m_values() const {
  std::vector<int> values;
  for (int m = m_min; m <= m_max; m += m_step)
    values.push_back(m);
  return values;
}

void ExperimentSpec::validate() const {
  if (n < 1 || k < 1 || k > n)
    throw ConfigError("experiment: invalid n/k");
  if (m_min < 1 || m_max < m_min)
    throw ConfigError("experiment: require 1 <= m_min <= m_max");
  if (m_step < 1)
    throw ConfigError("experiment: m_step must be >= 1");
  if (instances_per_m < 1)
    throw ConfigError("experiment: instances_per_m must be >= 1");
  if (variants.empty())
    throw ConfigError("experiment: no variants selected");
  if (mu < 2)
    throw ConfigError("experiment: mu must be >= 2");
  if (iterations < 0)
    throw ConfigError("experiment: iterations must be >= 0");
  if (l_min < 1 || l_max < l_min || l_max > n)
    throw ConfigError("experiment: require 1 <= l_min <= l_max <= n");
  if (parallelism < 1)
    throw ConfigError("experiment: parallelism must be >= 1");
  if (output_dir.empty())
    throw ConfigError("experiment: output_dir must be set");
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos)
    return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

long long parse_ll(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(value, &pos);
    if (pos != value.size())
      throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("spec: invalid integer for " + key + ": '" + value + "'");
  }
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size())
      throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("spec: invalid number for " + key + ": '" + value + "'");
  }
}

} // namespace

ExperimentSpec parse_spec(std::istream& in) {
  ExperimentSpec spec;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string text = trim(line);
    if (text.empty() || text[0] == '#')
      continue;
    std::size_t eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigError("spec line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(text.substr(0, eq));
    std::string value = trim(text.substr(eq + 1));

    if (key == "dist") {
      if (value == "uniform")
        spec.dist = VarDist::uniform;
      else if (value == "powerlaw")
        spec.dist = VarDist::powerlaw;
      else
        throw ConfigError("spec: unknown dist '" + value + "'");
    } else if (key == "n") {
      spec.n = static_cast<int>(parse_ll(key, value));
    } else if (key == "k") {
      spec.k = static_cast<int>(parse_ll(key, value));
    } else if (key == "beta") {
      spec.beta = parse_real(key, value);
    } else if (key == "m_min") {
      spec.m_min = static_cast<int>(parse_ll(key, value));
    } else if (key == "m_max") {
      spec.m_max = static_cast<int>(parse_ll(key, value));
    } else if (key == "m_step") {
      spec.m_step = static_cast<int>(parse_ll(key, value));
    } else if (key == "instances_per_m") {
      spec.instances_per_m = static_cast<int>(parse_ll(key, value));
    } else if (key == "variants") {
      spec.variants.clear();
      for (const std::string& part : split(value, ',')) {
        std::string name = trim(part);
        if (!name.empty())
          spec.variants.push_back(variant_from_string(name));
      }
    } else if (key == "fitness") {
      spec.fitness = measure_from_string(value);
    } else if (key == "mu") {
      spec.mu = static_cast<int>(parse_ll(key, value));
    } else if (key == "iterations") {
      spec.iterations = static_cast<int>(parse_ll(key, value));
    } else if (key == "l_max") {
      spec.l_max = static_cast<int>(parse_ll(key, value));
    } else if (key == "l_min") {
      spec.l_min = static_cast<int>(parse_ll(key, value));
    } else if (key == "master_seed") {
      spec.master_seed = static_cast<std::uint64_t>(parse_ll(key, value));
    } else if (key == "output_dir") {
      spec.output_dir = value;
    } else if (key == "parallelism") {
      spec.parallelism = static_cast<int>(parse_ll(key, value));
    } else if (key == "max_rejects") {
      spec.max_rejects = static_cast<int>(parse_ll(key, value));
    } else {
      throw ConfigError("spec line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  spec.validate();
  return spec;
}

ExperimentSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open spec file " + path);
  return parse_spec(in);
}

int fixset_size_for(int m, int m_min, int m_max, int l_max, int l_min) {
  if (m_max <= m_min)
    return l_max;
  double t = static_cast<double>(m - m_min) / static_cast<double>(m_max - m_min);
  double l = static_cast<double>(l_max) + t * static_cast<double>(l_min - l_max);
  return static_cast<int>(std::lround(l));
}

std::uint64_t instance_seed(std::uint64_t master, int m, int instance_index) {
  return derive_seed(master, 0x1001, static_cast<std::uint64_t>(m),
                     static_cast<std::uint64_t>(instance_index));
}

std::uint64_t run_seed(std::uint64_t master, int m, int instance_index, Variant v) {
  std::uint64_t tag = 0x2001 + static_cast<std::uint64_t>(v);
  return derive_seed(master, tag, static_cast<std::uint64_t>(m),
                     static_cast<std::uint64_t>(instance_index));
}

std::string fmt_double(double v) {
  // Shortest decimal form that round-trips exactly.
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v)
      return buf;
  }
  return buf;
}

void write_trajectory_csv(const Trajectory& t, std::ostream& out,
                          const std::string& header_comment) {
  out << "# satdiv trajectory v1";
  if (!header_comment.empty())
    out << ' ' << header_comment;
  out << '\n';
  out << "iteration,h1,h2,unsat,accepted\n";
  for (const TrajectoryPoint& p : t)
    out << p.iteration << ',' << fmt_double(p.h1) << ',' << fmt_double(p.h2) << ','
        << p.unsat_count << ',' << (p.accepted ? 1 : 0) << '\n';
}

std::vector<double> minmax_normalized(const std::vector<double>& series) {
  if (series.empty())
    return {};
  auto [lo_it, hi_it] = std::minmax_element(series.begin(), series.end());
  double lo = *lo_it, hi = *hi_it;
  std::vector<double> out(series.size(), 0.0);
  if (hi == lo)
    return out;  // constant series maps to zeros
  for (std::size_t i = 0; i < series.size(); ++i)
    out[i] = (series[i] - lo) / (hi - lo);
  return out;
}

namespace {

void write_plot_csv(const std::string& path, const std::vector<double>& h,
                    const std::vector<double>& unsat, const std::string& label) {
  std::ofstream out(path);
  if (!out)
    throw ExperimentError("cannot write " + path);
  out << "# satdiv plotdata v1 " << label << '\n';
  out << "iteration,normalized_H,normalized_unsat\n";
  std::vector<double> nh = minmax_normalized(h);
  std::vector<double> nu = minmax_normalized(unsat);
  for (std::size_t i = 0; i < nh.size(); ++i)
    out << (i + 1) << ',' << fmt_double(nh[i]) << ',' << fmt_double(nu[i]) << '\n';
}

} // namespace

void emit_plotdata(const std::vector<Trajectory>& cell_trajectories, MeasureKind fitness,
                   const std::string& out_dir, const std::string& cell_label) {
  fs::create_directories(out_dir);
  std::size_t len = 0;
  for (const Trajectory& t : cell_trajectories)
    len = std::max(len, t.size());

  std::vector<double> mean_h(len, 0.0), mean_unsat(len, 0.0);
  std::size_t used = 0;
  for (std::size_t ti = 0; ti < cell_trajectories.size(); ++ti) {
    const Trajectory& t = cell_trajectories[ti];
    std::vector<double> h(t.size()), unsat(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      h[i] = fitness == MeasureKind::H1 ? t[i].h1 : t[i].h2;
      unsat[i] = static_cast<double>(t[i].unsat_count);
    }
    write_plot_csv(out_dir + "/inst_" + cell_label + "_i" + std::to_string(ti) + ".csv", h,
                   unsat, cell_label + " instance " + std::to_string(ti));
    if (t.size() == len) {
      for (std::size_t i = 0; i < len; ++i) {
        mean_h[i] += h[i];
        mean_unsat[i] += unsat[i];
      }
      ++used;
    }
  }
  if (used > 0 && len > 0) {
    for (std::size_t i = 0; i < len; ++i) {
      mean_h[i] /= static_cast<double>(used);
      mean_unsat[i] /= static_cast<double>(used);
    }
    write_plot_csv(out_dir + "/mean_" + cell_label + ".csv", mean_h, mean_unsat,
                   cell_label + " mean of " + std::to_string(used));
  }
}

namespace {

struct RunRecord {
  int m = 0;
  int instance = 0;
  Variant variant = Variant::basic;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  double h1_raw = 0, h1_norm = 0, h2_raw = 0, h2_norm = 0;
  long long unsat = 0;
  double wall_seconds = 0;
  Trajectory trajectory;
};

std::string sanitized(std::string text) {
  for (char& c : text)
    if (c == ',' || c == '\n' || c == '\r')
      c = ';';
  return text;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty())
    return 0.0;
  double s = 0.0;
  for (double x : v)
    s += x;
  return s / static_cast<double>(v.size());
}

} // namespace

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const std::vector<int> ms = spec.m_values();

  fs::create_directories(spec.output_dir);
  fs::create_directories(spec.output_dir + "/instances");
  fs::create_directories(spec.output_dir + "/trajectories");
  fs::create_directories(spec.output_dir + "/plotdata");

  // Instance sets: loaded from disk when already present, generated (and
  // written) otherwise. Generation is deterministic from the master seed, so
  // both paths agree.
  std::map<std::pair<int, int>, Formula> instances;
  for (int m : ms) {
    for (int idx = 0; idx < spec.instances_per_m; ++idx) {
      GenConfig gen;
      gen.n = spec.n;
      gen.m = m;
      gen.k = spec.k;
      gen.dist = spec.dist;
      gen.beta = spec.beta;
      gen.seed = instance_seed(spec.master_seed, m, idx);
      gen.max_rejects = spec.max_rejects;
      std::string path = spec.output_dir + "/instances/" + instance_filename(gen);
      if (fs::exists(path)) {
        std::ifstream in(path);
        instances.emplace(std::make_pair(m, idx), parse_dimacs(in));
      } else {
        GenResult generated = gen_satisfiable(gen);
        std::ofstream out(path);
        out << instance_dimacs(gen, generated.formula, generated.rejects);
        instances.emplace(std::make_pair(m, idx), std::move(generated.formula));
      }
    }
  }

  struct Task {
    int m;
    int idx;
    Variant variant;
  };
  std::vector<Task> tasks;
  for (int m : ms)
    for (Variant v : spec.variants)
      for (int idx = 0; idx < spec.instances_per_m; ++idx)
        tasks.push_back({m, idx, v});

  std::vector<RunRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    for (;;) {
      std::size_t ti = next.fetch_add(1);
      if (ti >= tasks.size())
        return;
      const Task& task = tasks[ti];
      RunRecord& rec = records[ti];
      rec.m = task.m;
      rec.instance = task.idx;
      rec.variant = task.variant;
      rec.seed = run_seed(spec.master_seed, task.m, task.idx, task.variant);

      Formula f = instances.at({task.m, task.idx});
      RunConfig cfg;
      cfg.mu = spec.mu;
      cfg.iterations = spec.iterations;
      cfg.fitness = spec.fitness;
      cfg.variant = task.variant;
      cfg.seed = rec.seed;
      cfg.fixset_size = fixset_size_for(task.m, spec.m_min, spec.m_max, spec.l_max, spec.l_min);

      auto start = std::chrono::steady_clock::now();
      try {
        RunResult result = run_variant(f, cfg);
        rec.ok = true;
        rec.h1_raw = result.h1_raw;
        rec.h2_raw = result.h2_raw;
        rec.h1_norm = std::clamp(result.h1_normalized, 0.0, 1.0);
        rec.h2_norm = std::clamp(result.h2_normalized, 0.0, 1.0);
        rec.unsat = result.unsat_count;
        rec.trajectory = std::move(result.trajectory);
      } catch (const std::exception& e) {
        rec.ok = false;
        rec.error = e.what();
      }
      rec.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  };

  {
    int workers = std::min<int>(spec.parallelism, static_cast<int>(tasks.size()));
    std::vector<std::thread> pool;
    for (int i = 1; i < workers; ++i)
      pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool)
      t.join();
  }

  // Trajectory files, in deterministic task order.
  for (const RunRecord& rec : records) {
    if (!rec.ok)
      continue;
    std::string name = "traj_m" + std::to_string(rec.m) + "_i" + std::to_string(rec.instance) +
                       "_" + to_string(rec.variant) + ".csv";
    std::ofstream out(spec.output_dir + "/trajectories/" + name);
    if (!out)
      throw ExperimentError("cannot write trajectory file " + name);
    write_trajectory_csv(rec.trajectory, out,
                         "m=" + std::to_string(rec.m) + " instance=" +
                             std::to_string(rec.instance) + " variant=" + to_string(rec.variant) +
                             " fitness=" + to_string(spec.fitness) + " seed=" +
                             std::to_string(rec.seed));
  }

  // Per-instance CSV.
  {
    std::ofstream out(spec.output_dir + "/per_instance.csv");
    if (!out)
      throw ExperimentError("cannot write per_instance.csv");
    out << "# satdiv per-instance v1\n";
    out << "m,variant,fitness,instance,seed,status,h1_raw,h1_norm,h2_raw,h2_norm,unsat,error\n";
    for (const RunRecord& rec : records) {
      out << rec.m << ',' << to_string(rec.variant) << ',' << to_string(spec.fitness) << ','
          << rec.instance << ',' << rec.seed << ',' << (rec.ok ? "ok" : "failed") << ','
          << fmt_double(rec.h1_raw) << ',' << fmt_double(rec.h1_norm) << ','
          << fmt_double(rec.h2_raw) << ',' << fmt_double(rec.h2_norm) << ',' << rec.unsat << ','
          << sanitized(rec.error) << '\n';
    }
  }

  // Aggregation per cell, in (m, variant) order.
  std::vector<ResultRow> rows;
  for (int m : ms) {
    for (Variant v : spec.variants) {
      ResultRow row;
      row.m = m;
      row.variant = v;
      row.fitness = spec.fitness;
      std::vector<Trajectory> cell_trajs;
      for (const RunRecord& rec : records) {
        if (rec.m != m || rec.variant != v)
          continue;
        ++row.instances;
        if (!rec.ok) {
          ++row.failures;
          std::cerr << "warning: run m=" << m << " instance=" << rec.instance << " variant="
                    << to_string(v) << " failed: " << rec.error << '\n';
          continue;
        }
        row.h1_values.push_back(rec.h1_norm);
        row.h2_values.push_back(rec.h2_norm);
        row.unsat_total += rec.unsat;
        row.wall_seconds += rec.wall_seconds;
        cell_trajs.push_back(rec.trajectory);
      }
      if (row.failures * 2 > row.instances)
        throw ExperimentError("more than half the runs failed for m=" + std::to_string(m) +
                              " variant=" + to_string(v));
      if (!row.h1_values.empty()) {
        row.mean_h1 = mean_of(row.h1_values);
        row.median_h1 = median(row.h1_values);
        row.mean_h2 = mean_of(row.h2_values);
        row.median_h2 = median(row.h2_values);
      }
      if (!cell_trajs.empty() && spec.iterations > 0)
        emit_plotdata(cell_trajs, spec.fitness, spec.output_dir + "/plotdata",
                      "m" + std::to_string(m) + "_" + to_string(v));
      rows.push_back(std::move(row));
    }
  }

  // Aggregate CSV. No wall-time column: repeated invocations with one
  // master seed must produce byte-identical files.
  {
    std::ofstream out(spec.output_dir + "/aggregate.csv");
    if (!out)
      throw ExperimentError("cannot write aggregate.csv");
    out << "# satdiv aggregate v1\n";
    out << "m,variant,fitness,instances,failures,mean_h1,median_h1,mean_h2,median_h2,"
           "unsat_total\n";
    for (const ResultRow& row : rows) {
      out << row.m << ',' << to_string(row.variant) << ',' << to_string(row.fitness) << ','
          << row.instances << ',' << row.failures << ',' << fmt_double(row.mean_h1) << ','
          << fmt_double(row.median_h1) << ',' << fmt_double(row.mean_h2) << ','
          << fmt_double(row.median_h2) << ',' << row.unsat_total << '\n';
    }
  }

  return rows;
}

std::string stats_report(std::istream& per_instance_csv, MeasureKind measure, double alpha) {
  std::string line;
  // m -> variant name (in first-appearance order) -> values
  std::map<int, std::vector<std::pair<std::string, std::vector<double>>>> cells;
  int lineno = 0;
  while (std::getline(per_instance_csv, line)) {
    ++lineno;
    std::string text = trim(line);
    if (text.empty() || text[0] == '#' || text.rfind("m,", 0) == 0)
      continue;
    std::vector<std::string> fields = split(text, ',');
    if (fields.size() < 11)
      throw ConfigError("per-instance CSV line " + std::to_string(lineno) +
                        ": expected at least 11 fields");
    if (fields[5] != "ok")
      continue;
    int m = static_cast<int>(parse_ll("m", fields[0]));
    const std::string& variant = fields[1];
    double value = parse_real("value", measure == MeasureKind::H1 ? fields[7] : fields[9]);
    auto& groups = cells[m];
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const auto& g) { return g.first == variant; });
    if (it == groups.end()) {
      groups.push_back({variant, {value}});
    } else {
      it->second.push_back(value);
    }
  }
  if (cells.empty())
    throw ConfigError("per-instance CSV contains no successful runs");

  std::ostringstream out;
  out << "Kruskal-Wallis report (measure " << to_string(measure) << ", alpha "
      << fmt_double(alpha) << ", Bonferroni-corrected pairwise tests)\n";
  for (const auto& [m, groups] : cells) {
    out << "\nm=" << m << '\n';
    std::vector<std::string> names;
    std::vector<std::vector<double>> samples;
    for (const auto& g : groups) {
      if (g.second.size() < 2) {
        out << "  (" << g.first << " has fewer than 2 observations; dropped)\n";
        continue;
      }
      names.push_back(g.first);
      samples.push_back(g.second);
    }
    if (samples.size() < 2) {
      out << "  (need >= 2 groups with >= 2 observations each; skipped)\n";
      continue;
    }
    KruskalResult kw = kruskal_wallis(samples);
    out << "  H=" << fmt_double(kw.h) << " df=" << kw.df << " p=" << fmt_double(kw.p) << '\n';
    PairwiseComparisons cmp = pairwise_tests(samples, alpha);
    for (std::size_t g = 0; g < samples.size(); ++g) {
      out << "  (" << (g + 1) << ") " << names[g] << ": median="
          << fmt_double(median(samples[g])) << " stat=" << verdict_row(cmp, g) << '\n';
    }
  }
  return out.str();
}

} // namespace satdiv
