#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "satdiv/harness.hpp"
#include "satdiv/operators.hpp"

#include <sstream>

namespace py = pybind11;
using namespace satdiv;

namespace {

Assignment to_assignment(const std::vector<bool>& values) {
  return Assignment(values);
}

Population to_population(const std::vector<std::vector<bool>>& members, int mu) {
  Population p(mu > 0 ? mu : static_cast<int>(members.size()));
  for (const auto& m : members)
    p.add(Assignment(m));
  return p;
}

Measure make_measure(const std::string& kind, int n, const std::vector<int>& r) {
  MeasureKind k = measure_from_string(kind);
  if (k == MeasureKind::H1)
    return Measure::h1(n);
  if (static_cast<int>(r.size()) != n)
    throw std::invalid_argument("H2 requires an occurrence vector of length n");
  long long total = 0;
  for (int x : r)
    total += x;
  return Measure{MeasureKind::H2, n, r, total};
}

std::vector<std::pair<int, bool>> fixset_pairs(const FixSet& y) {
  std::vector<std::pair<int, bool>> out;
  out.reserve(y.size());
  for (const auto& e : y.entries)
    out.emplace_back(e.var, e.value);
  return out;
}

FixSet to_fixset(const std::vector<std::pair<int, bool>>& pairs) {
  FixSet y;
  for (const auto& [var, value] : pairs)
    y.entries.push_back({var, value});
  return y;
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Diverse satisfying assignments for CNF-SAT formulas";

  py::register_exception<ParseError>(m, "DimacsParseError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
  py::register_exception<GenerationError>(m, "GenerationError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<Formula>(m, "Formula")
      .def_static("from_dimacs", [](const std::string& text) { return parse_dimacs(text); },
                  py::arg("text"))
      .def_property_readonly("num_vars", &Formula::num_vars)
      .def_property_readonly("num_clauses", &Formula::num_base_clauses)
      .def("to_dimacs", [](const Formula& f) { return write_dimacs(f); })
      .def("clauses",
           [](const Formula& f) {
             std::vector<std::vector<int>> out;
             for (const Clause& c : f.base_clauses()) {
               std::vector<int> lits;
               for (Lit l : c.literals())
                 lits.push_back(l.to_dimacs());
               out.push_back(std::move(lits));
             }
             return out;
           })
      .def("satisfied_by", [](const Formula& f, const std::vector<bool>& x) {
        return f.satisfied_by(to_assignment(x));
      });

  m.def("parse_dimacs", [](const std::string& text) { return parse_dimacs(text); },
        py::arg("text"));

  m.def("solve",
        [](const Formula& f) -> py::object {
          SolveResult res = solve(f);
          if (!res.sat())
            return py::none();
          return py::cast(res.model->values());
        },
        py::arg("formula"), "Model as a list of booleans, or None when unsatisfiable.");

  m.def("enumerate_models",
        [](const Formula& f, std::size_t cap) {
          std::vector<std::vector<bool>> out;
          for (const Assignment& a : enumerate_models(f, cap))
            out.push_back(a.values());
          return out;
        },
        py::arg("formula"), py::arg("cap") = static_cast<std::size_t>(-1));

  m.def("blocking_clause",
        [](const std::vector<bool>& x) {
          Clause c = blocking_clause(to_assignment(x));
          std::vector<int> lits;
          for (Lit l : c.literals())
            lits.push_back(l.to_dimacs());
          return lits;
        },
        py::arg("assignment"));

  m.def("occurrence_counts",
        [](const Formula& f) {
          OccurrenceCounts oc = occurrence_counts(f);
          return py::make_tuple(oc.r, oc.total);
        },
        py::arg("formula"));

  m.def("contribution", &contribution, py::arg("f"), py::arg("mu"));

  m.def("entropy",
        [](const std::vector<std::vector<bool>>& members, const std::string& kind,
           const std::vector<int>& r) {
          Population p = to_population(members, 0);
          int n = members.empty() ? 0 : static_cast<int>(members[0].size());
          return entropy(p, make_measure(kind, n, r));
        },
        py::arg("members"), py::arg("kind") = "H1", py::arg("r") = std::vector<int>{});

  m.def("max_entropy",
        [](const std::string& kind, int n, const std::vector<int>& r) {
          return max_entropy(make_measure(kind, n, r));
        },
        py::arg("kind"), py::arg("n"), py::arg("r") = std::vector<int>{});

  m.def("least_contributor",
        [](const std::vector<std::vector<bool>>& members, const std::string& kind,
           const std::vector<int>& r) {
          Population p = to_population(members, 0);
          int n = members.empty() ? 0 : static_cast<int>(members[0].size());
          return least_contributor(p, make_measure(kind, n, r));
        },
        py::arg("members"), py::arg("kind") = "H1", py::arg("r") = std::vector<int>{});

  m.def("bitflip_fixset",
        [](const std::vector<bool>& x, std::uint64_t seed) {
          Rng rng(seed);
          return fixset_pairs(bitflip_fixset(to_assignment(x), rng));
        },
        py::arg("assignment"), py::arg("seed"));

  m.def("fixset_mutation",
        [](const std::vector<std::pair<int, bool>>& y, int n, std::uint64_t seed) {
          Rng rng(seed);
          return fixset_pairs(fixset_mutation(to_fixset(y), n, rng));
        },
        py::arg("fixset"), py::arg("n"), py::arg("seed"));

  m.def("fixset_crossover",
        [](const std::vector<std::pair<int, bool>>& a, const std::vector<std::pair<int, bool>>& b,
           std::uint64_t seed) {
          Rng rng(seed);
          return fixset_pairs(fixset_crossover(to_fixset(a), to_fixset(b), rng));
        },
        py::arg("a"), py::arg("b"), py::arg("seed"));

  m.def("generate_satisfiable",
        [](int n, int mm, int k, const std::string& dist, double beta, std::uint64_t seed,
           int max_rejects) {
          GenConfig cfg;
          cfg.n = n;
          cfg.m = mm;
          cfg.k = k;
          cfg.dist = dist == "uniform" ? VarDist::uniform : VarDist::powerlaw;
          cfg.beta = beta;
          cfg.seed = seed;
          cfg.max_rejects = max_rejects;
          GenResult result = gen_satisfiable(cfg);
          return py::make_tuple(instance_dimacs(cfg, result.formula, result.rejects),
                                result.rejects);
        },
        py::arg("n"), py::arg("m"), py::arg("k"), py::arg("dist") = "uniform",
        py::arg("beta") = 2.75, py::arg("seed") = 0, py::arg("max_rejects") = 1000);

  py::class_<TrajectoryPoint>(m, "TrajectoryPoint")
      .def_readonly("iteration", &TrajectoryPoint::iteration)
      .def_readonly("h1", &TrajectoryPoint::h1)
      .def_readonly("h2", &TrajectoryPoint::h2)
      .def_readonly("unsat_count", &TrajectoryPoint::unsat_count)
      .def_readonly("accepted", &TrajectoryPoint::accepted);

  py::class_<RunResult>(m, "RunResult")
      .def_property_readonly("population",
                             [](const RunResult& r) {
                               std::vector<std::vector<bool>> out;
                               for (const Assignment& a : r.population.members())
                                 out.push_back(a.values());
                               return out;
                             })
      .def_property_readonly("fixsets",
                             [](const RunResult& r) {
                               std::vector<std::vector<std::pair<int, bool>>> out;
                               for (const FixSet& y : r.fixsets)
                                 out.push_back(fixset_pairs(y));
                               return out;
                             })
      .def_readonly("trajectory", &RunResult::trajectory)
      .def_readonly("unsat_count", &RunResult::unsat_count)
      .def_readonly("h1_raw", &RunResult::h1_raw)
      .def_readonly("h2_raw", &RunResult::h2_raw)
      .def_readonly("h1_normalized", &RunResult::h1_normalized)
      .def_readonly("h2_normalized", &RunResult::h2_normalized);

  m.def("run",
        [](const Formula& f, const std::string& variant, const std::string& fitness, int mu,
           int iterations, int l, std::uint64_t seed) {
          Formula copy = f;
          RunConfig cfg;
          cfg.variant = variant_from_string(variant);
          cfg.fitness = measure_from_string(fitness);
          cfg.mu = mu;
          cfg.iterations = iterations;
          cfg.fixset_size = l;
          cfg.seed = seed;
          return run_variant(copy, cfg);
        },
        py::arg("formula"), py::arg("variant"), py::arg("fitness") = "H1", py::arg("mu") = 20,
        py::arg("iterations") = 2000, py::arg("l") = 10, py::arg("seed") = 0);

  m.def("kruskal_wallis",
        [](const std::vector<std::vector<double>>& groups) {
          KruskalResult r = kruskal_wallis(groups);
          return py::make_tuple(r.h, r.p);
        },
        py::arg("groups"));

  m.attr("__version__") = "0.1.0";
}
