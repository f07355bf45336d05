// Python bindings for the MISRO solver suite.

#include <pybind11/chrono.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "misro/bench.hpp"
#include "misro/instances.hpp"
#include "misro/oracle.hpp"
#include "misro/side.hpp"
#include "misro/solvers.hpp"

namespace py = pybind11;
using namespace misro;

namespace {

std::optional<Seconds> to_deadline(std::optional<double> seconds) {
  if (!seconds) return std::nullopt;
  return Seconds(*seconds);
}

// Opaque holder so pybind11's variant caster does not try to unpack the
// constraint alternatives (they stay an implementation detail).
struct PySideConstraint {
  SideConstraint value;
};

std::vector<SideConstraint> unwrap(const std::vector<PySideConstraint>& side) {
  std::vector<SideConstraint> out;
  out.reserve(side.size());
  for (const auto& c : side) out.push_back(c.value);
  return out;
}

}  // namespace

PYBIND11_MODULE(_misro, m) {
  m.doc() = "Exact solvers for max-min risk quantification under "
            "per-requirement criticality thresholds";

  py::register_exception<Error>(m, "MisroError");

  py::enum_<Mode>(m, "Mode")
      .value("LINEAR", Mode::kLinear)
      .value("BILINEAR", Mode::kBilinear)
      .value("QUADRATIC", Mode::kQuadratic);

  py::enum_<SolveStatus>(m, "SolveStatus")
      .value("OPTIMAL", SolveStatus::kOptimal)
      .value("FEASIBLE_NOT_PROVEN", SolveStatus::kFeasibleNotProven)
      .value("INFEASIBLE", SolveStatus::kInfeasible)
      .value("DEADLINE_WITH_INCUMBENT", SolveStatus::kDeadlineWithIncumbent)
      .value("DEADLINE_NO_INCUMBENT", SolveStatus::kDeadlineNoIncumbent);

  m.def("q_den", &q_den, py::arg("mode"));
  m.def("q_min", &q_min, py::arg("mode"));
  m.def("quantify", &quantify, py::arg("mode"), py::arg("likelihood"),
        py::arg("severity"));

  py::class_<LevelPair>(m, "LevelPair")
      .def(py::init<int, int>(), py::arg("l"), py::arg("s"))
      .def_readonly("l", &LevelPair::l)
      .def_readonly("s", &LevelPair::s)
      .def("__repr__", [](const LevelPair& p) {
        return "LevelPair(l=" + std::to_string(p.l) +
               ", s=" + std::to_string(p.s) + ")";
      });

  py::class_<AchievableSet>(m, "AchievableSet")
      .def_readonly("values", &AchievableSet::values)
      .def_readonly("witnesses", &AchievableSet::witnesses)
      .def("__len__", &AchievableSet::size);

  m.def(
      "achievable_values",
      [](Mode mode, std::optional<std::vector<LevelPair>> pairs) {
        return achievable_values(mode, pairs ? *pairs : full_level_pairs());
      },
      py::arg("mode"), py::arg("allowed_pairs") = std::nullopt,
      "Distinct attainable quantification values (full 36 pairs by default)");

  py::class_<GenSpec>(m, "GenSpec")
      .def(py::init([](int alpha, int beta, int gamma, Mode mode,
                       std::uint64_t seed, std::pair<int, int> m_range,
                       std::pair<int, int> c_range) {
             GenSpec spec;
             spec.alpha = alpha;
             spec.beta = beta;
             spec.gamma = gamma;
             spec.mode = mode;
             spec.seed = seed;
             spec.m_lo = m_range.first;
             spec.m_hi = m_range.second;
             spec.c_lo = c_range.first;
             spec.c_hi = c_range.second;
             return spec;
           }),
           py::arg("alpha"), py::arg("beta"), py::arg("gamma") = 1,
           py::arg("mode") = Mode::kBilinear, py::arg("seed") = kDefaultSeed,
           py::arg("m_range") = std::pair<int, int>{0, 10},
           py::arg("c_range") = std::pair<int, int>{20, 90})
      .def_readonly("alpha", &GenSpec::alpha)
      .def_readonly("beta", &GenSpec::beta)
      .def_readonly("gamma", &GenSpec::gamma)
      .def_readonly("mode", &GenSpec::mode)
      .def_readonly("seed", &GenSpec::seed);

  py::class_<Instance>(m, "Instance")
      .def_readonly("name", &Instance::name)
      .def_readonly("mode", &Instance::mode)
      .def_readonly("m", &Instance::m)
      .def_readonly("n", &Instance::n)
      .def_property_readonly("M",
                             [](const Instance& inst) { return inst.weights; })
      .def_property_readonly(
          "C", [](const Instance& inst) { return inst.thresholds; })
      .def_property_readonly(
          "lam", [](const Instance& inst) { return inst.lambda; })
      .def_readonly("gen", &Instance::gen)
      .def("same_problem", &Instance::same_problem)
      .def("__eq__",
           [](const Instance& a, const Instance& b) { return a == b; })
      .def("__repr__", [](const Instance& inst) {
        return "Instance(" + (inst.name.empty() ? "<unnamed>" : inst.name) +
               ", mode=" + mode_name(inst.mode) +
               ", m=" + std::to_string(inst.m) +
               ", n=" + std::to_string(inst.n) + ")";
      });

  m.def("make_instance", &make_instance, py::arg("mode"), py::arg("M"),
        py::arg("C"), py::arg("name") = "",
        py::arg("gen") = std::optional<GenSpec>{});
  m.def("validate_instance", &validate_instance, py::arg("instance"));
  m.def("generate", &generate, py::arg("spec"));

  py::class_<Assignment>(m, "Assignment")
      .def_readonly("l", &Assignment::likelihood)
      .def_readonly("s", &Assignment::severity)
      .def_readonly("Q", &Assignment::quant)
      .def("__eq__",
           [](const Assignment& a, const Assignment& b) { return a == b; })
      .def("__repr__", [](const Assignment& a) {
        return "Assignment(n=" + std::to_string(a.size()) + ")";
      });

  m.def("make_assignment", &make_assignment, py::arg("mode"), py::arg("l"),
        py::arg("s"));

  py::class_<RequirementCriticality>(m, "RequirementCriticality")
      .def_readonly("numerator", &RequirementCriticality::numerator)
      .def_readonly("denominator", &RequirementCriticality::denominator)
      .def_readonly("acceptable", &RequirementCriticality::acceptable)
      .def_property_readonly("defined", &RequirementCriticality::defined)
      .def("reduced", &RequirementCriticality::reduced);

  py::class_<CriticalityReport>(m, "CriticalityReport")
      .def_readonly("requirements", &CriticalityReport::requirements)
      .def_readonly("overall_acceptable",
                    &CriticalityReport::overall_acceptable);

  m.def("calc_criticality", &calc_criticality, py::arg("instance"),
        py::arg("assignment"));
  m.def("is_acceptable", &is_acceptable, py::arg("instance"),
        py::arg("assignment"));

  py::class_<MitigationAction>(m, "MitigationAction")
      .def(py::init([](int risk, int delta_l, int delta_s) {
             return MitigationAction{risk, delta_l, delta_s};
           }),
           py::arg("risk"), py::arg("delta_l") = 0, py::arg("delta_s") = 0);
  m.def("apply_mitigation", &apply_mitigation, py::arg("assignment"),
        py::arg("action"), py::arg("mode"));

  // Side constraints as opaque tagged values built by factories.
  py::class_<PySideConstraint>(m, "SideConstraint")
      .def("__repr__",
           [](const PySideConstraint& c) { return describe(c.value); });
  m.def("fix_likelihood", [](int risk, int level) {
    return PySideConstraint{FixLikelihood{risk, level}};
  });
  m.def("fix_severity", [](int risk, int level) {
    return PySideConstraint{FixSeverity{risk, level}};
  });
  m.def("restrict_likelihood", [](int risk, std::vector<int> levels) {
    return PySideConstraint{RestrictLikelihood{risk, std::move(levels)}};
  });
  m.def("restrict_severity", [](int risk, std::vector<int> levels) {
    return PySideConstraint{RestrictSeverity{risk, std::move(levels)}};
  });
  m.def("min_quant", [](int risk, int value) {
    return PySideConstraint{MinQuant{risk, value}};
  });
  m.def("max_quant", [](int risk, int value) {
    return PySideConstraint{MaxQuant{risk, value}};
  });

  py::class_<Solution>(m, "Solution")
      .def_readonly("assignment", &Solution::assignment)
      .def_readonly("objective", &Solution::objective)
      .def_readonly("proven_optimal", &Solution::proven_optimal);

  py::class_<SearchStats>(m, "SearchStats")
      .def_readonly("nodes", &SearchStats::nodes)
      .def_readonly("propagations", &SearchStats::propagations)
      .def_readonly("wall_seconds", &SearchStats::wall_seconds);

  py::class_<SolveOutcome>(m, "SolveOutcome")
      .def_readonly("status", &SolveOutcome::status)
      .def_readonly("solution", &SolveOutcome::solution)
      .def_readonly("bound", &SolveOutcome::bound)
      .def_readonly("stats", &SolveOutcome::stats)
      .def("__repr__", [](const SolveOutcome& o) {
        std::string text = std::string("SolveOutcome(") + to_string(o.status);
        if (o.solution) {
          text += ", objective=" + std::to_string(o.solution->objective);
        }
        return text + ")";
      });

  m.def(
      "solve_fastpath",
      [](const Instance& inst, const std::vector<PySideConstraint>& side) {
        return solve_fastpath(inst, unwrap(side));
      },
      py::arg("instance"), py::arg("side") = std::vector<PySideConstraint>{});
  m.def(
      "solve_bnb",
      [](const Instance& inst, const std::vector<PySideConstraint>& side,
         std::optional<double> timeout_s) {
        return solve_bnb(inst, unwrap(side), to_deadline(timeout_s));
      },
      py::arg("instance"), py::arg("side") = std::vector<PySideConstraint>{},
      py::arg("timeout_s") = std::nullopt);
  m.def("greedy_saturate", &greedy_saturate, py::arg("instance"),
        py::arg("base"));
  m.def(
      "brute_force",
      [](const Instance& inst, const std::vector<PySideConstraint>& side,
         std::int64_t cap) { return brute_force(inst, unwrap(side), cap); },
      py::arg("instance"), py::arg("side") = std::vector<PySideConstraint>{},
      py::arg("cap") = kDefaultOracleCap);

  m.def("emit_dzn",
        [](const Instance& inst) { return emit_dzn(inst); },
        py::arg("instance"));
  m.def("parse_dzn",
        [](const std::string& text) { return parse_dzn(text); },
        py::arg("text"));
  m.def("emit_json", &emit_json, py::arg("instance"));
  m.def(
      "parse_json",
      [](const std::string& text) { return parse_json(text); },
      py::arg("text"));

  m.def("quality", &quality, py::arg("best"), py::arg("optimum"));

  py::class_<BenchConfig>(m, "BenchConfig")
      .def(py::init<>())
      .def_readwrite("alpha_set", &BenchConfig::alpha_set)
      .def_readwrite("beta_set", &BenchConfig::beta_set)
      .def_readwrite("versions", &BenchConfig::versions)
      .def_readwrite("modes", &BenchConfig::modes)
      .def_readwrite("seed", &BenchConfig::seed)
      .def_readwrite("parallel_workers", &BenchConfig::parallel_workers)
      .def_readwrite("output_dir", &BenchConfig::output_dir)
      .def_property(
          "strategies",
          [](const BenchConfig& cfg) {
            std::vector<std::string> names;
            for (Strategy s : cfg.strategies) names.push_back(to_string(s));
            return names;
          },
          [](BenchConfig& cfg, const std::vector<std::string>& names) {
            cfg.strategies.clear();
            for (const auto& name : names) {
              cfg.strategies.push_back(strategy_from_string(name));
            }
          })
      .def_property(
          "timeout_s",
          [](const BenchConfig& cfg) { return cfg.timeout.count(); },
          [](BenchConfig& cfg, double s) { cfg.timeout = Seconds(s); });

  py::class_<BenchRecord>(m, "BenchRecord")
      .def_readonly("instance", &BenchRecord::instance)
      .def_readonly("alpha", &BenchRecord::alpha)
      .def_readonly("beta", &BenchRecord::beta)
      .def_readonly("gamma", &BenchRecord::gamma)
      .def_readonly("mode", &BenchRecord::mode)
      .def_property_readonly(
          "strategy",
          [](const BenchRecord& r) { return to_string(r.strategy); })
      .def_readonly("status", &BenchRecord::status)
      .def_readonly("best_minq", &BenchRecord::best_minq)
      .def_readonly("optimum_minq", &BenchRecord::optimum_minq)
      .def_property_readonly("quality_pct",
                             [](const BenchRecord& r) -> std::optional<double> {
                               if (!r.quality_tenths) return std::nullopt;
                               return *r.quality_tenths / 10.0;
                             })
      .def_readonly("time_ms", &BenchRecord::time_ms)
      .def_readonly("nodes", &BenchRecord::nodes);

  py::class_<BenchResult>(m, "BenchResult")
      .def_readonly("records", &BenchResult::records)
      .def_readonly("results_csv", &BenchResult::results_csv)
      .def_readonly("summary_csv", &BenchResult::summary_csv);

  m.def("run_suite", &run_suite, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
}
