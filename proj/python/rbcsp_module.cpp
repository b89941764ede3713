#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rbcsp/core.hpp"
#include "rbcsp/errors.hpp"
#include "rbcsp/io.hpp"
#include "rbcsp/montecarlo.hpp"
#include "rbcsp/search.hpp"
#include "rbcsp/theory.hpp"

namespace py = pybind11;
using namespace rbcsp;

namespace {

std::optional<std::vector<Value>> values_of(const std::optional<Assignment>& a) {
  if (!a) return std::nullopt;
  return a->values;
}

Assignment as_assignment(std::vector<Value> values) { return Assignment{std::move(values)}; }

}  // namespace

PYBIND11_MODULE(rbcsp, m) {
  m.doc() = "Model RB random CSP instances, super solutions and first-moment experiments";

  py::register_exception<ParamError>(m, "ParamError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::enum_<RelationMode>(m, "RelationMode")
      .value("exact", RelationMode::exact)
      .value("bernoulli", RelationMode::bernoulli);

  py::class_<RBParams>(m, "RBParams")
      .def_readonly("n", &RBParams::n)
      .def_readonly("k", &RBParams::k)
      .def_readonly("alpha", &RBParams::alpha)
      .def_readonly("r", &RBParams::r)
      .def_readonly("p", &RBParams::p)
      .def_readonly("d", &RBParams::d)
      .def_readonly("m", &RBParams::m)
      .def_readonly("rel_size", &RBParams::rel_size)
      .def_readonly("mode", &RBParams::mode)
      .def("__eq__", [](const RBParams& a, const RBParams& b) { return a == b; })
      .def("__repr__", [](const RBParams& p) {
        std::ostringstream s;
        s << "RBParams(n=" << p.n << ", k=" << p.k << ", d=" << p.d << ", m=" << p.m << ", rel_size=" << p.rel_size
          << ", mode=" << to_string(p.mode) << ")";
        return s.str();
      });

  m.def("derive_params", &derive_params, py::arg("n"), py::arg("k"), py::arg("alpha"), py::arg("r"), py::arg("p"),
        py::arg("mode") = RelationMode::exact);
  m.def("explicit_params", &explicit_params, py::arg("n"), py::arg("k"), py::arg("d"), py::arg("m"), py::arg("p"),
        py::arg("mode") = RelationMode::exact, py::arg("rel_size") = std::nullopt);

  m.def("encode_tuple", [](const std::vector<Value>& values, std::uint32_t d) { return encode_tuple(values, d); });
  m.def("decode_tuple", &decode_tuple);

  py::class_<Constraint>(m, "Constraint")
      .def(py::init<std::vector<VarIndex>, std::vector<TupleCode>>(), py::arg("scope"), py::arg("relation"))
      .def_property_readonly("scope", &Constraint::scope)
      .def_property_readonly("relation", &Constraint::relation);

  py::class_<Instance>(m, "Instance")
      .def(py::init<RBParams, std::vector<Constraint>, std::uint64_t>(), py::arg("params"), py::arg("constraints"),
           py::arg("seed") = 0)
      .def_property_readonly("params", &Instance::params)
      .def_property_readonly("constraints", &Instance::constraints)
      .def_property_readonly("seed", &Instance::seed)
      .def("__eq__", [](const Instance& a, const Instance& b) { return a == b; });

  m.def("generate", &generate, py::arg("params"), py::arg("seed"));
  m.def("serialize_instance", &serialize_instance);
  m.def("parse_instance", [](const std::string& text) { return parse_instance(text); });

  m.def("satisfies", [](const Instance& inst, std::vector<Value> a) { return satisfies(inst, as_assignment(a)); });
  m.def("delta", [](std::vector<Value> a, std::vector<Value> b) { return delta(as_assignment(a), as_assignment(b)); });
  m.def(
      "find_repair",
      [](const Instance& inst, std::vector<Value> sigma, VarIndex i, int level) {
        return values_of(find_repair(inst, as_assignment(sigma), i, super_level_from_int(level)));
      },
      py::arg("inst"), py::arg("sigma"), py::arg("i"), py::arg("level") = 11);
  m.def(
      "is_super_solution",
      [](const Instance& inst, std::vector<Value> sigma, int level) {
        return is_super_solution(inst, as_assignment(sigma), super_level_from_int(level));
      },
      py::arg("inst"), py::arg("sigma"), py::arg("level") = 11);

  py::class_<DegreeProfile>(m, "DegreeProfile")
      .def_readonly("degrees", &DegreeProfile::degrees)
      .def_readonly("overlaps", &DegreeProfile::overlaps)
      .def("overlap", &DegreeProfile::overlap);
  m.def("degree_profile", &degree_profile);

  py::class_<CountReport>(m, "CountReport")
      .def_readonly("n_solutions", &CountReport::n_solutions)
      .def_readonly("n_super10", &CountReport::n_super10)
      .def_readonly("n_super11", &CountReport::n_super11)
      .def_readonly("enumerated", &CountReport::enumerated)
      .def_readonly("capped", &CountReport::capped);
  m.def("count_all", &count_all, py::arg("inst"), py::arg("cap") = std::nullopt, py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("backtrack_solve", [](const Instance& inst) { return values_of(backtrack_solve(inst)); });
  m.def(
      "find_super", [](const Instance& inst, int level) { return values_of(find_super(inst, super_level_from_int(level))); },
      py::arg("inst"), py::arg("level") = 11);

  m.def("threshold", &threshold);
  m.def("rho", &rho);
  m.def("pair_sat_prob", &pair_sat_prob);
  m.def("per_variable_failure", &per_variable_failure);
  m.def("log_expected_solutions", &log_expected_solutions);

  py::class_<MomentReport>(m, "MomentReport")
      .def_readonly("log_base", &MomentReport::log_base)
      .def_readonly("correction_lower", &MomentReport::correction_lower)
      .def_readonly("correction_upper", &MomentReport::correction_upper)
      .def_readonly("log_lower", &MomentReport::log_lower)
      .def_readonly("log_upper", &MomentReport::log_upper)
      .def_readonly("rho", &MomentReport::rho)
      .def_readonly("upper_bracket_raw", &MomentReport::upper_bracket_raw)
      .def_readonly("exceeds_factor_two", &MomentReport::exceeds_factor_two);
  m.def("ey_log_bounds", &ey_log_bounds);
  m.def("ey_log_bounds_regular", &ey_log_bounds_regular);

  py::class_<MCEstimate>(m, "MCEstimate")
      .def_readonly("mean", &MCEstimate::mean)
      .def_readonly("stderr", &MCEstimate::std_error)
      .def_readonly("trials", &MCEstimate::trials)
      .def_readonly("seed", &MCEstimate::seed)
      .def_readonly("resamples", &MCEstimate::resamples)
      .def("within", &MCEstimate::within, py::arg("target"), py::arg("sigmas") = 3.0);

  m.def(
      "mc_lemma",
      [](int which, double p, std::uint32_t d, std::uint32_t k, std::uint64_t trials, std::uint64_t seed,
         unsigned workers) {
        if (which != 1 && which != 2) throw ParamError("which must be 1 or 2");
        return mc_lemma(which == 1 ? RepairLemma::single_family : RepairLemma::shared_pair, p, d, k, trials, seed,
                        workers);
      },
      py::arg("which"), py::arg("p"), py::arg("d"), py::arg("k"), py::arg("trials"), py::arg("seed"),
      py::arg("workers") = 1, py::call_guard<py::gil_scoped_release>());

  py::class_<RepairBoundsResult>(m, "RepairBoundsResult")
      .def_readonly("empirical", &RepairBoundsResult::empirical)
      .def_readonly("lower", &RepairBoundsResult::lower)
      .def_readonly("upper", &RepairBoundsResult::upper)
      .def_readonly("profile", &RepairBoundsResult::profile)
      .def("sandwiched", &RepairBoundsResult::sandwiched, py::arg("sigmas") = 3.0);
  m.def("mc_repair_bounds", &mc_repair_bounds, py::arg("n"), py::arg("k"), py::arg("d"), py::arg("m"), py::arg("p"),
        py::arg("trials"), py::arg("seed"), py::arg("workers") = 1, py::call_guard<py::gil_scoped_release>());

  py::class_<ExpectedCounts>(m, "ExpectedCounts")
      .def_readonly("mean_solutions", &ExpectedCounts::mean_solutions)
      .def_readonly("mean_super11", &ExpectedCounts::mean_super11)
      .def_readonly("mean_super10", &ExpectedCounts::mean_super10)
      .def_readonly("frac_sat", &ExpectedCounts::frac_sat)
      .def_readonly("frac_super11", &ExpectedCounts::frac_super11)
      .def_readonly("frac_super10", &ExpectedCounts::frac_super10);
  m.def("mc_expected_counts", &mc_expected_counts, py::arg("params"), py::arg("trials"), py::arg("seed"),
        py::arg("workers") = 1, py::call_guard<py::gil_scoped_release>());

  m.def(
      "sweep_csv",
      [](std::uint32_t n, std::uint32_t k, double alpha, double p, double r_from, double r_to, std::uint32_t steps,
         std::uint64_t trials, std::uint64_t seed, RelationMode mode, unsigned workers) {
        SweepOptions o{n, k, alpha, p, r_from, r_to, steps, trials, seed, mode, workers};
        std::ostringstream out;
        {
          py::gil_scoped_release release;
          write_sweep_csv(out, sweep(o));
        }
        return out.str();
      },
      py::arg("n"), py::arg("k"), py::arg("alpha"), py::arg("p"), py::arg("r_from"), py::arg("r_to"),
      py::arg("steps"), py::arg("trials"), py::arg("seed"), py::arg("mode") = RelationMode::exact,
      py::arg("workers") = 1);
}
