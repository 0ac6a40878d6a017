#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mvd/adversary.hpp"
#include "mvd/communication.hpp"
#include "mvd/io.hpp"
#include "mvd/lp.hpp"
#include "mvd/metric.hpp"
#include "mvd/rules.hpp"
#include "mvd/sample.hpp"

namespace py = pybind11;

namespace {

// The python layer talks JSON strings; keeping the boundary textual means the
// exact-rational values survive the trip untouched.

mvd::BoundedRule rule_over(const std::string& rule, const mvd::MessagePartition& part) {
  return mvd::bounded_from_rule(mvd::RuleSpec::parse(rule), part);
}

std::string validate_instance(const std::string& text) {
  mvd::Instance inst = mvd::parse_instance(text);
  inst.profile.validate();
  bool ok = true;
  mvd::Json violations = mvd::Json::array();
  if (inst.metric) {
    double tol = inst.metric->is_exact() ? 0.0 : mvd::lp_default_tol();
    for (const auto& v : mvd::validate_metric(*inst.metric, inst.profile, tol)) {
      ok = false;
      violations.push_back({{"v", v.v}, {"v2", v.v2}, {"x", v.x}, {"y", v.y}});
    }
    if (!mvd::is_consistent(*inst.metric, inst.profile, tol)) ok = false;
  }
  return mvd::Json{{"ok", ok}, {"violations", violations}}.dump();
}

std::string run_rule_json(const std::string& rule, const std::string& text) {
  auto spec = mvd::RuleSpec::parse(rule);
  mvd::Instance inst = mvd::parse_instance(text);
  inst.profile.validate();
  mvd::Json out{{"rule", spec.to_string()}};
  if (spec.randomized())
    out["distribution"] = mvd::distribution_to_json(mvd::run_rule(spec, inst.profile));
  else
    out["winner"] = mvd::run_deterministic(spec, inst.profile);
  return out.dump();
}

std::string distortion_json(const std::string& rule, const std::string& text) {
  auto spec = mvd::RuleSpec::parse(rule);
  mvd::Instance inst = mvd::parse_instance(text);
  inst.profile.validate();
  auto dist = mvd::run_rule(spec, inst.profile);
  auto rep = mvd::distortion_report(inst.profile, dist);
  mvd::Json out{{"rule", spec.to_string()}, {"worst_reference", rep.worst_reference}};
  out["distortion"] =
      rep.distortion.infinite ? mvd::Json("inf") : mvd::Json(mvd::format_decimal(rep.distortion.value));
  return out.dump();
}

std::string adversary_k_entry(const std::string& rule, int n, const std::vector<int>& positions,
                              const std::string& epsilon) {
  auto K = mvd::PositionSet::of(positions);
  auto bounded = rule_over(rule, mvd::k_entry_partition(n, K));
  auto rep = mvd::gen_k_entry_adversary(bounded, n, K, mvd::rat_from_string(epsilon));
  return mvd::report_to_json(rep).dump();
}

std::string adversary_general(const std::string& rule, int n, int beta,
                              const std::string& epsilon) {
  auto part = mvd::contiguous_partition(n, beta);
  auto bounded = rule_over(rule, part);
  auto rep = mvd::gen_general_adversary(bounded, n, beta, mvd::rat_from_string(epsilon));
  return mvd::report_to_json(rep).dump();
}

py::object adversary_unbounded(const std::string& rule, int n, int beta,
                               const std::string& delta) {
  auto part = mvd::contiguous_partition(n, beta);
  auto bounded = rule_over(rule, part);
  auto rep = mvd::gen_unbounded_adversary(bounded, mvd::rat_from_string(delta));
  if (!rep) return py::none();
  return py::str(mvd::report_to_json(*rep).dump());
}

std::string sample_json(std::uint64_t seed, int n, int m) {
  return mvd::serialize_instance(mvd::sample_instance(seed, n, m));
}

}  // namespace

PYBIND11_MODULE(_mvd, m) {
  m.doc() = "metric-voting distortion workbench (C++ core)";
  m.def("validate_instance", &validate_instance, py::arg("instance_json"));
  m.def("run_rule", &run_rule_json, py::arg("rule"), py::arg("instance_json"));
  m.def("distortion", &distortion_json, py::arg("rule"), py::arg("instance_json"));
  m.def("adversary_k_entry", &adversary_k_entry, py::arg("rule"), py::arg("n"),
        py::arg("positions"), py::arg("epsilon") = "1/100000");
  m.def("adversary_general", &adversary_general, py::arg("rule"), py::arg("n"), py::arg("beta"),
        py::arg("epsilon") = "1/100000");
  m.def("adversary_unbounded", &adversary_unbounded, py::arg("rule"), py::arg("n"),
        py::arg("beta"), py::arg("delta") = "1/1000");
  m.def("sample_instance", &sample_json, py::arg("seed"), py::arg("n"), py::arg("m"));
  m.def("gamma_of", &mvd::gamma_of, py::arg("n"), py::arg("beta"));
  m.def("technical_bound_f", &mvd::technical_bound_f, py::arg("t"), py::arg("n"));
  m.def("technical_bound_g", &mvd::technical_bound_g, py::arg("t"), py::arg("n"));

  py::register_exception<mvd::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<mvd::ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<mvd::BadParams>(m, "BadParams", PyExc_ValueError);
}
