#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "expansia/expansivity.hpp"
#include "expansia/orbit_expansivity.hpp"
#include "expansia/report.hpp"
#include "expansia/scenario.hpp"

namespace py = pybind11;
using namespace expansia;

namespace {

// Finite points print as their label when the space has one.
py::object point_py(const Point& p, const Action& a)
{
  if (auto t = std::get_if<TorusPoint>(&p))
    return py::str(to_string(*t));
  auto i = std::get<std::size_t>(p);
  const auto& labels = finite_labels(a.space());
  return i < labels.size() ? py::str(labels[i]) : py::object(py::int_(i));
}

py::dict verdict_py(const Verdict& v, const Action& a)
{
  py::dict d;
  d["verdict"] = to_string(v.kind);
  d["exit"] = exit_code(v.kind);
  d["depth"] = v.depth;
  d["exact"] = v.exact;
  d["reason"] = v.reason;
  if (v.constant)
    d["constant"] = exact(*v.constant);
  if (v.word)
    d["word"] = a.group().format_word(*v.word);
  if (v.pair)
    d["pair"] = py::make_tuple(point_py(v.pair->x, a), point_py(v.pair->y, a), exact(v.pair->max_separation));
  return d;
}

py::dict orbit_verdict_py(const OrbitCoverVerdict& v, const Action& a)
{
  py::dict d;
  d["verdict"] = to_string(v.kind);
  d["exit"] = exit_code(v);
  d["depth"] = v.depth;
  d["exact"] = v.exact;
  d["reason"] = v.reason;
  if (v.pair)
    d["pair"] = py::make_tuple(point_py(v.pair->first, a), point_py(v.pair->second, a));
  return d;
}

std::size_t depth_or(const Scenario& s, std::optional<std::size_t> depth, std::size_t fallback)
{
  if (depth)
    return *depth;
  return s.has("depth") ? static_cast<std::size_t>(s.integer("depth")) : fallback;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
  m.doc() = "Bounded certificates for expansive group actions";
  m.attr("__version__") = kVersion;

  py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);
  py::register_exception<VersionMismatch>(m, "VersionMismatch", PyExc_ValueError);

  py::class_<Scenario>(m, "Scenario")
      .def_static("parse", [](const std::string& text) { return parse_scenario(text); }, py::arg("text"))
      .def_static("load", &load_scenario, py::arg("path"))
      .def_readonly("text", &Scenario::text)
      .def_readonly("group_names", &Scenario::group_names)
      .def_readonly("cover_names", &Scenario::cover_names)
      .def_readonly("params", &Scenario::params)
      .def_property_readonly("target", &Scenario::target)
      .def("__repr__", [](const Scenario& s) { return "<Scenario target=" + s.target() + ">"; });

  m.def("task_names", &task_names);

  m.def(
      "run_task",
      [](const std::string& task, const Scenario& s, std::optional<std::size_t> depth,
         std::optional<std::int64_t> grid, std::optional<std::uint64_t> seed) {
        RunOptions opts;
        opts.depth = depth;
        opts.grid = grid;
        opts.seed = seed;
        auto r = run_task(task, s, opts);
        std::vector<std::string> lines;
        for (const auto& j : r.reports)
          lines.push_back(j.dump());
        return py::make_tuple(r.exit_code, lines);
      },
      py::arg("task"), py::arg("scenario"), py::kw_only(), py::arg("depth") = py::none(),
      py::arg("grid") = py::none(), py::arg("seed") = py::none(),
      "Runs a task and returns (exit code, JSON report lines).");

  m.def(
      "replay",
      [](const std::vector<std::string>& lines) {
        std::vector<nlohmann::json> reports;
        for (const auto& l : lines)
          reports.push_back(nlohmann::json::parse(l));
        auto r = replay_reports(reports);
        return py::make_tuple(r.ok, r.field, r.message);
      },
      py::arg("lines"), "Re-validates report lines; returns (ok, field, message).");

  m.def(
      "certify_linear",
      [](const Scenario& s, std::optional<std::size_t> depth, const std::string& constant) {
        auto v = certify_linear(s.group(s.target()), depth_or(s, depth, 4), parse_rational(constant));
        return verdict_py(v, s.action());
      },
      py::arg("scenario"), py::kw_only(), py::arg("depth") = py::none(), py::arg("constant") = "1/100");

  m.def(
      "falsify_expansive",
      [](const Scenario& s, const std::string& c, std::optional<std::size_t> depth, std::int64_t grid) {
        auto a = s.action();
        Sampler sampler;
        sampler.grid = grid;
        return verdict_py(falsify_expansive(a, parse_rational(c), depth_or(s, depth, 8), sampler), a);
      },
      py::arg("scenario"), py::arg("constant"), py::kw_only(), py::arg("depth") = py::none(),
      py::arg("grid") = 12);

  m.def(
      "estimate_sup_constant",
      [](const Scenario& s, std::optional<std::size_t> depth, std::int64_t q) {
        auto e = estimate_sup_constant(s.action(), depth_or(s, depth, 6), q);
        py::dict d;
        d["lo"] = exact(e.lo);
        d["hi"] = exact(e.hi);
        d["threshold"] = exact(e.threshold);
        return d;
      },
      py::arg("scenario"), py::kw_only(), py::arg("depth") = py::none(), py::arg("grid") = 12);

  m.def(
      "verify_cover",
      [](const Scenario& s, const std::string& cover, std::optional<std::size_t> depth) {
        auto a = s.action();
        return orbit_verdict_py(verify_orbit_expansive(a, s.cover(cover), depth_or(s, depth, 8)), a);
      },
      py::arg("scenario"), py::arg("cover"), py::kw_only(), py::arg("depth") = py::none());

  m.def(
      "decide_finite",
      [](const Scenario& s) { return decide_orbit_expansive_finite(s.action()).expansive; }, py::arg("scenario"),
      "Whether a finite-space action is orbit expansive; exact.");

  m.def(
      "constant_from_cover",
      [](const Scenario& s, const std::string& cover) { return exact(constant_from_cover(*s.space, s.cover(cover))); },
      py::arg("scenario"), py::arg("cover"));

  m.def(
      "fixed_points",
      [](const Scenario& s) -> std::optional<std::vector<std::string>> {
        auto pts = fixed_points(s.action());
        if (!pts)
          return std::nullopt;
        std::vector<std::string> out;
        for (const auto& p : *pts)
          out.push_back(to_string(std::get<TorusPoint>(p)));
        return out;
      },
      py::arg("scenario"), "Fixed points of a single hyperbolic toral map, or None.");

  m.def(
      "is_hyperbolic", [](const std::string& matrix) { return is_hyperbolic(parse_matrix(matrix)); },
      py::arg("matrix"), "Matrix text as in scenarios, e.g. \"2,1;1,1\".");
}
