#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "corda/campaign.hpp"
#include "corda/protocol.hpp"
#include "corda/report.hpp"
#include "corda/scenario.hpp"

namespace py = pybind11;
using namespace corda;

namespace {

using XY = std::pair<double, double>;

std::vector<Point> points(const std::vector<XY>& v) {
  std::vector<Point> out;
  out.reserve(v.size());
  for (const auto& [x, y] : v) out.push_back({x, y});
  return out;
}

std::vector<XY> pairs(std::span<const Point> v) {
  std::vector<XY> out;
  out.reserve(v.size());
  for (const Point& p : v) out.emplace_back(p.x, p.y);
  return out;
}

py::tuple circle_tuple(const Circle& c) { return py::make_tuple(py::make_tuple(c.center.x, c.center.y), c.radius); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pattern formation by oblivious robots: geometry, protocol and simulator";

  static py::exception<Error> error(m, "CordaError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), e.what());
    }
  });

  m.def(
      "smallest_enclosing_circle",
      [](const std::vector<XY>& pts, double eps_rel) {
        return circle_tuple(smallest_enclosing_circle(points(pts), Tolerance(eps_rel)));
      },
      py::arg("points"), py::arg("eps_rel") = 1e-9, "((cx, cy), r) of the smallest enclosing circle");

  m.def(
      "is_critical",
      [](XY p, const std::vector<XY>& pts, double eps_rel) {
        return is_critical({p.first, p.second}, points(pts), Tolerance(eps_rel));
      },
      py::arg("point"), py::arg("points"), py::arg("eps_rel") = 1e-9);

  m.def(
      "elect_leader",
      [](const std::vector<XY>& pts) -> py::object {
        const Configuration q(points(pts));
        const auto v = elect_leader(q);
        if (!v.elected()) return py::none();
        return py::int_(v.index);
      },
      py::arg("robots"), "Index of the elected robot, or None for a symmetric configuration");

  m.def(
      "matches_pattern",
      [](const std::vector<XY>& q, const std::vector<XY>& p, double rel) {
        return matches_pattern(points(q), points(p), rel);
      },
      py::arg("robots"), py::arg("pattern"), py::arg("match_rel") = 1e-6);

  m.def(
      "compute",
      [](XY me, const std::vector<XY>& q, const std::vector<XY>& p) {
        const MotionIntent in = compute({me.first, me.second}, Configuration(points(q)), TargetPattern(points(p)));
        py::dict d;
        d["branch"] = to_string(in.branch);
        d["moves"] = in.moves();
        if (in.moves()) d["dest"] = py::make_tuple(in.dest.x, in.dest.y);
        return d;
      },
      py::arg("me"), py::arg("robots"), py::arg("pattern"), "One robot's decision from one snapshot");

  m.def(
      "generate_scenario",
      [](int n, std::uint64_t seed) { return serialize_scenario(generate_scenario(n, seed)); }, py::arg("n"),
      py::arg("seed"), "Random scenario as JSON text");

  m.def(
      "run_scenario",
      [](const std::string& text, bool with_trace) {
        const Scenario s = load_scenario(text);
        Trace t;
        {
          py::gil_scoped_release release;
          t = run_scenario(s, with_trace);
        }
        py::dict d;
        d["summary"] = summary_json(t);
        d["trace"] = with_trace ? trace_jsonl(t) : std::string();
        d["final"] = pairs(t.snapshots.empty() ? std::span<const Point>() : t.snapshots.back().positions);
        return d;
      },
      py::arg("scenario_json"), py::arg("with_trace") = false,
      "Runs a JSON scenario; returns summary JSON, trace JSON lines and final positions");
}
