#include "corda/report.hpp"

#include <cstdio>
#include <sstream>

#include "corda/mapping.hpp"
#include "json.hpp"

namespace corda {

using ojson = nlohmann::ordered_json;

namespace {

ojson point_json(Point p) { return ojson::array({p.x, p.y}); }

template <class T>
ojson optional_json(const std::optional<T>& v) {
  return v ? ojson(*v) : ojson(nullptr);
}

}  // namespace

void write_trace_jsonl(const Trace& trace, std::ostream& out) {
  for (const TraceEvent& e : trace.events) {
    ojson j;
    j["time"] = e.time;
    j["robot"] = e.robot;
    j["kind"] = to_string(e.kind);
    j["before"] = point_json(e.before);
    j["after"] = point_json(e.after);
    if (!e.diag.empty()) j["diag"] = e.diag;
    out << j.dump() << '\n';
  }
}

std::string trace_jsonl(const Trace& trace) {
  std::ostringstream os;
  write_trace_jsonl(trace, os);
  return os.str();
}

std::string summary_json(const Trace& trace) {
  ojson j;
  j["outcome"] = to_string(trace.outcome.kind);
  j["outcome_time"] = trace.outcome.time;
  if (!trace.outcome.detail.empty()) j["detail"] = trace.outcome.detail;
  j["events_used"] = trace.events_used;

  ojson m;
  m["agreement"] = optional_json(trace.milestones.agreement);
  ojson ks = ojson::array();
  for (const auto& [time, k] : trace.milestones.k_reached) ks.push_back({{"time", time}, {"k", k}});
  m["partial_pattern"] = ks;
  m["first_placement_action"] = optional_json(trace.milestones.first_placement_action);
  m["formed"] = optional_json(trace.milestones.formed);
  j["milestones"] = m;

  const InvariantStats& s = trace.stats;
  j["invariant_stats"] = {{"sec", s.sec_checks},     {"collision", s.collision_checks},
                          {"angle", s.angle_checks}, {"map", s.map_checks},
                          {"k", s.k_checks},         {"stale_moves", s.stale_moves}};
  j["anchor_fallback"] = trace.anchor_fallback;
  return j.dump(2) + "\n";
}

std::string render_svg(const Snapshot& snap, const Circle& sec, const TargetPattern& pattern, Tolerance tol) {
  std::vector<Point> targets;
  try {
    const Configuration q(snap.positions, tol);
    if (is_agreement_configuration(q)) targets = map_pattern(q, pattern).positions;
  } catch (const Error&) {
    targets.clear();
  }
  if (targets.empty()) {
    const Circle ps = smallest_enclosing_circle(pattern.positions(), tol);
    for (const Point& p : pattern.positions()) targets.push_back(sec.center + (p - ps.center) * (sec.radius / ps.radius));
  }

  const double r = sec.radius;
  const double margin = 0.15 * r;
  const double glyph = 0.025 * r;
  char buf[256];
  std::ostringstream os;
  // Flip y so the picture keeps the world's orientation.
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"%.9g %.9g %.9g %.9g\" width=\"480\" "
                "height=\"480\">\n",
                sec.center.x - r - margin, -(sec.center.y + r + margin), 2 * (r + margin), 2 * (r + margin));
  os << buf;
  os << "<title>" << snap.label << " (t=" << snap.time << ")</title>\n";
  os << "<g transform=\"scale(1,-1)\" stroke-width=\"" << 0.004 * r << "\">\n";
  std::snprintf(buf, sizeof buf,
                "<circle class=\"sec\" cx=\"%.17g\" cy=\"%.17g\" r=\"%.17g\" fill=\"none\" stroke=\"#888\"/>\n",
                sec.center.x, sec.center.y, r);
  os << buf;
  for (const Point& p : targets) {
    std::snprintf(buf, sizeof buf,
                  "<circle class=\"pattern\" cx=\"%.17g\" cy=\"%.17g\" r=\"%.9g\" fill=\"none\" stroke=\"#1f77b4\"/>\n",
                  p.x, p.y, 1.6 * glyph);
    os << buf;
  }
  for (const Point& p : snap.positions) {
    std::snprintf(buf, sizeof buf, "<circle class=\"robot\" cx=\"%.17g\" cy=\"%.17g\" r=\"%.9g\" fill=\"#d62728\"/>\n",
                  p.x, p.y, glyph);
    os << buf;
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace corda
