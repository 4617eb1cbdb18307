#include "corda/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "json.hpp"

namespace corda {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::ValidationError, path + ": " + what);
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) invalid(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) invalid(path, "must be finite");
  return v;
}

std::vector<Point> points_at(const json& root, const char* key) {
  if (!root.contains(key)) invalid(key, "missing required field");
  const json& arr = root.at(key);
  if (!arr.is_array()) invalid(key, "expected an array of [x, y] pairs");
  std::vector<Point> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = std::string(key) + "[" + std::to_string(i) + "]";
    const json& p = arr[i];
    if (!p.is_array() || p.size() != 2) invalid(path, "expected [x, y]");
    out.push_back({number_at(p[0], path + "[0]"), number_at(p[1], path + "[1]")});
  }
  if (out.size() < Configuration::kMinRobots) {
    invalid(key, "needs at least " + std::to_string(Configuration::kMinRobots) + " points, got " +
                     std::to_string(out.size()));
  }
  return out;
}

// Same scale as the coincidence guard of the enclosing-circle routine, so that
// every input it would refuse is reported here with a field path.
void require_distinct(const std::vector<Point>& pts, const char* key, double eps_rel) {
  double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
  for (const Point& p : pts) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double eps = eps_rel * std::hypot(xmax - xmin, ymax - ymin);
  for (std::size_t j = 1; j < pts.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (distance(pts[i], pts[j]) <= eps) {
        invalid(std::string(key) + "[" + std::to_string(j) + "]",
                "duplicate of " + std::string(key) + "[" + std::to_string(i) + "]");
      }
    }
  }
}

const std::set<std::string> kFields = {"robots",        "pattern",  "sigma",          "delta",
                                       "seed",          "fairness_bound", "eps_rel", "success_eps_rel",
                                       "max_events"};

}  // namespace

Scenario load_scenario(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (!root.is_object()) throw Error(ErrorKind::ParseError, "scenario must be a JSON object");
  for (const auto& [key, value] : root.items()) {
    if (!kFields.count(key)) invalid(key, "unknown field");
  }

  Scenario s;
  if (root.contains("eps_rel")) {
    s.eps_rel = number_at(root["eps_rel"], "eps_rel");
    if (!(s.eps_rel > 0.0 && s.eps_rel < 1e-3)) invalid("eps_rel", "must lie in (0, 1e-3)");
  }
  s.robots = points_at(root, "robots");
  s.pattern = points_at(root, "pattern");
  if (s.pattern.size() != s.robots.size()) {
    invalid("pattern", "has " + std::to_string(s.pattern.size()) + " points but robots has " +
                           std::to_string(s.robots.size()));
  }
  require_distinct(s.robots, "robots", s.eps_rel);
  require_distinct(s.pattern, "pattern", s.eps_rel);

  const double radius = smallest_enclosing_circle(s.robots, Tolerance(s.eps_rel)).radius;
  s.sigma = root.contains("sigma") ? number_at(root["sigma"], "sigma") : 0.1 * radius;
  if (!(s.sigma > 0.0)) invalid("sigma", "must be positive");
  s.delta = root.contains("delta") ? number_at(root["delta"], "delta") : s.sigma / 10.0;
  if (!(s.delta > 0.0 && s.delta <= s.sigma)) invalid("delta", "must satisfy 0 < delta <= sigma");

  if (root.contains("seed")) {
    const json& j = root["seed"];
    if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<long long>() < 0)) {
      invalid("seed", "must be a non-negative integer");
    }
    s.seed = j.get<std::uint64_t>();
  }
  if (root.contains("fairness_bound")) {
    const json& j = root["fairness_bound"];
    if (!j.is_number_integer() || j.get<long long>() < 1 || j.get<long long>() > 1'000'000) {
      invalid("fairness_bound", "must be an integer in [1, 1000000]");
    }
    s.fairness_bound = j.get<int>();
  }
  if (root.contains("success_eps_rel")) {
    s.success_eps_rel = number_at(root["success_eps_rel"], "success_eps_rel");
    if (!(s.success_eps_rel > 0.0 && s.success_eps_rel < 1.0)) invalid("success_eps_rel", "must lie in (0, 1)");
  }
  if (root.contains("max_events")) {
    const json& j = root["max_events"];
    if (!j.is_number_integer() || j.get<long long>() < 1) invalid("max_events", "must be a positive integer");
    s.max_events = j.get<long>();
  }
  return s;
}

std::string serialize_scenario(const Scenario& s) {
  nlohmann::ordered_json j;
  auto pts = [](const std::vector<Point>& v) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const Point& p : v) a.push_back({p.x, p.y});
    return a;
  };
  j["robots"] = pts(s.robots);
  j["pattern"] = pts(s.pattern);
  j["sigma"] = s.sigma;
  j["delta"] = s.delta;
  j["seed"] = s.seed;
  j["fairness_bound"] = s.fairness_bound;
  j["eps_rel"] = s.eps_rel;
  j["success_eps_rel"] = s.success_eps_rel;
  j["max_events"] = s.max_events;
  return j.dump(2) + "\n";
}

AdversaryPolicy policy_of(const Scenario& s) {
  AdversaryPolicy p;
  p.sigma = s.sigma;
  p.delta = s.delta;
  p.seed = s.seed;
  p.fairness_bound = s.fairness_bound;
  return p;
}

RunOptions options_of(const Scenario& s) {
  RunOptions o;
  o.tol = Tolerance(s.eps_rel);
  o.success_eps_rel = s.success_eps_rel;
  o.max_events = s.max_events;
  return o;
}

Trace run_scenario(const Scenario& s, bool record_events) {
  RunOptions o = options_of(s);
  o.record_events = record_events;
  try {
    return run(s.robots, TargetPattern(s.pattern, o.tol), policy_of(s), o);
  } catch (const Error& e) {
    Trace t;
    t.outcome = {Outcome::Kind::RejectedInput, 0, e.what()};
    return t;
  }
}

}  // namespace corda
