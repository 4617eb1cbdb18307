#include "corda/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <thread>

namespace corda {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<Point> disk_points(Rng& rng, int n) {
  std::vector<Point> pts;
  while (static_cast<int>(pts.size()) < n) {
    const double x = rng.uniform(-1.0, 1.0);
    const double y = rng.uniform(-1.0, 1.0);
    if (x * x + y * y <= 1.0) pts.push_back({x, y});
  }
  return pts;
}

bool well_separated(const std::vector<Point>& pts, double eps_rel) {
  const double eps = eps_rel * smallest_enclosing_circle(pts, Tolerance(eps_rel)).radius;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (distance(pts[i], pts[j]) <= 10.0 * eps) return false;
    }
  }
  return true;
}

}  // namespace

Scenario generate_scenario(int n, std::uint64_t seed, int max_attempts) {
  if (n < static_cast<int>(Configuration::kMinRobots)) {
    throw Error(ErrorKind::GenerationFailed, "n must be at least " + std::to_string(Configuration::kMinRobots));
  }
  Scenario s;
  s.seed = seed;
  Rng rng(splitmix64(seed));
  const Tolerance tol(s.eps_rel);

  bool robots_ok = false;
  for (int attempt = 0; attempt < max_attempts && !robots_ok; ++attempt) {
    s.robots = disk_points(rng, n);
    try {
      robots_ok = well_separated(s.robots, s.eps_rel) && elect_leader(Configuration(s.robots, tol)).elected();
    } catch (const Error&) {
      robots_ok = false;
    }
  }
  bool pattern_ok = false;
  for (int attempt = 0; attempt < max_attempts && !pattern_ok; ++attempt) {
    s.pattern = disk_points(rng, n);
    try {
      TargetPattern check(s.pattern, tol);
      pattern_ok = well_separated(s.pattern, s.eps_rel);
    } catch (const Error&) {
      pattern_ok = false;
    }
  }
  if (!robots_ok || !pattern_ok) {
    throw Error(ErrorKind::GenerationFailed, "no valid scenario after " + std::to_string(max_attempts) + " draws");
  }
  s.sigma = 0.1 * smallest_enclosing_circle(s.robots, tol).radius;
  s.delta = s.sigma / 10.0;
  return s;
}

std::vector<CampaignRow> run_campaign(const CampaignConfig& cfg) {
  if (cfg.count < 0 || cfg.n_min < static_cast<int>(Configuration::kMinRobots) || cfg.n_max < cfg.n_min) {
    throw Error(ErrorKind::ValidationError, "campaign needs count >= 0 and 4 <= n-min <= n-max");
  }
  const int span = cfg.n_max - cfg.n_min + 1;
  std::vector<CampaignRow> rows(static_cast<std::size_t>(cfg.count));
  for (int i = 0; i < cfg.count; ++i) {
    rows[i].index = i;
    rows[i].scenario = generate_scenario(cfg.n_min + i % span, cfg.seed + static_cast<std::uint64_t>(i));
  }

  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < cfg.count; i = next++) {
      CampaignRow& row = rows[i];
      const auto t0 = std::chrono::steady_clock::now();
      RunOptions o = options_of(row.scenario);
      o.record_events = cfg.record_events;
      AdversaryPolicy p = policy_of(row.scenario);
      if (cfg.inject_teleport) p.inject_teleport_at = cfg.teleport_event;
      row.trace = run(row.scenario.robots, TargetPattern(row.scenario.pattern, o.tol), p, o);
      row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  unsigned jobs = cfg.jobs ? cfg.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(std::max(cfg.count, 1)));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return rows;
}

std::string campaign_table(const std::vector<CampaignRow>& rows) {
  std::ostringstream os;
  char buf[200];
  std::snprintf(buf, sizeof buf, "%5s %3s %12s %-18s %10s %10s %6s\n", "index", "n", "seed", "outcome", "time",
                "events", "k_max");
  os << buf;
  for (const CampaignRow& r : rows) {
    const auto& ks = r.trace.milestones.k_reached;
    std::snprintf(buf, sizeof buf, "%5d %3zu %12llu %-18s %10ld %10ld %6d\n", r.index, r.scenario.robots.size(),
                  static_cast<unsigned long long>(r.scenario.seed), to_string(r.trace.outcome.kind),
                  r.trace.outcome.time, r.trace.events_used, ks.empty() ? -1 : ks.back().second);
    os << buf;
  }
  return os.str();
}

}  // namespace corda
