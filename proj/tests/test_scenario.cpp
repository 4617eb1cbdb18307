#include <regex>
#include <sstream>

#include "corda/campaign.hpp"
#include "corda/report.hpp"
#include "corda/scenario.hpp"
#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"

using namespace corda;
using nlohmann::json;

namespace {

constexpr const char* kSmall = R"({
  "robots": [[1, 0], [-0.5, 0.8660254037844386], [-0.5, -0.8660254037844386], [0.2, 0.1]],
  "pattern": [[0, 2], [2, 0], [0, -2], [-0.3, 0.4]]
})";

std::string error_of(std::string_view text, ErrorKind* kind = nullptr) {
  try {
    load_scenario(text);
  } catch (const Error& e) {
    if (kind) *kind = e.kind();
    return e.what();
  }
  return "";
}

int count(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (std::size_t at = hay.find(needle); at != std::string::npos; at = hay.find(needle, at + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("scenario defaults") {
  const Scenario s = load_scenario(kSmall);
  CHECK(s.robots.size() == 4);
  CHECK(s.sigma == doctest::Approx(0.1));
  CHECK(s.delta == doctest::Approx(0.01));
  CHECK(s.seed == 0);
  CHECK(s.fairness_bound == 8);
  CHECK(s.eps_rel == 1e-9);
  CHECK(s.success_eps_rel == 1e-6);
  CHECK(s.max_events == 1'000'000);
}

TEST_CASE("scenario validation names the offending field") {
  ErrorKind kind{};
  CHECK(error_of(R"({"robots": [[0,0],[1,0],[0,1],[1,1],[0,0]], "pattern": [[0,0],[1,0],[0,1],[1,1],[2,2]]})",
                 &kind)
            .find("robots[4]: duplicate of robots[0]") != std::string::npos);
  CHECK(kind == ErrorKind::ValidationError);
  CHECK(error_of(R"({"robots": [[0,0],[1,0],[0,1]], "pattern": [[0,0],[1,0],[0,1]]})").find("robots: needs at least 4") !=
        std::string::npos);
  CHECK(error_of(R"({"robots": [[0,0],[1,0],[0,1],[1,1]], "pattern": [[0,0],[1,0],[0,1],[1,1],[2,2]]})")
            .find("pattern: has 5 points") != std::string::npos);
  CHECK(error_of(R"({"robots": [[0,0],[1,0],[0,1],[1,"x"]], "pattern": [[0,0],[1,0],[0,1],[1,1]]})")
            .find("robots[3][1]") != std::string::npos);
  CHECK(error_of(R"({"robots": [[0,0],[1,0],[0,1],[1,1]], "pattern": [[0,0],[1,0],[0,1],[1,1]], "colour": 1})")
            .find("colour: unknown field") != std::string::npos);
  CHECK(error_of(R"({"robots": [[0,0],[1,0],[0,1],[1,1]], "pattern": [[0,0],[1,0],[0,1],[1,1]], "sigma": 0.1, "delta": 0.2})")
            .find("delta") != std::string::npos);
  CHECK(error_of(R"({"robots": [[0,0],[1,0],[0,1],[1,1]], "pattern": [[0,0],[1,0],[0,1],[1,1]], "seed": -3})")
            .find("seed") != std::string::npos);
  CHECK(error_of(R"({"robots": [[0,0],[1,0],[0,1],[1,1]], "pattern": [[0,0],[1,0],[0,1],[1,1]], "fairness_bound": 0})")
            .find("fairness_bound") != std::string::npos);
  error_of("{not json", &kind);
  CHECK(kind == ErrorKind::ParseError);
  error_of("[1, 2]", &kind);
  CHECK(kind == ErrorKind::ParseError);
}

TEST_CASE("scenario serialization round-trips exactly") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Scenario s = generate_scenario(4 + static_cast<int>(seed % 7), seed);
    const Scenario back = load_scenario(serialize_scenario(s));
    CHECK(back == s);
    CHECK(serialize_scenario(back) == serialize_scenario(s));
  }
}

TEST_CASE("symmetric scenario is rejected at run time") {
  const Scenario s = load_scenario(
      R"({"robots": [[1,0],[0,1],[-1,0],[0,-1]], "pattern": [[0,2],[2,0],[0,-2],[-0.3,0.4]]})");
  const Trace t = run_scenario(s);
  CHECK(t.outcome.kind == Outcome::Kind::RejectedInput);
  CHECK(t.outcome.detail.find("leader") != std::string::npos);
  const auto summary = json::parse(summary_json(t));
  CHECK(summary["outcome"] == "RejectedInput");
}

TEST_CASE("trace replays to the final snapshot") {
  const Scenario s = load_scenario(kSmall);
  const Trace t = run_scenario(s);
  REQUIRE(t.outcome.kind == Outcome::Kind::Formed);
  std::vector<Point> pos = s.robots;
  std::istringstream in(trace_jsonl(t));
  std::string line;
  long expected_time = 0;
  while (std::getline(in, line)) {
    const json e = json::parse(line);
    CHECK(e["time"].get<long>() == expected_time++);
    const auto i = e["robot"].get<std::size_t>();
    const Point before{e["before"][0].get<double>(), e["before"][1].get<double>()};
    CHECK(before == pos[i]);
    pos[i] = {e["after"][0].get<double>(), e["after"][1].get<double>()};
    const std::string kind = e["kind"];
    CHECK((kind == "observe" || kind == "snapshot" || kind == "compute" || kind == "move" || kind == "move_end"));
    if (kind != "move" && kind != "move_end") CHECK(before == pos[i]);
  }
  CHECK(expected_time == t.events_used);
  CHECK(pos == t.snapshots.back().positions);
}

TEST_CASE("summary lists milestones") {
  const Trace t = run_scenario(load_scenario(kSmall));
  const json j = json::parse(summary_json(t));
  CHECK(j["outcome"] == "Formed");
  CHECK(j["milestones"]["formed"].is_number());
  CHECK(j["milestones"]["partial_pattern"].is_array());
  CHECK(j["invariant_stats"]["sec"].get<long>() > 0);
}

TEST_CASE("snapshots render one glyph per robot and per pattern position") {
  const Scenario s = load_scenario(kSmall);
  const Trace t = run_scenario(s);
  const TargetPattern p(s.pattern);
  const std::regex sec_r(R"re(class="sec" cx="[^"]*" cy="[^"]*" r="([^"]*)")re");
  for (const Snapshot& snap : t.snapshots) {
    const std::string svg = render_svg(snap, t.initial_sec, p);
    CHECK(count(svg, "class=\"robot\"") == 4);
    CHECK(count(svg, "class=\"pattern\"") == 4);
    CHECK(count(svg, "class=\"sec\"") == 1);
    std::smatch m;
    REQUIRE(std::regex_search(svg, m, sec_r));
    CHECK(std::stod(m[1]) == doctest::Approx(t.initial_sec.radius).epsilon(1e-12));
  }
}

TEST_CASE("generated scenarios") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 4 + static_cast<int>(seed % 7);
    const Scenario s = generate_scenario(n, seed);
    CHECK(s == generate_scenario(n, seed));
    CHECK(s.robots.size() == static_cast<std::size_t>(n));
    CHECK(s.pattern.size() == static_cast<std::size_t>(n));
    const Configuration q(s.robots);
    CHECK(elect_leader(q).elected());
    CHECK(s.sigma == doctest::Approx(0.1 * q.sec().radius));
    CHECK(s.delta == doctest::Approx(s.sigma / 10));
    CHECK(s.seed == seed);
    for (const Point& r : s.robots) CHECK(r.norm() <= 1.0);
  }
  CHECK_FALSE(generate_scenario(5, 1) == generate_scenario(5, 2));
  try {
    generate_scenario(5, 1, 0);
    FAIL("no attempts should fail");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GenerationFailed);
  }
}

TEST_CASE("small campaign") {
  CampaignConfig cfg;
  cfg.count = 8;
  cfg.seed = 500;
  cfg.jobs = 2;
  const auto rows = run_campaign(cfg);
  REQUIRE(rows.size() == 8);
  for (const CampaignRow& r : rows) {
    CHECK(r.scenario.robots.size() == static_cast<std::size_t>(4 + r.index % 7));
    CHECK(r.scenario.seed == 500u + static_cast<unsigned>(r.index));
    CHECK(r.trace.outcome.kind == Outcome::Kind::Formed);
  }
  const std::string table = campaign_table(rows);
  CHECK(count(table, "Formed") >= 8);

  cfg.inject_teleport = true;
  cfg.count = 3;
  for (const CampaignRow& r : run_campaign(cfg)) {
    CHECK(r.trace.outcome.kind == Outcome::Kind::InvariantViolation);
    CHECK(r.trace.outcome.time == 50);
  }
}
