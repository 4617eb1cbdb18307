// corda-patterns: run one scenario or a randomized campaign.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "corda/campaign.hpp"
#include "corda/report.hpp"
#include "corda/scenario.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace corda;

namespace {

int exit_code(Outcome::Kind k) {
  switch (k) {
    case Outcome::Kind::Formed: return 0;
    case Outcome::Kind::LimitExceeded: return 2;
    case Outcome::Kind::InvariantViolation: return 3;
    case Outcome::Kind::RejectedInput: return 4;
  }
  return 1;
}

std::optional<std::uint64_t> env_seed() {
  const char* v = std::getenv("CORDA_PATTERNS_SEED");
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  const unsigned long long s = std::strtoull(v, &end, 10);
  if (*end != '\0') throw std::runtime_error("CORDA_PATTERNS_SEED is not a non-negative integer");
  return s;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_svgs(const fs::path& dir, const Trace& trace, const Scenario& s) {
  fs::create_directories(dir);
  const TargetPattern pattern(s.pattern, Tolerance(s.eps_rel));
  int i = 0;
  for (const Snapshot& snap : trace.snapshots) {
    char name[64];
    std::snprintf(name, sizeof name, "%02d_%s.svg", i++, snap.label.c_str());
    write_file(dir / name, render_svg(snap, trace.initial_sec, pattern, Tolerance(s.eps_rel)));
  }
}

int cmd_run(const std::string& path, const std::string& trace_path, const std::string& summary_path,
            const std::string& svg_dir) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    return 1;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  Scenario s;
  try {
    s = load_scenario(buf.str());
  } catch (const Error& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return 4;
  }
  if (auto seed = env_seed()) s.seed = *seed;

  const Trace trace = run_scenario(s, !trace_path.empty());
  if (!trace_path.empty()) {
    std::ofstream out(trace_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + trace_path + " for writing");
    write_trace_jsonl(trace, out);
  }
  const std::string summary = summary_json(trace);
  if (!summary_path.empty()) write_file(summary_path, summary);
  if (!svg_dir.empty() && trace.outcome.kind != Outcome::Kind::RejectedInput) write_svgs(svg_dir, trace, s);

  std::cout << summary;
  return exit_code(trace.outcome.kind);
}

int cmd_campaign(CampaignConfig cfg, bool seed_given, const std::string& out_dir, const std::string& summary_path) {
  if (!seed_given) {
    if (auto seed = env_seed()) cfg.seed = *seed;
  }
  cfg.record_events = !out_dir.empty();
  std::vector<CampaignRow> rows;
  try {
    rows = run_campaign(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cout << campaign_table(rows);

  int formed = 0, violations = 0, limits = 0, rejected = 0;
  nlohmann::ordered_json all = nlohmann::ordered_json::array();
  for (const CampaignRow& r : rows) {
    switch (r.trace.outcome.kind) {
      case Outcome::Kind::Formed: ++formed; break;
      case Outcome::Kind::InvariantViolation: ++violations; break;
      case Outcome::Kind::LimitExceeded: ++limits; break;
      case Outcome::Kind::RejectedInput: ++rejected; break;
    }
    if (!out_dir.empty()) {
      const fs::path dir = fs::path(out_dir) / ("scenario_" + std::to_string(r.index));
      fs::create_directories(dir);
      write_file(dir / "scenario.json", serialize_scenario(r.scenario));
      write_file(dir / "trace.jsonl", trace_jsonl(r.trace));
      write_file(dir / "summary.json", summary_json(r.trace));
    }
    auto row = nlohmann::ordered_json::parse(summary_json(r.trace));
    row["index"] = r.index;
    row["n"] = r.scenario.robots.size();
    row["seed"] = r.scenario.seed;
    all.push_back(row);
  }
  if (!summary_path.empty()) write_file(summary_path, all.dump(2) + "\n");
  std::cout << "formed " << formed << "/" << rows.size() << ", violations " << violations << ", limit "
            << limits << ", rejected " << rejected << "\n";

  if (violations) return 3;
  if (limits) return 2;
  if (rejected) return 4;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pattern formation by oblivious robots under full asynchrony"};
  app.require_subcommand(1);

  std::string scenario_path, trace_path, summary_path, svg_dir;
  auto* run = app.add_subcommand("run", "Simulate one scenario");
  run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--trace", trace_path, "Write the event trace as JSON lines");
  run->add_option("--summary", summary_path, "Write the run summary as JSON");
  run->add_option("--svg-dir", svg_dir, "Write SVG snapshots at milestones");

  CampaignConfig cfg;
  std::string out_dir, campaign_summary;
  auto* campaign = app.add_subcommand("campaign", "Simulate randomly generated scenarios");
  campaign->add_option("--count", cfg.count, "Number of scenarios")->check(CLI::NonNegativeNumber);
  campaign->add_option("--n-min", cfg.n_min, "Smallest number of robots")->check(CLI::Range(4, 1000));
  campaign->add_option("--n-max", cfg.n_max, "Largest number of robots")->check(CLI::Range(4, 1000));
  auto* seed_opt = campaign->add_option("--seed", cfg.seed, "Seed of the first scenario");
  campaign->add_flag("--inject-teleport", cfg.inject_teleport, "Teleport a boundary robot to exercise the checker");
  campaign->add_option("--jobs", cfg.jobs, "Worker threads (0: all cores)");
  campaign->add_option("--out-dir", out_dir, "Write per-scenario inputs, traces and summaries here");
  campaign->add_option("--summary", campaign_summary, "Write all run summaries as one JSON array");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run) return cmd_run(scenario_path, trace_path, summary_path, svg_dir);
    return cmd_campaign(cfg, seed_opt->count() > 0, out_dir, campaign_summary);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
