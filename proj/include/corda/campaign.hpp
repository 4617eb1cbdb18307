#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "corda/scenario.hpp"
#include "corda/simulator.hpp"

namespace corda {

/// Random leader configuration plus random target pattern, both drawn in the
/// unit disk. Throws GenerationFailed after `max_attempts` rejected draws.
Scenario generate_scenario(int n, std::uint64_t seed, int max_attempts = 1000);

struct CampaignConfig {
  int count = 200;
  int n_min = 4;
  int n_max = 10;
  std::uint64_t seed = 0;
  bool inject_teleport = false;
  long teleport_event = 50;
  unsigned jobs = 0;  // 0: one per hardware thread
  bool record_events = false;
};

struct CampaignRow {
  int index = 0;
  Scenario scenario;
  Trace trace;
  double seconds = 0.0;
};

/// Scenario i uses n = n_min + i mod (n_max - n_min + 1) and seed + i.
std::vector<CampaignRow> run_campaign(const CampaignConfig& cfg);

std::string campaign_table(const std::vector<CampaignRow>& rows);

}  // namespace corda
