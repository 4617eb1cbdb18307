#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "corda/geometry.hpp"
#include "corda/simulator.hpp"

namespace corda {

/// One run's complete input. Loading fills every omitted tunable.
struct Scenario {
  std::vector<Point> robots;
  std::vector<Point> pattern;
  double sigma = 0.0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  int fairness_bound = 8;
  double eps_rel = 1e-9;
  double success_eps_rel = 1e-6;
  long max_events = 1'000'000;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Parses and validates a JSON scenario. Errors name the offending field,
/// e.g. "robots[3]: duplicate of robots[1]".
Scenario load_scenario(std::string_view text);
std::string serialize_scenario(const Scenario& s);

AdversaryPolicy policy_of(const Scenario& s);
RunOptions options_of(const Scenario& s);

/// Runs the simulator on a scenario. Inputs the simulator refuses yield a
/// RejectedInput trace rather than an exception.
Trace run_scenario(const Scenario& s, bool record_events = true);

}  // namespace corda
