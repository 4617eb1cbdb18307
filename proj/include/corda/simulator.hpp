#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "corda/configuration.hpp"
#include "corda/geometry.hpp"
#include "corda/mapping.hpp"
#include "corda/pattern.hpp"
#include "corda/protocol.hpp"

namespace corda {

enum class Phase { Wait, Observe, Compute, Move };

struct RobotCycleState {
  Phase phase = Phase::Wait;
  std::optional<Configuration> snapshot;
  std::optional<MotionIntent> intent;
  double progress = 0.0;  // fraction of the current intent's path already covered

  // Move bookkeeping
  long snapshot_time = -1;
  Point origin;
  double path_length = 0.0;
  double travelled = 0.0;
  double planned = 0.0;  // length this cycle will cover
  double chunk = 0.0;
  int chunks_left = 0;
  bool election_intent = false;  // intent came from a non-agreement snapshot
};

struct AdversaryPolicy {
  double sigma = 0.1;
  double delta = 0.01;
  std::uint64_t seed = 0;
  int fairness_bound = 8;
  std::optional<long> inject_teleport_at;  // fault injection for checker tests

  /// Throws ValidationError on out-of-range values.
  void validate() const;
};

struct RunOptions {
  Tolerance tol;
  double success_eps_rel = 1e-6;
  long max_events = 1'000'000;
  bool record_events = true;
};

enum class EventKind { Observe, Snapshot, Compute, Move, MoveEnd, Fault };
const char* to_string(EventKind k);

struct TraceEvent {
  long time = 0;
  int robot = -1;
  EventKind kind = EventKind::Observe;
  Point before;
  Point after;
  std::string diag;
};

struct Outcome {
  enum class Kind { Formed, LimitExceeded, InvariantViolation, RejectedInput };
  Kind kind = Kind::LimitExceeded;
  long time = 0;
  std::string detail;
};
const char* to_string(Outcome::Kind k);

struct Milestones {
  std::optional<long> agreement;
  std::vector<std::pair<long, int>> k_reached;  // (time, k), first time each k is reached
  std::optional<long> formed;
  std::optional<long> first_placement_action;
};

struct InvariantStats {
  long sec_checks = 0;
  long collision_checks = 0;
  long angle_checks = 0;
  long map_checks = 0;
  long k_checks = 0;
  long stale_moves = 0;  // moves executed against a snapshot older than another robot's move
};

struct Snapshot {
  std::string label;
  long time = 0;
  std::vector<Point> positions;
};

struct Trace {
  std::vector<TraceEvent> events;
  Outcome outcome;
  long events_used = 0;
  Milestones milestones;
  InvariantStats stats;
  bool anchor_fallback = false;
  std::vector<Snapshot> snapshots;  // initial, milestones, final
  Circle initial_sec;
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, n). Plain modulo keeps the stream portable.
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  std::mt19937_64 engine_;
};

struct WorldState {
  long time = 0;
  std::vector<Point> positions;
  std::vector<RobotCycleState> cycles;
  // activations[i][j]: activations of i since j was last activated
  std::vector<std::vector<int>> activations;
};

/// Runs the protocol under a seeded CORDA adversary.
class Simulator {
 public:
  Simulator(std::vector<Point> initial, TargetPattern pattern, AdversaryPolicy policy, RunOptions options = {});

  /// Advances exactly one robot by one phase transition (or applies a
  /// fault), then checks the online invariants. The first violation is kept
  /// in violation().
  TraceEvent step();
  const std::optional<std::string>& violation() const { return pending_violation_; }
  /// Null when consecutive states are consistent with the protocol's guarantees.
  std::optional<std::string> check_invariants(const std::vector<Point>& before, const TraceEvent& ev);

  const WorldState& world() const { return world_; }
  const Trace& trace() const { return trace_; }
  Trace run();

 private:
  TraceEvent advance();
  std::size_t pick_robot();
  void note_activation(std::size_t i);
  TraceEvent fault();
  Point path_point(const RobotCycleState& s, double length) const;
  void refresh_after_move();
  void on_cycle_complete(std::size_t i, long time);
  void take_snapshot(const std::string& label, long time);
  std::optional<int> current_k() const;

  TargetPattern pattern_;
  AdversaryPolicy policy_;
  RunOptions options_;
  WorldState world_;
  Rng rng_;
  Trace trace_;
  Circle initial_sec_;
  double eps_ = 0.0;

  bool matched_ = false;  // current positions form the pattern
  std::optional<long> formed_since_;
  std::vector<long> completed_snapshot_;  // snapshot time of each robot's last completed cycle
  std::vector<long> last_move_;
  std::optional<MappedPattern> map_now_;  // set while in agreement and not formed
  std::optional<int> k_baseline_;
  int k_best_ = -1;
  std::optional<std::string> pending_violation_;
  std::optional<Branch> last_branch_;
  std::optional<std::size_t> completed_;
};

Trace run(const std::vector<Point>& initial, const TargetPattern& pattern, const AdversaryPolicy& policy,
          const RunOptions& options = {});

}  // namespace corda
