#include "corda/simulator.hpp"

#include <algorithm>
#include <sstream>

namespace corda {

namespace {

// Adjacent robots on the enclosing circle may sit exactly antipodal.
constexpr double kAngleSlackDeg = 1e-7;
constexpr int kMaxChunks = 3;

std::string describe(Point p) {
  std::ostringstream os;
  os.precision(17);
  os << '(' << p.x << ", " << p.y << ')';
  return os.str();
}

}  // namespace

void AdversaryPolicy::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw Error(ErrorKind::ValidationError, "sigma must be positive");
  if (!(delta > 0.0) || !(delta <= sigma)) {
    throw Error(ErrorKind::ValidationError, "delta must satisfy 0 < delta <= sigma");
  }
  if (fairness_bound < 1) throw Error(ErrorKind::ValidationError, "fairness_bound must be at least 1");
}

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::Observe: return "observe";
    case EventKind::Snapshot: return "snapshot";
    case EventKind::Compute: return "compute";
    case EventKind::Move: return "move";
    case EventKind::MoveEnd: return "move_end";
    case EventKind::Fault: return "fault";
  }
  return "unknown";
}

const char* to_string(Outcome::Kind k) {
  switch (k) {
    case Outcome::Kind::Formed: return "Formed";
    case Outcome::Kind::LimitExceeded: return "LimitExceeded";
    case Outcome::Kind::InvariantViolation: return "InvariantViolation";
    case Outcome::Kind::RejectedInput: return "RejectedInput";
  }
  return "Unknown";
}

Simulator::Simulator(std::vector<Point> initial, TargetPattern pattern, AdversaryPolicy policy, RunOptions options)
    : pattern_(std::move(pattern)), policy_(policy), options_(options), rng_(policy.seed) {
  policy_.validate();
  const Configuration q(initial, options_.tol);
  if (q.size() != pattern_.size()) {
    throw Error(ErrorKind::SizeMismatch, "robots and pattern differ in size");
  }
  if (!elect_leader(q).elected()) {
    throw Error(ErrorKind::SymmetricConfiguration, "initial configuration has no unique leader");
  }
  const std::size_t n = q.size();
  initial_sec_ = q.sec();
  eps_ = q.eps();
  world_.positions = std::move(initial);
  world_.cycles.resize(n);
  world_.activations.assign(n, std::vector<int>(n, 0));
  completed_snapshot_.assign(n, -1);
  last_move_.assign(n, -1);

  trace_.initial_sec = initial_sec_;
  anchor_index(pattern_, options_.tol, &trace_.anchor_fallback);
  take_snapshot("initial", 0);
  refresh_after_move();
  if (map_now_ || matched_) k_baseline_ = current_k();
}

void Simulator::take_snapshot(const std::string& label, long time) {
  trace_.snapshots.push_back({label, time, world_.positions});
}

std::size_t Simulator::pick_robot() {
  const std::size_t n = world_.positions.size();
  std::vector<std::size_t> eligible;
  eligible.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = world_.activations[i];
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) ok = j == i || row[j] < policy_.fairness_bound;
    if (ok) eligible.push_back(i);
  }
  // The robot activated least recently is always eligible.
  return eligible[rng_.index(eligible.size())];
}

void Simulator::note_activation(std::size_t i) {
  const std::size_t n = world_.positions.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (j != i) ++world_.activations[i][j];
    world_.activations[j][i] = 0;
  }
}

Point Simulator::path_point(const RobotCycleState& s, double length) const {
  const MotionIntent& in = *s.intent;
  if (length >= s.path_length) return in.dest;
  if (in.kind == MotionIntent::Kind::Straight) {
    return s.origin + (in.dest - s.origin) * (length / s.path_length);
  }
  const double theta = polar(s.origin, in.circle.center) - length / in.circle.radius;
  return in.circle.at_polar(theta);
}

TraceEvent Simulator::fault() {
  TraceEvent ev;
  ev.time = world_.time;
  ev.kind = EventKind::Fault;
  for (std::size_t i = 0; i < world_.positions.size(); ++i) {
    if (!initial_sec_.on_boundary(world_.positions[i], eps_)) continue;
    const Point c = initial_sec_.center;
    ev.robot = static_cast<int>(i);
    ev.before = world_.positions[i];
    world_.positions[i] = c + (world_.positions[i] - c) * 1.05;
    ev.after = world_.positions[i];
    ev.diag = "teleport";
    break;
  }
  ++world_.time;
  return ev;
}

TraceEvent Simulator::advance() {
  if (policy_.inject_teleport_at && world_.time == *policy_.inject_teleport_at) return fault();

  const std::size_t i = pick_robot();
  note_activation(i);
  RobotCycleState& s = world_.cycles[i];
  TraceEvent ev;
  ev.time = world_.time;
  ev.robot = static_cast<int>(i);
  ev.before = world_.positions[i];

  switch (s.phase) {
    case Phase::Wait:
      s.phase = Phase::Observe;
      ev.kind = EventKind::Observe;
      break;
    case Phase::Observe:
      s.snapshot.emplace(world_.positions, options_.tol);
      s.snapshot_time = world_.time;
      s.phase = Phase::Compute;
      ev.kind = EventKind::Snapshot;
      break;
    case Phase::Compute: {
      ev.kind = EventKind::Compute;
      const MotionIntent in = compute(world_.positions[i], *s.snapshot, pattern_, options_.success_eps_rel);
      ev.diag = to_string(in.branch);
      last_branch_ = in.branch;
      if (!in.moves()) {
        completed_ = i;
        break;
      }
      s.intent = in;
      s.election_intent = in.branch != Branch::Formed && !is_placement_branch(in.branch);
      s.origin = world_.positions[i];
      if (in.kind == MotionIntent::Kind::Straight) {
        s.path_length = distance(s.origin, in.dest);
      } else {
        s.path_length = in.circle.radius * deg_to_rad(clockwise_angle(s.origin, in.circle.center, in.dest));
      }
      s.travelled = 0.0;
      s.progress = 0.0;
      const double rem = s.path_length;
      s.planned = rng_.uniform(std::min(policy_.delta, rem), std::min(policy_.sigma, rem));
      s.chunks_left = 1 + static_cast<int>(rng_.index(kMaxChunks));
      s.chunk = s.planned / s.chunks_left;
      s.phase = Phase::Move;
      ev.diag += " -> " + describe(in.dest);
      break;
    }
    case Phase::Move: {
      --s.chunks_left;
      s.travelled = s.chunks_left == 0 ? s.planned : s.travelled + s.chunk;
      world_.positions[i] = path_point(s, s.travelled);
      s.progress = s.path_length > 0.0 ? s.travelled / s.path_length : 1.0;
      for (std::size_t j = 0; j < last_move_.size(); ++j) {
        if (j != i && last_move_[j] > s.snapshot_time) {
          ++trace_.stats.stale_moves;
          break;
        }
      }
      last_move_[i] = world_.time;
      if (s.chunks_left == 0) {
        ev.kind = EventKind::MoveEnd;
        completed_ = i;
      } else {
        ev.kind = EventKind::Move;
      }
      break;
    }
  }
  ev.after = world_.positions[i];
  ++world_.time;
  return ev;
}

std::optional<int> Simulator::current_k() const {
  if (matched_ || !map_now_) return std::nullopt;
  const Configuration q(world_.positions, options_.tol);
  const auto status = partial_pattern_k(q, *map_now_);
  return status.k ? *status.k : -1;
}

void Simulator::on_cycle_complete(std::size_t i, long time) {
  RobotCycleState& s = world_.cycles[i];
  completed_snapshot_[i] = s.snapshot_time;
  s.phase = Phase::Wait;
  s.snapshot.reset();
  s.intent.reset();
  s.election_intent = false;
  s.progress = 0.0;

  // Progress is only claimed for placement moves: a move planned before the
  // robots agreed on a leader may still be running.
  const bool election_in_flight = std::any_of(world_.cycles.begin(), world_.cycles.end(),
                                              [](const RobotCycleState& c) { return c.election_intent; });
  const auto k = current_k();
  if (election_in_flight || !k) {
    k_baseline_.reset();
  } else {
    ++trace_.stats.k_checks;
    if (k_baseline_ && *k < *k_baseline_ && !pending_violation_) {
      pending_violation_ = "partial pattern level dropped from " + std::to_string(*k_baseline_) + " to " +
                           std::to_string(*k) + " at cycle end of robot " + std::to_string(i);
    }
    k_baseline_ = *k;
  }
  if (k && *k > k_best_) {
    for (int level = k_best_ + 1; level <= *k; ++level) {
      if (level >= 0) trace_.milestones.k_reached.emplace_back(time, level);
    }
    k_best_ = *k;
    take_snapshot("k=" + std::to_string(*k), time);
  }
}

void Simulator::refresh_after_move() {
  const Configuration q(world_.positions, options_.tol);
  matched_ = matches_pattern(q, pattern_, options_.success_eps_rel);
  if (matched_) {
    if (!formed_since_) formed_since_ = world_.time;
  } else {
    formed_since_.reset();
  }
  const bool agreement = is_agreement_configuration(q);
  if (agreement && !trace_.milestones.agreement) {
    trace_.milestones.agreement = world_.time;
    if (world_.time > 0) take_snapshot("agreement", world_.time);
  }
  if (agreement && !matched_) {
    map_now_ = map_pattern(q, pattern_);
  } else {
    map_now_.reset();
  }
}

std::optional<std::string> Simulator::check_invariants(const std::vector<Point>& before, const TraceEvent& ev) {
  const auto& pos = world_.positions;
  const std::size_t n = pos.size();

  ++trace_.stats.collision_checks;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (distance(pos[i], pos[j]) <= eps_) {
        return "collision between robots " + std::to_string(i) + " and " + std::to_string(j) + " at " +
               describe(pos[i]);
      }
    }
  }

  ++trace_.stats.sec_checks;
  const Configuration after(pos, options_.tol);
  if (!same_circle(after.sec(), initial_sec_, eps_)) {
    return "enclosing circle changed: center " + describe(after.sec().center) + " radius " +
           std::to_string(after.sec().radius) + " after robot " + std::to_string(ev.robot) + " moved";
  }

  ++trace_.stats.angle_checks;
  std::vector<double> ring;
  for (const Point& p : pos) {
    if (initial_sec_.on_boundary(p, eps_)) ring.push_back(rad_to_deg(polar(p, initial_sec_.center)));
  }
  std::sort(ring.begin(), ring.end());
  for (std::size_t j = 0; j < ring.size(); ++j) {
    const double gap = j + 1 < ring.size() ? ring[j + 1] - ring[j] : ring.front() + 360.0 - ring.back();
    if (gap > 180.0 + kAngleSlackDeg) {
      return "adjacent robots on the enclosing circle are " + std::to_string(gap) + " degrees apart";
    }
  }

  // The mapped pattern of the state before this event is still cached.
  if (map_now_) {
    (void)before;
    const bool formed = matches_pattern(after, pattern_, options_.success_eps_rel);
    if (!formed) {
      ++trace_.stats.map_checks;
      if (!is_agreement_configuration(after)) {
        return "agreement lost after robot " + std::to_string(ev.robot) + " moved";
      }
      const MappedPattern m = map_pattern(after, pattern_);
      for (std::size_t i = 0; i < m.positions.size(); ++i) {
        if (distance(m.positions[i], map_now_->positions[i]) > eps_) {
          return "mapped pattern changed after robot " + std::to_string(ev.robot) + " moved";
        }
      }
    }
  }
  return std::nullopt;
}

TraceEvent Simulator::step() {
  const std::vector<Point> before = world_.positions;
  last_branch_.reset();
  completed_.reset();
  TraceEvent ev;
  try {
    ev = advance();
  } catch (const Error& e) {
    if (!pending_violation_) pending_violation_ = std::string("protocol failure: ") + e.what();
    ev.time = world_.time++;
    ev.diag = "error";
    return ev;
  }
  if (last_branch_ && is_placement_branch(*last_branch_) && !trace_.milestones.first_placement_action) {
    trace_.milestones.first_placement_action = ev.time;
  }
  const bool moved = ev.kind == EventKind::Move || ev.kind == EventKind::MoveEnd || ev.kind == EventKind::Fault;
  if (moved) {
    try {
      auto violation = check_invariants(before, ev);
      if (violation) {
        if (!pending_violation_) pending_violation_ = std::move(violation);
        return ev;
      }
      refresh_after_move();
    } catch (const Error& e) {
      if (!pending_violation_) pending_violation_ = std::string("invalid state: ") + e.what();
      return ev;
    }
  }
  if (completed_) on_cycle_complete(*completed_, ev.time);
  return ev;
}

Trace Simulator::run() {
  const std::size_t n = world_.positions.size();
  const auto finish = [&](Outcome::Kind kind, long time, std::string detail) {
    trace_.outcome = {kind, time, std::move(detail)};
    trace_.events_used = world_.time;
    take_snapshot("final", world_.time);
    return trace_;
  };

  while (world_.time < options_.max_events) {
    TraceEvent ev = step();
    if (options_.record_events) trace_.events.push_back(ev);
    if (pending_violation_) return finish(Outcome::Kind::InvariantViolation, ev.time, *pending_violation_);
    if (formed_since_) {
      bool all = true;
      for (std::size_t i = 0; i < n && all; ++i) all = completed_snapshot_[i] >= *formed_since_;
      if (all) {
        trace_.milestones.formed = *formed_since_;
        return finish(Outcome::Kind::Formed, *formed_since_, "");
      }
    }
  }
  return finish(Outcome::Kind::LimitExceeded, world_.time, "event budget exhausted");
}

Trace run(const std::vector<Point>& initial, const TargetPattern& pattern, const AdversaryPolicy& policy,
          const RunOptions& options) {
  try {
    Simulator sim(initial, pattern, policy, options);
    return sim.run();
  } catch (const Error& e) {
    Trace t;
    t.outcome = {Outcome::Kind::RejectedInput, 0, e.what()};
    return t;
  }
}

}  // namespace corda
