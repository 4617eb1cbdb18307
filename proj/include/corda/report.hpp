#pragma once

#include <ostream>
#include <string>

#include "corda/pattern.hpp"
#include "corda/simulator.hpp"

namespace corda {

/// One JSON object per event: time, robot, kind, before, after, diag.
void write_trace_jsonl(const Trace& trace, std::ostream& out);
std::string trace_jsonl(const Trace& trace);

/// Outcome, events used, milestone times and invariant check counts.
std::string summary_json(const Trace& trace);

/// Robots, the target pattern and the enclosing circle of one snapshot.
/// The pattern is drawn where the robots would place it when they agree on
/// a leader, otherwise centered and scaled onto the enclosing circle.
std::string render_svg(const Snapshot& snap, const Circle& sec, const TargetPattern& pattern,
                       Tolerance tol = {});

}  // namespace corda
