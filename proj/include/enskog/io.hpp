#pragma once
// On-disk formats. ENSK1 is a little-endian binary container for ensembles:
//   magic "ENSK1" (5 bytes), kind u8 (0 = states, 1 = paths), reserved u16,
//   member_count u64, time_horizon f64, lineage_count u32, lineage u64[...]
// followed by per-member records:
//   states: position xyz, velocity xyz, last_event_time  (7 f64)
//   paths:  initial position xyz + velocity xyz (6 f64), event_count u64,
//           then per event: time, new velocity xyz (4 f64).
// Event positions are never stored; they are recomputed canonically on load,
// so a round trip reproduces path evaluation bitwise.
//
// The events CSV has header time,particle,accepted,delta_v_norm with %.17g
// floats and LF line endings, which round-trips doubles exactly.

#include <string>
#include <vector>

#include "enskog/ensemble.hpp"
#include "enskog/simulator.hpp"

namespace enskog {

void write_ensemble(const Ensemble& e, const std::string& path);

// Throws FormatError on bad magic, truncation, or inconsistent records.
Ensemble read_ensemble(const std::string& path);

void write_events_csv(const std::vector<JumpEvent>& events,
                      const std::string& path);

}  // namespace enskog
