#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tglp/kripke.hpp"

namespace tglp {

// A derivation event: at its step it refutes "the limit is `target`" at every level n >= `level`.
struct SolovayEvent {
  std::size_t level = 0;
  std::size_t target = 0;

  friend bool operator==(const SolovayEvent&, const SolovayEvent&) = default;
};

// At most one event per step.
struct SolovaySchedule {
  std::map<std::uint64_t, SolovayEvent> events;

  friend bool operator==(const SolovaySchedule&, const SolovaySchedule&) = default;
};

using SolovayPath = std::vector<std::size_t>;

// s_0 = 0; s_{k+1} = v if the event at k targets v and v <_n s_k for some n >= its level,
// otherwise s_{k+1} = s_k. RangeError if the model has no root 0, length is 0, or an event
// names a world or level outside the model.
SolovayPath run_path(const JModel& m, const SolovaySchedule& schedule, std::size_t length);

// The value the path settles on after the last event.
std::size_t limit_value(const JModel& m, const SolovaySchedule& schedule);

struct PathViolation {
  // "prefix", "existence", "uniqueness" or "descent".
  std::string property;
  std::size_t schedule;  // position in the checked schedule list
  std::string detail;
};

struct PathReport {
  std::size_t schedules = 0;
  std::size_t runs = 0;
  std::vector<PathViolation> violations;

  bool ok() const { return violations.empty(); }
};

// Checks a family of runs of one schedule, indexed by their requested length
// (runs[i] was requested with length i + 1):
//   prefix: runs of different lengths are prefix-comparable;
//   existence: every requested length is present;
//   uniqueness: the value at each index agrees across runs;
//   descent: for j < i, s_i equals s_j or lies <<_0-below it.
std::vector<PathViolation> check_runs(const JModel& m, const std::vector<SolovayPath>& runs,
                                      std::size_t schedule_id = 0);

// Runs every schedule at every length 1..max_length and checks the runs.
PathReport check_path_properties(const JModel& m, const std::vector<SolovaySchedule>& schedules,
                                 std::size_t max_length);

// Every schedule with at most max_events events at distinct steps below max_steps, with
// levels below the model's relation count and targets below its world count. Deterministic order.
std::vector<SolovaySchedule> all_schedules(const JModel& m, std::size_t max_events, std::size_t max_steps);

}  // namespace tglp
