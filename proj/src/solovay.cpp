#include "tglp/solovay.hpp"

#include <algorithm>

#include "tglp/error.hpp"

namespace tglp {

namespace {

void validate(const JModel& m, const SolovaySchedule& schedule) {
  if (!is_rooted(m)) throw RangeError("model has no <_0-root at world 0");
  for (const auto& [step, event] : schedule.events) {
    if (event.target >= m.world_count())
      throw RangeError("event at step " + std::to_string(step) + " targets world " + std::to_string(event.target) +
                       " out of range");
    if (event.level >= m.relation_count())
      throw RangeError("event at step " + std::to_string(step) + " has level " + std::to_string(event.level) +
                       " out of range");
  }
}

bool fires(const JModel& m, const SolovayEvent& e, std::size_t current) {
  for (std::size_t n = e.level; n < m.relation_count(); ++n)
    if (m.below(n, e.target, current)) return true;
  return false;
}

SolovayPath run_unchecked(const JModel& m, const SolovaySchedule& schedule, std::size_t length) {
  SolovayPath path{0};
  path.reserve(length);
  while (path.size() < length) {
    const std::size_t k = path.size() - 1;
    std::size_t next = path.back();
    if (auto it = schedule.events.find(k); it != schedule.events.end() && fires(m, it->second, next))
      next = it->second.target;
    path.push_back(next);
  }
  return path;
}

std::string show(const SolovayPath& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + "]";
}

}  // namespace

SolovayPath run_path(const JModel& m, const SolovaySchedule& schedule, std::size_t length) {
  if (length == 0) throw RangeError("path length must be at least 1");
  validate(m, schedule);
  return run_unchecked(m, schedule, length);
}

std::size_t limit_value(const JModel& m, const SolovaySchedule& schedule) {
  validate(m, schedule);
  const std::size_t length = schedule.events.empty() ? 1 : schedule.events.rbegin()->first + 2;
  return run_unchecked(m, schedule, length).back();
}

std::vector<PathViolation> check_runs(const JModel& m, const std::vector<SolovayPath>& runs,
                                      std::size_t schedule_id) {
  std::vector<PathViolation> out;
  for (std::size_t i = 0; i < runs.size(); ++i)
    if (runs[i].size() != i + 1)
      out.push_back({"existence", schedule_id,
                     "no run of length " + std::to_string(i + 1) + " (got " + show(runs[i]) + ")"});

  for (std::size_t a = 0; a < runs.size(); ++a)
    for (std::size_t b = a + 1; b < runs.size(); ++b) {
      const auto& shorter = runs[a].size() <= runs[b].size() ? runs[a] : runs[b];
      const auto& longer = runs[a].size() <= runs[b].size() ? runs[b] : runs[a];
      if (!std::equal(shorter.begin(), shorter.end(), longer.begin()))
        out.push_back({"prefix", schedule_id, show(runs[a]) + " and " + show(runs[b]) + " are not comparable"});
    }

  std::map<std::size_t, std::size_t> value_at;
  for (const auto& run : runs)
    for (std::size_t i = 0; i < run.size(); ++i) {
      auto [it, fresh] = value_at.emplace(i, run[i]);
      if (!fresh && it->second != run[i])
        out.push_back({"uniqueness", schedule_id,
                       "index " + std::to_string(i) + " takes values " + std::to_string(it->second) + " and " +
                           std::to_string(run[i])});
    }

  const Relation ll = much_below(m, 0);
  for (const auto& run : runs)
    for (std::size_t i = 0; i < run.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) {
        const bool ok = run[i] == run[j] ||
                        (run[i] < m.world_count() && run[j] < m.world_count() && ll.holds(run[i], run[j]));
        if (!ok) {
          out.push_back({"descent", schedule_id,
                         "in " + show(run) + " step " + std::to_string(i) + " is not below step " + std::to_string(j)});
          break;
        }
      }
  return out;
}

PathReport check_path_properties(const JModel& m, const std::vector<SolovaySchedule>& schedules,
                                 std::size_t max_length) {
  PathReport report;
  report.schedules = schedules.size();
  for (std::size_t s = 0; s < schedules.size(); ++s) {
    validate(m, schedules[s]);
    std::vector<SolovayPath> runs;
    for (std::size_t len = 1; len <= max_length; ++len) runs.push_back(run_unchecked(m, schedules[s], len));
    report.runs += runs.size();
    auto v = check_runs(m, runs, s);
    report.violations.insert(report.violations.end(), v.begin(), v.end());
  }
  return report;
}

std::vector<SolovaySchedule> all_schedules(const JModel& m, std::size_t max_events, std::size_t max_steps) {
  std::vector<SolovayEvent> kinds;
  for (std::size_t level = 0; level < m.relation_count(); ++level)
    for (std::size_t target = 0; target < m.world_count(); ++target) kinds.push_back({level, target});

  std::vector<SolovaySchedule> out;
  SolovaySchedule current;
  auto extend = [&](auto&& self, std::uint64_t first_step) -> void {
    out.push_back(current);
    if (current.events.size() == max_events) return;
    for (std::uint64_t step = first_step; step < max_steps; ++step)
      for (const auto& e : kinds) {
        current.events[step] = e;
        self(self, step + 1);
        current.events.erase(step);
      }
  };
  extend(extend, 0);
  return out;
}

}  // namespace tglp
