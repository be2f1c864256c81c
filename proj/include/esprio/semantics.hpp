#pragma once

#include "esprio/core.hpp"

namespace esprio {

// Duplicate-free event sequence; the underlying set is recomputed on demand.
using trace = std::vector<event_id>;

event_set trace_bar(const trace& sigma);

struct limits {
  uint32_t max_events = 14;
  std::optional<uint32_t> max_len;  // defaults to the event count
};

// Events enabled once exactly the events in `occurred` have happened.
// Sequence order never matters for enabledness, only the set does.
event_set enabled_after(const structure& es, event_set occurred);

// Checked variant: sigma must be a trace (priority not considered).
event_set enabled(const structure& es, const trace& sigma);

struct trace_violation {
  enum class kind : uint8_t { step_not_enabled, priority } what;
  // step_not_enabled: index of the offending step.
  // priority: index i of the earliest prefix at which high and low were
  // enabled together, yet low occurs first and high still occurs later.
  size_t index = 0;
  event_id high = 0, low = 0;
};

struct trace_check {
  bool ok = false;
  std::optional<trace_violation> why;
};

// Evaluates the whole trace condition directly: every step enabled at its
// prefix, and under priority no enabled-together pair fires low before high.
trace_check is_trace(const structure& es, const trace& sigma, bool use_priority);

std::vector<trace> enumerate_traces(const structure& es, bool use_priority,
                                    const limits& lim = {});

std::vector<event_set> enumerate_configurations(const structure& es, bool use_priority,
                                                const limits& lim = {});

// Traces whose underlying set is exactly `config`; empty when `config`
// is unreachable. Members of `config` must be valid event ids.
std::vector<trace> traces_over_configuration(const structure& es, bool use_priority,
                                             event_set config, const limits& lim = {});

}  // namespace esprio
