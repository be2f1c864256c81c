#pragma once

#include "esprio/core.hpp"
#include "esprio/semantics.hpp"

namespace esprio {

enum class drop_reason : uint8_t { conflict_overlap, enabling_overlap, disabling_overlap };

const char* drop_reason_code(drop_reason r);

struct reduction_report {
  variant kind;
  std::vector<priority_pair> kept;
  std::vector<std::pair<priority_pair, drop_reason>> dropped;
  std::vector<std::string> dropped_because;  // witness per dropped entry
};

// Removes priority pairs whose endpoints can never be enabled together
// because they overlap conflict, enabling or disabling. Purely structural;
// the kept relation is guaranteed to give the same trace set.
reduction_report reduce_priority(const structure& es);

struct ignorance_report {
  event_set configuration;
  std::vector<priority_pair> ignorable;  // comparability rule, oracle-verified
  std::vector<priority_pair> retained;
  // Retained pairs that a trace comparison can also discard one at a time;
  // the comparability rule does not see these.
  std::vector<priority_pair> beyond_rule;
};

ignorance_report ignore_at_configuration(const structure& es, event_set config);

struct minimality_report {
  bool minimal = true;
  std::optional<priority_pair> removable;
  size_t unchanged_traces = 0;  // scoped trace count certified equal
};

// Does deleting any single pair of `reduced` (any proper subset in
// exhaustive mode) leave the scoped trace set unchanged? Monotonicity makes
// single deletions complete, so both modes agree.
minimality_report check_minimality(const structure& es,
                                   const std::vector<priority_pair>& reduced,
                                   std::optional<event_set> config,
                                   bool exhaustive_subsets = false,
                                   const limits& lim = {});

struct trace_diff {
  bool equal = true;
  std::optional<trace> witness;  // shortest, then lexicographic
  bool witness_in_first = false;
};

// Independent re-enumeration (no incremental priority bookkeeping) deciding
// whether two structures over the same events have the same traces.
trace_diff oracle_trace_equal(const structure& a, const structure& b,
                              std::optional<event_set> config, const limits& lim = {});

// The oracle's own trace set, sorted shortest then lexicographic. Exposed so
// callers can pit the production search against the blunt route directly.
std::vector<trace> oracle_traces(const structure& es, std::optional<event_set> config,
                                 const limits& lim = {});

}  // namespace esprio
