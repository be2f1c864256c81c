#include "esprio/semantics.hpp"

#include <algorithm>

namespace esprio {

event_set trace_bar(const trace& sigma) {
  event_set bar;
  for (event_id e : sigma) bar.insert(e);
  return bar;
}

event_set enabled_after(const structure& es, event_set occurred) {
  event_set en;
  for (event_id e = 0; e < es.size(); e++) {
    if (occurred.contains(e)) continue;
    bool ok = true;
    switch (es.kind) {
      case variant::prime:
        ok = es.pred[e].subset_of(occurred) && !es.conflict[e].intersects(occurred);
        break;
      case variant::bundle:
      case variant::dual:
        ok = !es.conflict[e].intersects(occurred);
        break;
      case variant::ebundle:
        ok = !es.killers[e].intersects(occurred);
        break;
    }
    if (ok && es.kind != variant::prime)
      for (uint32_t bi : es.bundles_of[e]) {
        if (!es.bundles[bi].members.intersects(occurred)) { ok = false; break; }
      }
    if (ok) en.insert(e);
  }
  return en;
}

namespace {

void check_ids(const structure& es, const trace& sigma) {
  for (event_id e : sigma)
    if (e >= es.size())
      throw op_error(op_errc::unknown_event,
                     "event index " + std::to_string(e) + " out of range");
}

void check_size(const structure& es, const limits& lim) {
  if (es.size() > lim.max_events)
    throw op_error(op_errc::size_limit_exceeded,
                   std::to_string(es.size()) + " events exceed the enumeration limit of " +
                       std::to_string(lim.max_events));
}

struct searcher {
  const structure& es;
  bool use_priority = false;
  uint32_t max_len = 0;
  std::optional<event_set> only_within{};  // candidate filter
  std::optional<event_set> emit_exact{};   // emit only this underlying set
  std::vector<trace>* traces_out = nullptr;
  std::vector<event_set>* configs_out = nullptr;

  trace cur{};
  event_set occurred{};
  std::vector<uint8_t> armed{};                        // per priority pair
  std::vector<std::vector<uint32_t>> pairs_by_high{};  // pair indices keyed by high event

  void run() {
    armed.assign(es.priority.size(), 0);
    pairs_by_high.assign(es.size(), {});
    for (uint32_t i = 0; i < es.priority.size(); i++)
      pairs_by_high[es.priority[i].high].push_back(i);
    visit();
  }

  void visit() {
    if (!emit_exact || occurred == *emit_exact) {
      if (traces_out) traces_out->push_back(cur);
      if (configs_out) configs_out->push_back(occurred);
    }
    if (cur.size() >= max_len) return;

    event_set en = enabled_after(es, occurred);

    // A pair stays armed once both sides have been enabled together at any
    // earlier prefix; firing the low side afterwards is what the trace
    // condition forbids, so appending the high side past an armed low is cut.
    std::vector<uint32_t> newly;
    if (use_priority)
      for (uint32_t i = 0; i < es.priority.size(); i++)
        if (!armed[i] && en.contains(es.priority[i].low) && en.contains(es.priority[i].high)) {
          armed[i] = 1;
          newly.push_back(i);
        }

    event_set cand = en;
    if (only_within) cand &= *only_within;
    for (event_id e : cand) {
      if (use_priority) {
        bool blocked = false;
        for (uint32_t i : pairs_by_high[e])
          if (armed[i] && occurred.contains(es.priority[i].low)) { blocked = true; break; }
        if (blocked) continue;
      }
      cur.push_back(e);
      occurred.insert(e);
      visit();
      occurred.erase(e);
      cur.pop_back();
    }
    for (uint32_t i : newly) armed[i] = 0;
  }
};

}  // namespace

event_set enabled(const structure& es, const trace& sigma) {
  check_ids(es, sigma);
  trace_check tc = is_trace(es, sigma, false);
  if (!tc.ok)
    throw op_error(op_errc::not_a_trace,
                   "sequence rejected at step " + std::to_string(tc.why->index + 1));
  return enabled_after(es, trace_bar(sigma));
}

trace_check is_trace(const structure& es, const trace& sigma, bool use_priority) {
  check_ids(es, sigma);

  event_set occurred;
  for (size_t k = 0; k < sigma.size(); k++) {
    if (!enabled_after(es, occurred).contains(sigma[k]))
      return {false, trace_violation{trace_violation::kind::step_not_enabled, k}};
    occurred.insert(sigma[k]);
  }

  if (use_priority && !es.priority.empty()) {
    std::vector<size_t> pos(es.size(), 0);
    for (size_t k = 0; k < sigma.size(); k++) pos[sigma[k]] = k;
    event_set bar = occurred;
    event_set prefix;
    for (size_t i = 0; i < sigma.size(); i++) {
      event_set en = enabled_after(es, prefix);
      for (auto [lo, hi] : es.priority)
        if (bar.contains(lo) && bar.contains(hi) && en.contains(lo) && en.contains(hi) &&
            pos[hi] > pos[lo])
          return {false, trace_violation{trace_violation::kind::priority, i, hi, lo}};
      prefix.insert(sigma[i]);
    }
  }
  return {true, std::nullopt};
}

std::vector<trace> enumerate_traces(const structure& es, bool use_priority, const limits& lim) {
  check_size(es, lim);
  std::vector<trace> out;
  searcher s{es, use_priority, lim.max_len.value_or(es.size())};
  s.traces_out = &out;
  s.run();
  return out;
}

std::vector<event_set> enumerate_configurations(const structure& es, bool use_priority,
                                                const limits& lim) {
  check_size(es, lim);
  std::vector<event_set> out;
  searcher s{es, use_priority, lim.max_len.value_or(es.size())};
  s.configs_out = &out;
  s.run();
  std::sort(out.begin(), out.end(), set_lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<trace> traces_over_configuration(const structure& es, bool use_priority,
                                             event_set config, const limits& lim) {
  check_size(es, lim);
  if (!config.subset_of(es.universe()))
    throw op_error(op_errc::unknown_event, "configuration mentions events outside the structure");
  std::vector<trace> out;
  searcher s{es, use_priority, std::min<uint32_t>(config.size(), lim.max_len.value_or(es.size()))};
  s.only_within = config;
  s.emit_exact = config;
  s.traces_out = &out;
  s.run();
  return out;
}

}  // namespace esprio
