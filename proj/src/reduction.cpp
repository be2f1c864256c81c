#include "esprio/reduction.hpp"

#include <algorithm>

#include "esprio/posets.hpp"

namespace esprio {

const char* drop_reason_code(drop_reason r) {
  switch (r) {
    case drop_reason::conflict_overlap: return "CONFLICT_OVERLAP";
    case drop_reason::enabling_overlap: return "ENABLING_OVERLAP";
    case drop_reason::disabling_overlap: return "DISABLING_OVERLAP";
  }
  return "?";
}

namespace {

std::string bundle_text(const structure& es, const bundle& b) {
  std::string s = "{ ";
  bool first = true;
  for (event_id e : b.members) {
    if (!first) s += ", ";
    s += es.name(e);
    first = false;
  }
  s += " } -> " + es.name(b.target);
  return s;
}

// First bundle holding `inside` and targeting `target`, if any.
const bundle* bundle_between(const structure& es, event_id inside, event_id target) {
  for (uint32_t bi : es.bundles_of[target])
    if (es.bundles[bi].members.contains(inside)) return &es.bundles[bi];
  return nullptr;
}

}  // namespace

reduction_report reduce_priority(const structure& es) {
  reduction_report rep;
  rep.kind = es.kind;
  for (auto pair : es.priority) {
    auto [lo, hi] = pair;
    std::optional<drop_reason> reason;
    std::string because;

    bool has_conflict = es.kind != variant::ebundle && es.conflict[lo].contains(hi);
    if (has_conflict) {
      reason = drop_reason::conflict_overlap;
      because = es.name(std::min(lo, hi)) + " # " + es.name(std::max(lo, hi));
    } else {
      switch (es.kind) {
        case variant::prime:
          if (es.pred[hi].contains(lo)) {
            reason = drop_reason::enabling_overlap;
            because = es.name(lo) + " <= " + es.name(hi);
          } else if (es.pred[lo].contains(hi)) {
            reason = drop_reason::enabling_overlap;
            because = es.name(hi) + " <= " + es.name(lo);
          }
          break;
        case variant::ebundle:
          // Low disables high: letting low go first kills high outright, so
          // the pair can never cut a trace.
          if (es.killers[hi].contains(lo)) {
            reason = drop_reason::disabling_overlap;
            because = es.name(hi) + " ~> " + es.name(lo);
          }
          [[fallthrough]];
        case variant::bundle:
          if (!reason) {
            if (const bundle* b = bundle_between(es, lo, hi)) {
              reason = drop_reason::enabling_overlap;
              because = bundle_text(es, *b);
            } else if (const bundle* r = bundle_between(es, hi, lo)) {
              reason = drop_reason::enabling_overlap;
              because = bundle_text(es, *r);
            }
          }
          break;
        case variant::dual:
          break;  // enabling overlap proves nothing without stability
      }
    }

    if (reason) {
      rep.dropped.push_back({pair, *reason});
      rep.dropped_because.push_back(because);
    } else {
      rep.kept.push_back(pair);
    }
  }
  return rep;
}

namespace {

// Everything below re-derives trace sets from the definitions, without the
// armed-pair bookkeeping the production search uses. Slow and blunt by
// design; disagreement with the fast path means one of the two is wrong.

bool naive_occurs(const trace& sigma, size_t len, event_id e) {
  for (size_t i = 0; i < len; i++)
    if (sigma[i] == e) return true;
  return false;
}

bool naive_step_ok(const structure& es, const trace& sigma, size_t len, event_id e) {
  if (naive_occurs(sigma, len, e)) return false;
  switch (es.kind) {
    case variant::prime:
      for (event_id p : es.pred[e])
        if (!naive_occurs(sigma, len, p)) return false;
      for (event_id c : es.conflict[e])
        if (naive_occurs(sigma, len, c)) return false;
      return true;
    case variant::bundle:
    case variant::dual:
      for (event_id c : es.conflict[e])
        if (naive_occurs(sigma, len, c)) return false;
      break;
    case variant::ebundle:
      for (event_id k : es.killers[e])
        if (naive_occurs(sigma, len, k)) return false;
      break;
  }
  for (uint32_t bi : es.bundles_of[e]) {
    bool hit = false;
    for (event_id m : es.bundles[bi].members)
      if (naive_occurs(sigma, len, m)) { hit = true; break; }
    if (!hit) return false;
  }
  return true;
}

bool naive_priority_ok(const structure& es, const trace& sigma) {
  for (size_t i = 0; i < sigma.size(); i++) {
    for (auto [lo, hi] : es.priority) {
      size_t pos_lo = sigma.size(), pos_hi = sigma.size();
      for (size_t k = 0; k < sigma.size(); k++) {
        if (sigma[k] == lo) pos_lo = k;
        if (sigma[k] == hi) pos_hi = k;
      }
      if (pos_lo == sigma.size() || pos_hi == sigma.size()) continue;
      if (naive_step_ok(es, sigma, i, lo) && naive_step_ok(es, sigma, i, hi) && pos_hi > pos_lo)
        return false;
    }
  }
  return true;
}

// Rejected sequences stay rejected under extension, which justifies cutting
// the subtree at the first failure.
void naive_enumerate(const structure& es, trace& cur, std::vector<trace>& out) {
  out.push_back(cur);
  for (event_id e = 0; e < es.size(); e++) {
    if (!naive_step_ok(es, cur, cur.size(), e)) continue;
    cur.push_back(e);
    if (naive_priority_ok(es, cur)) naive_enumerate(es, cur, out);
    cur.pop_back();
  }
}

std::vector<trace> naive_traces(const structure& es, std::optional<event_set> config) {
  std::vector<trace> out;
  trace cur;
  naive_enumerate(es, cur, out);
  if (config) {
    std::vector<trace> scoped;
    for (auto& t : out)
      if (trace_bar(t) == *config) scoped.push_back(std::move(t));
    out = std::move(scoped);
  }
  return out;
}

bool shorter_then_lex(const trace& a, const trace& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

std::vector<trace> oracle_traces(const structure& es, std::optional<event_set> config,
                                 const limits& lim) {
  if (es.size() > lim.max_events)
    throw op_error(op_errc::size_limit_exceeded,
                   std::to_string(es.size()) + " events exceed the enumeration limit of " +
                       std::to_string(lim.max_events));
  auto out = naive_traces(es, config);
  std::sort(out.begin(), out.end(), shorter_then_lex);
  return out;
}

trace_diff oracle_trace_equal(const structure& a, const structure& b,
                              std::optional<event_set> config, const limits& lim) {
  if (a.ids != b.ids || a.labels != b.labels)
    throw op_error(op_errc::event_set_mismatch, "structures must share events and labels");
  if (a.size() > lim.max_events)
    throw op_error(op_errc::size_limit_exceeded,
                   std::to_string(a.size()) + " events exceed the enumeration limit of " +
                       std::to_string(lim.max_events));

  auto ta = naive_traces(a, config);
  auto tb = naive_traces(b, config);
  std::sort(ta.begin(), ta.end(), shorter_then_lex);
  std::sort(tb.begin(), tb.end(), shorter_then_lex);
  if (ta == tb) return {};

  trace_diff diff;
  diff.equal = false;
  size_t i = 0, j = 0;
  for (;;) {
    if (i < ta.size() && (j == tb.size() || shorter_then_lex(ta[i], tb[j]))) {
      diff.witness = ta[i];
      diff.witness_in_first = true;
      break;
    }
    if (j < tb.size() && (i == ta.size() || shorter_then_lex(tb[j], ta[i]))) {
      diff.witness = tb[j];
      diff.witness_in_first = false;
      break;
    }
    i++, j++;  // equal heads
  }
  return diff;
}

ignorance_report ignore_at_configuration(const structure& es, event_set config) {
  if (es.kind == variant::prime)
    throw op_error(op_errc::variant_unsupported,
                   "prime structures have nothing to ignore beyond reduce");
  if (es.kind == variant::dual)
    throw op_error(op_errc::variant_unsupported,
                   "causal ambiguity leaves no single order to ignore against");
  if (!config.subset_of(es.universe()))
    throw op_error(op_errc::unknown_event, "configuration mentions events outside the structure");
  if (traces_over_configuration(es, false, config).empty())
    throw op_error(op_errc::not_a_configuration, "no trace reaches the given event set");

  lposet lp = precedence(es, config);
  ignorance_report rep;
  rep.configuration = config;
  for (auto pair : es.priority) {
    auto [lo, hi] = pair;
    bool drop = es.kind == variant::bundle ? lp.leq(lo, hi) || lp.leq(hi, lo)
                                           : lp.leq(hi, lo);
    (drop ? rep.ignorable : rep.retained).push_back(pair);
  }

  trace_diff verify = oracle_trace_equal(es, es.with_priority(rep.retained), config);
  if (!verify.equal)
    throw std::logic_error("ignorance rule failed oracle verification");

  for (auto pair : rep.retained) {
    std::vector<priority_pair> without;
    for (auto p : es.priority)
      if (!(p == pair)) without.push_back(p);
    if (oracle_trace_equal(es, es.with_priority(without), config).equal)
      rep.beyond_rule.push_back(pair);
  }
  return rep;
}

minimality_report check_minimality(const structure& es,
                                   const std::vector<priority_pair>& reduced,
                                   std::optional<event_set> config,
                                   bool exhaustive_subsets, const limits& lim) {
  for (auto p : reduced)
    if (std::find(es.priority.begin(), es.priority.end(), p) == es.priority.end())
      throw std::invalid_argument("reduced relation is not a subset of the priority relation");

  auto scoped_traces = [&](std::vector<priority_pair> prio) {
    structure probe = es.with_priority(std::move(prio));
    return config ? traces_over_configuration(probe, true, *config, lim)
                  : enumerate_traces(probe, true, lim);
  };

  auto base = scoped_traces(reduced);
  minimality_report rep;
  rep.unchanged_traces = base.size();

  for (size_t i = 0; i < reduced.size(); i++) {
    std::vector<priority_pair> cand = reduced;
    cand.erase(cand.begin() + i);
    if (scoped_traces(cand) == base) {
      rep.minimal = false;
      rep.removable = reduced[i];
      return rep;
    }
  }

  if (exhaustive_subsets && reduced.size() > 1) {
    if (reduced.size() > 16)
      throw op_error(op_errc::size_limit_exceeded, "too many pairs for subset sweep");
    for (uint64_t mask = 0; mask + 1 < (uint64_t{1} << reduced.size()); mask++) {
      std::vector<priority_pair> cand;
      std::optional<priority_pair> out_first;
      for (size_t i = 0; i < reduced.size(); i++) {
        if (mask >> i & 1) cand.push_back(reduced[i]);
        else if (!out_first) out_first = reduced[i];
      }
      if (scoped_traces(cand) == base) {
        rep.minimal = false;
        rep.removable = out_first;
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace esprio
