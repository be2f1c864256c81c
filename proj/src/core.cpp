#include "esprio/core.hpp"

#include <algorithm>
#include <sstream>

namespace esprio {

bool set_lex_less(event_set a, event_set b) {
  while (!a.empty() && !b.empty()) {
    event_id x = *a.begin(), y = *b.begin();
    if (x != y) return x < y;
    a.erase(x);
    b.erase(y);
  }
  return !b.empty();
}

const char* variant_name(variant v) {
  switch (v) {
    case variant::prime: return "prime";
    case variant::bundle: return "bundle";
    case variant::ebundle: return "ebundle";
    case variant::dual: return "dual";
  }
  return "?";
}

std::optional<variant> variant_from_name(std::string_view s) {
  if (s == "prime") return variant::prime;
  if (s == "bundle") return variant::bundle;
  if (s == "ebundle") return variant::ebundle;
  if (s == "dual") return variant::dual;
  return std::nullopt;
}

const char* violation_code(violation_kind k) {
  switch (k) {
    case violation_kind::unknown_event: return "UNKNOWN_EVENT";
    case violation_kind::duplicate_event: return "DUPLICATE_EVENT";
    case violation_kind::reflexive_conflict: return "REFLEXIVE_CONFLICT";
    case violation_kind::reflexive_disabling: return "REFLEXIVE_DISABLING";
    case violation_kind::conflict_heredity: return "CONFLICT_HEREDITY_VIOLATION";
    case violation_kind::stability: return "STABILITY_VIOLATION";
    case violation_kind::enabling_cycle: return "ENABLING_CYCLE";
    case violation_kind::priority_cycle: return "PRIORITY_CYCLE";
    case violation_kind::self_targeting_bundle: return "SELF_TARGETING_BUNDLE";
    case violation_kind::empty_bundle: return "EMPTY_BUNDLE";
    case violation_kind::variant_mismatch: return "VARIANT_MISMATCH";
  }
  return "?";
}

const char* op_errc_code(op_errc c) {
  switch (c) {
    case op_errc::not_a_trace: return "NOT_A_TRACE";
    case op_errc::not_a_configuration: return "NOT_A_CONFIGURATION";
    case op_errc::unknown_event: return "UNKNOWN_EVENT";
    case op_errc::size_limit_exceeded: return "SIZE_LIMIT_EXCEEDED";
    case op_errc::variant_unsupported: return "VARIANT_UNSUPPORTED";
    case op_errc::event_set_mismatch: return "EVENT_SET_MISMATCH";
    case op_errc::invalid_cause_choice: return "INVALID_CAUSE_CHOICE";
  }
  return "?";
}

bool raw_equal(const raw_document& a, const raw_document& b) {
  auto rel_eq = [](const std::vector<raw_rel>& x, const std::vector<raw_rel>& y) {
    if (x.size() != y.size()) return false;
    for (size_t i = 0; i < x.size(); i++)
      if (x[i].a != y[i].a || x[i].b != y[i].b) return false;
    return true;
  };
  if (a.kind != b.kind || a.events.size() != b.events.size() ||
      a.bundles.size() != b.bundles.size())
    return false;
  for (size_t i = 0; i < a.events.size(); i++)
    if (a.events[i].id != b.events[i].id || a.events[i].label != b.events[i].label)
      return false;
  for (size_t i = 0; i < a.bundles.size(); i++)
    if (a.bundles[i].members != b.bundles[i].members ||
        a.bundles[i].target != b.bundles[i].target)
      return false;
  return rel_eq(a.conflicts, b.conflicts) && rel_eq(a.enablings, b.enablings) &&
         rel_eq(a.disablings, b.disablings) && rel_eq(a.priorities, b.priorities);
}

std::optional<event_id> structure::find(std::string_view id) const {
  auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it == ids.end() || *it != id) return std::nullopt;
  return static_cast<event_id>(it - ids.begin());
}

structure structure::with_priority(std::vector<priority_pair> prio) const {
  structure out = *this;
  std::sort(prio.begin(), prio.end());
  prio.erase(std::unique(prio.begin(), prio.end()), prio.end());
  out.priority = std::move(prio);
  out.lower_than.assign(size(), {});
  out.higher_than.assign(size(), {});
  for (auto [lo, hi] : out.priority) {
    assert(lo < size() && hi < size());
    out.lower_than[hi].insert(lo);
    out.higher_than[lo].insert(hi);
  }
  return out;
}

namespace {

std::string set_text(const std::vector<std::string>& names) {
  std::ostringstream os;
  os << "{ ";
  for (size_t i = 0; i < names.size(); i++) os << (i ? ", " : "") << names[i];
  os << " }";
  return os.str();
}

// Cycle search over an adjacency list; returns a closed path v0 .. vk v0.
std::optional<std::vector<uint32_t>> find_cycle(const std::vector<std::vector<uint32_t>>& adj) {
  size_t n = adj.size();
  std::vector<int> color(n, 0);
  std::vector<uint32_t> stack;
  std::optional<std::vector<uint32_t>> cycle;

  auto dfs = [&](auto&& self, uint32_t v) -> bool {
    color[v] = 1;
    stack.push_back(v);
    for (uint32_t w : adj[v]) {
      if (cycle) return true;
      if (color[w] == 1) {
        auto it = std::find(stack.begin(), stack.end(), w);
        cycle.emplace(it, stack.end());
        cycle->push_back(w);
        return true;
      }
      if (color[w] == 0 && self(self, w)) return true;
    }
    color[v] = 2;
    stack.pop_back();
    return false;
  };
  for (uint32_t v = 0; v < n; v++)
    if (color[v] == 0 && dfs(dfs, v)) break;
  return cycle;
}

struct resolver {
  const structure& es;
  validation_report& report;

  std::optional<event_id> operator()(const std::string& name, int line, int col) {
    if (auto e = es.find(name)) return e;
    report.items.push_back({violation_kind::unknown_event,
                            "unknown event '" + name + "'", line, col});
    return std::nullopt;
  }
};

}  // namespace

validated validate(const raw_document& raw) {
  validated result;
  validation_report& report = result.report;
  structure es;
  es.kind = raw.kind;

  for (const auto& ev : raw.events) es.ids.push_back(ev.id);
  std::sort(es.ids.begin(), es.ids.end());
  es.ids.erase(std::unique(es.ids.begin(), es.ids.end()), es.ids.end());
  if (es.ids.size() > event_set::capacity)
    throw op_error(op_errc::size_limit_exceeded,
                   "structure exceeds " + std::to_string(event_set::capacity) + " events");
  uint32_t n = es.size();

  es.labels.assign(n, "");
  std::vector<int> declared(n, 0);
  for (const auto& ev : raw.events) {
    event_id e = *es.find(ev.id);
    if (declared[e]++) {
      report.items.push_back({violation_kind::duplicate_event,
                              "event '" + ev.id + "' declared twice", ev.line, ev.col});
      continue;
    }
    es.labels[e] = ev.label.empty() ? ev.id : ev.label;
  }

  bool allow_conflict = es.kind != variant::ebundle;
  bool allow_enabling = es.kind == variant::prime;
  bool allow_bundles = es.kind != variant::prime;
  bool allow_disabling = es.kind == variant::ebundle;

  resolver resolve{es, report};
  es.conflict.assign(n, {});
  es.pred.assign(n, {});
  es.succ.assign(n, {});
  es.killers.assign(n, {});
  es.lower_than.assign(n, {});
  es.higher_than.assign(n, {});

  for (const auto& r : raw.conflicts) {
    if (!allow_conflict) {
      report.items.push_back({violation_kind::variant_mismatch,
                              "conflict not available in an ebundle structure", r.line, r.col});
      continue;
    }
    auto a = resolve(r.a, r.line, r.col), b = resolve(r.b, r.line, r.col);
    if (!a || !b) continue;
    if (*a == *b) {
      report.items.push_back({violation_kind::reflexive_conflict,
                              "conflict " + r.a + " " + r.b, r.line, r.col});
      continue;
    }
    es.conflict[*a].insert(*b);
    es.conflict[*b].insert(*a);
  }

  for (const auto& r : raw.enablings) {
    if (!allow_enabling) {
      report.items.push_back({violation_kind::variant_mismatch,
                              "enable only available in a prime structure", r.line, r.col});
      continue;
    }
    auto a = resolve(r.a, r.line, r.col), b = resolve(r.b, r.line, r.col);
    if (!a || !b) continue;
    if (*a == *b) {
      report.items.push_back({violation_kind::enabling_cycle,
                              "enabling cycle: " + r.a + " -> " + r.b, r.line, r.col});
      continue;
    }
    es.enabling.push_back({*a, *b});
  }
  std::sort(es.enabling.begin(), es.enabling.end(),
            [](auto x, auto y) { return std::pair(x.cause, x.effect) < std::pair(y.cause, y.effect); });
  es.enabling.erase(std::unique(es.enabling.begin(), es.enabling.end()), es.enabling.end());

  for (const auto& r : raw.bundles) {
    if (!allow_bundles) {
      report.items.push_back({violation_kind::variant_mismatch,
                              "bundle not available in a prime structure", r.line, r.col});
      continue;
    }
    if (r.members.empty()) {
      report.items.push_back({violation_kind::empty_bundle,
                              "bundle with no members targeting " + r.target, r.line, r.col});
      continue;
    }
    auto t = resolve(r.target, r.line, r.col);
    event_set members;
    bool bad = false;
    for (const auto& m : r.members) {
      auto e = resolve(m, r.line, r.col);
      if (!e) { bad = true; continue; }
      members.insert(*e);
    }
    if (!t || bad) continue;
    if (members.contains(*t)) {
      report.items.push_back({violation_kind::self_targeting_bundle,
                              "bundle " + set_text(r.members) + " -> " + r.target +
                                  ": target inside bundle set", r.line, r.col});
      continue;
    }
    es.bundles.push_back({members, *t});
  }
  std::sort(es.bundles.begin(), es.bundles.end(), [](const bundle& x, const bundle& y) {
    return std::pair(x.target, x.members.bits) < std::pair(y.target, y.members.bits);
  });
  es.bundles.erase(std::unique(es.bundles.begin(), es.bundles.end()), es.bundles.end());
  es.bundles_of.assign(n, {});
  for (uint32_t i = 0; i < es.bundles.size(); i++)
    es.bundles_of[es.bundles[i].target].push_back(i);

  for (const auto& r : raw.disablings) {
    if (!allow_disabling) {
      report.items.push_back({violation_kind::variant_mismatch,
                              "disable only available in an ebundle structure", r.line, r.col});
      continue;
    }
    auto a = resolve(r.a, r.line, r.col), b = resolve(r.b, r.line, r.col);
    if (!a || !b) continue;
    if (*a == *b) {
      report.items.push_back({violation_kind::reflexive_disabling,
                              "disable " + r.a + " ~> " + r.b, r.line, r.col});
      continue;
    }
    es.disabling.push_back({*a, *b});
  }
  std::sort(es.disabling.begin(), es.disabling.end(),
            [](auto x, auto y) { return std::pair(x.disabled, x.disabler) < std::pair(y.disabled, y.disabler); });
  es.disabling.erase(std::unique(es.disabling.begin(), es.disabling.end()), es.disabling.end());
  for (auto [dis, killer] : es.disabling) es.killers[dis].insert(killer);

  for (const auto& r : raw.priorities) {
    auto a = resolve(r.a, r.line, r.col), b = resolve(r.b, r.line, r.col);
    if (!a || !b) continue;
    if (*a == *b) {
      report.items.push_back({violation_kind::priority_cycle,
                              "priority cycle: " + r.a + " < " + r.b, r.line, r.col});
      continue;
    }
    es.priority.push_back({*a, *b});
  }
  std::sort(es.priority.begin(), es.priority.end());
  es.priority.erase(std::unique(es.priority.begin(), es.priority.end()), es.priority.end());
  for (auto [lo, hi] : es.priority) {
    es.lower_than[hi].insert(lo);
    es.higher_than[lo].insert(hi);
  }

  // Enabling order: reject cycles, then close.
  {
    std::vector<std::vector<uint32_t>> adj(n);
    for (auto [c, e] : es.enabling) adj[c].push_back(e);
    if (auto cyc = find_cycle(adj)) {
      std::ostringstream os;
      os << "enabling cycle:";
      for (size_t i = 0; i < cyc->size(); i++)
        os << (i ? " -> " : " ") << es.name((*cyc)[i]);
      report.items.push_back({violation_kind::enabling_cycle, os.str()});
    } else {
      for (auto [c, e] : es.enabling) es.pred[e].insert(c);
      for (bool changed = true; changed;) {
        changed = false;
        for (uint32_t e = 0; e < n; e++) {
          event_set grown = es.pred[e];
          for (event_id p : es.pred[e]) grown |= es.pred[p];
          if (grown != es.pred[e]) { es.pred[e] = grown; changed = true; }
        }
      }
      for (uint32_t e = 0; e < n; e++)
        for (event_id p : es.pred[e]) es.succ[p].insert(e);
    }
  }

  if (es.kind == variant::prime) {
    for (uint32_t x = 0; x < n; x++)
      for (event_id y : es.conflict[x])
        for (event_id z : es.succ[y]) {
          if (z == x)
            report.items.push_back({violation_kind::conflict_heredity,
                                    es.name(x) + " # " + es.name(y) + " with " + es.name(y) +
                                        " <= " + es.name(x) + " forces " + es.name(x) +
                                        " # " + es.name(x)});
          else if (!es.conflict[x].contains(z))
            report.items.push_back({violation_kind::conflict_heredity,
                                    "missing " + es.name(x) + " # " + es.name(z) + " (from " +
                                        es.name(x) + " # " + es.name(y) + ", " + es.name(y) +
                                        " <= " + es.name(z) + ")"});
        }
  }

  auto member_names = [&](event_set m) {
    std::vector<std::string> names;
    for (event_id e : m) names.push_back(es.name(e));
    return names;
  };
  if (es.kind == variant::bundle) {
    for (const auto& b : es.bundles)
      for (event_id x : b.members)
        for (event_id y : b.members)
          if (x < y && !es.conflict[x].contains(y))
            report.items.push_back({violation_kind::stability,
                                    "bundle " + set_text(member_names(b.members)) + " -> " +
                                        es.name(b.target) + ": members " + es.name(x) + ", " +
                                        es.name(y) + " not in conflict"});
  }
  if (es.kind == variant::ebundle) {
    for (const auto& b : es.bundles)
      for (event_id x : b.members)
        for (event_id y : b.members)
          if (x != y && !es.killers[x].contains(y))
            report.items.push_back({violation_kind::stability,
                                    "bundle " + set_text(member_names(b.members)) + " -> " +
                                        es.name(b.target) + ": missing " + es.name(x) +
                                        " ~> " + es.name(y)});
  }

  {
    std::vector<std::vector<uint32_t>> adj(n);
    for (auto [lo, hi] : es.priority) adj[lo].push_back(hi);
    if (auto cyc = find_cycle(adj)) {
      std::ostringstream os;
      os << "priority cycle:";
      for (size_t i = 0; i < cyc->size(); i++)
        os << (i ? " < " : " ") << es.name((*cyc)[i]);
      report.items.push_back({violation_kind::priority_cycle, os.str()});
    }
  }

  if (report.ok()) result.es = std::move(es);
  return result;
}

std::vector<enabling_pair> transitive_reduction_view(const structure& es) {
  std::vector<enabling_pair> out;
  if (es.kind != variant::prime) return out;
  for (uint32_t x = 0; x < es.size(); x++)
    for (event_id z : es.succ[x])
      if (!es.succ[x].intersects(es.pred[z])) out.push_back({x, z});
  return out;
}

}  // namespace esprio
