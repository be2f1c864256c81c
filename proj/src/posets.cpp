#include "esprio/posets.hpp"

#include <algorithm>
#include <map>

namespace esprio {

namespace {

void close_below(event_set carrier, std::vector<event_set>& below) {
  for (bool changed = true; changed;) {
    changed = false;
    for (event_id e : carrier) {
      event_set grown = below[e];
      for (event_id p : below[e]) grown |= below[p];
      if (grown != below[e]) { below[e] = grown; changed = true; }
    }
  }
  for (event_id x : carrier)
    for (event_id y : carrier)
      if (x != y && below[x].contains(y) && below[y].contains(x))
        throw std::logic_error("precedence closure is not antisymmetric");
}

lposet build_precedence(const structure& es, event_set config) {
  lposet p;
  p.carrier = config;
  p.below.assign(es.size(), {});
  p.label.assign(es.size(), "");
  for (event_id e : config) {
    p.below[e] = event_set::single(e);
    p.label[e] = es.labels[e];
  }
  switch (es.kind) {
    case variant::prime:
      for (event_id e : config) p.below[e] |= es.pred[e] & config;
      break;
    case variant::bundle:
    case variant::ebundle:
      for (const auto& b : es.bundles)
        if (config.contains(b.target)) p.below[b.target] |= b.members & config;
      if (es.kind == variant::ebundle)
        for (auto [dis, killer] : es.disabling)
          if (config.contains(dis) && config.contains(killer)) p.below[killer].insert(dis);
      break;
    case variant::dual:
      throw op_error(op_errc::variant_unsupported,
                     "a dual structure has no unique order per configuration");
  }
  close_below(config, p.below);
  return p;
}

}  // namespace

lposet precedence(const structure& es, event_set config) {
  if (es.kind == variant::dual)
    throw op_error(op_errc::variant_unsupported,
                   "a dual structure has no unique order per configuration");
  if (!config.subset_of(es.universe()))
    throw op_error(op_errc::unknown_event, "configuration mentions events outside the structure");
  if (traces_over_configuration(es, false, config).empty())
    throw op_error(op_errc::not_a_configuration, "no trace reaches the given event set");
  return build_precedence(es, config);
}

bool is_prefix(const lposet& p, const lposet& q) {
  if (!p.carrier.subset_of(q.carrier)) return false;
  for (event_id y : p.carrier) {
    if (p.below[y] != q.below[y]) return false;
    if (p.label[y] != q.label[y]) return false;
  }
  return true;
}

lposet_family lposet_family_of(const structure& es, const limits& lim) {
  if (es.kind == variant::dual || es.kind == variant::prime)
    throw op_error(op_errc::variant_unsupported,
                   std::string("lposet families are built for bundle and ebundle structures, not ") +
                       variant_name(es.kind));
  lposet_family fam;
  for (event_set c : enumerate_configurations(es, false, lim))
    fam.members.push_back(build_precedence(es, c));

  uint32_t m = static_cast<uint32_t>(fam.members.size());
  std::vector<std::vector<bool>> strict(m, std::vector<bool>(m, false));
  for (uint32_t i = 0; i < m; i++)
    for (uint32_t j = 0; j < m; j++)
      strict[i][j] = i != j && is_prefix(fam.members[i], fam.members[j]);
  for (uint32_t i = 0; i < m; i++)
    for (uint32_t j = 0; j < m; j++) {
      if (!strict[i][j]) continue;
      bool covered = false;
      for (uint32_t k = 0; k < m && !covered; k++)
        covered = strict[i][k] && strict[k][j];
      if (!covered) fam.prefix_edges.push_back({i, j});
    }
  return fam;
}

std::vector<trace> linearizations(const lposet& p) {
  std::vector<trace> out;
  trace cur;
  event_set placed;
  auto step = [&](auto&& self) -> void {
    if (placed == p.carrier) {
      out.push_back(cur);
      return;
    }
    for (event_id e : p.carrier - placed) {
      if (!(p.below[e] - event_set::single(e)).subset_of(placed)) continue;
      placed.insert(e);
      cur.push_back(e);
      self(self);
      cur.pop_back();
      placed.erase(e);
    }
  };
  step(step);
  return out;
}

std::vector<std::pair<event_id, event_id>> covering_pairs(const lposet& p) {
  auto strictly_below = [&](event_id x, event_id y) { return x != y && p.below[y].contains(x); };
  std::vector<std::pair<event_id, event_id>> out;
  for (event_id y : p.carrier)
    for (event_id x : p.below[y]) {
      if (x == y) continue;
      bool covered = false;
      for (event_id z : p.below[y])
        if (z != x && z != y && strictly_below(x, z)) { covered = true; break; }
      if (!covered) out.push_back({x, y});
    }
  std::sort(out.begin(), out.end());
  return out;
}

const char* interp_name(cause_interp i) {
  switch (i) {
    case cause_interp::liberal: return "liberal";
    case cause_interp::bundle_satisfaction: return "bsat";
    case cause_interp::minimal: return "minimal";
    case cause_interp::early: return "early";
  }
  return "?";
}

std::optional<cause_interp> interp_from_name(std::string_view s) {
  if (s == "liberal") return cause_interp::liberal;
  if (s == "bsat") return cause_interp::bundle_satisfaction;
  if (s == "minimal") return cause_interp::minimal;
  if (s == "early") return cause_interp::early;
  return std::nullopt;
}

namespace {

bool hits_all(const std::vector<event_set>& bundles, event_set s) {
  for (event_set b : bundles)
    if (!b.intersects(s)) return false;
  return true;
}

// One satisfier per bundle such that together they use up all of s.
bool exact_cover(const std::vector<event_set>& bundles, event_set s) {
  if (s.size() > bundles.size()) return false;
  std::map<std::pair<uint32_t, uint64_t>, bool> memo;
  auto go = [&](auto&& self, uint32_t i, event_set covered) -> bool {
    if (i == bundles.size()) return covered == s;
    auto key = std::make_pair(i, covered.bits);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool ok = false;
    for (event_id pick : bundles[i] & s)
      if (self(self, i + 1, covered | event_set::single(pick))) { ok = true; break; }
    return memo[key] = ok;
  };
  return go(go, 0, {});
}

// Position multiset compared latest-first; having your latest support
// earlier (or fewer late supports) makes a cause earlier.
std::vector<size_t> descending_positions(event_set s, const std::vector<size_t>& pos) {
  std::vector<size_t> v;
  for (event_id e : s) v.push_back(pos[e]);
  std::sort(v.rbegin(), v.rend());
  return v;
}

}  // namespace

std::vector<event_set> des_causes(const structure& es, const trace& prefix, event_id target,
                                  cause_interp interp) {
  if (es.kind != variant::dual)
    throw op_error(op_errc::variant_unsupported, "cause analysis applies to dual structures");
  trace full = prefix;
  full.push_back(target);
  if (!is_trace(es, full, false).ok)
    throw op_error(op_errc::not_a_trace, "prefix plus target is not a trace");

  std::vector<event_set> target_bundles;
  for (uint32_t bi : es.bundles_of[target]) target_bundles.push_back(es.bundles[bi].members);

  event_set bar = trace_bar(prefix);
  std::vector<event_set> liberal;
  uint64_t sub = bar.bits;
  for (;;) {
    event_set s{sub};
    if (hits_all(target_bundles, s)) liberal.push_back(s);
    if (sub == 0) break;
    sub = (sub - 1) & bar.bits;
  }
  std::sort(liberal.begin(), liberal.end(), set_lex_less);

  std::vector<event_set> out;
  switch (interp) {
    case cause_interp::liberal:
      out = liberal;
      break;
    case cause_interp::bundle_satisfaction:
      for (event_set s : liberal)
        if (exact_cover(target_bundles, s)) out.push_back(s);
      break;
    case cause_interp::minimal:
      for (event_set s : liberal) {
        bool strict_min = true;
        for (event_id e : s)
          if (hits_all(target_bundles, s - event_set::single(e))) { strict_min = false; break; }
        if (strict_min) out.push_back(s);
      }
      break;
    case cause_interp::early: {
      std::vector<size_t> pos(es.size(), 0);
      for (size_t k = 0; k < prefix.size(); k++) pos[prefix[k]] = k;
      std::optional<event_set> best;
      std::vector<size_t> best_key;
      for (event_set s : liberal) {
        if (!exact_cover(target_bundles, s)) continue;
        auto key = descending_positions(s, pos);
        if (!best || key < best_key) { best = s; best_key = key; }
      }
      if (!best) throw std::logic_error("no exact-cover cause despite a valid trace");
      out.push_back(*best);
      break;
    }
  }
  return out;
}

lposet des_poset(const structure& es, const trace& sigma, cause_interp interp,
                 const std::vector<event_set>& cause_choice) {
  if (cause_choice.size() != sigma.size())
    throw op_error(op_errc::invalid_cause_choice, "one cause per trace event expected");
  for (size_t k = 0; k < sigma.size(); k++) {
    trace prefix(sigma.begin(), sigma.begin() + k);
    auto valid = des_causes(es, prefix, sigma[k], interp);
    if (std::find(valid.begin(), valid.end(), cause_choice[k]) == valid.end())
      throw op_error(op_errc::invalid_cause_choice,
                     "cause for " + es.name(sigma[k]) + " is not valid under " +
                         interp_name(interp));
  }

  lposet p;
  p.carrier = trace_bar(sigma);
  p.below.assign(es.size(), {});
  p.label.assign(es.size(), "");
  for (event_id e : p.carrier) {
    p.below[e] = event_set::single(e);
    p.label[e] = es.labels[e];
  }
  for (size_t k = 0; k < sigma.size(); k++) p.below[sigma[k]] |= cause_choice[k];
  close_below(p.carrier, p.below);
  return p;
}

}  // namespace esprio
