#pragma once

#include "esprio/core.hpp"
#include "esprio/semantics.hpp"

namespace esprio {

// Carrier plus a reflexive partial order stored as lower sets. Entries for
// events outside the carrier are kept empty so value comparison works.
struct lposet {
  event_set carrier;
  std::vector<event_set> below;   // below[e] = {x | x <= e}, e included
  std::vector<std::string> label; // meaningful on the carrier only

  bool leq(event_id x, event_id y) const {
    return carrier.contains(y) && below[y].contains(x);
  }
  bool operator==(const lposet&) const = default;
};

// Order a configuration by bundle satisfaction (and disabling for ebundle
// structures, where the disabled event can only come first). Prime
// structures reuse their enabling order; dual structures have no unique
// order per configuration and are rejected.
lposet precedence(const structure& es, event_set config);

// p extends nothing that q knows about p's events: carrier containment,
// order agreement on the smaller carrier, label agreement.
bool is_prefix(const lposet& p, const lposet& q);

struct lposet_family {
  std::vector<lposet> members;  // one per configuration, set-lexicographic
  std::vector<std::pair<uint32_t, uint32_t>> prefix_edges;  // covering pairs
};

lposet_family lposet_family_of(const structure& es, const limits& lim = {});

// All orderings of the carrier compatible with the order, ascending.
std::vector<trace> linearizations(const lposet& p);

// Strict covering pairs, for rendering.
std::vector<std::pair<event_id, event_id>> covering_pairs(const lposet& p);

enum class cause_interp : uint8_t { liberal, bundle_satisfaction, minimal, early };

const char* interp_name(cause_interp i);
std::optional<cause_interp> interp_from_name(std::string_view s);

// Candidate cause sets for `target` occurring right after `prefix`.
std::vector<event_set> des_causes(const structure& es, const trace& prefix,
                                  event_id target, cause_interp interp);

// Order a whole trace by one chosen cause per event.
lposet des_poset(const structure& es, const trace& sigma, cause_interp interp,
                 const std::vector<event_set>& cause_choice);

}  // namespace esprio
