#pragma once

#include "esprio/posets.hpp"

namespace esprio {

// Relations of the structure as one graph: solid enabling arrows (covering
// pairs only), per-bundle joint points, dashed undirected conflict, dashed
// disabling arrows pointing at the disabler, and doubled priority arrows
// running from higher to lower.
std::string dot_structure(const structure& es);

// Events plus the priority arrows alone.
std::string dot_priority(const structure& es);

// One cluster per family member with its covering order inside, prefix
// edges between clusters.
std::string dot_family(const structure& es, const lposet_family& fam);

}  // namespace esprio
