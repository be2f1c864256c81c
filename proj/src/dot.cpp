#include "esprio/dot.hpp"

#include <sstream>

namespace esprio {

namespace {

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

void emit_nodes(std::ostringstream& os, const structure& es) {
  for (event_id e = 0; e < es.size(); e++) {
    os << "  " << quoted(es.name(e));
    if (es.labels[e] != es.name(e)) os << " [label=" << quoted(es.labels[e]) << "]";
    os << ";\n";
  }
}

void emit_priority(std::ostringstream& os, const structure& es) {
  for (auto [lo, hi] : es.priority)
    os << "  " << quoted(es.name(hi)) << " -> " << quoted(es.name(lo))
       << " [color=\"black:invis:black\", constraint=false];\n";
}

}  // namespace

std::string dot_structure(const structure& es) {
  std::ostringstream os;
  os << "digraph es {\n  node [shape=circle];\n";
  emit_nodes(os, es);

  for (auto [c, e] : transitive_reduction_view(es))
    os << "  " << quoted(es.name(c)) << " -> " << quoted(es.name(e)) << ";\n";

  for (uint32_t i = 0; i < es.bundles.size(); i++) {
    const bundle& b = es.bundles[i];
    if (b.members.size() == 1) {
      os << "  " << quoted(es.name(*b.members.begin())) << " -> " << quoted(es.name(b.target))
         << ";\n";
      continue;
    }
    std::string joint = "bundle" + std::to_string(i);
    os << "  " << quoted(joint) << " [shape=point, label=\"\"];\n";
    for (event_id m : b.members)
      os << "  " << quoted(es.name(m)) << " -> " << quoted(joint) << " [dir=none];\n";
    os << "  " << quoted(joint) << " -> " << quoted(es.name(b.target)) << ";\n";
  }

  for (event_id a = 0; a < es.size(); a++)
    for (event_id b : es.conflict[a])
      if (a < b)
        os << "  " << quoted(es.name(a)) << " -> " << quoted(es.name(b))
           << " [style=dashed, dir=none, constraint=false];\n";

  for (auto [dis, killer] : es.disabling)
    os << "  " << quoted(es.name(dis)) << " -> " << quoted(es.name(killer))
       << " [style=dashed];\n";

  emit_priority(os, es);
  os << "}\n";
  return os.str();
}

std::string dot_priority(const structure& es) {
  std::ostringstream os;
  os << "digraph priority {\n  node [shape=circle];\n";
  emit_nodes(os, es);
  emit_priority(os, es);
  os << "}\n";
  return os.str();
}

std::string dot_family(const structure& es, const lposet_family& fam) {
  std::ostringstream os;
  os << "digraph lposets {\n  compound=true;\n  node [shape=plaintext];\n";
  std::vector<std::string> anchor(fam.members.size());
  for (uint32_t i = 0; i < fam.members.size(); i++) {
    const lposet& p = fam.members[i];
    os << "  subgraph cluster" << i << " {\n";
    if (p.carrier.empty()) {
      anchor[i] = "m" + std::to_string(i) + "_empty";
      os << "    " << quoted(anchor[i]) << " [label=\"\", style=invis];\n";
    } else {
      for (event_id e : p.carrier) {
        std::string node = "m" + std::to_string(i) + "_" + es.name(e);
        if (anchor[i].empty()) anchor[i] = node;
        os << "    " << quoted(node) << " [label=" << quoted(p.label[e]) << "];\n";
      }
      for (auto [x, y] : covering_pairs(p))
        os << "    " << quoted("m" + std::to_string(i) + "_" + es.name(x)) << " -> "
           << quoted("m" + std::to_string(i) + "_" + es.name(y)) << ";\n";
    }
    os << "  }\n";
  }
  for (auto [i, j] : fam.prefix_edges)
    os << "  " << quoted(anchor[i]) << " -> " << quoted(anchor[j]) << " [ltail=cluster" << i
       << ", lhead=cluster" << j << ", style=bold];\n";
  os << "}\n";
  return os.str();
}

}  // namespace esprio
