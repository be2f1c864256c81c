#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "esprio/dot.hpp"
#include "esprio/parse.hpp"
#include "esprio/posets.hpp"
#include "esprio/reduction.hpp"
#include "esprio/semantics.hpp"

using namespace esprio;

namespace {

struct usage_failure { std::string message; };     // exit 2
struct semantic_failure { std::string message; };  // exit 1

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw usage_failure{"cannot read '" + path + "'"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct loaded {
  raw_document doc;
  structure es;
};

raw_document parse_or_die(const std::string& path, const std::string& text) {
  parse_result pr = parse(text);
  if (!pr.doc) {
    std::ostringstream os;
    for (const auto& i : pr.issues)
      os << path << ":" << i.line << ":" << i.col << ": " << parse_errc_code(i.code) << ": "
         << i.message << "\n";
    throw usage_failure{os.str()};
  }
  return std::move(*pr.doc);
}

std::string violation_text(const std::string& path, const violation& v) {
  std::ostringstream os;
  if (v.line > 0) os << path << ":" << v.line << ":" << v.col << ": ";
  os << violation_code(v.kind) << ": " << v.detail;
  return os.str();
}

loaded load(const std::string& path) {
  std::string text = read_file(path);
  raw_document doc = parse_or_die(path, text);
  validated v = validate(doc);
  if (!v.es) {
    std::ostringstream os;
    for (const auto& item : v.report.items) os << violation_text(path, item) << "\n";
    os << "invalid: " << v.report.items.size() << " violation"
       << (v.report.items.size() == 1 ? "" : "s");
    throw semantic_failure{os.str()};
  }
  return {std::move(doc), std::move(*v.es)};
}

event_id resolve(const structure& es, const std::string& name) {
  if (auto e = es.find(name)) return *e;
  throw semantic_failure{"UNKNOWN_EVENT: unknown event '" + name + "'"};
}

// Comma-separated names; without commas, a lone id or one id per character.
std::vector<event_id> parse_events(const structure& es, const std::string& text) {
  std::vector<event_id> out;
  if (text.empty()) return out;
  if (text.find(',') != std::string::npos) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) out.push_back(resolve(es, item));
    }
    return out;
  }
  if (es.find(text)) return {resolve(es, text)};
  for (char c : text) out.push_back(resolve(es, std::string(1, c)));
  return out;
}

event_set parse_config(const structure& es, const std::string& text) {
  event_set c;
  for (event_id e : parse_events(es, text)) c.insert(e);
  return c;
}

std::string trace_text(const structure& es, const trace& t) {
  if (t.empty()) return "ε";
  std::string s;
  for (size_t i = 0; i < t.size(); i++) {
    if (i) s += " ";
    s += es.name(t[i]);
  }
  return s;
}

std::string set_text(const structure& es, event_set c) {
  if (c.empty()) return "∅";
  std::string s = "{";
  bool first = true;
  for (event_id e : c) {
    if (!first) s += ", ";
    s += es.name(e);
    first = false;
  }
  return s + "}";
}

std::string pair_text(const structure& es, priority_pair p) {
  return es.name(p.low) + " < " + es.name(p.high);
}

limits make_limits(uint32_t max_events, std::optional<uint32_t> max_len = {}) {
  limits lim;
  lim.max_events = max_events;
  lim.max_len = max_len;
  return lim;
}

int cmd_validate(const std::string& path) {
  std::string text = read_file(path);
  raw_document doc = parse_or_die(path, text);
  validated v = validate(doc);
  if (!v.report.ok()) {
    for (const auto& item : v.report.items) std::cout << violation_text(path, item) << "\n";
    std::cout << "invalid: " << v.report.items.size() << " violation"
              << (v.report.items.size() == 1 ? "" : "s") << "\n";
    return 1;
  }
  std::cout << "OK: " << variant_name(v.es->kind) << " structure, " << v.es->size() << " event"
            << (v.es->size() == 1 ? "" : "s") << "\n";
  return 0;
}

int cmd_traces(const std::string& path, bool priority, std::optional<uint32_t> max_len,
               std::optional<std::string> over_config, uint32_t max_events) {
  loaded l = load(path);
  std::vector<trace> ts;
  if (over_config)
    ts = traces_over_configuration(l.es, priority, parse_config(l.es, *over_config),
                                   make_limits(max_events, max_len));
  else
    ts = enumerate_traces(l.es, priority, make_limits(max_events, max_len));
  for (const auto& t : ts) std::cout << trace_text(l.es, t) << "\n";
  return 0;
}

int cmd_configs(const std::string& path, bool priority, uint32_t max_events) {
  loaded l = load(path);
  for (event_set c : enumerate_configurations(l.es, priority, make_limits(max_events)))
    std::cout << set_text(l.es, c) << "\n";
  return 0;
}

int cmd_lposets(const std::string& path, bool dot, uint32_t max_events) {
  loaded l = load(path);
  lposet_family fam = lposet_family_of(l.es, make_limits(max_events));
  if (dot) {
    std::cout << dot_family(l.es, fam);
    return 0;
  }
  for (uint32_t i = 0; i < fam.members.size(); i++) {
    const lposet& p = fam.members[i];
    std::cout << i << ": " << set_text(l.es, p.carrier);
    auto covers = covering_pairs(p);
    for (size_t k = 0; k < covers.size(); k++)
      std::cout << (k ? ", " : "  ") << l.es.name(covers[k].first) << " < "
                << l.es.name(covers[k].second);
    std::cout << "\n";
  }
  for (auto [i, j] : fam.prefix_edges) std::cout << "prefix " << i << " -> " << j << "\n";
  return 0;
}

int cmd_reduce(const std::string& path, bool explain) {
  loaded l = load(path);
  reduction_report rep = reduce_priority(l.es);
  for (auto p : rep.kept) std::cout << "kept: " << pair_text(l.es, p) << "\n";
  for (size_t i = 0; i < rep.dropped.size(); i++)
    std::cout << "dropped: " << pair_text(l.es, rep.dropped[i].first) << "  "
              << drop_reason_code(rep.dropped[i].second) << " (" << rep.dropped_because[i]
              << ")\n";
  if (explain) {
    raw_document out = l.doc;
    out.priorities.clear();
    for (auto p : rep.kept)
      out.priorities.push_back({l.es.name(p.low), l.es.name(p.high)});
    std::cout << "\n" << render(out);
  }
  return 0;
}

int cmd_ignore(const std::string& path, const std::string& config_text) {
  loaded l = load(path);
  ignorance_report rep = ignore_at_configuration(l.es, parse_config(l.es, config_text));
  std::cout << "configuration: " << set_text(l.es, rep.configuration) << "\n";
  for (auto p : rep.ignorable) std::cout << "ignorable: " << pair_text(l.es, p) << "\n";
  for (auto p : rep.retained) std::cout << "retained: " << pair_text(l.es, p) << "\n";
  for (auto p : rep.beyond_rule) std::cout << "beyond rule: " << pair_text(l.es, p) << "\n";
  return 0;
}

int cmd_minimality(const std::string& path, std::optional<std::string> config_text,
                   bool exhaustive, uint32_t max_events) {
  loaded l = load(path);
  std::optional<event_set> config;
  std::vector<priority_pair> relation;
  if (config_text) {
    config = parse_config(l.es, *config_text);
    relation = ignore_at_configuration(l.es, *config).retained;
    std::cout << "scope: configuration " << set_text(l.es, *config) << "\n";
  } else {
    relation = reduce_priority(l.es).kept;
    std::cout << "scope: structure\n";
  }
  std::cout << "relation:";
  if (relation.empty()) std::cout << " (empty)";
  for (size_t i = 0; i < relation.size(); i++)
    std::cout << (i ? ", " : " ") << pair_text(l.es, relation[i]);
  std::cout << "\n";

  minimality_report rep =
      check_minimality(l.es, relation, config, exhaustive, make_limits(max_events));
  if (rep.minimal) {
    std::cout << "minimal\n";
    return 0;
  }
  std::cout << "not minimal: " << pair_text(l.es, *rep.removable) << " removable, "
            << rep.unchanged_traces << " trace" << (rep.unchanged_traces == 1 ? "" : "s")
            << " unchanged\n";
  return 1;
}

int cmd_causes(const std::string& path, const std::string& trace_text_arg,
               const std::string& target_name, const std::string& interp_name_arg) {
  loaded l = load(path);
  auto interp = interp_from_name(interp_name_arg);
  if (!interp) throw usage_failure{"unknown interpretation '" + interp_name_arg + "'"};
  event_id target = resolve(l.es, target_name);
  std::vector<event_id> full = parse_events(l.es, trace_text_arg);
  auto at = std::find(full.begin(), full.end(), target);
  if (at == full.end())
    throw semantic_failure{"NOT_A_TRACE: target '" + target_name + "' not in the given trace"};
  trace prefix(full.begin(), at);

  auto causes = des_causes(l.es, prefix, target, *interp);
  std::cout << "interpretation: " << interp_name(*interp) << "\n";
  std::cout << "target: " << target_name << "\n";
  std::cout << "prefix: " << trace_text(l.es, prefix) << "\n";
  for (event_set c : causes) std::cout << "cause: " << set_text(l.es, c) << "\n";
  return 0;
}

int cmd_export_dot(const std::string& path, const std::string& what, uint32_t max_events) {
  loaded l = load(path);
  if (what == "es") {
    std::cout << dot_structure(l.es);
  } else if (what == "priority") {
    std::cout << dot_priority(l.es);
  } else if (what == "lposets") {
    std::cout << dot_family(l.es, lposet_family_of(l.es, make_limits(max_events)));
  } else {
    throw usage_failure{"--what must be es, priority or lposets"};
  }
  return 0;
}

int cmd_fmt(const std::string& path, bool use_stdin) {
  std::string text;
  std::string shown = path;
  if (use_stdin) {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
    shown = "<stdin>";
  } else {
    text = read_file(path);
  }
  std::cout << render(parse_or_die(shown, text));
  return 0;
}

int cmd_check(const std::string& path, uint32_t max_events) {
  std::string text = read_file(path);
  raw_document doc = parse_or_die(path, text);
  int failures = 0;
  auto step = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "[ok] " : "[FAIL] ") << name << "\n";
    if (!ok) failures++;
  };

  validated v = validate(doc);
  step("validate", v.report.ok());
  if (!v.es) {
    for (const auto& item : v.report.items)
      std::cout << "  " << violation_text(path, item) << "\n";
    std::cout << "1 check failed\n";
    return 1;
  }
  const structure& es = *v.es;
  limits lim = make_limits(max_events);

  {
    parse_result again = parse(render(doc));
    step("render round-trip", again.doc && raw_equal(*again.doc, doc));
  }

  auto plain = enumerate_traces(es, false, lim);
  auto prioritized = enumerate_traces(es, true, lim);
  {
    auto sorted_by = [](std::vector<trace> v) {
      std::sort(v.begin(), v.end(), [](const trace& a, const trace& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
      });
      return v;
    };
    bool ok = sorted_by(prioritized) == oracle_traces(es, std::nullopt, lim) &&
              sorted_by(plain) == oracle_traces(es.with_priority({}), std::nullopt, lim);
    step("search agrees with the oracle", ok);
  }
  {
    bool subset = true;
    for (const auto& t : prioritized)
      if (!std::binary_search(plain.begin(), plain.end(), t)) { subset = false; break; }
    step("priority only removes traces", subset);
  }
  {
    bool closed = true;
    for (const auto& t : prioritized)
      for (size_t cut = 0; cut < t.size() && closed; cut++)
        closed = is_trace(es, trace(t.begin(), t.begin() + cut), true).ok;
    step("prefixes of traces are traces", closed);
  }
  {
    bool clean = true;
    for (const auto& t : plain) {
      event_set bar = trace_bar(t);
      for (event_id e : bar)
        if (es.kind != variant::ebundle && es.conflict[e].intersects(bar)) clean = false;
      if (es.kind == variant::ebundle)
        for (size_t i = 0; i < t.size() && clean; i++)
          for (size_t j = i + 1; j < t.size() && clean; j++)
            if (es.killers[t[j]].contains(t[i])) clean = false;  // killed yet occurred later
      if (es.kind == variant::bundle || es.kind == variant::ebundle)
        for (const auto& b : es.bundles)
          if ((b.members & bar).size() > 1) clean = false;
      if (!clean) break;
    }
    step("relation exclusions hold on every trace", clean);
  }
  {
    auto rep = reduce_priority(es);
    step("reduce keeps the trace set",
         oracle_trace_equal(es, es.with_priority(rep.kept), std::nullopt, lim).equal);
  }
  if (es.kind == variant::bundle || es.kind == variant::ebundle) {
    bool match = true;
    bool sound = true;
    for (event_set c : enumerate_configurations(es, false, lim)) {
      auto lin = linearizations(precedence(es, c));
      auto over = traces_over_configuration(es, false, c, lim);
      std::sort(lin.begin(), lin.end());
      std::sort(over.begin(), over.end());
      if (lin != over) match = false;
      try {
        ignore_at_configuration(es, c);
      } catch (const std::logic_error&) {
        sound = false;
      }
    }
    step("linearizations match traces per configuration", match);
    step("ignorance verified on every configuration", sound);
  }

  if (failures == 0) {
    std::cout << "all checks passed\n";
    return 0;
  }
  std::cout << failures << " check" << (failures == 1 ? "" : "s") << " failed\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"event structures with priority"};
  app.require_subcommand(1);

  std::string file;
  bool priority = false, explain = false, dot = false, use_stdin = false, exhaustive = false;
  uint32_t max_events = 14;
  std::optional<uint32_t> max_len;
  std::optional<std::string> over_config, config_opt;
  std::string config_req, trace_arg, target_arg, interp_arg = "liberal", what = "es";

  auto add_file = [&](CLI::App* cmd) {
    cmd->add_option("file", file, "structure file")->required();
  };
  auto add_max_events = [&](CLI::App* cmd) {
    cmd->add_option("--max-events", max_events, "enumeration size guard");
  };

  auto* c_validate = app.add_subcommand("validate", "check a structure file");
  add_file(c_validate);

  auto* c_traces = app.add_subcommand("traces", "list traces");
  add_file(c_traces);
  c_traces->add_flag("--priority", priority, "apply the priority relation");
  c_traces->add_option("--max-len", max_len, "cap trace length");
  c_traces->add_option("--over-config", over_config, "only traces over this set (a,b,c)");
  add_max_events(c_traces);

  auto* c_configs = app.add_subcommand("configs", "list configurations");
  add_file(c_configs);
  c_configs->add_flag("--priority", priority, "apply the priority relation");
  add_max_events(c_configs);

  auto* c_lposets = app.add_subcommand("lposets", "family of ordered configurations");
  add_file(c_lposets);
  c_lposets->add_flag("--dot", dot, "emit graphviz");
  add_max_events(c_lposets);

  auto* c_reduce = app.add_subcommand("reduce", "drop overlapping priority pairs");
  add_file(c_reduce);
  c_reduce->add_flag("--explain", explain, "also print the reduced document");

  auto* c_ignore = app.add_subcommand("ignore", "priority pairs ignorable at a configuration");
  add_file(c_ignore);
  c_ignore->add_option("--config", config_req, "configuration (a,b,c)")->required();

  auto* c_min = app.add_subcommand("minimality", "can the kept relation shrink further");
  add_file(c_min);
  c_min->add_option("--config", config_opt, "configuration scope (a,b,c)");
  c_min->add_flag("--all-subsets", exhaustive, "sweep every proper subset");
  add_max_events(c_min);

  auto* c_causes = app.add_subcommand("causes", "cause sets in a dual structure");
  add_file(c_causes);
  c_causes->add_option("--trace", trace_arg, "witness trace containing the target")->required();
  c_causes->add_option("--target", target_arg, "event whose causes to list")->required();
  c_causes->add_option("--interp", interp_arg, "liberal|bsat|minimal|early");

  auto* c_check = app.add_subcommand("check", "run the self-check suite on a file");
  add_file(c_check);
  add_max_events(c_check);

  auto* c_export = app.add_subcommand("export-dot", "graphviz output");
  add_file(c_export);
  c_export->add_option("--what", what, "es|priority|lposets");
  add_max_events(c_export);

  auto* c_fmt = app.add_subcommand("fmt", "reprint a file in canonical form");
  c_fmt->add_option("file", file, "structure file");
  c_fmt->add_flag("--stdin", use_stdin, "read from standard input");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (c_validate->parsed()) return cmd_validate(file);
    if (c_traces->parsed()) return cmd_traces(file, priority, max_len, over_config, max_events);
    if (c_configs->parsed()) return cmd_configs(file, priority, max_events);
    if (c_lposets->parsed()) return cmd_lposets(file, dot, max_events);
    if (c_reduce->parsed()) return cmd_reduce(file, explain);
    if (c_ignore->parsed()) return cmd_ignore(file, config_req);
    if (c_min->parsed()) return cmd_minimality(file, config_opt, exhaustive, max_events);
    if (c_causes->parsed()) return cmd_causes(file, trace_arg, target_arg, interp_arg);
    if (c_check->parsed()) return cmd_check(file, max_events);
    if (c_export->parsed()) return cmd_export_dot(file, what, max_events);
    if (c_fmt->parsed()) {
      if (!use_stdin && file.empty()) throw usage_failure{"fmt needs a file or --stdin"};
      return cmd_fmt(file, use_stdin);
    }
  } catch (const usage_failure& u) {
    std::cerr << u.message << (u.message.ends_with("\n") ? "" : "\n");
    return 2;
  } catch (const semantic_failure& s) {
    std::cerr << s.message << (s.message.ends_with("\n") ? "" : "\n");
    return 1;
  } catch (const op_error& e) {
    std::cerr << op_errc_code(e.code) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "internal invariant failed: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
