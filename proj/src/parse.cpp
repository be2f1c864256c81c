#include "esprio/parse.hpp"

#include <sstream>
#include <unordered_set>

namespace esprio {

const char* parse_errc_code(parse_errc c) {
  switch (c) {
    case parse_errc::syntax_error: return "SYNTAX_ERROR";
    case parse_errc::variant_mismatch: return "VARIANT_MISMATCH";
    case parse_errc::duplicate_event: return "DUPLICATE_EVENT";
  }
  return "?";
}

namespace {

struct token {
  std::string text;
  int col;  // 1-based
};

bool is_special(char c) { return c == '{' || c == '}' || c == ',' || c == ':'; }

std::vector<token> tokenize(std::string_view line) {
  std::vector<token> out;
  size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (isspace(static_cast<unsigned char>(c))) { i++; continue; }
    size_t start = i;
    if (is_special(c)) {
      i++;
    } else {
      while (i < line.size() && !isspace(static_cast<unsigned char>(line[i])) &&
             !is_special(line[i]) && line[i] != '#')
        i++;
    }
    out.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start + 1)});
  }
  return out;
}

bool valid_id(const std::string& t) {
  if (t.empty() || t == "->" || t == "~>" || t == "<") return false;
  if (t.size() == 1 && is_special(t[0])) return false;
  for (char c : t)
    if (c == '"' || c == '\\') return false;
  return true;
}

}  // namespace

parse_result parse(std::string_view text) {
  parse_result result;
  raw_document doc;
  bool have_header = false;
  std::unordered_set<std::string> seen_events;

  auto fail = [&](parse_errc code, std::string msg, int line, int col) {
    result.issues.push_back({code, std::move(msg), line, col});
  };

  int lineno = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                           : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    lineno++;

    auto tok = tokenize(line);
    if (tok.empty()) continue;
    const std::string& head = tok[0].text;
    int hcol = tok[0].col;

    auto after_last = [&] {
      const token& last = tok.back();
      return last.col + static_cast<int>(last.text.size());
    };
    auto want_id = [&](size_t i) -> const std::string* {
      if (i < tok.size() && valid_id(tok[i].text)) return &tok[i].text;
      fail(parse_errc::syntax_error,
           i < tok.size() ? "invalid event id '" + tok[i].text + "'" : "event id expected",
           lineno, i < tok.size() ? tok[i].col : after_last());
      return nullptr;
    };
    auto want_exact = [&](size_t i, std::string_view what) {
      if (i < tok.size() && tok[i].text == what) return true;
      fail(parse_errc::syntax_error, "'" + std::string(what) + "' expected", lineno,
           i < tok.size() ? tok[i].col : after_last());
      return false;
    };
    auto want_end = [&](size_t i) {
      if (tok.size() <= i) return true;
      fail(parse_errc::syntax_error, "unexpected '" + tok[i].text + "'", lineno, tok[i].col);
      return false;
    };
    auto need_header = [&]() {
      if (have_header) return true;
      fail(parse_errc::syntax_error, "'es <variant>' header must come first", lineno, hcol);
      return false;
    };
    auto variant_ok = [&](bool allowed, const char* why) {
      if (allowed) return true;
      fail(parse_errc::variant_mismatch,
           std::string(why) + " in " + (doc.kind == variant::ebundle ? "an " : "a ") +
               variant_name(doc.kind) + " structure",
           lineno, hcol);
      return false;
    };

    if (head == "es") {
      if (have_header) {
        fail(parse_errc::syntax_error, "repeated 'es' header", lineno, hcol);
        continue;
      }
      if (tok.size() != 2 || !variant_from_name(tok[1].text)) {
        fail(parse_errc::syntax_error, "expected 'es prime|bundle|ebundle|dual'", lineno, hcol);
        continue;
      }
      doc.kind = *variant_from_name(tok[1].text);
      have_header = true;
    } else if (head == "event") {
      if (!need_header()) continue;
      auto id = want_id(1);
      if (!id) continue;
      std::string label;
      if (tok.size() > 2) {
        if (!want_exact(2, ":")) continue;
        auto l = want_id(3);
        if (!l || !want_end(4)) continue;
        if (*l != *id) label = *l;
      }
      if (!seen_events.insert(*id).second) {
        fail(parse_errc::duplicate_event, "event '" + *id + "' already declared", lineno,
             tok[1].col);
        continue;
      }
      doc.events.push_back({*id, label, lineno, hcol});
    } else if (head == "conflict") {
      if (!need_header()) continue;
      if (!variant_ok(doc.kind != variant::ebundle, "no conflict relation")) continue;
      auto a = want_id(1);
      if (!a) continue;
      auto b = want_id(2);
      if (!b || !want_end(3)) continue;
      doc.conflicts.push_back({*a, *b, lineno, hcol});
    } else if (head == "enable") {
      if (!need_header()) continue;
      if (!variant_ok(doc.kind == variant::prime, "no enabling order")) continue;
      auto a = want_id(1);
      if (!a || !want_exact(2, "->")) continue;
      auto b = want_id(3);
      if (!b || !want_end(4)) continue;
      doc.enablings.push_back({*a, *b, lineno, hcol});
    } else if (head == "bundle") {
      if (!need_header()) continue;
      if (!variant_ok(doc.kind != variant::prime, "no bundles")) continue;
      if (!want_exact(1, "{")) continue;
      std::vector<std::string> members;
      size_t i = 2;
      bool bad = false;
      for (;;) {
        if (i < tok.size() && tok[i].text == "}" && members.empty()) {
          fail(parse_errc::syntax_error, "bundle needs at least one member", lineno, tok[i].col);
          bad = true;
          break;
        }
        auto m = want_id(i);
        if (!m) { bad = true; break; }
        members.push_back(*m);
        i++;
        if (i < tok.size() && tok[i].text == ",") { i++; continue; }
        if (!want_exact(i, "}")) { bad = true; break; }
        i++;
        break;
      }
      if (bad) continue;
      if (!want_exact(i, "->")) continue;
      auto t = want_id(i + 1);
      if (!t || !want_end(i + 2)) continue;
      doc.bundles.push_back({std::move(members), *t, lineno, hcol});
    } else if (head == "disable") {
      if (!need_header()) continue;
      if (!variant_ok(doc.kind == variant::ebundle, "no disabling relation")) continue;
      auto a = want_id(1);
      if (!a || !want_exact(2, "~>")) continue;
      auto b = want_id(3);
      if (!b || !want_end(4)) continue;
      doc.disablings.push_back({*a, *b, lineno, hcol});
    } else if (head == "priority") {
      if (!need_header()) continue;
      auto a = want_id(1);
      if (!a || !want_exact(2, "<")) continue;
      auto b = want_id(3);
      if (!b || !want_end(4)) continue;
      doc.priorities.push_back({*a, *b, lineno, hcol});
    } else {
      fail(parse_errc::syntax_error, "unknown directive '" + head + "'", lineno, hcol);
    }
  }

  if (!have_header && result.issues.empty())
    fail(parse_errc::syntax_error, "'es <variant>' header missing", 1, 1);
  if (result.issues.empty()) result.doc = std::move(doc);
  return result;
}

std::string render(const raw_document& doc) {
  std::ostringstream os;
  os << "es " << variant_name(doc.kind) << "\n";
  for (const auto& ev : doc.events) {
    os << "event " << ev.id;
    if (!ev.label.empty() && ev.label != ev.id) os << " : " << ev.label;
    os << "\n";
  }
  for (const auto& r : doc.conflicts) os << "conflict " << r.a << " " << r.b << "\n";
  for (const auto& r : doc.enablings) os << "enable " << r.a << " -> " << r.b << "\n";
  for (const auto& b : doc.bundles) {
    os << "bundle { ";
    for (size_t i = 0; i < b.members.size(); i++) os << (i ? ", " : "") << b.members[i];
    os << " } -> " << b.target << "\n";
  }
  for (const auto& r : doc.disablings) os << "disable " << r.a << " ~> " << r.b << "\n";
  for (const auto& r : doc.priorities) os << "priority " << r.a << " < " << r.b << "\n";
  return os.str();
}

}  // namespace esprio
