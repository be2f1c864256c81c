#pragma once

#include "esprio/core.hpp"

namespace esprio {

enum class parse_errc : uint8_t { syntax_error, variant_mismatch, duplicate_event };

const char* parse_errc_code(parse_errc c);

struct parse_issue {
  parse_errc code;
  std::string message;
  int line = 0, col = 0;
};

struct parse_result {
  std::optional<raw_document> doc;  // set iff issues is empty
  std::vector<parse_issue> issues;
};

// Line-oriented format, '#' starts a comment:
//   es <prime|bundle|ebundle|dual>
//   event <id> [: <label>]
//   conflict <a> <b>
//   enable <a> -> <b>
//   bundle { <a>, <b>, ... } -> <c>
//   disable <a> ~> <b>        a ~> b reads: b disables a, so a never follows b
//   priority <a> < <b>        a < b reads: b has the higher priority
// A label equal to the id is stored as empty (the default).
parse_result parse(std::string_view text);

// Canonical text, declaration order preserved; parse(render(d)) == d for
// every d produced by parse.
std::string render(const raw_document& doc);

}  // namespace esprio
