#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace esprio {

using event_id = uint32_t;

// Events of one structure are interned as indices 0..n-1 in lexicographic
// id order, so "ascending index" and "ascending id" coincide everywhere.
struct event_set {
  uint64_t bits = 0;

  static constexpr uint32_t capacity = 64;

  static event_set single(event_id e) {
    assert(e < capacity);
    return {uint64_t{1} << e};
  }
  static event_set first_n(uint32_t n) {
    return {n >= capacity ? ~uint64_t{0} : (uint64_t{1} << n) - 1};
  }

  bool contains(event_id e) const { return bits >> e & 1; }
  bool empty() const { return bits == 0; }
  uint32_t size() const { return static_cast<uint32_t>(std::popcount(bits)); }
  bool subset_of(event_set o) const { return (bits & ~o.bits) == 0; }
  bool intersects(event_set o) const { return (bits & o.bits) != 0; }

  void insert(event_id e) { bits |= uint64_t{1} << e; }
  void erase(event_id e) { bits &= ~(uint64_t{1} << e); }

  friend event_set operator|(event_set a, event_set b) { return {a.bits | b.bits}; }
  friend event_set operator&(event_set a, event_set b) { return {a.bits & b.bits}; }
  friend event_set operator-(event_set a, event_set b) { return {a.bits & ~b.bits}; }
  event_set& operator|=(event_set o) { bits |= o.bits; return *this; }
  event_set& operator&=(event_set o) { bits &= o.bits; return *this; }
  bool operator==(const event_set&) const = default;

  struct iterator {
    uint64_t rest;
    event_id operator*() const { return static_cast<event_id>(std::countr_zero(rest)); }
    iterator& operator++() { rest &= rest - 1; return *this; }
    bool operator!=(const iterator& o) const { return rest != o.rest; }
  };
  iterator begin() const { return {bits}; }
  iterator end() const { return {0}; }
};

// Orders sets by their ascending member sequence, shorter prefixes first,
// which matches sorting the rendered "{a, b, ...}" strings.
bool set_lex_less(event_set a, event_set b);

enum class variant : uint8_t { prime, bundle, ebundle, dual };

const char* variant_name(variant v);
std::optional<variant> variant_from_name(std::string_view s);

struct bundle {
  event_set members;
  event_id target;
  bool operator==(const bundle&) const = default;
};

// (cause, effect) generator of the enabling order: cause < effect.
struct enabling_pair {
  event_id cause, effect;
  bool operator==(const enabling_pair&) const = default;
};

// disabled ~> disabler: once the disabler occurs, the disabled event is
// permanently out; hence the disabled event never follows its disabler.
struct disabling_pair {
  event_id disabled, disabler;
  bool operator==(const disabling_pair&) const = default;
};

// low < high: when both are enabled together, high must occur first.
struct priority_pair {
  event_id low, high;
  bool operator==(const priority_pair&) const = default;
  auto operator<=>(const priority_pair&) const = default;
};

// Parsed declarations, unresolved and unchecked. Line/col are 1-based
// source positions, 0 when built by hand.
struct raw_event {
  std::string id;
  std::string label;  // empty means "same as id"
  int line = 0, col = 0;
};
struct raw_rel {
  std::string a, b;
  int line = 0, col = 0;
};
struct raw_bundle {
  std::vector<std::string> members;
  std::string target;
  int line = 0, col = 0;
};

struct raw_document {
  variant kind = variant::prime;
  std::vector<raw_event> events;
  std::vector<raw_rel> conflicts;    // conflict a b (unordered)
  std::vector<raw_rel> enablings;    // enable a -> b
  std::vector<raw_bundle> bundles;   // bundle { a, b } -> c
  std::vector<raw_rel> disablings;   // disable a ~> b
  std::vector<raw_rel> priorities;   // priority a < b
};

// Content comparison ignoring source positions.
bool raw_equal(const raw_document& a, const raw_document& b);

struct structure {
  variant kind = variant::prime;
  std::vector<std::string> ids;     // sorted; event_id is the index
  std::vector<std::string> labels;

  std::vector<event_set> conflict;       // symmetric, irreflexive
  std::vector<enabling_pair> enabling;   // declared generators, deduped, sorted
  std::vector<event_set> pred;           // strict enabling predecessors, closed
  std::vector<event_set> succ;           // inverse of pred
  std::vector<bundle> bundles;           // sorted by (target, members)
  std::vector<std::vector<uint32_t>> bundles_of;  // indices into bundles, per target
  std::vector<disabling_pair> disabling; // deduped, sorted
  std::vector<event_set> killers;        // killers[e] = {y | e ~> y}
  std::vector<priority_pair> priority;   // deduped, sorted
  std::vector<event_set> lower_than;     // lower_than[h] = {l | l < h}
  std::vector<event_set> higher_than;    // higher_than[l] = {h | l < h}

  uint32_t size() const { return static_cast<uint32_t>(ids.size()); }
  event_set universe() const { return event_set::first_n(size()); }
  std::optional<event_id> find(std::string_view id) const;
  const std::string& name(event_id e) const { return ids[e]; }

  // Same structure with the priority relation replaced (lookup masks rebuilt).
  structure with_priority(std::vector<priority_pair> prio) const;
};

enum class violation_kind : uint8_t {
  unknown_event,
  duplicate_event,
  reflexive_conflict,
  reflexive_disabling,
  conflict_heredity,
  stability,
  enabling_cycle,
  priority_cycle,
  self_targeting_bundle,
  empty_bundle,
  variant_mismatch,
};

const char* violation_code(violation_kind k);

struct violation {
  violation_kind kind;
  std::string detail;
  int line = 0, col = 0;
};

struct validation_report {
  std::vector<violation> items;
  bool ok() const { return items.empty(); }
};

struct validated {
  std::optional<structure> es;  // set iff report.ok()
  validation_report report;
};

// Resolves names, dedupes relations, materializes the enabling closure and
// checks every structural constraint, collecting all violations.
validated validate(const raw_document& raw);

// Unique transitive reduction of the strict enabling order (prime only;
// empty for other variants). The priority relation has no counterpart:
// it is intentionally rendered pair for pair.
std::vector<enabling_pair> transitive_reduction_view(const structure& es);

// Errors raised by semantic operations downstream of validation.
enum class op_errc : uint8_t {
  not_a_trace,
  not_a_configuration,
  unknown_event,
  size_limit_exceeded,
  variant_unsupported,
  event_set_mismatch,
  invalid_cause_choice,
};

const char* op_errc_code(op_errc c);

struct op_error : std::runtime_error {
  op_errc code;
  op_error(op_errc c, const std::string& what)
      : std::runtime_error(what), code(c) {}
};

}  // namespace esprio
