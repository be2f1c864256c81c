#pragma once

// Deterministic structure builders for the property suites. Everything is
// driven by a caller-owned engine, so a fixed seed reproduces a failure
// exactly. Events are single letters, which keeps id order and index order
// in sync.

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "esprio/core.hpp"

namespace esprio::testgen {

using engine = std::mt19937_64;

inline std::string letter(uint32_t i) { return std::string(1, static_cast<char>('a' + i)); }

inline uint32_t pick(engine& rng, uint32_t lo, uint32_t hi) {
  return std::uniform_int_distribution<uint32_t>(lo, hi)(rng);
}

inline bool chance(engine& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

inline raw_document blank(variant kind, uint32_t n) {
  raw_document doc;
  doc.kind = kind;
  for (uint32_t i = 0; i < n; i++) doc.events.push_back({letter(i), ""});
  return doc;
}

// Random PES. Conflict heredity can force new pairs all the way up to a
// reflexive one, so candidates are validated and resampled instead of
// being repaired.
inline structure random_prime(engine& rng, uint32_t max_events) {
  for (int attempt = 0; attempt < 256; attempt++) {
    uint32_t n = pick(rng, 1, max_events);
    raw_document doc = blank(variant::prime, n);
    for (uint32_t j = 1; j < n; j++)
      for (uint32_t i = 0; i < j; i++)
        if (chance(rng, 0.25)) doc.enablings.push_back({letter(i), letter(j)});
    uint32_t seeds = pick(rng, 0, n / 2 + 1);
    for (uint32_t k = 0; k < seeds; k++) {
      uint32_t i = pick(rng, 0, n - 1), j = pick(rng, 0, n - 1);
      if (i != j) doc.conflicts.push_back({letter(i), letter(j)});
    }
    validated v = validate(doc);
    if (v.es) return *std::move(v.es);
  }
  throw std::logic_error("prime generator failed to produce a valid structure");
}

// Random BES. Conflicts come from cliques and every bundle draws its
// members from a single clique, which makes stability hold by construction.
inline structure random_bundle_like(engine& rng, uint32_t max_events, variant kind) {
  uint32_t n = pick(rng, 1, max_events);
  raw_document doc = blank(kind, n);

  std::vector<std::vector<uint32_t>> cliques;
  std::vector<uint32_t> order(n);
  for (uint32_t i = 0; i < n; i++) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (size_t at = 0; at < order.size();) {
    uint32_t size = std::min<uint32_t>(pick(rng, 1, 3), static_cast<uint32_t>(order.size() - at));
    cliques.push_back({order.begin() + at, order.begin() + at + size});
    at += size;
  }
  for (const auto& clique : cliques)
    for (size_t i = 0; i < clique.size(); i++)
      for (size_t j = i + 1; j < clique.size(); j++) {
        if (kind == variant::ebundle) {
          doc.disablings.push_back({letter(clique[i]), letter(clique[j])});
          doc.disablings.push_back({letter(clique[j]), letter(clique[i])});
        } else if (kind == variant::bundle || chance(rng, 0.5)) {
          // dual keeps only some of the clique conflicts; stability is gone
          doc.conflicts.push_back({letter(clique[i]), letter(clique[j])});
        }
      }

  for (uint32_t target = 0; target < n; target++) {
    uint32_t count = chance(rng, 0.6) ? pick(rng, 1, 2) : 0;
    for (uint32_t b = 0; b < count; b++) {
      const auto& clique = cliques[pick(rng, 0, static_cast<uint32_t>(cliques.size() - 1))];
      std::vector<std::string> members;
      for (uint32_t e : clique)
        if (e != target && (kind != variant::dual || chance(rng, 0.7))) members.push_back(letter(e));
      if (kind == variant::dual && chance(rng, 0.4)) {
        // causal ambiguity: sprinkle members from outside the clique too
        uint32_t extra = pick(rng, 0, n - 1);
        if (extra != target) members.push_back(letter(extra));
      }
      if (!members.empty()) doc.bundles.push_back({members, letter(target)});
    }
  }
  if (kind == variant::ebundle) {
    uint32_t extra = pick(rng, 0, n);
    for (uint32_t k = 0; k < extra; k++) {
      uint32_t i = pick(rng, 0, n - 1), j = pick(rng, 0, n - 1);
      if (i != j) doc.disablings.push_back({letter(i), letter(j)});
    }
  }

  validated v = validate(doc);
  if (!v.es) throw std::logic_error("bundle generator produced an invalid structure");
  return *std::move(v.es);
}

inline structure random_bundle(engine& rng, uint32_t max_events) {
  return random_bundle_like(rng, max_events, variant::bundle);
}
inline structure random_ebundle(engine& rng, uint32_t max_events) {
  return random_bundle_like(rng, max_events, variant::ebundle);
}
inline structure random_dual(engine& rng, uint32_t max_events) {
  return random_bundle_like(rng, max_events, variant::dual);
}

inline structure random_structure(engine& rng, uint32_t max_events, variant kind) {
  return kind == variant::prime ? random_prime(rng, max_events)
                                : random_bundle_like(rng, max_events, kind);
}

// Random acyclic priority: pairs always point up a shuffled order.
inline std::vector<priority_pair> random_priority(engine& rng, uint32_t n, double p) {
  std::vector<uint32_t> order(n);
  for (uint32_t i = 0; i < n; i++) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<priority_pair> pairs;
  for (uint32_t i = 0; i < n; i++)
    for (uint32_t j = i + 1; j < n; j++)
      if (chance(rng, p)) pairs.push_back({order[j], order[i]});
  return pairs;
}

inline structure with_random_priority(engine& rng, const structure& es, double p = 0.3) {
  return es.with_priority(random_priority(rng, es.size(), p));
}

// Grammar-level document, not necessarily semantically valid. Exercises the
// renderer and parser round trip.
inline raw_document random_document(engine& rng) {
  static const char* pool[] = {"a", "b", "c", "go", "stop", "x1", "y2", "e'", "tau"};
  uint32_t n = pick(rng, 0, 8);
  raw_document doc;
  doc.kind = static_cast<variant>(pick(rng, 0, 3));
  std::vector<std::string> ids(std::begin(pool), std::begin(pool) + n);
  for (uint32_t i = 0; i < n; i++) {
    std::string label = chance(rng, 0.3) ? "l" + std::to_string(pick(rng, 0, 3)) : "";
    doc.events.push_back({ids[i], label});
  }
  auto any = [&]() -> std::string { return ids[pick(rng, 0, n - 1)]; };
  if (n == 0) return doc;
  uint32_t rels = pick(rng, 0, 2 * n);
  for (uint32_t k = 0; k < rels; k++) {
    switch (pick(rng, 0, 3)) {
      case 0:
        if (doc.kind != variant::ebundle) doc.conflicts.push_back({any(), any()});
        break;
      case 1:
        if (doc.kind == variant::prime) doc.enablings.push_back({any(), any()});
        break;
      case 2:
        if (doc.kind != variant::prime) {
          std::vector<std::string> members;
          uint32_t m = pick(rng, 1, 3);
          for (uint32_t i = 0; i < m; i++) members.push_back(any());
          doc.bundles.push_back({members, any()});
        }
        break;
      case 3:
        if (doc.kind == variant::ebundle) doc.disablings.push_back({any(), any()});
        break;
    }
  }
  uint32_t prios = pick(rng, 0, n);
  for (uint32_t k = 0; k < prios; k++) doc.priorities.push_back({any(), any()});
  return doc;
}

}  // namespace esprio::testgen
