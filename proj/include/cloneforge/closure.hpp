#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cloneforge/operation.hpp"
#include "cloneforge/relation.hpp"
#include "cloneforge/verdict.hpp"

namespace cloneforge {

inline constexpr std::size_t kDefaultCap = 200000;

// The n-ary part of the clone generated by a set of operations, possibly
// truncated by a cap on the number of tables.
struct ClonePart {
  int k = 0;
  int arity = 0;
  std::vector<Operation> ops;  // sorted ascending
  bool closed = false;
  bool cap_hit = false;
  std::uint64_t generator_fingerprint = 0;

  bool contains(const Operation& f) const;
  std::size_t size() const noexcept { return ops.size(); }
};

// Order-independent hash of a generating set.
std::uint64_t fingerprint(const OperationSet& F);

// Stratified closure: start from the n projections (plus `extra_seeds`, which
// must already belong to the clone), apply every generator to every tuple of
// members until nothing new appears or more than `cap` tables exist.
ClonePart clone_part(const OperationSet& F, int n, std::size_t cap = kDefaultCap);

// Outcome of a streaming search through a clone part.
struct PartSearch {
  enum class Outcome { found, closed, cap_hit };
  Outcome outcome = Outcome::closed;
  std::optional<Operation> found;
  std::size_t explored = 0;  // tables generated, projections included
};

// Streams the members of clone_part(F, n, cap) in generation order
// (projections and seeds first) and stops at the first one satisfying `pred`.
PartSearch search_part(const OperationSet& F, int n, std::size_t cap,
                       const std::function<bool(const Operation&)>& pred,
                       const std::vector<Operation>& extra_seeds = {});

// Membership of target in Clo(F), decided inside the arity(target) part.
Verdict generates(const OperationSet& F, const Operation& target, std::size_t cap = kDefaultCap);

// Clo(F) is the clone of all operations, decided from generated tables only.
// Supported for k <= 3.
bool complete_bruteforce(const OperationSet& F);

struct PartStatistics {
  std::size_t size = 0;
  std::size_t non_projections = 0;
  std::size_t majority_count = 0;
  std::size_t semiprojection_count = 0;
  std::size_t minority_count = 0;
  bool closed = false;
  bool cap_hit = false;
};

PartStatistics part_statistics(const OperationSet& F, int n, std::size_t cap = kDefaultCap);
PartStatistics statistics_of(const ClonePart& part);

// All n-ary operations preserving every relation in `rels`, by filtering the
// complete list of k^(k^n) tables. Throws CapExceeded when that list is longer
// than `cap`.
ClonePart pol_part(const std::vector<Relation>& rels, int n, std::size_t cap = kDefaultCap);

// Enumerates every n-ary table on k elements in index order; the visitor
// returns true to stop early.
void for_each_operation(int k, int n, const std::function<bool(const Operation&)>& visit);

}  // namespace cloneforge
