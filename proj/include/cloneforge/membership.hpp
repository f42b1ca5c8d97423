#pragma once

#include <cstddef>
#include <vector>

#include "cloneforge/closure.hpp"
#include "cloneforge/operation.hpp"
#include "cloneforge/relation.hpp"
#include "cloneforge/verdict.hpp"

namespace cloneforge {

// Clone membership through subpowers: f is in Clo(F) when Clo(F) has a
// (d+1)-ary near-unanimity term and f preserves every subalgebra of A^d.
// Only subalgebras generated by at most arity(f) tuples are checked, which
// suffices. "no" is unconditional. "yes" needs the near-unanimity term: it is
// searched for in the (d+1)-ary part; when that search is cut off by the cap
// the hypothesis is recorded as an assumption, and when the part closes
// without one the answer is unknown. Requires d >= 2.
Verdict bp_membership(const Operation& f, const OperationSet& F, int d, std::size_t cap = kDefaultCap);

// Generators of all minimal clones on k elements, one per clone. Only a
// certified list (complete for its k) may be used to decide rigidity.
struct MinimalGeneratorList {
  int k = 0;
  std::vector<Operation> generators;
  bool certified = false;
};

// The census-backed list for k <= 3; throws IncompleteList otherwise.
MinimalGeneratorList certified_minimal_generators(int k, std::size_t cap = kDefaultCap, int threads = 1);

// Pol(rho) is the projection clone iff no minimal clone lies inside it, i.e.
// no listed generator preserves rho. Throws IncompleteList for an uncertified
// list or one for another domain.
bool is_rigid(const Relation& rho, const MinimalGeneratorList& list);

}  // namespace cloneforge
