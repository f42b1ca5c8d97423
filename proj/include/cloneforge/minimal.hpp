#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cloneforge/closure.hpp"
#include "cloneforge/operation.hpp"
#include "cloneforge/verdict.hpp"

namespace cloneforge {

enum class MinimalTag { unary, binary_idempotent, semiprojection, majority, minority, pixley_case };

std::string_view to_string(MinimalTag tag);

struct MinimalType {
  MinimalTag tag = MinimalTag::unary;
  int arity = 0;
  int target = 0;  // semiprojection variable, 1-based

  friend bool operator==(const MinimalType&, const MinimalType&) = default;
};

std::string to_string(const MinimalType& t);

// Shape of an operation whose lower-arity minors are all projections:
// unary, binary idempotent, or (arity >= 3) minors-trivial. Throws
// NotMinorsTrivial when some identification is not a projection (or g is a
// projection) and SwierczkowskiViolation for arity >= 4 when the projection
// targets disagree.
MinimalType classify_minimal_type(const Operation& g);

// For a minority operation: the group x + y := f(x, 0, y) when it is an
// elementary abelian 2-group with f(x, y, z) = x + y + z; throws NotMinority.
std::optional<std::vector<std::vector<Value>>> detect_boolean_group_sum(const Operation& f);

// Lexicographically least non-projection of least arity in Clo(f).
Verdict minimal_arity_witness(const Operation& f, std::size_t cap = kDefaultCap);

enum class MinimalityPath { unary_monoid, minority_theorem, majority_3_minimal, theorem_fast_path, bounded_search };

std::string_view to_string(MinimalityPath path);

struct MinimalityReport {
  Verdict verdict;
  MinimalityPath path = MinimalityPath::bounded_search;
  // Operation the decision was made for; generates the same clone as the input.
  std::optional<Operation> reduced;
  // For no-verdicts: a member of the clone that does not generate it back.
  std::optional<Operation> witness;
  int n_max = 0;
  bool exact = false;  // n_max >= max(3, k)
  std::string rule;    // fast-path name or search summary
};

// Decides whether Clo(f) is a minimal clone. f must not be a projection.
MinimalityReport is_minimal_clone(const Operation& f, int n_max, std::size_t cap = kDefaultCap);

// The generic procedure: every unary non-identity, binary idempotent
// non-projection and minors-trivial member of arity <= n_max must generate g.
// Exact when n_max >= max(3, k). g must be the least-arity non-projection
// of its clone (not checked).
MinimalityReport bounded_minimality_search(const Operation& g, int n_max, std::size_t cap = kDefaultCap);

// Minimality of the clone of a majority operation via its ternary part.
MinimalityReport majority_minimality(const Operation& g, std::size_t cap = kDefaultCap);

struct EnumerationClass {
  MinimalTag tag = MinimalTag::unary;
  Operation representative;  // lexicographically least candidate generator
  std::size_t clones = 0;
  std::size_t ternary_part_size = 0;
  std::string key;  // canonical key of the ternary part (hex)
};

struct EnumerationReport {
  int k = 0;
  std::size_t candidates = 0;
  std::size_t total_clones = 0;
  std::size_t similarity_classes = 0;
  std::vector<EnumerationClass> classes;  // ordered by tag, then key
  std::vector<Operation> clone_generators;  // one per clone, sorted

  std::size_t classes_of(MinimalTag tag) const;
  std::size_t clones_of(MinimalTag tag) const;
};

// Census of all minimal clones on a k-element set, k in {2, 3}. Throws
// Inconclusive if any candidate's decision is cut off by the cap.
EnumerationReport enumerate_minimal_clones(int k, std::size_t cap = kDefaultCap, int threads = 1);

// Candidate generators used by the census, in deterministic order.
std::vector<Operation> minimal_clone_candidates(int k);

// Conservative operations: Csákány's criteria for binary and majority
// operations, the bitransitive-restriction condition plus a bounded search
// for semiprojections.
Verdict conservative_minimal_check(const Operation& f, std::size_t cap = kDefaultCap);

// An idempotent 4-ary t in Clo(F) with t(r,a,r,e) = t(a,r,e,a).
Verdict has_taylor_witness(const OperationSet& F, std::size_t cap = kDefaultCap);

// Type A essential minimality of the clone generated by a non-idempotent f.
Verdict essential_minimality_typeA(const Operation& f, std::size_t cap = kDefaultCap);

struct GammaData {
  Operation star;             // f*(x) = f(x, ..., x)
  std::vector<Value> gamma;   // largest set on which f* permutes
};
GammaData gamma_of(const Operation& f);

// Restriction of f to a subset closed under f, relabelled 0..|B|-1 in
// increasing order. Throws PreconditionFailed if B is not closed.
Operation restrict_to(const Operation& f, const std::vector<Value>& subset);

Verdict clones_equal(const Operation& f, const Operation& g, std::size_t cap = kDefaultCap);
Verdict clones_similar(const Operation& f, const Operation& g, std::size_t cap = kDefaultCap);

}  // namespace cloneforge
