#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cloneforge/operation.hpp"
#include "cloneforge/relation.hpp"
#include "cloneforge/verdict.hpp"

namespace cloneforge {

// The six families of relations whose polymorphism clones are the maximal
// clones on a finite set, numbered as usual (1)..(6).
enum class RelationType { bounded_order = 1, fpf_prime_perm, affine, equivalence, central, h_regular };

std::string_view to_string(RelationType t);
std::optional<RelationType> relation_type_from_string(std::string_view name);

struct MaximalWitness {
  RelationType rtype = RelationType::bounded_order;
  Relation relation;
  int prime = 0;                 // cycle length (type 2) or p (type 3)
  int dimension = 0;             // d with k = p^d (type 3)
  int m = 0;                     // arity (types 5 and 6)
  std::vector<Value> center;     // type 5
  std::vector<Relation> family;  // the equivalences T (type 6)
};

// Every relation of one type on {0..k-1}, with inverse orders and powers of
// permutations merged. `m` restricts central and h-regular relations to one
// arity. Supported for 2 <= k <= 4.
std::vector<MaximalWitness> gen_type(int k, RelationType rtype, std::optional<int> m = std::nullopt);

// One witness per maximal clone on {0..k-1}, 2 <= k <= 4; ordered by type,
// then canonical key of the relation. Cached per k.
const std::vector<MaximalWitness>& gen_all_maximal(int k);

// The unary part of Pol(rho) as a concatenation of tables (used as the
// dedup key for k >= 3).
std::vector<Value> unary_part_key(const Relation& rho);

struct WitnessCheck {
  MaximalWitness witness;
  std::optional<Operation> violator;  // empty: F is inside Pol(relation)
};

struct CompletenessReport {
  bool complete = false;
  std::vector<WitnessCheck> per_witness;

  std::vector<const WitnessCheck*> blocking() const;
};

CompletenessReport is_complete(const OperationSet& F);

// Sheffer test: f must leave every clone of types (2), (4) and unary (5).
Verdict is_sheffer(const Operation& f);

// Completeness together with all constants: types (1), (3), (4), (6) and
// non-unary (5) must be left.
Verdict is_functionally_complete(const OperationSet& F);

// For F containing every unary operation (k >= 3): complete iff some member is
// surjective and depends on at least two variables.
Verdict slupecki_criterion(const OperationSet& F);

}  // namespace cloneforge
