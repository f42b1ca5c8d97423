#pragma once

#include <string>

#include "cloneforge/closure.hpp"
#include "cloneforge/operation.hpp"
#include "cloneforge/relation.hpp"

namespace cloneforge {

// Largest domain for which conjugation orbits are enumerated exhaustively.
inline constexpr int kMaxCanonicalDomain = 6;

// Lexicographically least serialization over all k! conjugations. Two values
// of the same kind are similar exactly when their keys agree. Throws
// DomainTooLarge for k > 6.
std::string canonical_key(const Operation& f);
std::string canonical_key(const Relation& rho);
// Keyed on the set of tables of the part.
std::string canonical_key(const ClonePart& part);

// Plain serialization used by the keys (identity conjugation).
std::string serialize(const Operation& f);
std::string serialize(const Relation& rho);

// Lowercase hex rendering of a key, for reports.
std::string to_hex(const std::string& bytes);

}  // namespace cloneforge
