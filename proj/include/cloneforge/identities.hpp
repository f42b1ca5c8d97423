#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "cloneforge/operation.hpp"

namespace cloneforge {

// Identity families checked by exhaustive evaluation.
enum class Identity {
  idempotent,
  maltsev,             // p(x,x,y) = p(y,x,x) = y
  majority,            // m(x,x,y) = m(x,y,x) = m(y,x,x) = x
  minority,            // f(x,y,y) = f(y,x,y) = f(y,y,x) = x
  arithmetical,        // q(x,x,y) = q(y,x,y) = q(y,x,x) = y
  near_unanimity,      // arity >= 3, every lone dissenter is outvoted
  weak_near_unanimity, // idempotent, all lone-dissenter terms equal
  special_wnu,         // WNU with u(x..x,u(x..x,y)) = u(x..x,y)
  rare_area,           // 4-ary idempotent, t(r,a,r,e) = t(a,r,e,a)
  olsak,               // 6-ary idempotent, f(x,y,y,y,x,x) = f(y,x,y,x,y,x) = f(y,y,x,x,x,y)
  entropic,            // binary, (x.y).(u.v) = (x.u).(y.v)
  self_commuting,      // f commutes with itself
  conservative,        // f(a) is always one of the a_i
  semiprojection,      // needs the 1-based target variable
};

std::string_view to_string(Identity id);
std::optional<Identity> identity_from_string(std::string_view name);

// Throws ArityMismatch when f's arity does not fit the family and BadIndex for
// an out-of-range semiprojection target.
bool check_identities(const Operation& f, Identity family, int target = 0);

// The variable a semiprojection returns whenever two arguments coincide, or
// nothing when f is not a semiprojection (arity < 3 included).
std::optional<int> semiprojection_target(const Operation& f);

// Identifying variables i < j (1-based) gives a projection onto variable q of
// f; returns q as a position of f, or nothing if the minor is no projection.
std::optional<int> identification_target(const Operation& f, int i, int j);

// Every identification of two variables yields a projection.
bool minors_trivial(const Operation& f);

// For a minors-trivial ternary operation: for the pairs (1,2), (1,3), (2,3),
// whether the identified minor projects onto the merged variable (true) or
// onto the remaining one (false).
std::array<bool, 3> ternary_merge_pattern(const Operation& f);

}  // namespace cloneforge
