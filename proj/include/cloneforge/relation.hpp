#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cloneforge/operation.hpp"

namespace cloneforge {

// A finitary relation on {0..k-1}: a duplicate-free set of m-tuples kept in
// lexicographic order. Small relations also carry a membership bitmap indexed
// by the mixed-radix code of a tuple.
class Relation {
 public:
  Relation(int k, int arity, std::vector<std::vector<Value>> tuples);
  // `flat` holds the tuples back to back; order and duplicates are irrelevant.
  static Relation from_flat(int k, int arity, std::vector<Value> flat);

  int k() const noexcept { return k_; }
  int arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return data_.size() / static_cast<std::size_t>(arity_); }
  bool empty() const noexcept { return data_.empty(); }
  std::span<const Value> tuple(std::size_t i) const noexcept {
    return {data_.data() + i * static_cast<std::size_t>(arity_), static_cast<std::size_t>(arity_)};
  }
  std::span<const Value> flat() const noexcept { return data_; }

  bool contains(std::span<const Value> t) const;
  // Membership by mixed-radix code; only valid when has_bitmap().
  bool contains_code(std::size_t code) const noexcept { return bitmap_[code] != 0; }
  bool has_bitmap() const noexcept { return !bitmap_.empty(); }

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.k_ == b.k_ && a.arity_ == b.arity_ && a.data_ == b.data_;
  }
  friend std::strong_ordering operator<=>(const Relation& a, const Relation& b);

 private:
  Relation(int k, int arity, std::vector<Value> sorted_flat, bool);
  void build_bitmap();

  int k_;
  int arity_;
  std::vector<Value> data_;
  std::vector<std::uint8_t> bitmap_;
};

Relation make_relation(int k, int arity, const std::vector<std::vector<int>>& tuples);

Relation conjugate(const Relation& rho, const Bijection& pi);

// A^m, the full relation.
Relation full_relation(int k, int m);
// {(a, a)}.
Relation equality_relation(int k);
// Graph {(x_1..x_n, f(x))} of an operation, as an (n+1)-ary relation.
Relation graph_of(const Operation& f);
// {(x, y) : x <= y} on the chain 0 < 1 < ... < k-1.
Relation chain_order(int k);
// The unary relation given by a subset of the domain.
Relation subset_relation(int k, std::span<const Value> elements);

struct RelationProfile {
  bool diagonal = false;
  bool totally_reflexive = false;
  bool totally_symmetric = false;
  std::vector<Value> center;
  bool is_equivalence = false;
  bool is_bounded_order = false;
  std::optional<int> is_fpf_prime_permutation_graph;
  bool is_bitransitive = false;
};

RelationProfile profile(const Relation& rho);

// Individual predicates behind `profile`.
bool is_diagonal(const Relation& rho);
bool is_totally_reflexive(const Relation& rho);
bool is_totally_symmetric(const Relation& rho);
std::vector<Value> center_of(const Relation& rho);
bool is_equivalence(const Relation& rho);
bool is_partial_order(const Relation& rho);
bool is_bounded_order(const Relation& rho);
std::optional<int> fpf_prime_permutation(const Relation& rho);
bool is_bitransitive(const Relation& rho);

// f applied coordinatewise to any arity(f) tuples of rho stays in rho.
bool preserves(const Operation& f, const Relation& rho);

// Słupecki's relation: all k-tuples with a repeated entry.
Relation slupecki(int k);
// Membership in Pol(slupecki(k)) by the characterization "essentially unary
// or non-surjective"; no preservation test involved.
bool slupecki_membership(const Operation& f);

// {(a, b, c, d) : a - b + c = d} over Z_p^d, elements encoded by base-p digits
// (most significant digit first).
Relation affine_relation(int p, int d);

// f = sum M_i x_i + v over Z_p^d, decided by probing unit vectors and then
// checking the whole table. Throws BadParams unless f.k() == p^d.
bool in_affine_clone(const Operation& f, int p, int d);

// Least subset of A^d containing `generators` and closed under F
// coordinatewise.
Relation generate_subpower(const OperationSet& F, int d, const std::vector<std::vector<Value>>& generators);

// True iff d is prime (used by several constructors).
bool is_prime(int d);
// If k = p^d for a prime p, returns {p, d}.
std::optional<std::pair<int, int>> prime_power(int k);

}  // namespace cloneforge
