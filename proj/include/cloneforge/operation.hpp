#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cloneforge {

// Elements of the domain {0, ..., k-1}.
using Value = std::uint8_t;

// Largest domain size accepted anywhere in the library. Deciders impose
// tighter limits of their own.
inline constexpr int kMaxDomainSize = 16;

// k^n, throwing BadArity when the result would not fit a table index.
std::size_t table_length(int k, int n);

// A total finitary operation on {0, ..., k-1} stored as a flat value table.
//
// The table is indexed mixed-radix with the first argument most significant:
// f(a_1, ..., a_n) lives at index a_1*k^(n-1) + ... + a_n. Variable positions
// in the public API are 1-based, matching the usual pr_i^(n) notation.
class Operation {
 public:
  Operation(int k, int arity, std::vector<Value> table);

  int k() const noexcept { return k_; }
  int arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return table_.size(); }
  std::span<const Value> table() const noexcept { return table_; }
  Value at(std::size_t index) const noexcept { return table_[index]; }

  // Checked evaluation.
  Value operator()(std::span<const Value> args) const;

  friend bool operator==(const Operation&, const Operation&) = default;
  friend std::strong_ordering operator<=>(const Operation& a, const Operation& b);

 private:
  int k_;
  int arity_;
  std::vector<Value> table_;
};

// Validating constructor from plain integers (LengthMismatch, ValueOutOfRange,
// BadArity).
Operation make_operation(int k, int arity, std::span<const int> table);

// pr_i^(n) on {0..k-1}; i is 1-based.
Operation projection(int k, int n, int i);

// Constant unary operation with value c.
Operation constant(int k, Value c);

// Checked evaluation from plain integers (ArityMismatch, ValueOutOfRange).
Value eval(const Operation& f, std::span<const int> args);

// The m-ary superposition f(g_1, ..., g_n); all g_i share arity m and k.
Operation compose(const Operation& f, std::span<const Operation> gs);

// g(x_1..x_t) = f(x_{var_map[0]}, ..., x_{var_map[n-1]}), positions 1-based.
Operation minor(const Operation& f, std::span<const int> var_map, int target_arity);

struct Analysis {
  std::optional<int> projection_index;  // 1-based
  bool idempotent = false;
  bool surjective = false;
  std::vector<int> essential_vars;  // 1-based, ascending

  friend bool operator==(const Analysis&, const Analysis&) = default;
};

Analysis analyze(const Operation& f);

// True iff f depends on variable `var` (1-based).
bool depends_on(const Operation& f, int var);

bool is_projection(const Operation& f);
bool is_idempotent(const Operation& f);

// f(x, ..., x) as a unary operation.
Operation diagonal(const Operation& f);

// A permutation of {0..k-1}.
class Bijection {
 public:
  explicit Bijection(std::vector<Value> images);
  static Bijection identity(int k);

  int k() const noexcept { return static_cast<int>(images_.size()); }
  Value operator()(Value x) const noexcept { return images_[x]; }
  std::span<const Value> images() const noexcept { return images_; }
  Bijection inverse() const;
  // (a * b)(x) = a(b(x))
  friend Bijection operator*(const Bijection& a, const Bijection& b);
  friend bool operator==(const Bijection&, const Bijection&) = default;

 private:
  std::vector<Value> images_;
};

// All k! bijections in lexicographic order of their image sequences.
std::vector<Bijection> all_bijections(int k);

// ^pi f (x_1..x_n) = pi(f(pi^-1 x_1, ..., pi^-1 x_n)).
Operation conjugate(const Operation& f, const Bijection& pi);

// A nonempty family of operations over one domain.
class OperationSet {
 public:
  OperationSet(int k, std::vector<Operation> members);

  int k() const noexcept { return k_; }
  std::span<const Operation> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  const Operation& operator[](std::size_t i) const { return members_[i]; }

 private:
  int k_;
  std::vector<Operation> members_;
};

OperationSet conjugate(const OperationSet& set, const Bijection& pi);

// Mixed-radix helpers shared by the modules.
std::size_t encode_tuple(std::span<const Value> tuple, int k);
void decode_tuple(std::size_t index, int k, std::span<Value> out);

}  // namespace cloneforge
