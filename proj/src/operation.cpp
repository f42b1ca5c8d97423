#include "cloneforge/operation.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "cloneforge/error.hpp"

namespace cloneforge {

namespace {

void check_domain(int k) {
  if (k < 1 || k > kMaxDomainSize) {
    throw Error(ErrorCode::DomainTooLarge, "domain size " + std::to_string(k) + " outside 1.." +
                                               std::to_string(kMaxDomainSize));
  }
}

}  // namespace

std::size_t table_length(int k, int n) {
  check_domain(k);
  if (n < 0) throw Error(ErrorCode::BadArity, "negative arity");
  constexpr std::size_t limit = std::size_t{1} << 32;
  std::size_t len = 1;
  for (int i = 0; i < n; ++i) {
    len *= static_cast<std::size_t>(k);
    if (len > limit) throw Error(ErrorCode::BadArity, "table for arity " + std::to_string(n) + " too large");
  }
  return len;
}

std::size_t encode_tuple(std::span<const Value> tuple, int k) {
  std::size_t index = 0;
  for (Value v : tuple) index = index * static_cast<std::size_t>(k) + v;
  return index;
}

void decode_tuple(std::size_t index, int k, std::span<Value> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<Value>(index % static_cast<std::size_t>(k));
    index /= static_cast<std::size_t>(k);
  }
}

Operation::Operation(int k, int arity, std::vector<Value> table)
    : k_(k), arity_(arity), table_(std::move(table)) {
  check_domain(k);
  if (arity < 1) throw Error(ErrorCode::BadArity, "arity must be at least 1");
  const std::size_t expected = table_length(k, arity);
  if (table_.size() != expected) {
    throw Error(ErrorCode::LengthMismatch, "table has " + std::to_string(table_.size()) +
                                               " entries, expected " + std::to_string(expected));
  }
  for (Value v : table_) {
    if (v >= k) throw Error(ErrorCode::ValueOutOfRange, "table entry " + std::to_string(v) + " >= k");
  }
}

std::strong_ordering operator<=>(const Operation& a, const Operation& b) {
  if (auto c = a.k_ <=> b.k_; c != 0) return c;
  if (auto c = a.arity_ <=> b.arity_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.table_.begin(), a.table_.end(), b.table_.begin(),
                                                b.table_.end());
}

Value Operation::operator()(std::span<const Value> args) const {
  if (static_cast<int>(args.size()) != arity_) {
    throw Error(ErrorCode::ArityMismatch, "expected " + std::to_string(arity_) + " arguments");
  }
  for (Value a : args) {
    if (a >= k_) throw Error(ErrorCode::ValueOutOfRange, "argument " + std::to_string(a) + " >= k");
  }
  return table_[encode_tuple(args, k_)];
}

Operation make_operation(int k, int arity, std::span<const int> table) {
  if (arity < 1) throw Error(ErrorCode::BadArity, "arity must be at least 1");
  check_domain(k);
  std::vector<Value> values;
  values.reserve(table.size());
  for (int v : table) {
    if (v < 0 || v >= k) throw Error(ErrorCode::ValueOutOfRange, "table entry " + std::to_string(v));
    values.push_back(static_cast<Value>(v));
  }
  return Operation(k, arity, std::move(values));
}

Operation projection(int k, int n, int i) {
  if (n < 1) throw Error(ErrorCode::BadArity, "projection arity must be at least 1");
  if (i < 1 || i > n) throw Error(ErrorCode::BadIndex, "projection index " + std::to_string(i));
  const std::size_t len = table_length(k, n);
  const std::size_t stride = table_length(k, n - i);
  std::vector<Value> table(len);
  for (std::size_t idx = 0; idx < len; ++idx) table[idx] = static_cast<Value>((idx / stride) % k);
  return Operation(k, n, std::move(table));
}

Operation constant(int k, Value c) {
  return Operation(k, 1, std::vector<Value>(static_cast<std::size_t>(k), c));
}

Value eval(const Operation& f, std::span<const int> args) {
  if (static_cast<int>(args.size()) != f.arity()) {
    throw Error(ErrorCode::ArityMismatch, "expected " + std::to_string(f.arity()) + " arguments");
  }
  std::vector<Value> vals;
  for (int a : args) {
    if (a < 0 || a >= f.k()) throw Error(ErrorCode::ValueOutOfRange, "argument " + std::to_string(a));
    vals.push_back(static_cast<Value>(a));
  }
  return f(vals);
}

Operation compose(const Operation& f, std::span<const Operation> gs) {
  if (static_cast<int>(gs.size()) != f.arity()) {
    throw Error(ErrorCode::ArityMismatch, "compose needs " + std::to_string(f.arity()) + " inner operations");
  }
  const int m = gs.front().arity();
  for (const auto& g : gs) {
    if (g.k() != f.k()) throw Error(ErrorCode::DomainMismatch, "inner operation on a different domain");
    if (g.arity() != m) throw Error(ErrorCode::ArityMismatch, "inner operations must share arity");
  }
  const std::size_t len = gs.front().size();
  std::vector<Value> table(len);
  for (std::size_t idx = 0; idx < len; ++idx) {
    std::size_t outer = 0;
    for (const auto& g : gs) outer = outer * static_cast<std::size_t>(f.k()) + g.at(idx);
    table[idx] = f.at(outer);
  }
  return Operation(f.k(), m, std::move(table));
}

Operation minor(const Operation& f, std::span<const int> var_map, int target_arity) {
  if (static_cast<int>(var_map.size()) != f.arity()) {
    throw Error(ErrorCode::BadMap, "variable map must cover all " + std::to_string(f.arity()) + " positions");
  }
  if (target_arity < 1) throw Error(ErrorCode::BadMap, "target arity must be at least 1");
  for (int t : var_map) {
    if (t < 1 || t > target_arity) throw Error(ErrorCode::BadMap, "map target " + std::to_string(t));
  }
  const int k = f.k();
  const std::size_t len = table_length(k, target_arity);
  std::vector<Value> args(static_cast<std::size_t>(target_arity));
  std::vector<Value> table(len);
  for (std::size_t idx = 0; idx < len; ++idx) {
    decode_tuple(idx, k, args);
    std::size_t inner = 0;
    for (int t : var_map) inner = inner * static_cast<std::size_t>(k) + args[static_cast<std::size_t>(t - 1)];
    table[idx] = f.at(inner);
  }
  return Operation(k, target_arity, std::move(table));
}

bool depends_on(const Operation& f, int var) {
  if (var < 1 || var > f.arity()) throw Error(ErrorCode::BadIndex, "variable " + std::to_string(var));
  const std::size_t k = static_cast<std::size_t>(f.k());
  const std::size_t stride = table_length(f.k(), f.arity() - var);
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    const std::size_t digit = (idx / stride) % k;
    if (digit != 0) continue;
    const Value base = f.at(idx);
    for (std::size_t d = 1; d < k; ++d) {
      if (f.at(idx + d * stride) != base) return true;
    }
  }
  return false;
}

bool is_projection(const Operation& f) {
  for (int i = 1; i <= f.arity(); ++i) {
    if (f == projection(f.k(), f.arity(), i)) return true;
  }
  return false;
}

Operation diagonal(const Operation& f) {
  const std::size_t k = static_cast<std::size_t>(f.k());
  std::size_t step = 0;
  for (int i = 0; i < f.arity(); ++i) step = step * k + 1;
  std::vector<Value> table(k);
  for (std::size_t x = 0; x < k; ++x) table[x] = f.at(x * step);
  return Operation(f.k(), 1, std::move(table));
}

bool is_idempotent(const Operation& f) {
  const Operation d = diagonal(f);
  for (int x = 0; x < f.k(); ++x) {
    if (d.at(static_cast<std::size_t>(x)) != x) return false;
  }
  return true;
}

Analysis analyze(const Operation& f) {
  Analysis a;
  for (int i = 1; i <= f.arity(); ++i) {
    if (f == projection(f.k(), f.arity(), i)) {
      a.projection_index = i;
      break;
    }
  }
  a.idempotent = is_idempotent(f);
  std::vector<bool> seen(static_cast<std::size_t>(f.k()), false);
  for (Value v : f.table()) seen[v] = true;
  a.surjective = std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  for (int i = 1; i <= f.arity(); ++i) {
    if (depends_on(f, i)) a.essential_vars.push_back(i);
  }
  return a;
}

Bijection::Bijection(std::vector<Value> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Value v : images_) {
    if (v >= images_.size() || seen[v]) throw Error(ErrorCode::BadParams, "images do not form a bijection");
    seen[v] = true;
  }
}

Bijection Bijection::identity(int k) {
  std::vector<Value> images(static_cast<std::size_t>(k));
  std::iota(images.begin(), images.end(), Value{0});
  return Bijection(std::move(images));
}

Bijection Bijection::inverse() const {
  std::vector<Value> inv(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) inv[images_[x]] = static_cast<Value>(x);
  return Bijection(std::move(inv));
}

Bijection operator*(const Bijection& a, const Bijection& b) {
  if (a.k() != b.k()) throw Error(ErrorCode::DomainMismatch, "bijections on different domains");
  std::vector<Value> images(b.images_.size());
  for (std::size_t x = 0; x < images.size(); ++x) images[x] = a.images_[b.images_[x]];
  return Bijection(std::move(images));
}

std::vector<Bijection> all_bijections(int k) {
  std::vector<Value> images(static_cast<std::size_t>(k));
  std::iota(images.begin(), images.end(), Value{0});
  std::vector<Bijection> out;
  do {
    out.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

Operation conjugate(const Operation& f, const Bijection& pi) {
  if (pi.k() != f.k()) throw Error(ErrorCode::DomainMismatch, "bijection and operation on different domains");
  const int k = f.k();
  const Bijection inv = pi.inverse();
  std::vector<Value> args(static_cast<std::size_t>(f.arity()));
  std::vector<Value> table(f.size());
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    decode_tuple(idx, k, args);
    for (auto& a : args) a = inv(a);
    table[idx] = pi(f.at(encode_tuple(args, k)));
  }
  return Operation(k, f.arity(), std::move(table));
}

OperationSet::OperationSet(int k, std::vector<Operation> members) : k_(k), members_(std::move(members)) {
  for (const auto& f : members_) {
    if (f.k() != k_) throw Error(ErrorCode::DomainMismatch, "operation set mixes domain sizes");
  }
}

OperationSet conjugate(const OperationSet& set, const Bijection& pi) {
  std::vector<Operation> out;
  out.reserve(set.size());
  for (const auto& f : set.members()) out.push_back(conjugate(f, pi));
  return OperationSet(set.k(), std::move(out));
}

}  // namespace cloneforge
