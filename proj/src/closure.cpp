#include "cloneforge/closure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cloneforge/error.hpp"
#include "cloneforge/identities.hpp"
#include "cloneforge/subuniverse.hpp"

namespace cloneforge {

namespace {

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t byte) {
  h ^= byte;
  return h * 0x100000001b3ull;
}

std::uint64_t hash_operation(const Operation& f) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  h = fnv1a(h, static_cast<std::uint64_t>(f.k()));
  h = fnv1a(h, static_cast<std::uint64_t>(f.arity()));
  for (Value v : f.table()) h = fnv1a(h, v);
  return h;
}

Operation row_to_operation(int k, int n, std::span<const Value> row) {
  return Operation(k, n, std::vector<Value>(row.begin(), row.end()));
}

SubuniverseClosure make_closure(const OperationSet& F, int n, const std::vector<Operation>& extra_seeds) {
  if (n < 1) throw Error(ErrorCode::BadArity, "part arity must be at least 1");
  const std::size_t len = table_length(F.k(), n);
  SubuniverseClosure closure(F.k(), len, std::vector<Operation>(F.members().begin(), F.members().end()));
  for (int i = 1; i <= n; ++i) closure.add_seed(projection(F.k(), n, i).table());
  for (const auto& s : extra_seeds) {
    if (s.k() != F.k() || s.arity() != n) throw Error(ErrorCode::ArityMismatch, "seed does not match the part");
    closure.add_seed(s.table());
  }
  return closure;
}

}  // namespace

bool ClonePart::contains(const Operation& f) const { return std::binary_search(ops.begin(), ops.end(), f); }

std::uint64_t fingerprint(const OperationSet& F) {
  std::vector<std::uint64_t> hashes;
  for (const auto& f : F.members()) hashes.push_back(hash_operation(f));
  std::sort(hashes.begin(), hashes.end());
  hashes.erase(std::unique(hashes.begin(), hashes.end()), hashes.end());
  std::uint64_t h = 0xcbf29ce484222325ull ^ static_cast<std::uint64_t>(F.k());
  for (auto x : hashes) {
    for (int b = 0; b < 8; ++b) h = fnv1a(h, (x >> (8 * b)) & 0xff);
  }
  return h;
}

ClonePart clone_part(const OperationSet& F, int n, std::size_t cap) {
  auto closure = make_closure(F, n, {});
  const auto status = closure.run(cap);
  ClonePart part;
  part.k = F.k();
  part.arity = n;
  part.closed = status == SubuniverseClosure::Status::closed;
  part.cap_hit = status == SubuniverseClosure::Status::cap_hit;
  part.generator_fingerprint = fingerprint(F);
  const auto& rows = closure.rows();
  part.ops.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) part.ops.push_back(row_to_operation(F.k(), n, rows.row(i)));
  std::sort(part.ops.begin(), part.ops.end());
  return part;
}

PartSearch search_part(const OperationSet& F, int n, std::size_t cap,
                       const std::function<bool(const Operation&)>& pred,
                       const std::vector<Operation>& extra_seeds) {
  auto closure = make_closure(F, n, extra_seeds);
  PartSearch result;
  const auto& rows = closure.rows();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Operation f = row_to_operation(F.k(), n, rows.row(i));
    if (pred(f)) {
      result.outcome = PartSearch::Outcome::found;
      result.found = std::move(f);
      result.explored = rows.size();
      return result;
    }
  }
  const auto status = closure.run(cap, [&](std::size_t id) {
    Operation f = row_to_operation(F.k(), n, rows.row(id));
    if (!pred(f)) return false;
    result.found = std::move(f);
    return true;
  });
  result.explored = closure.size();
  switch (status) {
    case SubuniverseClosure::Status::stopped:
      result.outcome = PartSearch::Outcome::found;
      break;
    case SubuniverseClosure::Status::closed:
      result.outcome = PartSearch::Outcome::closed;
      break;
    case SubuniverseClosure::Status::cap_hit:
      result.outcome = PartSearch::Outcome::cap_hit;
      break;
  }
  return result;
}

Verdict generates(const OperationSet& F, const Operation& target, std::size_t cap) {
  if (F.k() != target.k()) throw Error(ErrorCode::DomainMismatch, "target on a different domain");
  const auto search = search_part(F, target.arity(), cap, [&](const Operation& f) { return f == target; });
  switch (search.outcome) {
    case PartSearch::Outcome::found: {
      Verdict v = make_verdict(Answer::yes, "target belongs to the generated clone");
      v.certificate.operations.push_back(target);
      return v;
    }
    case PartSearch::Outcome::closed:
      return make_verdict(Answer::no, "part of the target's arity closed without the target (" +
                                          std::to_string(search.explored) + " tables)");
    case PartSearch::Outcome::cap_hit:
      break;
  }
  Verdict v = make_verdict(Answer::unknown, "cap reached before the target appeared");
  v.certificate.assumptions.push_back("cap=" + std::to_string(cap));
  return v;
}

bool complete_bruteforce(const OperationSet& F) {
  const int k = F.k();
  if (k > 3) throw Error(ErrorCode::DomainTooLarge, "brute-force completeness is limited to k <= 3");
  if (F.empty()) throw Error(ErrorCode::EmptySet, "empty generating set");
  constexpr std::size_t unlimited = static_cast<std::size_t>(-1);
  // A clone missing some unary operation is certainly not everything.
  const ClonePart unary = clone_part(F, 1, unlimited);
  if (unary.size() != table_length(k, k)) return false;
  // Every operation is a term in binary ones, and the binary part of the full
  // clone is reached exactly when all k^(k^2) tables have been generated.
  std::vector<Operation> seeds;
  for (const auto& u : unary.ops) {
    const int map[1] = {1};
    seeds.push_back(minor(u, map, 2));
  }
  // The unary maps and the binary minors of the generators lie in Clo(F), so
  // adding them as operations leaves the closure unchanged; they are cheap to
  // apply and reach saturation much sooner than the generators alone.
  std::vector<Operation> ops(F.members().begin(), F.members().end());
  ops.insert(ops.end(), unary.ops.begin(), unary.ops.end());
  for (const auto& f : F.members()) {
    if (f.arity() < 3) continue;
    std::vector<int> map(static_cast<std::size_t>(f.arity()));
    const std::size_t maps = table_length(2, f.arity());
    for (std::size_t m = 0; m < maps; ++m) {
      for (int i = 0; i < f.arity(); ++i) map[static_cast<std::size_t>(i)] = static_cast<int>((m >> i) & 1u) + 1;
      ops.push_back(minor(f, map, 2));
    }
  }
  std::sort(ops.begin(), ops.end());
  ops.erase(std::unique(ops.begin(), ops.end()), ops.end());
  std::stable_sort(ops.begin(), ops.end(), [](const Operation& a, const Operation& b) { return a.arity() < b.arity(); });
  const std::size_t total = table_length(k, k * k);
  const auto search =
      search_part(OperationSet(k, ops), 2, unlimited, [](const Operation&) { return false; }, seeds);
  return search.explored == total;
}

PartStatistics part_statistics(const OperationSet& F, int n, std::size_t cap) {
  return statistics_of(clone_part(F, n, cap));
}

PartStatistics statistics_of(const ClonePart& part) {
  const int n = part.arity;
  PartStatistics s;
  s.size = part.size();
  s.closed = part.closed;
  s.cap_hit = part.cap_hit;
  for (const auto& f : part.ops) {
    if (is_projection(f)) continue;
    ++s.non_projections;
    if (n == 3) {
      s.majority_count += check_identities(f, Identity::majority) ? 1 : 0;
      s.minority_count += check_identities(f, Identity::minority) ? 1 : 0;
    }
    if (n >= 3) s.semiprojection_count += semiprojection_target(f).has_value() ? 1 : 0;
  }
  return s;
}

void for_each_operation(int k, int n, const std::function<bool(const Operation&)>& visit) {
  const std::size_t len = table_length(k, n);
  std::vector<Value> table(len, 0);
  while (true) {
    if (visit(Operation(k, n, table))) return;
    std::size_t pos = len;
    while (pos > 0) {
      --pos;
      if (++table[pos] < k) break;
      table[pos] = 0;
      if (pos == 0) return;
    }
  }
}

ClonePart pol_part(const std::vector<Relation>& rels, int n, std::size_t cap) {
  if (rels.empty()) throw Error(ErrorCode::EmptySet, "no relations given");
  const int k = rels.front().k();
  for (const auto& r : rels) {
    if (r.k() != k) throw Error(ErrorCode::DomainMismatch, "relations on different domains");
  }
  const double log_count = static_cast<double>(table_length(k, n)) * std::log2(static_cast<double>(k));
  if (log_count > std::log2(static_cast<double>(cap)) + 1e-9) {
    throw Error(ErrorCode::CapExceeded, "k^(k^n) exceeds the cap; use the closure engine instead");
  }
  ClonePart part;
  part.k = k;
  part.arity = n;
  part.closed = true;
  for_each_operation(k, n, [&](const Operation& f) {
    for (const auto& r : rels) {
      if (!preserves(f, r)) return false;
    }
    part.ops.push_back(f);
    return false;
  });
  return part;
}

}  // namespace cloneforge
