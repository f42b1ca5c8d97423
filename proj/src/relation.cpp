#include "cloneforge/relation.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "cloneforge/error.hpp"
#include "cloneforge/subuniverse.hpp"

namespace cloneforge {

namespace {

constexpr std::size_t kBitmapLimit = std::size_t{1} << 22;

std::vector<Value> sort_unique_rows(std::vector<Value> flat, std::size_t m) {
  const std::size_t n = flat.size() / m;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto row_less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(flat.begin() + static_cast<std::ptrdiff_t>(a * m),
                                        flat.begin() + static_cast<std::ptrdiff_t>((a + 1) * m),
                                        flat.begin() + static_cast<std::ptrdiff_t>(b * m),
                                        flat.begin() + static_cast<std::ptrdiff_t>((b + 1) * m));
  };
  std::sort(order.begin(), order.end(), row_less);
  std::vector<Value> out;
  out.reserve(flat.size());
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = order[i];
    if (i > 0 && !row_less(order[i - 1], r)) continue;
    out.insert(out.end(), flat.begin() + static_cast<std::ptrdiff_t>(r * m),
               flat.begin() + static_cast<std::ptrdiff_t>((r + 1) * m));
  }
  return out;
}

void for_each_tuple(int k, int m, const std::function<void(std::span<const Value>)>& fn) {
  const std::size_t total = table_length(k, m);
  std::vector<Value> t(static_cast<std::size_t>(m));
  for (std::size_t idx = 0; idx < total; ++idx) {
    decode_tuple(idx, k, t);
    fn(t);
  }
}

bool pairwise_distinct(std::span<const Value> t) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      if (t[i] == t[j]) return false;
    }
  }
  return true;
}

}  // namespace

Relation::Relation(int k, int arity, std::vector<Value> sorted_flat, bool)
    : k_(k), arity_(arity), data_(std::move(sorted_flat)) {
  build_bitmap();
}

Relation::Relation(int k, int arity, std::vector<std::vector<Value>> tuples) : k_(k), arity_(arity) {
  if (arity < 1) throw Error(ErrorCode::BadArity, "relation arity must be at least 1");
  if (k < 1 || k > kMaxDomainSize) throw Error(ErrorCode::DomainTooLarge, "domain size " + std::to_string(k));
  std::vector<Value> flat;
  for (const auto& t : tuples) {
    if (static_cast<int>(t.size()) != arity) throw Error(ErrorCode::BadArity, "tuple length differs from arity");
    for (Value v : t) {
      if (v >= k) throw Error(ErrorCode::ValueOutOfRange, "tuple entry " + std::to_string(v));
    }
    flat.insert(flat.end(), t.begin(), t.end());
  }
  data_ = sort_unique_rows(std::move(flat), static_cast<std::size_t>(arity));
  build_bitmap();
}

Relation Relation::from_flat(int k, int arity, std::vector<Value> flat) {
  if (arity < 1) throw Error(ErrorCode::BadArity, "relation arity must be at least 1");
  if (flat.size() % static_cast<std::size_t>(arity) != 0) throw Error(ErrorCode::LengthMismatch, "ragged tuples");
  for (Value v : flat) {
    if (v >= k) throw Error(ErrorCode::ValueOutOfRange, "tuple entry " + std::to_string(v));
  }
  return Relation(k, arity, sort_unique_rows(std::move(flat), static_cast<std::size_t>(arity)), true);
}

void Relation::build_bitmap() {
  bitmap_.clear();
  std::size_t total = 1;
  for (int i = 0; i < arity_; ++i) {
    total *= static_cast<std::size_t>(k_);
    if (total > kBitmapLimit) return;
  }
  bitmap_.assign(total, 0);
  for (std::size_t i = 0; i < size(); ++i) bitmap_[encode_tuple(tuple(i), k_)] = 1;
}

bool Relation::contains(std::span<const Value> t) const {
  if (static_cast<int>(t.size()) != arity_) return false;
  for (Value v : t) {
    if (v >= k_) return false;
  }
  if (has_bitmap()) return bitmap_[encode_tuple(t, k_)] != 0;
  std::size_t lo = 0;
  std::size_t hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const auto row = tuple(mid);
    if (std::lexicographical_compare(row.begin(), row.end(), t.begin(), t.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo < size() && std::equal(t.begin(), t.end(), tuple(lo).begin());
}

std::strong_ordering operator<=>(const Relation& a, const Relation& b) {
  if (auto c = a.k_ <=> b.k_; c != 0) return c;
  if (auto c = a.arity_ <=> b.arity_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.data_.begin(), a.data_.end(), b.data_.begin(), b.data_.end());
}

Relation make_relation(int k, int arity, const std::vector<std::vector<int>>& tuples) {
  if (arity < 1) throw Error(ErrorCode::BadArity, "relation arity must be at least 1");
  std::vector<std::vector<Value>> vals;
  vals.reserve(tuples.size());
  for (const auto& t : tuples) {
    std::vector<Value> row;
    for (int v : t) {
      if (v < 0 || v >= k) throw Error(ErrorCode::ValueOutOfRange, "tuple entry " + std::to_string(v));
      row.push_back(static_cast<Value>(v));
    }
    vals.push_back(std::move(row));
  }
  return Relation(k, arity, std::move(vals));
}

Relation conjugate(const Relation& rho, const Bijection& pi) {
  if (pi.k() != rho.k()) throw Error(ErrorCode::DomainMismatch, "bijection and relation on different domains");
  std::vector<Value> flat(rho.flat().begin(), rho.flat().end());
  for (auto& v : flat) v = pi(v);
  return Relation::from_flat(rho.k(), rho.arity(), std::move(flat));
}

Relation full_relation(int k, int m) {
  std::vector<Value> flat;
  for_each_tuple(k, m, [&](std::span<const Value> t) { flat.insert(flat.end(), t.begin(), t.end()); });
  return Relation::from_flat(k, m, std::move(flat));
}

Relation equality_relation(int k) {
  std::vector<Value> flat;
  for (int a = 0; a < k; ++a) {
    flat.push_back(static_cast<Value>(a));
    flat.push_back(static_cast<Value>(a));
  }
  return Relation::from_flat(k, 2, std::move(flat));
}

Relation graph_of(const Operation& f) {
  std::vector<Value> flat;
  std::vector<Value> args(static_cast<std::size_t>(f.arity()));
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    decode_tuple(idx, f.k(), args);
    flat.insert(flat.end(), args.begin(), args.end());
    flat.push_back(f.at(idx));
  }
  return Relation::from_flat(f.k(), f.arity() + 1, std::move(flat));
}

Relation chain_order(int k) {
  std::vector<Value> flat;
  for (int a = 0; a < k; ++a) {
    for (int b = a; b < k; ++b) {
      flat.push_back(static_cast<Value>(a));
      flat.push_back(static_cast<Value>(b));
    }
  }
  return Relation::from_flat(k, 2, std::move(flat));
}

Relation subset_relation(int k, std::span<const Value> elements) {
  return Relation::from_flat(k, 1, std::vector<Value>(elements.begin(), elements.end()));
}

bool is_diagonal(const Relation& rho) {
  if (rho.empty()) return false;
  const int m = rho.arity();
  // Positions that agree on every tuple form the only candidate equivalence.
  std::vector<int> block(static_cast<std::size_t>(m));
  std::iota(block.begin(), block.end(), 0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < i; ++j) {
      if (block[static_cast<std::size_t>(j)] != j) continue;
      bool always_equal = true;
      for (std::size_t r = 0; r < rho.size() && always_equal; ++r) {
        always_equal = rho.tuple(r)[static_cast<std::size_t>(i)] == rho.tuple(r)[static_cast<std::size_t>(j)];
      }
      if (always_equal) {
        block[static_cast<std::size_t>(i)] = j;
        break;
      }
    }
  }
  std::size_t blocks = 0;
  for (int i = 0; i < m; ++i) blocks += block[static_cast<std::size_t>(i)] == i ? 1 : 0;
  std::size_t expected = 1;
  for (std::size_t b = 0; b < blocks; ++b) expected *= static_cast<std::size_t>(rho.k());
  return rho.size() == expected;
}

bool is_totally_reflexive(const Relation& rho) {
  bool ok = true;
  for_each_tuple(rho.k(), rho.arity(), [&](std::span<const Value> t) {
    if (ok && !pairwise_distinct(t) && !rho.contains(t)) ok = false;
  });
  return ok;
}

bool is_totally_symmetric(const Relation& rho) {
  std::vector<Value> t(static_cast<std::size_t>(rho.arity()));
  for (std::size_t r = 0; r < rho.size(); ++r) {
    const auto row = rho.tuple(r);
    // Adjacent transpositions generate the symmetric group.
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
      std::copy(row.begin(), row.end(), t.begin());
      std::swap(t[i], t[i + 1]);
      if (!rho.contains(t)) return false;
    }
  }
  return true;
}

std::vector<Value> center_of(const Relation& rho) {
  std::vector<Value> center;
  const int m = rho.arity();
  for (int c = 0; c < rho.k(); ++c) {
    bool all = true;
    std::vector<Value> t(static_cast<std::size_t>(m));
    const std::size_t rest = table_length(rho.k(), m - 1);
    for (std::size_t idx = 0; idx < rest && all; ++idx) {
      t[0] = static_cast<Value>(c);
      decode_tuple(idx, rho.k(), std::span<Value>(t).subspan(1));
      all = rho.contains(t);
    }
    if (all) center.push_back(static_cast<Value>(c));
  }
  return center;
}

namespace {

bool reflexive2(const Relation& rho) {
  for (int a = 0; a < rho.k(); ++a) {
    const Value t[2] = {static_cast<Value>(a), static_cast<Value>(a)};
    if (!rho.contains(t)) return false;
  }
  return true;
}

bool transitive2(const Relation& rho) {
  for (std::size_t i = 0; i < rho.size(); ++i) {
    for (std::size_t j = 0; j < rho.size(); ++j) {
      if (rho.tuple(i)[1] != rho.tuple(j)[0]) continue;
      const Value t[2] = {rho.tuple(i)[0], rho.tuple(j)[1]};
      if (!rho.contains(t)) return false;
    }
  }
  return true;
}

bool has(const Relation& rho, int a, int b) {
  const Value t[2] = {static_cast<Value>(a), static_cast<Value>(b)};
  return rho.contains(t);
}

}  // namespace

bool is_equivalence(const Relation& rho) {
  if (rho.arity() != 2 || !reflexive2(rho) || !transitive2(rho)) return false;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!has(rho, rho.tuple(i)[1], rho.tuple(i)[0])) return false;
  }
  return true;
}

bool is_partial_order(const Relation& rho) {
  if (rho.arity() != 2 || !reflexive2(rho) || !transitive2(rho)) return false;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const auto t = rho.tuple(i);
    if (t[0] != t[1] && has(rho, t[1], t[0])) return false;
  }
  return true;
}

bool is_bounded_order(const Relation& rho) {
  if (!is_partial_order(rho)) return false;
  const int k = rho.k();
  bool has_least = false;
  bool has_greatest = false;
  for (int c = 0; c < k; ++c) {
    bool least = true;
    bool greatest = true;
    for (int x = 0; x < k; ++x) {
      least = least && has(rho, c, x);
      greatest = greatest && has(rho, x, c);
    }
    has_least = has_least || least;
    has_greatest = has_greatest || greatest;
  }
  return has_least && has_greatest;
}

bool is_prime(int d) {
  if (d < 2) return false;
  for (int q = 2; q * q <= d; ++q) {
    if (d % q == 0) return false;
  }
  return true;
}

std::optional<std::pair<int, int>> prime_power(int k) {
  for (int p = 2; p <= k; ++p) {
    if (!is_prime(p) || k % p != 0) continue;
    int d = 0;
    int rest = k;
    while (rest % p == 0) {
      rest /= p;
      ++d;
    }
    if (rest == 1) return std::make_pair(p, d);
    return std::nullopt;
  }
  return std::nullopt;
}

std::optional<int> fpf_prime_permutation(const Relation& rho) {
  const int k = rho.k();
  if (rho.arity() != 2 || static_cast<int>(rho.size()) != k) return std::nullopt;
  std::vector<int> image(static_cast<std::size_t>(k), -1);
  std::vector<bool> hit(static_cast<std::size_t>(k), false);
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const auto t = rho.tuple(i);
    if (image[t[0]] != -1 || hit[t[1]]) return std::nullopt;
    image[t[0]] = t[1];
    hit[t[1]] = true;
  }
  int cycle_length = 0;
  for (int x = 0; x < k; ++x) {
    if (image[static_cast<std::size_t>(x)] == x) return std::nullopt;
    int len = 1;
    for (int y = image[static_cast<std::size_t>(x)]; y != x; y = image[static_cast<std::size_t>(y)]) ++len;
    if (cycle_length == 0) cycle_length = len;
    if (len != cycle_length) return std::nullopt;
  }
  if (!is_prime(cycle_length)) return std::nullopt;
  return cycle_length;
}

bool is_bitransitive(const Relation& rho) {
  if (rho.arity() != 2 || !reflexive2(rho) || !transitive2(rho)) return false;
  if (static_cast<int>(rho.size()) == rho.k()) return false;  // equality
  std::vector<std::pair<Value, Value>> edges;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const auto t = rho.tuple(i);
    if (t[0] != t[1]) edges.emplace_back(t[0], t[1]);
  }
  // Orbit of the first non-loop pair under Aut(A; rho) must cover all of them.
  std::set<std::pair<Value, Value>> orbit;
  for (const auto& pi : all_bijections(rho.k())) {
    if (conjugate(rho, pi) != rho) continue;
    orbit.emplace(pi(edges.front().first), pi(edges.front().second));
  }
  return orbit.size() == edges.size();
}

RelationProfile profile(const Relation& rho) {
  RelationProfile p;
  p.diagonal = is_diagonal(rho);
  p.totally_reflexive = is_totally_reflexive(rho);
  p.totally_symmetric = is_totally_symmetric(rho);
  p.center = center_of(rho);
  p.is_equivalence = is_equivalence(rho);
  p.is_bounded_order = is_bounded_order(rho);
  p.is_fpf_prime_permutation_graph = fpf_prime_permutation(rho);
  p.is_bitransitive = is_bitransitive(rho);
  return p;
}

bool preserves(const Operation& f, const Relation& rho) {
  if (f.k() != rho.k()) throw Error(ErrorCode::DomainMismatch, "operation and relation on different domains");
  const std::size_t rows = rho.size();
  if (rows == 0) return true;
  const std::size_t n = static_cast<std::size_t>(f.arity());
  const std::size_t m = static_cast<std::size_t>(rho.arity());
  const std::size_t k = static_cast<std::size_t>(f.k());
  const Value* table = f.table().data();
  std::vector<std::size_t> partial((n + 1) * m, 0);
  std::vector<std::size_t> idx(n, 0);
  std::vector<Value> out(m);
  std::size_t depth = 0;
  while (true) {
    if (idx[depth] == rows) {
      if (depth == 0) return true;
      --depth;
      ++idx[depth];
      continue;
    }
    const auto row = rho.tuple(idx[depth]);
    const std::size_t* prev = partial.data() + depth * m;
    if (depth + 1 == n) {
      std::size_t code = 0;
      for (std::size_t c = 0; c < m; ++c) {
        out[c] = table[prev[c] * k + row[c]];
        code = code * k + out[c];
      }
      const bool inside = rho.has_bitmap() ? rho.contains_code(code) : rho.contains(out);
      if (!inside) return false;
      ++idx[depth];
    } else {
      std::size_t* cur = partial.data() + (depth + 1) * m;
      for (std::size_t c = 0; c < m; ++c) cur[c] = prev[c] * k + row[c];
      ++depth;
      idx[depth] = 0;
    }
  }
}

Relation slupecki(int k) {
  std::vector<Value> flat;
  for_each_tuple(k, k, [&](std::span<const Value> t) {
    if (!pairwise_distinct(t)) flat.insert(flat.end(), t.begin(), t.end());
  });
  return Relation::from_flat(k, k, std::move(flat));
}

bool slupecki_membership(const Operation& f) {
  const Analysis a = analyze(f);
  return a.essential_vars.size() <= 1 || !a.surjective;
}

namespace {

struct VectorSpace {
  int p;
  int d;
  int k;

  std::vector<int> digits(int x) const {
    std::vector<int> out(static_cast<std::size_t>(d));
    for (int i = d - 1; i >= 0; --i) {
      out[static_cast<std::size_t>(i)] = x % p;
      x /= p;
    }
    return out;
  }
  int encode(const std::vector<int>& v) const {
    int x = 0;
    for (int c : v) x = x * p + ((c % p) + p) % p;
    return x;
  }
  int add(int a, int b) const {
    auto va = digits(a);
    auto vb = digits(b);
    for (int i = 0; i < d; ++i) va[static_cast<std::size_t>(i)] += vb[static_cast<std::size_t>(i)];
    return encode(va);
  }
  int neg(int a) const {
    auto va = digits(a);
    for (auto& c : va) c = -c;
    return encode(va);
  }
};

VectorSpace make_space(int p, int d) {
  if (!is_prime(p) || d < 1) throw Error(ErrorCode::BadParams, "need a prime p and d >= 1");
  int k = 1;
  for (int i = 0; i < d; ++i) k *= p;
  if (k > kMaxDomainSize) throw Error(ErrorCode::DomainTooLarge, "p^d exceeds the supported domain size");
  return {p, d, k};
}

}  // namespace

Relation affine_relation(int p, int d) {
  const VectorSpace V = make_space(p, d);
  std::vector<Value> flat;
  for (int a = 0; a < V.k; ++a) {
    for (int b = 0; b < V.k; ++b) {
      for (int c = 0; c < V.k; ++c) {
        flat.push_back(static_cast<Value>(a));
        flat.push_back(static_cast<Value>(b));
        flat.push_back(static_cast<Value>(c));
        flat.push_back(static_cast<Value>(V.add(V.add(a, V.neg(b)), c)));
      }
    }
  }
  return Relation::from_flat(V.k, 4, std::move(flat));
}

bool in_affine_clone(const Operation& f, int p, int d) {
  const VectorSpace V = make_space(p, d);
  if (f.k() != V.k) throw Error(ErrorCode::BadParams, "operation domain is not p^d");
  const int k = V.k;
  const auto n = static_cast<std::size_t>(f.arity());
  std::vector<std::vector<int>> add(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k)));
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) add[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = V.add(a, b);
  }
  const int v = f.at(0);
  const int minus_v = V.neg(v);
  // image[i][x] = M_i x, assembled from the columns M_i e_j = f(.., e_j, ..) - v.
  std::vector<std::vector<int>> image(n, std::vector<int>(static_cast<std::size_t>(k), 0));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t stride = table_length(k, f.arity() - 1 - static_cast<int>(i));
    std::vector<int> columns(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
      int unit = 1;
      for (int t = j + 1; t < d; ++t) unit *= p;
      columns[static_cast<std::size_t>(j)] =
          add[f.at(static_cast<std::size_t>(unit) * stride)][static_cast<std::size_t>(minus_v)];
    }
    for (int x = 0; x < k; ++x) {
      const auto xd = V.digits(x);
      int acc = 0;
      for (int j = 0; j < d; ++j) {
        for (int r = 0; r < xd[static_cast<std::size_t>(j)]; ++r) {
          acc = add[static_cast<std::size_t>(acc)][static_cast<std::size_t>(columns[static_cast<std::size_t>(j)])];
        }
      }
      image[i][static_cast<std::size_t>(x)] = acc;
    }
  }
  std::vector<Value> args(n);
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    decode_tuple(idx, k, args);
    int acc = v;
    for (std::size_t i = 0; i < n; ++i) {
      acc = add[static_cast<std::size_t>(acc)][static_cast<std::size_t>(image[i][args[i]])];
    }
    if (acc != f.at(idx)) return false;
  }
  return true;
}

Relation generate_subpower(const OperationSet& F, int d, const std::vector<std::vector<Value>>& generators) {
  if (d < 1) throw Error(ErrorCode::BadArity, "subpower arity must be at least 1");
  SubuniverseClosure closure(F.k(), static_cast<std::size_t>(d),
                             std::vector<Operation>(F.members().begin(), F.members().end()));
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != d) throw Error(ErrorCode::BadArity, "generator length differs from d");
    for (Value v : g) {
      if (v >= F.k()) throw Error(ErrorCode::ValueOutOfRange, "generator entry");
    }
    closure.add_seed(g);
  }
  closure.run(static_cast<std::size_t>(-1));
  const auto& rows = closure.rows();
  std::vector<Value> flat;
  for (std::size_t i = 0; i < rows.size(); ++i) flat.insert(flat.end(), rows.row(i).begin(), rows.row(i).end());
  return Relation::from_flat(F.k(), d, std::move(flat));
}

}  // namespace cloneforge
