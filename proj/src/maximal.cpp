#include "cloneforge/maximal.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>

#include "cloneforge/canonical.hpp"
#include "cloneforge/closure.hpp"
#include "cloneforge/error.hpp"

namespace cloneforge {

namespace {

constexpr int kMaxMaximalDomain = 4;

void require_domain(int k) {
  if (k < 2) throw Error(ErrorCode::BadParams, "domain needs at least two elements");
  if (k > kMaxMaximalDomain) throw Error(ErrorCode::DomainTooLarge, "maximal clones are enumerated for k <= 4");
}

MaximalWitness plain(RelationType t, Relation rho) {
  MaximalWitness w{t, std::move(rho), 0, 0, 0, {}, {}};
  w.m = w.relation.arity();
  return w;
}

// Set partitions of {0..k-1} as block labels (restricted growth strings).
std::vector<std::vector<int>> partitions(int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> label(static_cast<std::size_t>(k), 0);
  std::function<void(int, int)> rec = [&](int pos, int blocks) {
    if (pos == k) {
      out.push_back(label);
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      label[static_cast<std::size_t>(pos)] = b;
      rec(pos + 1, std::max(blocks, b + 1));
    }
  };
  rec(0, 0);
  return out;
}

int block_count(const std::vector<int>& label) { return *std::max_element(label.begin(), label.end()) + 1; }

Relation equivalence_of(const std::vector<int>& label) {
  const int k = static_cast<int>(label.size());
  std::vector<Value> flat;
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      if (label[static_cast<std::size_t>(a)] == label[static_cast<std::size_t>(b)]) {
        flat.push_back(static_cast<Value>(a));
        flat.push_back(static_cast<Value>(b));
      }
    }
  }
  return Relation::from_flat(k, 2, std::move(flat));
}

std::vector<MaximalWitness> orders(int k) {
  std::vector<std::pair<int, int>> off;
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      if (a != b) off.emplace_back(a, b);
    }
  }
  std::set<Relation> kept;
  for (unsigned mask = 0; mask < (1u << off.size()); ++mask) {
    std::vector<Value> flat;
    std::vector<Value> inverse;
    for (int a = 0; a < k; ++a) {
      for (auto* v : {&flat, &inverse}) {
        v->push_back(static_cast<Value>(a));
        v->push_back(static_cast<Value>(a));
      }
    }
    for (std::size_t i = 0; i < off.size(); ++i) {
      if (!(mask & (1u << i))) continue;
      flat.push_back(static_cast<Value>(off[i].first));
      flat.push_back(static_cast<Value>(off[i].second));
      inverse.push_back(static_cast<Value>(off[i].second));
      inverse.push_back(static_cast<Value>(off[i].first));
    }
    Relation rho = Relation::from_flat(k, 2, std::move(flat));
    if (!is_bounded_order(rho)) continue;
    Relation inv = Relation::from_flat(k, 2, std::move(inverse));
    kept.insert(std::min(rho, inv));
  }
  std::vector<MaximalWitness> out;
  for (const auto& r : kept) out.push_back(plain(RelationType::bounded_order, r));
  return out;
}

std::vector<MaximalWitness> permutations(int k) {
  std::set<Relation> kept;
  std::map<Relation, int> prime_of;
  for (const auto& pi : all_bijections(k)) {
    std::vector<Value> table(pi.images().begin(), pi.images().end());
    const Relation g = graph_of(Operation(k, 1, table));
    const auto p = fpf_prime_permutation(g);
    if (!p) continue;
    // Powers of a permutation whose cycles share a prime length generate the
    // same group, hence the same clone; keep the least graph among them.
    Relation best = g;
    Bijection power = pi;
    for (int e = 2; e < *p; ++e) {
      power = power * pi;
      std::vector<Value> t(power.images().begin(), power.images().end());
      best = std::min(best, graph_of(Operation(k, 1, t)));
    }
    kept.insert(best);
    prime_of[best] = *p;
  }
  std::vector<MaximalWitness> out;
  for (const auto& r : kept) {
    auto w = plain(RelationType::fpf_prime_perm, r);
    w.prime = prime_of[r];
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<MaximalWitness> affine(int k) {
  const auto pd = prime_power(k);
  if (!pd) throw Error(ErrorCode::BadParams, "affine relations need a prime-power domain");
  const Relation base = affine_relation(pd->first, pd->second);
  std::set<Relation> kept;
  for (const auto& pi : all_bijections(k)) kept.insert(conjugate(base, pi));
  std::vector<MaximalWitness> out;
  for (const auto& r : kept) {
    auto w = plain(RelationType::affine, r);
    w.prime = pd->first;
    w.dimension = pd->second;
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<MaximalWitness> equivalences(int k) {
  std::vector<MaximalWitness> out;
  for (const auto& label : partitions(k)) {
    const int b = block_count(label);
    if (b == 1 || b == k) continue;
    out.push_back(plain(RelationType::equivalence, equivalence_of(label)));
  }
  return out;
}

std::vector<std::vector<Value>> m_subsets(int k, int m) {
  std::vector<std::vector<Value>> out;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    if (__builtin_popcount(mask) != m) continue;
    std::vector<Value> s;
    for (int x = 0; x < k; ++x) {
      if (mask & (1u << x)) s.push_back(static_cast<Value>(x));
    }
    out.push_back(std::move(s));
  }
  return out;
}

bool injective(std::span<const Value> t) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      if (t[i] == t[j]) return false;
    }
  }
  return true;
}

std::vector<MaximalWitness> central(int k, int m) {
  std::vector<MaximalWitness> out;
  const auto subsets = m_subsets(k, m);
  const std::size_t total = table_length(k, m);
  std::vector<Value> t(static_cast<std::size_t>(m));
  for (unsigned family = 0; family + 1 < (1u << subsets.size()); ++family) {
    if (m == 1 && family == 0) continue;
    std::vector<Value> flat;
    for (std::size_t idx = 0; idx < total; ++idx) {
      decode_tuple(idx, k, t);
      bool in = !injective(t);
      if (!in) {
        std::vector<Value> s = t;
        std::sort(s.begin(), s.end());
        const auto pos = std::find(subsets.begin(), subsets.end(), s) - subsets.begin();
        in = (family >> pos) & 1u;
      }
      if (in) flat.insert(flat.end(), t.begin(), t.end());
    }
    Relation rho = Relation::from_flat(k, m, std::move(flat));
    auto c = center_of(rho);
    if (c.empty()) continue;
    auto w = plain(RelationType::central, std::move(rho));
    w.center = std::move(c);
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<MaximalWitness> h_regular(int k, int m) {
  std::vector<std::vector<int>> eqs;
  for (const auto& label : partitions(k)) {
    if (block_count(label) == m) eqs.push_back(label);
  }
  std::map<Relation, std::vector<Relation>> kept;
  std::vector<Value> t(static_cast<std::size_t>(m));
  const std::size_t total = table_length(k, m);
  for (unsigned family = 1; family < (1u << eqs.size()); ++family) {
    std::vector<const std::vector<int>*> T;
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      if (family & (1u << i)) T.push_back(&eqs[i]);
    }
    // Every choice of one block per equivalence must meet.
    bool meets = true;
    const std::size_t choices = table_length(m, static_cast<int>(T.size()));
    std::vector<Value> pick(T.size());
    for (std::size_t c = 0; c < choices && meets; ++c) {
      decode_tuple(c, m, pick);
      bool common = false;
      for (int x = 0; x < k && !common; ++x) {
        bool all = true;
        for (std::size_t i = 0; i < T.size() && all; ++i) all = (*T[i])[static_cast<std::size_t>(x)] == pick[i];
        common = all;
      }
      meets = common;
    }
    if (!meets) continue;
    std::vector<Value> flat;
    for (std::size_t idx = 0; idx < total; ++idx) {
      decode_tuple(idx, k, t);
      bool in = true;
      for (const auto* theta : T) {
        bool repeated = false;
        for (int a = 0; a < m && !repeated; ++a) {
          for (int b = a + 1; b < m && !repeated; ++b) {
            repeated = (*theta)[t[static_cast<std::size_t>(a)]] == (*theta)[t[static_cast<std::size_t>(b)]];
          }
        }
        in = in && repeated;
      }
      if (in) flat.insert(flat.end(), t.begin(), t.end());
    }
    Relation rho = Relation::from_flat(k, m, std::move(flat));
    if (kept.count(rho)) continue;
    std::vector<Relation> fam;
    for (const auto* theta : T) fam.push_back(equivalence_of(*theta));
    kept.emplace(std::move(rho), std::move(fam));
  }
  std::vector<MaximalWitness> out;
  for (auto& [rho, fam] : kept) {
    auto w = plain(RelationType::h_regular, rho);
    w.family = fam;
    out.push_back(std::move(w));
  }
  return out;
}

void sort_witnesses(std::vector<MaximalWitness>& ws) {
  std::vector<std::pair<std::string, std::size_t>> keys;
  for (std::size_t i = 0; i < ws.size(); ++i) keys.emplace_back(canonical_key(ws[i].relation), i);
  std::vector<std::size_t> order(ws.size());
  for (std::size_t i = 0; i < ws.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (ws[a].rtype != ws[b].rtype) return ws[a].rtype < ws[b].rtype;
    if (keys[a].first != keys[b].first) return keys[a].first < keys[b].first;
    return ws[a].relation < ws[b].relation;
  });
  std::vector<MaximalWitness> sorted;
  for (auto i : order) sorted.push_back(std::move(ws[i]));
  ws = std::move(sorted);
}

std::optional<Operation> find_violator(const OperationSet& F, const Relation& rho) {
  for (const auto& f : F.members()) {
    if (!preserves(f, rho)) return f;
  }
  return std::nullopt;
}

Verdict verdict_over(const OperationSet& F, const std::function<bool(const MaximalWitness&)>& selected,
                     const std::string& yes_claim, const std::string& no_claim) {
  std::vector<Relation> blocking;
  for (const auto& w : gen_all_maximal(F.k())) {
    if (!selected(w)) continue;
    if (!find_violator(F, w.relation)) blocking.push_back(w.relation);
  }
  Verdict v = make_verdict(blocking.empty() ? Answer::yes : Answer::no, blocking.empty() ? yes_claim : no_claim);
  v.certificate.relations = std::move(blocking);
  return v;
}

}  // namespace

std::string_view to_string(RelationType t) {
  switch (t) {
    case RelationType::bounded_order: return "bounded_order";
    case RelationType::fpf_prime_perm: return "fpf_prime_perm";
    case RelationType::affine: return "affine";
    case RelationType::equivalence: return "equivalence";
    case RelationType::central: return "central";
    case RelationType::h_regular: return "h_regular";
  }
  return "unknown";
}

std::optional<RelationType> relation_type_from_string(std::string_view name) {
  for (int i = 1; i <= 6; ++i) {
    const auto t = static_cast<RelationType>(i);
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

std::vector<MaximalWitness> gen_type(int k, RelationType rtype, std::optional<int> m) {
  require_domain(k);
  std::vector<MaximalWitness> out;
  switch (rtype) {
    case RelationType::bounded_order:
      out = orders(k);
      break;
    case RelationType::fpf_prime_perm:
      out = permutations(k);
      break;
    case RelationType::affine:
      out = affine(k);
      break;
    case RelationType::equivalence:
      out = equivalences(k);
      break;
    case RelationType::central:
      for (int a = 1; a < k; ++a) {
        if (m && *m != a) continue;
        auto part = central(k, a);
        out.insert(out.end(), part.begin(), part.end());
      }
      if (m && (*m < 1 || *m >= k)) throw Error(ErrorCode::BadParams, "central arity must satisfy 1 <= m < k");
      break;
    case RelationType::h_regular:
      if (k < 3) throw Error(ErrorCode::BadParams, "h-regular relations need k >= 3");
      if (m && (*m < 3 || *m > k)) throw Error(ErrorCode::BadParams, "h-regular arity must satisfy 3 <= m <= k");
      for (int a = 3; a <= k; ++a) {
        if (m && *m != a) continue;
        auto part = h_regular(k, a);
        out.insert(out.end(), part.begin(), part.end());
      }
      break;
  }
  sort_witnesses(out);
  return out;
}

std::vector<Value> unary_part_key(const Relation& rho) {
  std::vector<Value> key;
  for_each_operation(rho.k(), 1, [&](const Operation& u) {
    if (preserves(u, rho)) key.insert(key.end(), u.table().begin(), u.table().end());
    return false;
  });
  return key;
}

const std::vector<MaximalWitness>& gen_all_maximal(int k) {
  require_domain(k);
  static std::mutex mu;
  static std::map<int, std::vector<MaximalWitness>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;

  std::vector<MaximalWitness> out;
  if (k == 2) {
    // Post's five maximal clones.
    out.push_back(plain(RelationType::bounded_order, chain_order(2)));
    auto neg = plain(RelationType::fpf_prime_perm, graph_of(Operation(2, 1, {1, 0})));
    neg.prime = 2;
    out.push_back(std::move(neg));
    auto lin = plain(RelationType::affine, affine_relation(2, 1));
    lin.prime = 2;
    lin.dimension = 1;
    out.push_back(std::move(lin));
    for (Value c : {Value{0}, Value{1}}) {
      auto w = plain(RelationType::central, subset_relation(2, std::span<const Value>(&c, 1)));
      w.center = {c};
      out.push_back(std::move(w));
    }
    sort_witnesses(out);
  } else {
    std::vector<MaximalWitness> all;
    for (int t = 1; t <= 6; ++t) {
      const auto rtype = static_cast<RelationType>(t);
      if (rtype == RelationType::affine && !prime_power(k)) continue;
      auto part = gen_type(k, rtype);
      all.insert(all.end(), part.begin(), part.end());
    }
    sort_witnesses(all);
    // For k >= 3 a maximal clone is determined by its unary part.
    std::set<std::vector<Value>> seen;
    for (auto& w : all) {
      if (seen.insert(unary_part_key(w.relation)).second) out.push_back(std::move(w));
    }
  }
  return cache.emplace(k, std::move(out)).first->second;
}

std::vector<const WitnessCheck*> CompletenessReport::blocking() const {
  std::vector<const WitnessCheck*> out;
  for (const auto& c : per_witness) {
    if (!c.violator) out.push_back(&c);
  }
  return out;
}

CompletenessReport is_complete(const OperationSet& F) {
  if (F.empty()) throw Error(ErrorCode::EmptySet, "empty operation set");
  CompletenessReport report;
  report.complete = true;
  for (const auto& w : gen_all_maximal(F.k())) {
    WitnessCheck check{w, find_violator(F, w.relation)};
    report.complete = report.complete && check.violator.has_value();
    report.per_witness.push_back(std::move(check));
  }
  return report;
}

Verdict is_sheffer(const Operation& f) {
  const OperationSet F(f.k(), {f});
  return verdict_over(
      F,
      [](const MaximalWitness& w) {
        return w.rtype == RelationType::fpf_prime_perm || w.rtype == RelationType::equivalence ||
               (w.rtype == RelationType::central && w.m == 1);
      },
      "leaves every permutation, equivalence and subset clone", "preserves the listed relations");
}

Verdict is_functionally_complete(const OperationSet& F) {
  if (F.empty()) throw Error(ErrorCode::EmptySet, "empty operation set");
  return verdict_over(
      F,
      [](const MaximalWitness& w) {
        switch (w.rtype) {
          case RelationType::bounded_order:
          case RelationType::affine:
          case RelationType::equivalence:
          case RelationType::h_regular:
            return true;
          case RelationType::central:
            return w.m > 1;
          case RelationType::fpf_prime_perm:
            return false;
        }
        return false;
      },
      "leaves every clone that contains all constants", "preserves the listed relations");
}

Verdict slupecki_criterion(const OperationSet& F) {
  const int k = F.k();
  if (k < 3) throw Error(ErrorCode::BadParams, "the criterion is stated for k >= 3");
  std::set<Operation> unary;
  for (const auto& f : F.members()) {
    if (f.arity() == 1) unary.insert(f);
  }
  if (unary.size() != table_length(k, k)) {
    throw Error(ErrorCode::PreconditionFailed, "F must contain all unary operations");
  }
  for (const auto& f : F.members()) {
    const Analysis a = analyze(f);
    if (a.surjective && a.essential_vars.size() >= 2) {
      Verdict v = make_verdict(Answer::yes, "a surjective operation depending on at least two variables");
      v.certificate.operations.push_back(f);
      return v;
    }
  }
  Verdict v = make_verdict(Answer::no, "every member is essentially unary or not surjective");
  v.certificate.relations.push_back(slupecki(k));
  return v;
}

}  // namespace cloneforge
