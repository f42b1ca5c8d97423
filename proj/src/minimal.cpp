#include "cloneforge/minimal.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <thread>

#include "cloneforge/builtin.hpp"
#include "cloneforge/canonical.hpp"
#include "cloneforge/error.hpp"
#include "cloneforge/identities.hpp"

namespace cloneforge {

namespace {

OperationSet single(const Operation& f) { return OperationSet(f.k(), {f}); }

std::string cap_note(std::size_t cap) { return "cap=" + std::to_string(cap); }

// Smallest table among all variable permutations of f; equal keys mean the
// operations generate the same clone.
std::vector<Value> permutation_key(const Operation& f) {
  const int n = f.arity();
  if (n > 4) return std::vector<Value>(f.table().begin(), f.table().end());
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<Value> best;
  do {
    const Operation g = minor(f, perm, n);
    std::vector<Value> t(g.table().begin(), g.table().end());
    if (best.empty() || t < best) best = std::move(t);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// generates({h}, g) with escalating caps so that large clones are only
// explored when nothing cheaper settles the question.
class GenerationTester {
 public:
  GenerationTester(const Operation& g, std::size_t cap) : g_(g), cap_(cap) {}

  // Answer at the given cap, memoized per variable-permutation class of h.
  Answer test(const Operation& h, std::size_t cap) {
    auto key = permutation_key(h);
    auto it = memo_.find(key);
    if (it != memo_.end() && (it->second.answer != Answer::unknown || it->second.cap >= cap)) {
      return it->second.answer;
    }
    const Answer a = generates(single(h), g_, cap).answer;
    memo_[std::move(key)] = {a, cap};
    return a;
  }

  std::vector<std::size_t> ladder() const {
    std::vector<std::size_t> caps;
    for (std::size_t c : {std::size_t{256}, std::size_t{4096}, std::size_t{65536}}) {
      if (c < cap_) caps.push_back(c);
    }
    caps.push_back(cap_);
    return caps;
  }

 private:
  struct Entry {
    Answer answer;
    std::size_t cap;
  };
  const Operation& g_;
  std::size_t cap_;
  std::map<std::vector<Value>, Entry> memo_;
};

bool search_shape(const Operation& h) {
  if (is_projection(h)) return false;
  if (h.arity() == 1) return true;
  if (h.arity() == 2) return is_idempotent(h);
  return minors_trivial(h);
}

int exact_threshold(int k) { return std::max(3, k); }

MinimalityReport finish(MinimalityReport r, Answer a, std::string claim) {
  r.verdict = make_verdict(a, std::move(claim));
  if (r.reduced) r.verdict.certificate.operations.push_back(*r.reduced);
  if (r.witness) r.verdict.certificate.operations.push_back(*r.witness);
  r.verdict.certificate.assumptions.push_back("n_max=" + std::to_string(r.n_max));
  return r;
}

// Streams the members of Clo(g) of arities `from..to` and tests every member
// accepted by `shape` for generating g back.
struct StreamResult {
  std::optional<Operation> witness;
  bool incomplete = false;  // part enumeration or a generation test was capped
  std::size_t tested = 0;
};

StreamResult stream_and_test(const Operation& g, int from, int to, std::size_t cap,
                             const std::function<bool(const Operation&)>& shape) {
  GenerationTester tester(g, cap);
  const auto ladder = tester.ladder();
  StreamResult out;
  std::vector<Operation> deferred;
  for (int r = from; r <= to && !out.witness; ++r) {
    const auto search = search_part(single(g), r, cap, [&](const Operation& h) {
      if (h == g || !shape(h)) return false;
      ++out.tested;
      const Answer a = tester.test(h, ladder.front());
      if (a == Answer::no) {
        out.witness = h;
        return true;
      }
      if (a == Answer::unknown) deferred.push_back(h);
      return false;
    });
    if (search.outcome == PartSearch::Outcome::cap_hit) out.incomplete = true;
  }
  for (std::size_t step = 1; step < ladder.size() && !out.witness && !deferred.empty(); ++step) {
    std::vector<Operation> still;
    for (const auto& h : deferred) {
      const Answer a = tester.test(h, ladder[step]);
      if (a == Answer::no) {
        out.witness = h;
        break;
      }
      if (a == Answer::unknown) still.push_back(h);
    }
    deferred = std::move(still);
  }
  if (!out.witness && !deferred.empty()) out.incomplete = true;
  return out;
}

bool is_rectangular_band(const Operation& g) {
  if (g.arity() != 2 || !is_idempotent(g)) return false;
  const int k = g.k();
  auto m = [&](int x, int y) { return static_cast<int>(g.at(static_cast<std::size_t>(x * k + y))); };
  for (int x = 0; x < k; ++x) {
    for (int y = 0; y < k; ++y) {
      if (m(m(x, y), x) != x) return false;
      for (int z = 0; z < k; ++z) {
        if (m(m(x, y), z) != m(x, m(y, z))) return false;
      }
    }
  }
  return true;
}

bool is_idempotent_affine_prime(const Operation& g) {
  const int k = g.k();
  if (!is_prime(k) || k > 7 || !is_idempotent(g)) return false;
  for (const auto& pi : all_bijections(k)) {
    if (in_affine_clone(conjugate(g, pi), k, 1)) return true;
  }
  return false;
}

bool is_p_cyclic_member(const Operation& g) {
  if (g.arity() != 2) return false;
  const int k = g.k();
  int p = 0;
  for (int q = 2; q * q <= k; ++q) {
    if (q * q == k && is_prime(q)) p = q;
  }
  if (p == 0) return false;
  BuiltinParams params;
  params.p = p;
  const Operation base = builtin("p_cyclic", params);
  const ClonePart part = clone_part(single(base), 2, kDefaultCap);
  std::vector<Value> pi(static_cast<std::size_t>(k));
  std::iota(pi.begin(), pi.end(), Value{0});
  // Search a relabelling mapping g onto a member; tables are compared lazily.
  do {
    for (const auto& q : part.ops) {
      if (is_projection(q)) continue;
      bool same = true;
      for (int x = 0; x < k && same; ++x) {
        for (int y = 0; y < k && same; ++y) {
          same = pi[g.at(static_cast<std::size_t>(x * k + y))] ==
                 q.at(static_cast<std::size_t>(pi[static_cast<std::size_t>(x)] * k + pi[static_cast<std::size_t>(y)]));
        }
      }
      if (same) return true;
    }
  } while (std::next_permutation(pi.begin(), pi.end()));
  return false;
}

std::vector<std::vector<Value>> group_from(const Operation& f) {
  const int k = f.k();
  std::vector<std::vector<Value>> t(static_cast<std::size_t>(k), std::vector<Value>(static_cast<std::size_t>(k)));
  for (int x = 0; x < k; ++x) {
    for (int y = 0; y < k; ++y) {
      const Value args[3] = {static_cast<Value>(x), 0, static_cast<Value>(y)};
      t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = f(args);
    }
  }
  return t;
}

}  // namespace

std::string_view to_string(MinimalTag tag) {
  switch (tag) {
    case MinimalTag::unary: return "unary";
    case MinimalTag::binary_idempotent: return "binary";
    case MinimalTag::semiprojection: return "semiprojection";
    case MinimalTag::majority: return "majority";
    case MinimalTag::minority: return "minority";
    case MinimalTag::pixley_case: return "pixley_case";
  }
  return "unknown";
}

std::string to_string(const MinimalType& t) {
  std::string s(to_string(t.tag));
  if (t.tag == MinimalTag::semiprojection) {
    s += "(" + std::to_string(t.target) + "," + std::to_string(t.arity) + ")";
  }
  return s;
}

std::string_view to_string(MinimalityPath path) {
  switch (path) {
    case MinimalityPath::unary_monoid: return "unary-monoid";
    case MinimalityPath::minority_theorem: return "minority-theorem";
    case MinimalityPath::majority_3_minimal: return "majority-3-minimal";
    case MinimalityPath::theorem_fast_path: return "theorem-fast-path";
    case MinimalityPath::bounded_search: return "bounded-search";
  }
  return "unknown";
}

MinimalType classify_minimal_type(const Operation& g) {
  if (is_projection(g)) throw Error(ErrorCode::NotMinorsTrivial, "projections have no minimal type");
  const int n = g.arity();
  if (n == 1) return {MinimalTag::unary, 1, 0};
  if (n == 2) {
    if (!is_idempotent(g)) throw Error(ErrorCode::NotMinorsTrivial, "g(x, x) is not a projection");
    return {MinimalTag::binary_idempotent, 2, 0};
  }
  if (!minors_trivial(g)) throw Error(ErrorCode::NotMinorsTrivial, "an identification minor is not a projection");
  if (n == 3) {
    const auto merged = ternary_merge_pattern(g);
    const int m = static_cast<int>(merged[0]) + static_cast<int>(merged[1]) + static_cast<int>(merged[2]);
    if (m == 3) return {MinimalTag::majority, 3, 0};
    if (m == 0) return {MinimalTag::minority, 3, 0};
    if (m == 1) return {MinimalTag::pixley_case, 3, 0};
    const auto target = semiprojection_target(g);
    if (!target) throw Error(ErrorCode::SwierczkowskiViolation, "two merged pairs without a common target");
    return {MinimalTag::semiprojection, 3, *target};
  }
  const auto target = semiprojection_target(g);
  if (!target) {
    throw Error(ErrorCode::SwierczkowskiViolation, "identification minors project onto different variables");
  }
  return {MinimalTag::semiprojection, n, *target};
}

std::optional<std::vector<std::vector<Value>>> detect_boolean_group_sum(const Operation& f) {
  if (f.arity() != 3 || !check_identities(f, Identity::minority)) {
    throw Error(ErrorCode::NotMinority, "operation is not a minority operation");
  }
  const int k = f.k();
  const auto plus = group_from(f);
  auto add = [&](int x, int y) { return static_cast<int>(plus[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]); };
  for (int x = 0; x < k; ++x) {
    if (add(x, 0) != x || add(0, x) != x || add(x, x) != 0) return std::nullopt;
    for (int y = 0; y < k; ++y) {
      if (add(x, y) != add(y, x)) return std::nullopt;
      for (int z = 0; z < k; ++z) {
        if (add(add(x, y), z) != add(x, add(y, z))) return std::nullopt;
        const Value args[3] = {static_cast<Value>(x), static_cast<Value>(y), static_cast<Value>(z)};
        if (f(args) != add(add(x, y), z)) return std::nullopt;
      }
    }
  }
  return plus;
}

Verdict minimal_arity_witness(const Operation& f, std::size_t cap) {
  if (is_projection(f)) throw Error(ErrorCode::PreconditionFailed, "f is a projection");
  for (int r = 1; r <= f.arity(); ++r) {
    const ClonePart part = clone_part(single(f), r, cap);
    for (const auto& h : part.ops) {
      if (is_projection(h)) continue;
      if (part.cap_hit) break;
      Verdict v = make_verdict(Answer::yes, "least-arity non-projection has arity " + std::to_string(r));
      v.certificate.operations.push_back(h);
      return v;
    }
    if (part.cap_hit) {
      Verdict v = make_verdict(Answer::unknown, "part of arity " + std::to_string(r) + " hit the cap");
      v.certificate.assumptions.push_back(cap_note(cap));
      return v;
    }
  }
  throw Error(ErrorCode::PreconditionFailed, "no non-projection found up to arity(f)");
}

MinimalityReport bounded_minimality_search(const Operation& g, int n_max, std::size_t cap) {
  MinimalityReport r;
  r.path = MinimalityPath::bounded_search;
  r.reduced = g;
  r.n_max = n_max;
  r.exact = n_max >= exact_threshold(g.k());
  const StreamResult s = stream_and_test(g, 1, n_max, cap, search_shape);
  r.rule = "tested " + std::to_string(s.tested) + " members";
  if (s.witness) {
    r.witness = s.witness;
    return finish(std::move(r), Answer::no, "a member of the clone does not generate it");
  }
  if (s.incomplete) return finish(std::move(r), Answer::unknown, "search cut off by the cap");
  if (!r.exact) return finish(std::move(r), Answer::unknown, "no witness up to n_max, which is below max(3, k)");
  return finish(std::move(r), Answer::yes, "every candidate subclone generator generates the clone");
}

MinimalityReport majority_minimality(const Operation& g, std::size_t cap) {
  if (g.arity() != 3 || !check_identities(g, Identity::majority)) {
    throw Error(ErrorCode::WrongShape, "majority operation expected");
  }
  MinimalityReport r;
  r.path = MinimalityPath::majority_3_minimal;
  r.reduced = g;
  r.n_max = 3;
  r.exact = true;
  const StreamResult s = stream_and_test(g, 3, 3, cap, [](const Operation& h) { return !is_projection(h); });
  r.rule = "tested " + std::to_string(s.tested) + " ternary members";
  if (s.witness) {
    r.witness = s.witness;
    return finish(std::move(r), Answer::no, "a ternary member does not generate the clone");
  }
  if (s.incomplete) return finish(std::move(r), Answer::unknown, "ternary part cut off by the cap");
  return finish(std::move(r), Answer::yes, "every ternary non-projection generates the clone");
}

MinimalityReport is_minimal_clone(const Operation& f, int n_max, std::size_t cap) {
  if (is_projection(f)) throw Error(ErrorCode::PreconditionFailed, "f is a projection");
  MinimalityReport r;
  r.n_max = n_max;
  r.exact = n_max >= exact_threshold(f.k());

  // Reduce to a non-projection of least arity; if it does not give f back,
  // it already spans a proper subclone.
  std::optional<Operation> g;
  for (int a = 1; a <= f.arity() && !g; ++a) {
    if (a == f.arity()) {
      g = f;
      break;
    }
    const auto s = search_part(single(f), a, cap, [](const Operation& h) { return !is_projection(h); });
    if (s.outcome == PartSearch::Outcome::cap_hit) {
      return finish(std::move(r), Answer::unknown, "lower-arity part cut off by the cap");
    }
    if (s.outcome == PartSearch::Outcome::found) {
      const Answer back = generates(single(*s.found), f, cap).answer;
      if (back == Answer::no) {
        r.path = MinimalityPath::bounded_search;
        r.reduced = f;
        r.witness = s.found;
        r.rule = "least-arity member does not generate f";
        return finish(std::move(r), Answer::no, "a lower-arity member does not generate the clone");
      }
      if (back == Answer::unknown) return finish(std::move(r), Answer::unknown, "generation test cut off by the cap");
      g = s.found;
    }
  }
  r.reduced = g;

  if (g->arity() == 1) {
    r.path = MinimalityPath::unary_monoid;
    std::vector<Operation> powers;
    Operation cur = *g;
    while (std::find(powers.begin(), powers.end(), cur) == powers.end()) {
      powers.push_back(cur);
      const Operation inner[1] = {cur};
      cur = compose(*g, inner);
    }
    for (const auto& h : powers) {
      if (is_projection(h)) continue;
      std::vector<Operation> hp;
      Operation c = h;
      while (std::find(hp.begin(), hp.end(), c) == hp.end()) {
        hp.push_back(c);
        const Operation inner[1] = {c};
        c = compose(h, inner);
      }
      if (std::find(hp.begin(), hp.end(), *g) == hp.end()) {
        r.witness = h;
        return finish(std::move(r), Answer::no, "a power of the generator does not generate it");
      }
    }
    r.rule = "monoid of order " + std::to_string(powers.size());
    return finish(std::move(r), Answer::yes, "every non-identity power generates the generator");
  }

  if (g->arity() == 3 && check_identities(*g, Identity::minority)) {
    const auto group = detect_boolean_group_sum(*g);
    if (group) {
      MinimalityReport out = r;
      out.path = MinimalityPath::minority_theorem;
      out.rule = "x + y + z of an elementary abelian 2-group";
      return finish(std::move(out), Answer::yes, "minority operation is a Boolean group sum");
    }
    MinimalityReport out = bounded_minimality_search(*g, std::max(n_max, 3), cap);
    out.path = MinimalityPath::minority_theorem;
    out.n_max = r.n_max;
    out.exact = r.exact;
    if (!out.witness) {
      out.rule = "no Boolean group sum; witness search inconclusive";
      out.verdict.certificate.assumptions.push_back("witness not found within " + cap_note(cap));
    }
    out.verdict.answer = Answer::no;
    out.verdict.certificate.claim = "minority operation is not a Boolean group sum";
    return out;
  }

  if (g->arity() == 3 && check_identities(*g, Identity::majority)) {
    MinimalityReport out = majority_minimality(*g, cap);
    out.n_max = r.n_max;
    out.exact = r.exact;
    return out;
  }

  if (!is_projection(*g)) {
    std::string rule;
    if (is_rectangular_band(*g)) {
      rule = "rectangular band";
    } else if (is_idempotent_affine_prime(*g)) {
      rule = "idempotent affine operation over Z_p";
    } else if (is_p_cyclic_member(*g)) {
      rule = "p-cyclic groupoid";
    }
    if (!rule.empty()) {
      r.path = MinimalityPath::theorem_fast_path;
      r.rule = rule;
      return finish(std::move(r), Answer::yes, "operation lies in a known minimal clone: " + rule);
    }
  }

  MinimalityReport out = bounded_minimality_search(*g, n_max, cap);
  out.n_max = r.n_max;
  return out;
}

std::size_t EnumerationReport::classes_of(MinimalTag tag) const {
  return static_cast<std::size_t>(
      std::count_if(classes.begin(), classes.end(), [&](const EnumerationClass& c) { return c.tag == tag; }));
}

std::size_t EnumerationReport::clones_of(MinimalTag tag) const {
  std::size_t total = 0;
  for (const auto& c : classes) total += c.tag == tag ? c.clones : 0;
  return total;
}

std::vector<Operation> minimal_clone_candidates(int k) {
  std::vector<Operation> out;
  for_each_operation(k, 1, [&](const Operation& f) {
    if (!is_projection(f)) out.push_back(f);
    return false;
  });
  for_each_operation(k, 2, [&](const Operation& f) {
    if (is_idempotent(f) && !is_projection(f)) out.push_back(f);
    return false;
  });
  // Ternary shapes are fixed off the injective triples; enumerate the free
  // values there for each shape.
  std::vector<std::size_t> injective;
  std::vector<Value> args(3);
  for (std::size_t idx = 0; idx < table_length(k, 3); ++idx) {
    decode_tuple(idx, k, args);
    if (args[0] != args[1] && args[0] != args[2] && args[1] != args[2]) injective.push_back(idx);
  }
  const std::size_t free_count = table_length(k, static_cast<int>(injective.size()));
  for (int shape = 0; shape < 3; ++shape) {
    std::vector<Value> base(table_length(k, 3));
    for (std::size_t idx = 0; idx < base.size(); ++idx) {
      decode_tuple(idx, k, args);
      if (shape == 0) base[idx] = (args[0] == args[1] || args[0] == args[2]) ? args[0] : args[1];  // majority
      if (shape == 1) base[idx] = args[0] == args[1] ? args[2] : (args[0] == args[2] ? args[1] : args[0]);
      if (shape == 2) base[idx] = args[0];  // semiprojection onto x1
    }
    std::vector<Value> free(injective.size());
    for (std::size_t code = 0; code < free_count; ++code) {
      decode_tuple(code, k, free);
      std::vector<Value> table = base;
      for (std::size_t i = 0; i < injective.size(); ++i) table[injective[i]] = free[i];
      Operation f(k, 3, std::move(table));
      if (!is_projection(f)) out.push_back(std::move(f));
    }
  }
  return out;
}

EnumerationReport enumerate_minimal_clones(int k, std::size_t cap, int threads) {
  if (k < 2 || k > 3) throw Error(ErrorCode::DomainTooLarge, "census supported for k in {2, 3}");
  const auto candidates = minimal_clone_candidates(k);
  const int n_max = exact_threshold(k);

  struct Outcome {
    Answer answer = Answer::unknown;
    std::string error;
  };
  std::vector<Outcome> outcomes(candidates.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= candidates.size()) return;
      try {
        outcomes[i].answer = is_minimal_clone(candidates[i], n_max, cap).verdict.answer;
      } catch (const std::exception& e) {
        outcomes[i].error = e.what();
      }
    }
  };
  const int workers = std::max(1, threads);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Group minimal candidates by their ternary part, which determines the clone
  // (its generators have arity at most 3 = max(3, k)).
  struct CloneEntry {
    Operation generator;
    MinimalTag tag;
    ClonePart part;
  };
  std::map<std::vector<Operation>, CloneEntry> clones;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!outcomes[i].error.empty()) throw Error(ErrorCode::Inconclusive, outcomes[i].error);
    if (outcomes[i].answer == Answer::unknown) {
      throw Error(ErrorCode::Inconclusive, "candidate " + std::to_string(i) + " undecided within " + cap_note(cap));
    }
    if (outcomes[i].answer != Answer::yes) continue;
    const Operation& f = candidates[i];
    ClonePart part = clone_part(single(f), 3, cap);
    if (!part.closed) throw Error(ErrorCode::Inconclusive, "ternary part of a minimal clone hit the cap");
    const MinimalTag tag = classify_minimal_type(f).tag;
    std::vector<Operation> key = part.ops;
    auto it = clones.find(key);
    if (it == clones.end()) {
      clones.emplace(std::move(key), CloneEntry{f, tag, std::move(part)});
    } else if (f < it->second.generator) {
      it->second.generator = f;
      it->second.tag = tag;
    }
  }

  EnumerationReport report;
  report.k = k;
  report.candidates = candidates.size();
  report.total_clones = clones.size();
  std::map<std::pair<MinimalTag, std::string>, EnumerationClass> classes;
  for (auto& [ops, entry] : clones) {
    report.clone_generators.push_back(entry.generator);
    const std::string key = to_hex(canonical_key(entry.part));
    auto [it, inserted] = classes.try_emplace({entry.tag, key}, EnumerationClass{entry.tag, entry.generator, 0, entry.part.size(), key});
    it->second.clones += 1;
    if (entry.generator < it->second.representative) it->second.representative = entry.generator;
  }
  std::sort(report.clone_generators.begin(), report.clone_generators.end());
  for (auto& [_, c] : classes) report.classes.push_back(std::move(c));
  report.similarity_classes = report.classes.size();
  return report;
}

namespace {

// A subuniverse B with |B| >= 2 on which every generator is a projection.
// Restriction to B maps the clone onto projections, and projections satisfy
// no rare-area identity, so such a B rules out a Taylor term.
std::optional<std::vector<Value>> projection_subuniverse(const OperationSet& F) {
  const int k = F.k();
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    std::vector<Value> subset;
    for (int x = 0; x < k; ++x) {
      if (mask & (1u << x)) subset.push_back(static_cast<Value>(x));
    }
    if (subset.size() < 2) continue;
    bool ok = true;
    for (const auto& f : F.members()) {
      std::vector<Value> local(static_cast<std::size_t>(f.arity()));
      std::vector<Value> global(local.size());
      const std::size_t total = table_length(static_cast<int>(subset.size()), f.arity());
      for (std::size_t idx = 0; idx < total && ok; ++idx) {
        decode_tuple(idx, static_cast<int>(subset.size()), local);
        for (std::size_t i = 0; i < local.size(); ++i) global[i] = subset[local[i]];
        ok = (mask & (1u << f(global))) != 0;
      }
      if (!ok || !is_projection(restrict_to(f, subset))) {
        ok = false;
        break;
      }
    }
    if (ok) return subset;
  }
  return std::nullopt;
}

}  // namespace

Verdict has_taylor_witness(const OperationSet& F, std::size_t cap) {
  if (const auto b = projection_subuniverse(F)) {
    std::string listed;
    for (Value x : *b) listed += (listed.empty() ? "" : ",") + std::to_string(x);
    Verdict v = make_verdict(Answer::no, "every generator is a projection on the subuniverse {" + listed + "}");
    v.certificate.relations.push_back(make_relation(F.k(), 1, [&] {
      std::vector<std::vector<int>> tuples;
      for (Value x : *b) tuples.push_back({x});
      return tuples;
    }()));
    return v;
  }
  const auto s = search_part(F, 4, cap, [](const Operation& t) { return check_identities(t, Identity::rare_area); });
  switch (s.outcome) {
    case PartSearch::Outcome::found: {
      Verdict v = make_verdict(Answer::yes, "idempotent 4-ary term with t(r,a,r,e) = t(a,r,e,a)");
      v.certificate.operations.push_back(*s.found);
      return v;
    }
    case PartSearch::Outcome::closed:
      return make_verdict(Answer::no, "4-ary part closed (" + std::to_string(s.explored) + " tables) without a witness");
    case PartSearch::Outcome::cap_hit:
      break;
  }
  Verdict v = make_verdict(Answer::unknown, "4-ary part cut off by the cap");
  v.certificate.assumptions.push_back(cap_note(cap));
  return v;
}

Verdict clones_equal(const Operation& f, const Operation& g, std::size_t cap) {
  if (f.k() != g.k()) throw Error(ErrorCode::DomainMismatch, "operations on different domains");
  const Answer a = generates(single(f), g, cap).answer;
  if (a == Answer::no) return make_verdict(Answer::no, "first does not generate second");
  const Answer b = generates(single(g), f, cap).answer;
  if (b == Answer::no) return make_verdict(Answer::no, "second does not generate first");
  if (a == Answer::yes && b == Answer::yes) return make_verdict(Answer::yes, "each generates the other");
  Verdict v = make_verdict(Answer::unknown, "a generation test hit the cap");
  v.certificate.assumptions.push_back(cap_note(cap));
  return v;
}

Verdict clones_similar(const Operation& f, const Operation& g, std::size_t cap) {
  if (f.k() != g.k()) throw Error(ErrorCode::DomainMismatch, "operations on different domains");
  bool undecided = false;
  for (const auto& pi : all_bijections(f.k())) {
    const Operation h = conjugate(g, pi);
    const Verdict v = clones_equal(f, h, cap);
    if (v.yes()) {
      Verdict out = make_verdict(Answer::yes, "clones equal after conjugation");
      out.certificate.operations.push_back(h);
      return out;
    }
    undecided = undecided || v.unknown();
  }
  if (undecided) {
    Verdict v = make_verdict(Answer::unknown, "some conjugate could not be compared within the cap");
    v.certificate.assumptions.push_back(cap_note(cap));
    return v;
  }
  return make_verdict(Answer::no, "no conjugation makes the clones equal");
}

GammaData gamma_of(const Operation& f) {
  const Operation star = diagonal(f);
  const int k = f.k();
  // Periodic points of f*: the image of a high enough power.
  std::vector<bool> in(static_cast<std::size_t>(k), true);
  for (int step = 0; step < k; ++step) {
    std::vector<bool> next(static_cast<std::size_t>(k), false);
    for (int x = 0; x < k; ++x) {
      if (in[static_cast<std::size_t>(x)]) next[star.at(static_cast<std::size_t>(x))] = true;
    }
    in = std::move(next);
  }
  GammaData out{star, {}};
  for (int x = 0; x < k; ++x) {
    if (in[static_cast<std::size_t>(x)]) out.gamma.push_back(static_cast<Value>(x));
  }
  return out;
}

Operation restrict_to(const Operation& f, const std::vector<Value>& subset) {
  const int m = static_cast<int>(subset.size());
  std::vector<int> index(static_cast<std::size_t>(f.k()), -1);
  for (int i = 0; i < m; ++i) index[subset[static_cast<std::size_t>(i)]] = i;
  const int n = f.arity();
  std::vector<Value> table(table_length(m, n));
  std::vector<Value> local(static_cast<std::size_t>(n));
  std::vector<Value> global(static_cast<std::size_t>(n));
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    decode_tuple(idx, m, local);
    for (int i = 0; i < n; ++i) global[static_cast<std::size_t>(i)] = subset[local[static_cast<std::size_t>(i)]];
    const int v = index[f(global)];
    if (v < 0) throw Error(ErrorCode::PreconditionFailed, "subset is not closed under the operation");
    table[idx] = static_cast<Value>(v);
  }
  return Operation(m, n, std::move(table));
}

namespace {

// Values of f on gamma^n, in index order over gamma; entries may leave gamma.
std::vector<Value> values_on(const Operation& f, const std::vector<Value>& gamma) {
  const int m = static_cast<int>(gamma.size());
  const int n = f.arity();
  std::vector<Value> out(table_length(m, n));
  std::vector<Value> local(static_cast<std::size_t>(n));
  std::vector<Value> global(static_cast<std::size_t>(n));
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    decode_tuple(idx, m, local);
    for (int i = 0; i < n; ++i) global[static_cast<std::size_t>(i)] = gamma[local[static_cast<std::size_t>(i)]];
    out[idx] = f(global);
  }
  return out;
}

int dependent_count(const std::vector<Value>& values, int m, int n) {
  int count = 0;
  std::vector<Value> t(static_cast<std::size_t>(n));
  for (int var = 0; var < n; ++var) {
    bool depends = false;
    for (std::size_t idx = 0; idx < values.size() && !depends; ++idx) {
      decode_tuple(idx, m, t);
      const Value base = values[idx];
      for (int v = 0; v < m && !depends; ++v) {
        t[static_cast<std::size_t>(var)] = static_cast<Value>(v);
        std::size_t j = 0;
        for (int i = 0; i < n; ++i) j = j * static_cast<std::size_t>(m) + t[static_cast<std::size_t>(i)];
        depends = values[j] != base;
      }
    }
    count += depends ? 1 : 0;
  }
  return count;
}

// All minors of f of arity r (variable maps {1..n} -> {1..r}) plus projections.
std::set<Operation> minors_and_projections(const Operation& f, int r) {
  std::set<Operation> out;
  for (int i = 1; i <= r; ++i) out.insert(projection(f.k(), r, i));
  const int n = f.arity();
  std::vector<int> map(static_cast<std::size_t>(n), 1);
  while (true) {
    out.insert(minor(f, map, r));
    int pos = n - 1;
    while (pos >= 0 && map[static_cast<std::size_t>(pos)] == r) map[static_cast<std::size_t>(pos--)] = 1;
    if (pos < 0) break;
    ++map[static_cast<std::size_t>(pos)];
  }
  return out;
}

// Clo(f) consists of projections and minors of f: checked at arity n^2,
// which covers every composition f(g_1, ..., g_n) of minors.
Answer lazy_clone(const Operation& f, std::size_t cap) {
  const int n = f.arity();
  const int r = n * n;
  const auto members = minors_and_projections(f, r);
  const double work = std::pow(static_cast<double>(members.size()), n) * std::pow(static_cast<double>(f.k()), r);
  if (work > static_cast<double>(cap) * 1000.0) return Answer::unknown;
  const std::vector<Operation> list(members.begin(), members.end());
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  std::vector<Operation> args;
  while (true) {
    args.clear();
    for (auto i : idx) args.push_back(list[i]);
    if (!members.count(compose(f, args))) return Answer::no;
    int pos = n - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] + 1 == list.size()) idx[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
  }
  return Answer::yes;
}

}  // namespace

Verdict essential_minimality_typeA(const Operation& f, std::size_t cap) {
  if (is_idempotent(f)) throw Error(ErrorCode::Idempotent, "type A analysis needs a non-idempotent operation");
  const GammaData gd = gamma_of(f);
  const int m = static_cast<int>(gd.gamma.size());
  const int n = f.arity();
  const auto on_gamma = values_on(f, gd.gamma);
  if (dependent_count(on_gamma, m, n) < 2) {
    throw Error(ErrorCode::WrongType, "f restricted to Gamma(f) depends on fewer than two variables");
  }
  // (i) f(x_1..x_n) = f(f*(x_1), ..., f*(x_n)).
  std::vector<Value> args(static_cast<std::size_t>(n));
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    decode_tuple(idx, f.k(), args);
    const Value direct = f.at(idx);
    for (auto& a : args) a = gd.star.at(a);
    if (f(args) != direct) {
      return make_verdict(Answer::no, "f(x_1..x_n) = f(f*(x_1)..f*(x_n)) fails");
    }
  }
  std::vector<bool> in_gamma(static_cast<std::size_t>(f.k()), false);
  for (Value g : gd.gamma) in_gamma[g] = true;
  const bool range_inside = std::all_of(on_gamma.begin(), on_gamma.end(), [&](Value v) { return in_gamma[v]; });
  if (range_inside) {
    const Operation restricted = restrict_to(f, gd.gamma);
    const auto rep = is_minimal_clone(restricted, std::max(3, m), cap);
    Verdict v = rep.verdict;
    v.certificate.claim = "range of f on Gamma(f) stays in Gamma(f); restriction minimality: " + v.certificate.claim;
    v.certificate.operations.insert(v.certificate.operations.begin(), restricted);
    return v;
  }
  // (ii)(b): f*(f(x)) essentially unary, lazy, minimal among lazy clones.
  std::vector<Value> composed(f.size());
  for (std::size_t idx = 0; idx < f.size(); ++idx) composed[idx] = gd.star.at(f.at(idx));
  if (analyze(Operation(f.k(), n, composed)).essential_vars.size() > 1) {
    return make_verdict(Answer::no, "f*(f(x)) is not essentially unary");
  }
  const Answer lazy = lazy_clone(f, cap);
  if (lazy == Answer::no) return make_verdict(Answer::no, "clone is not lazy");
  if (lazy == Answer::unknown) {
    Verdict v = make_verdict(Answer::unknown, "laziness check exceeds the work bound");
    v.certificate.assumptions.push_back(cap_note(cap));
    return v;
  }
  for (const auto& h : minors_and_projections(f, n)) {
    if (analyze(h).essential_vars.size() < 2) continue;
    if (lazy_clone(h, cap) != Answer::yes) continue;
    const Answer back = generates(single(h), f, cap).answer;
    if (back == Answer::no) {
      Verdict v = make_verdict(Answer::no, "a proper nontrivial lazy subclone exists");
      v.certificate.operations.push_back(h);
      return v;
    }
    if (back == Answer::unknown) return make_verdict(Answer::unknown, "generation test hit the cap");
  }
  return make_verdict(Answer::yes, "lazy clone, minimal among nontrivial lazy clones");
}

}  // namespace cloneforge

namespace cloneforge {

namespace {

std::vector<std::vector<Value>> subsets_of_size(int k, int size) {
  std::vector<std::vector<Value>> out;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    if (__builtin_popcount(mask) != size) continue;
    std::vector<Value> s;
    for (int x = 0; x < k; ++x) {
      if (mask & (1u << x)) s.push_back(static_cast<Value>(x));
    }
    out.push_back(std::move(s));
  }
  return out;
}

Verdict conservative_binary(const Operation& f) {
  const int k = f.k();
  bool semilattice = false;
  int side = 0;  // 1 or 2 once a projection restriction is seen
  bool mixed = false;
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      const Value ab = f.at(static_cast<std::size_t>(a * k + b));
      const Value ba = f.at(static_cast<std::size_t>(b * k + a));
      if (ab == ba) {
        semilattice = true;
        continue;
      }
      const int s = ab == a ? 1 : 2;
      if (side != 0 && side != s) mixed = true;
      side = s;
    }
  }
  if (!semilattice) return make_verdict(Answer::no, "no two-element restriction is a semilattice");
  if (mixed) return make_verdict(Answer::no, "projection restrictions project onto different variables");
  return make_verdict(Answer::yes, "a semilattice restriction and all projection restrictions on one side");
}

Verdict conservative_majority(const Operation& f, std::size_t cap) {
  struct Piece {
    std::string clone_key;
    std::string algebra_key;
  };
  std::vector<Piece> pieces;
  for (const auto& B : subsets_of_size(f.k(), 3)) {
    const Operation fb = restrict_to(f, B);
    const auto rep = majority_minimality(fb, cap);
    if (rep.verdict.no()) return make_verdict(Answer::no, "a three-element restriction is not minimal");
    if (rep.verdict.unknown()) return make_verdict(Answer::unknown, "restriction minimality cut off by the cap");
    pieces.push_back({canonical_key(clone_part(OperationSet(3, {fb}), 3, cap)), canonical_key(fb)});
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      if (pieces[i].clone_key == pieces[j].clone_key && pieces[i].algebra_key != pieces[j].algebra_key) {
        return make_verdict(Answer::no, "restrictions with similar clones are not isomorphic");
      }
    }
  }
  return make_verdict(Answer::yes, "restrictions are minimal and similar ones are isomorphic");
}

// Condition that every non-projection restriction to an n-subset is s_rho for
// isomorphic bitransitive relations rho.
bool bitransitive_restrictions(const Operation& f) {
  const int n = f.arity();
  std::optional<std::string> key;
  for (const auto& B : subsets_of_size(f.k(), n)) {
    const Operation fb = restrict_to(f, B);
    if (is_projection(fb)) continue;
    std::map<std::pair<Value, Value>, bool> choice;
    std::vector<Value> t(static_cast<std::size_t>(n));
    for (std::size_t idx = 0; idx < fb.size(); ++idx) {
      decode_tuple(idx, n, t);
      std::vector<Value> sorted = t;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
      const Value first = t.front();
      const Value last = t.back();
      const Value v = fb.at(idx);
      if (v != first && v != last) return false;
      const bool takes_last = v == last;
      auto [it, inserted] = choice.try_emplace({first, last}, takes_last);
      if (!inserted && it->second != takes_last) return false;
    }
    std::vector<std::vector<Value>> pairs;
    for (int a = 0; a < n; ++a) pairs.push_back({static_cast<Value>(a), static_cast<Value>(a)});
    for (const auto& [ends, takes_last] : choice) {
      if (takes_last) pairs.push_back({ends.first, ends.second});
    }
    const Relation rho(n, 2, pairs);
    if (!is_bitransitive(rho)) return false;
    const std::string k2 = canonical_key(rho);
    if (key && *key != k2) return false;
    key = k2;
  }
  return true;
}

}  // namespace

Verdict conservative_minimal_check(const Operation& f, std::size_t cap) {
  if (!check_identities(f, Identity::conservative)) throw Error(ErrorCode::NotConservative, "f is not conservative");
  if (is_projection(f)) return make_verdict(Answer::no, "f is a projection");
  if (f.arity() == 2) return conservative_binary(f);
  if (f.arity() == 3 && check_identities(f, Identity::majority)) return conservative_majority(f, cap);
  const auto target = semiprojection_target(f);
  if (!target || f.k() < f.arity()) {
    throw Error(ErrorCode::WrongShape, "expected a binary, majority, or semiprojection operation with k >= arity");
  }
  Operation g = f;
  if (*target != 1) {
    std::vector<int> map(static_cast<std::size_t>(f.arity()));
    std::iota(map.begin(), map.end(), 1);
    std::swap(map[0], map[static_cast<std::size_t>(*target - 1)]);
    g = minor(f, map, f.arity());
  }
  const bool condition = bitransitive_restrictions(g);
  const auto rep = is_minimal_clone(g, std::max(3, f.k()), cap);
  Verdict v = rep.verdict;
  v.certificate.assumptions.push_back(std::string("bitransitive restriction condition: ") +
                                      (condition ? "holds" : "fails"));
  return v;
}

}  // namespace cloneforge
