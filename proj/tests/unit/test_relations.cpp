#include <doctest.h>

#include <set>

#include "cloneforge/closure.hpp"
#include "cloneforge/error.hpp"
#include "cloneforge/membership.hpp"
#include "helpers.hpp"

using namespace cloneforge;
using namespace cloneforge::testing;

namespace {

// Preservation by definition: every choice of arity(f) tuples, no shortcuts.
bool preserves_naive(const Operation& f, const Relation& rho) {
  const int n = f.arity();
  std::size_t selections = 1;
  for (int i = 0; i < n; ++i) selections *= rho.size();
  std::vector<Value> pick(static_cast<std::size_t>(n));
  std::vector<Value> args(static_cast<std::size_t>(n));
  std::vector<Value> image(static_cast<std::size_t>(rho.arity()));
  for (std::size_t s = 0; s < selections; ++s) {
    std::size_t rest = s;
    for (int i = n - 1; i >= 0; --i) {
      pick[static_cast<std::size_t>(i)] = static_cast<Value>(rest % rho.size());
      rest /= rho.size();
    }
    for (int c = 0; c < rho.arity(); ++c) {
      for (int i = 0; i < n; ++i) args[static_cast<std::size_t>(i)] = rho.tuple(pick[static_cast<std::size_t>(i)])[static_cast<std::size_t>(c)];
      image[static_cast<std::size_t>(c)] = f(args);
    }
    if (!rho.contains(image)) return false;
  }
  return true;
}

bool essentially_unary_or_not_onto(const Operation& f) {
  std::set<int> range(f.table().begin(), f.table().end());
  int essential = 0;
  for (int i = 1; i <= f.arity(); ++i) {
    // Variable i matters iff changing only that argument changes the value.
    bool matters = false;
    std::vector<Value> a(static_cast<std::size_t>(f.arity()));
    for (std::size_t idx = 0; idx < f.size() && !matters; ++idx) {
      decode_tuple(idx, f.k(), a);
      for (int v = 0; v < f.k() && !matters; ++v) {
        std::vector<Value> b = a;
        b[static_cast<std::size_t>(i - 1)] = static_cast<Value>(v);
        matters = f(a) != f(b);
      }
    }
    essential += matters ? 1 : 0;
  }
  return essential <= 1 || static_cast<int>(range.size()) < f.k();
}

}  // namespace

TEST_SUITE("relations") {
  TEST_CASE("make_relation canonicalizes") {
    const Relation zero = rel(2, 1, {{0}});
    CHECK(zero.size() == 1);
    const Relation le = rel(2, 2, {{1, 1}, {0, 1}, {0, 0}, {0, 1}});
    CHECK(le == chain_order(2));
    CHECK(le.size() == 3);
    CHECK(le.tuple(0)[1] == 0);
    CHECK_THROWS_AS(rel(3, 2, {{0, 0}, {0, 3}}), Error);
    try {
      rel(3, 2, {{0, 0}, {0, 3}});
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ValueOutOfRange);
    }
    try {
      rel(3, 0, {});
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BadArity);
    }
  }

  TEST_CASE("profiles") {
    const RelationProfile iota = profile(slupecki(3));
    CHECK(slupecki(3).size() == 21);
    CHECK(iota.totally_reflexive);
    CHECK(iota.totally_symmetric);
    CHECK(iota.center.empty());
    const RelationProfile le = profile(chain_order(2));
    CHECK(le.is_bounded_order);
    CHECK(le.is_bitransitive);
    const RelationProfile cycle = profile(graph_of(op(3, 1, {1, 2, 0})));
    CHECK(cycle.is_fpf_prime_permutation_graph == 3);
    CHECK_FALSE(profile(graph_of(op(4, 1, {1, 2, 3, 0}))).is_fpf_prime_permutation_graph.has_value());
    CHECK(profile(graph_of(op(4, 1, {1, 0, 3, 2}))).is_fpf_prime_permutation_graph == 2);
    CHECK(profile(equality_relation(3)).is_equivalence);
    CHECK(profile(equality_relation(3)).diagonal);
    const Value c0[] = {0};
    const Relation central = subset_relation(3, c0);
    CHECK(center_of(central) == std::vector<Value>{0});
  }

  TEST_CASE("preservation examples") {
    CHECK(preserves(named("and"), chain_order(2)));
    const Value zero[] = {0};
    CHECK_FALSE(preserves(named("not"), subset_relation(2, zero)));
    CHECK(preserves(named("xor"), affine_relation(2, 1)));
    CHECK_THROWS_AS(preserves(named("and"), chain_order(3)), Error);
  }

  TEST_CASE("preservation agrees with the definition") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 300; ++trial) {
      const int k = 2 + static_cast<int>(rng() % 2);
      const int m = 1 + static_cast<int>(rng() % 3);
      std::vector<std::vector<int>> tuples;
      const std::size_t total = table_length(k, m);
      std::vector<Value> t(static_cast<std::size_t>(m));
      for (std::size_t i = 0; i < total; ++i) {
        if (rng() % 2 == 0) continue;
        decode_tuple(i, k, t);
        tuples.emplace_back(t.begin(), t.end());
      }
      if (tuples.empty()) continue;
      const Relation rho = make_relation(k, m, tuples);
      const Operation f = random_operation(rng, k, 1 + static_cast<int>(rng() % 2));
      CHECK(preserves(f, rho) == preserves_naive(f, rho));
    }
  }

  TEST_CASE("pol_part examples") {
    const Value zero[] = {0};
    const ClonePart unary = pol_part({subset_relation(2, zero)}, 1);
    CHECK(unary.size() == 2);
    CHECK(unary.contains(constant(2, 0)));
    CHECK(unary.contains(projection(2, 1, 1)));
    // Monotone binary Boolean functions, counted on tables directly.
    int monotone = 0;
    for (const auto& f : all_operations(2, 2)) {
      const auto t = f.table();
      monotone += (t[0] <= t[1] && t[0] <= t[2] && t[1] <= t[3] && t[2] <= t[3]) ? 1 : 0;
    }
    CHECK(pol_part({chain_order(2)}, 2).size() == static_cast<std::size_t>(monotone));
    CHECK(monotone == 6);
    const ClonePart neg = pol_part({graph_of(named("not"))}, 1);
    CHECK(neg.size() == 2);
    CHECK(neg.contains(named("not")));
    CHECK_THROWS_AS(pol_part({chain_order(3)}, 3, 1000), Error);
    CHECK_THROWS_AS(pol_part({}, 1), Error);
  }

  TEST_CASE("Slupecki membership") {
    CHECK_FALSE(slupecki_membership(named("max", 3)));
    CHECK(slupecki_membership(constant(3, 0)));
    const Relation iota = slupecki(3);
    for (int n : {1, 2}) {
      for (const auto& f : all_operations(3, n)) {
        CHECK(slupecki_membership(f) == preserves(f, iota));
        CHECK(slupecki_membership(f) == essentially_unary_or_not_onto(f));
      }
    }
  }

  TEST_CASE("affine clone membership") {
    CHECK(in_affine_clone(affine_sum(3), 3, 1));
    CHECK_FALSE(in_affine_clone(named("max", 3), 3, 1));
    BuiltinParams p;
    p.k = 3;
    p.coefficients = {2, -1, 0};
    CHECK(in_affine_clone(builtin("linear_mod", p), 3, 1));
    CHECK_THROWS_AS(in_affine_clone(named("max", 3), 2, 1), Error);
    for (int prime : {2, 3}) {
      const Relation alpha = affine_relation(prime, 1);
      for (int n : {1, 2}) {
        for (const auto& f : all_operations(prime, n)) CHECK(in_affine_clone(f, prime, 1) == preserves(f, alpha));
      }
    }
    // Z_2 x Z_2: coordinatewise sum is affine, the chain median is not.
    CHECK(in_affine_clone(ternary_sum(2, 2), 2, 2));
    CHECK_FALSE(in_affine_clone(named("median", 4), 2, 2));
  }

  TEST_CASE("subpowers") {
    const Relation s = generate_subpower(OperationSet(2, {named("and")}), 2, {{0, 1}, {1, 0}});
    CHECK(s == rel(2, 2, {{0, 1}, {1, 0}, {0, 0}}));
    CHECK(generate_subpower(OperationSet(2, {named("median")}), 1, {{0}}) == rel(2, 1, {{0}}));
    const Relation diag = generate_subpower(OperationSet(2, {ternary_sum(2)}), 2, {{0, 0}, {1, 1}});
    CHECK(diag == equality_relation(2));
    // Closed output is a fixpoint.
    std::vector<std::vector<Value>> gens;
    for (std::size_t i = 0; i < s.size(); ++i) gens.emplace_back(s.tuple(i).begin(), s.tuple(i).end());
    CHECK(generate_subpower(OperationSet(2, {named("and")}), 2, gens) == s);
    CHECK_THROWS_AS(generate_subpower(OperationSet(3, {named("max", 3)}), 2, {{0, 5}}), Error);
  }

  TEST_CASE("subpower membership") {
    const OperationSet med(2, {named("median")});
    CHECK(bp_membership(named("median"), med, 2).yes());
    const Verdict conj = bp_membership(named("and"), med, 2);
    CHECK(conj.no());
    REQUIRE(conj.certificate.relations.size() == 1);
    CHECK_FALSE(preserves(named("and"), conj.certificate.relations.front()));
    CHECK(bp_membership(projection(2, 2, 1), med, 2).yes());
    CHECK_THROWS_AS(bp_membership(named("max", 3), med, 2), Error);
    // Without a near-unanimity term the subpower test cannot confirm membership.
    const Verdict lin = bp_membership(ternary_sum(2), OperationSet(2, {ternary_sum(2)}), 2);
    CHECK(lin.unknown());
  }

  TEST_CASE("subpower membership agrees with closure for a majority clone") {
    const OperationSet dd(3, {named("dual_discriminator", 3)});
    const ClonePart binary = clone_part(dd, 2);
    REQUIRE(binary.closed);
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 40; ++trial) {
      const Operation f = trial < 5 ? binary.ops[static_cast<std::size_t>(trial) % binary.size()] : random_operation(rng, 3, 2);
      const Verdict v = bp_membership(f, dd, 2);
      REQUIRE_FALSE(v.unknown());
      CHECK(v.yes() == binary.contains(f));
    }
  }

  TEST_CASE("rigidity needs a certified list") {
    const MinimalGeneratorList two = certified_minimal_generators(2);
    CHECK(two.generators.size() == 7);
    CHECK_FALSE(is_rigid(full_relation(2, 2), two));
    const Value zero[] = {0};
    CHECK_FALSE(is_rigid(subset_relation(2, zero), two));
    CHECK_THROWS_AS(is_rigid(chain_order(2), MinimalGeneratorList{2, two.generators, false}), Error);
    CHECK_THROWS_AS(is_rigid(chain_order(3), two), Error);
    CHECK_THROWS_AS(certified_minimal_generators(4), Error);
    // On two elements every relation admits some non-projection: the
    // polymorphisms of {(0,1),(1,0),(0,0)} include the conjunction.
    CHECK_FALSE(is_rigid(rel(2, 2, {{0, 1}, {1, 0}, {0, 0}}), two));
  }
}

TEST_SUITE("relation properties") {
  TEST_CASE("preservation is conjugation invariant") {
    std::mt19937_64 rng(33);
    const std::vector<Relation> rels = {chain_order(3), slupecki(3), affine_relation(3, 1), equality_relation(3),
                                        rel(3, 2, {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 0}})};
    for (int trial = 0; trial < 200; ++trial) {
      const Operation f = random_operation(rng, 3, 1 + static_cast<int>(rng() % 2));
      const Relation& rho = rels[static_cast<std::size_t>(trial) % rels.size()];
      const Bijection pi = random_bijection(rng, 3);
      CHECK(preserves(f, rho) == preserves(conjugate(f, pi), conjugate(rho, pi)));
    }
  }

  TEST_CASE("polymorphisms are closed under composition") {
    std::mt19937_64 rng(34);
    const Relation rho = chain_order(3);
    const ClonePart part = pol_part({rho}, 2);
    for (int trial = 0; trial < 200; ++trial) {
      const Operation& f = part.ops[rng() % part.size()];
      const Operation gs[] = {part.ops[rng() % part.size()], part.ops[rng() % part.size()]};
      CHECK(preserves(compose(f, gs), rho));
    }
  }

  TEST_CASE("Slupecki membership on sampled ternary operations") {
    std::mt19937_64 rng(35);
    const Relation iota = slupecki(3);
    for (int trial = 0; trial < 2000; ++trial) {
      const Operation f = random_operation(rng, 3, 3);
      CHECK(slupecki_membership(f) == preserves(f, iota));
    }
  }
}
