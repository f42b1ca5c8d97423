#include <doctest.h>

#include <map>
#include <set>

#include "cloneforge/canonical.hpp"
#include "cloneforge/closure.hpp"
#include "cloneforge/error.hpp"
#include "cloneforge/maximal.hpp"
#include "helpers.hpp"

using namespace cloneforge;
using namespace cloneforge::testing;

namespace {

std::map<std::string, int> breakdown(const std::vector<MaximalWitness>& ws) {
  std::map<std::string, int> out;
  for (const auto& w : ws) {
    std::string key(to_string(w.rtype));
    if (w.rtype == RelationType::central || w.rtype == RelationType::h_regular) key += std::to_string(w.m);
    ++out[key];
  }
  return out;
}

std::vector<Operation> all_unary(int k) { return all_operations(k, 1); }

}  // namespace

TEST_SUITE("maximal clones") {
  TEST_CASE("per-type enumeration on three elements") {
    CHECK(gen_type(3, RelationType::equivalence).size() == 3);
    CHECK(gen_type(3, RelationType::central, 1).size() == 6);
    const auto h = gen_type(3, RelationType::h_regular);
    REQUIRE(h.size() == 1);
    CHECK(h.front().relation == slupecki(3));
    CHECK(gen_type(3, RelationType::bounded_order).size() == 3);
    CHECK(gen_type(3, RelationType::fpf_prime_perm).size() == 1);
    CHECK(gen_type(3, RelationType::affine).size() == 1);
    CHECK_THROWS_AS(gen_type(6, RelationType::affine), Error);
    CHECK_THROWS_AS(gen_type(2, RelationType::h_regular), Error);
    CHECK_THROWS_AS(gen_type(3, RelationType::central, 3), Error);
  }

  TEST_CASE("Post's five on two elements") {
    const auto& ws = gen_all_maximal(2);
    REQUIRE(ws.size() == 5);
    const Value zero[] = {0};
    const Value one[] = {1};
    std::set<Relation> expected = {chain_order(2), graph_of(named("not")), subset_relation(2, zero),
                                   subset_relation(2, one), affine_relation(2, 1)};
    std::set<Relation> got;
    for (const auto& w : ws) got.insert(w.relation);
    CHECK(got == expected);
  }

  TEST_CASE("eighteen maximal clones on three elements") {
    const auto& ws = gen_all_maximal(3);
    CHECK(ws.size() == 18);
    const std::map<std::string, int> expected = {{"bounded_order", 3}, {"fpf_prime_perm", 1}, {"affine", 1},
                                                 {"equivalence", 3},   {"central1", 6},       {"central2", 3},
                                                 {"h_regular3", 1}};
    CHECK(breakdown(ws) == expected);
    std::set<std::vector<Value>> unary_parts;
    for (const auto& w : ws) unary_parts.insert(unary_part_key(w.relation));
    CHECK(unary_parts.size() == 18);
  }

  TEST_CASE("four elements") {
    const auto& ws = gen_all_maximal(4);
    const auto b = breakdown(ws);
    CHECK(b.at("bounded_order") == 18);
    CHECK(b.at("fpf_prime_perm") == 3);
    CHECK(b.at("affine") == 1);
    CHECK(b.at("equivalence") == 13);
    CHECK(b.at("h_regular3") + b.at("h_regular4") == 7);
    CHECK_THROWS_AS(gen_all_maximal(5), Error);
  }

  TEST_CASE("witness invariants") {
    for (int k : {3, 4}) {
      for (const auto& w : gen_all_maximal(k)) {
        const auto unary = unary_part_key(w.relation);
        // Only Slupecki's clone contains every unary operation.
        const bool full = unary.size() == table_length(k, k) * static_cast<std::size_t>(k);
        CHECK(full == (w.relation == slupecki(k)));
        switch (w.rtype) {
          case RelationType::bounded_order:
            CHECK(is_bounded_order(w.relation));
            break;
          case RelationType::fpf_prime_perm:
            CHECK(fpf_prime_permutation(w.relation) == w.prime);
            break;
          case RelationType::equivalence:
            CHECK(is_equivalence(w.relation));
            break;
          case RelationType::central:
            CHECK_FALSE(center_of(w.relation).empty());
            CHECK(is_totally_reflexive(w.relation));
            CHECK(is_totally_symmetric(w.relation));
            CHECK(w.relation != full_relation(k, w.m));
            break;
          case RelationType::h_regular:
            CHECK(is_totally_reflexive(w.relation));
            CHECK(is_totally_symmetric(w.relation));
            break;
          case RelationType::affine:
            CHECK(w.relation.size() == table_length(k, 3));
            break;
        }
      }
    }
  }

  TEST_CASE("order is type, then canonical key") {
    const auto& ws = gen_all_maximal(3);
    for (std::size_t i = 1; i < ws.size(); ++i) {
      const bool ordered = ws[i - 1].rtype < ws[i].rtype ||
                           (ws[i - 1].rtype == ws[i].rtype && canonical_key(ws[i - 1].relation) <= canonical_key(ws[i].relation));
      CHECK(ordered);
    }
  }

  TEST_CASE("completeness examples") {
    CHECK(is_complete(OperationSet(2, {named("nand")})).complete);
    const auto mono = is_complete(OperationSet(2, {named("and"), named("or"), constant(2, 0), constant(2, 1)}));
    CHECK_FALSE(mono.complete);
    REQUIRE(mono.blocking().size() == 1);
    CHECK(mono.blocking().front()->witness.relation == chain_order(2));
    const auto dd = is_complete(OperationSet(3, {named("dual_discriminator", 3)}));
    CHECK_FALSE(dd.complete);
    bool subset_blocks = false;
    for (const auto* c : dd.blocking()) subset_blocks |= c->witness.rtype == RelationType::central && c->witness.m == 1;
    CHECK(subset_blocks);
    CHECK_THROWS_AS(is_complete(OperationSet(2, {})), Error);
  }

  TEST_CASE("Sheffer examples") {
    CHECK(is_sheffer(named("nand")).yes());
    CHECK(is_sheffer(named("nor")).yes());
    const Verdict conj = is_sheffer(named("and"));
    CHECK(conj.no());
    const Value zero[] = {0};
    CHECK(std::find(conj.certificate.relations.begin(), conj.certificate.relations.end(), subset_relation(2, zero)) !=
          conj.certificate.relations.end());
    CHECK(is_sheffer(named("webb", 3)).yes());
    CHECK(complete_bruteforce(OperationSet(3, {named("webb", 3)})));
  }

  TEST_CASE("Sheffer agrees with brute force on all binary Boolean operations") {
    for (const auto& f : all_operations(2, 2)) CHECK(is_sheffer(f).yes() == complete_bruteforce(OperationSet(2, {f})));
  }

  TEST_CASE("functional completeness") {
    const Operation t = named("discriminator", 2);
    CHECK(is_functionally_complete(OperationSet(2, {t})).yes());
    CHECK(complete_bruteforce(OperationSet(2, {t, constant(2, 0), constant(2, 1)})));
    CHECK(is_functionally_complete(OperationSet(2, {named("and")})).no());
    const Verdict lin = is_functionally_complete(OperationSet(2, {ternary_sum(2)}));
    CHECK(lin.no());
    CHECK(lin.certificate.relations == std::vector<Relation>{affine_relation(2, 1)});
    // Adding all constants turns functional completeness into completeness.
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 30; ++trial) {
      const Operation f = random_operation(rng, 3, 2);
      std::vector<Operation> with_constants = {f, constant(3, 0), constant(3, 1), constant(3, 2)};
      CHECK(is_functionally_complete(OperationSet(3, {f})).yes() == is_complete(OperationSet(3, with_constants)).complete);
    }
  }

  TEST_CASE("Slupecki criterion") {
    std::vector<Operation> base = all_unary(3);
    auto with = [&](const Operation& extra) {
      std::vector<Operation> ops = base;
      ops.push_back(extra);
      return OperationSet(3, ops);
    };
    CHECK(slupecki_criterion(with(named("max", 3))).yes());
    const int cycle_x[] = {1};
    CHECK(slupecki_criterion(with(minor(op(3, 1, {1, 2, 0}), cycle_x, 2))).no());
    CHECK(slupecki_criterion(with(op(3, 2, {0, 0, 0, 0, 1, 1, 0, 1, 1}))).no());
    CHECK_THROWS_AS(slupecki_criterion(OperationSet(3, {named("max", 3)})), Error);
    CHECK_THROWS_AS(slupecki_criterion(OperationSet(2, all_unary(2))), Error);
    // Agreement with the maximal-clone test.
    std::mt19937_64 rng(52);
    for (int trial = 0; trial < 20; ++trial) {
      const OperationSet F = with(random_operation(rng, 3, 2));
      CHECK(slupecki_criterion(F).yes() == is_complete(F).complete);
    }
  }
}

TEST_SUITE("maximal clone properties") {
  TEST_CASE("completeness agrees with brute force") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 40; ++trial) {
      const int k = 2 + trial % 2;
      std::vector<Operation> ops = {random_operation(rng, k, 1 + static_cast<int>(rng() % 2))};
      const OperationSet F(k, ops);
      CHECK(is_complete(F).complete == complete_bruteforce(F));
    }
  }

  TEST_CASE("completeness is conjugation invariant") {
    std::mt19937_64 rng(54);
    for (int trial = 0; trial < 40; ++trial) {
      const int k = 2 + trial % 3;
      const OperationSet F(k, {random_operation(rng, k, 2)});
      CHECK(is_complete(F).complete == is_complete(conjugate(F, random_bijection(rng, k))).complete);
    }
  }

  TEST_CASE("witness list is stable under conjugation") {
    std::mt19937_64 rng(55);
    for (int k : {3, 4}) {
      std::multiset<std::string> keys;
      std::multiset<std::vector<Value>> conj_unary;
      std::multiset<std::vector<Value>> unary;
      const Bijection pi = random_bijection(rng, k);
      for (const auto& w : gen_all_maximal(k)) {
        keys.insert(canonical_key(w.relation));
        unary.insert(unary_part_key(w.relation));
        conj_unary.insert(unary_part_key(conjugate(w.relation, pi)));
      }
      std::multiset<std::string> conj_keys;
      for (const auto& w : gen_all_maximal(k)) conj_keys.insert(canonical_key(conjugate(w.relation, pi)));
      CHECK(keys == conj_keys);
      // The conjugated list is again one witness per maximal clone.
      std::set<std::vector<Value>> a(unary.begin(), unary.end());
      std::set<std::vector<Value>> b(conj_unary.begin(), conj_unary.end());
      CHECK(a == b);
    }
  }
}
