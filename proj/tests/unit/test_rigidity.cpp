#include <doctest.h>

#include "cloneforge/closure.hpp"
#include "cloneforge/membership.hpp"
#include "helpers.hpp"

using namespace cloneforge;
using namespace cloneforge::testing;

TEST_CASE("a rigid ternary relation on three elements") {
  const MinimalGeneratorList list = certified_minimal_generators(3);
  REQUIRE(list.generators.size() == 84);

  // Seeded search over random ternary relations.
  std::mt19937_64 rng(1);
  std::optional<Relation> rigid;
  for (int trial = 0; trial < 1000 && !rigid; ++trial) {
    std::vector<Value> flat;
    std::vector<Value> t(3);
    for (std::size_t i = 0; i < 27; ++i) {
      if (rng() % 3 != 0) continue;
      decode_tuple(i, 3, t);
      flat.insert(flat.end(), t.begin(), t.end());
    }
    if (flat.empty()) continue;
    Relation rho = Relation::from_flat(3, 3, std::move(flat));
    if (is_rigid(rho, list)) rigid = std::move(rho);
  }
  REQUIRE(rigid.has_value());

  // Unary and binary polymorphisms, found by filtering every table, are
  // projections only.
  for (int n : {1, 2}) {
    const ClonePart pol = pol_part({*rigid}, n);
    CHECK(pol.size() == static_cast<std::size_t>(n));
    for (const auto& f : pol.ops) CHECK(is_projection(f));
  }

  CHECK_FALSE(is_rigid(full_relation(3, 2), list));
  CHECK_FALSE(is_rigid(chain_order(3), list));
  CHECK_FALSE(is_rigid(slupecki(3), list));
}
