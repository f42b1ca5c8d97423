#include "cloneforge/membership.hpp"

#include <map>
#include <string>

#include "cloneforge/error.hpp"
#include "cloneforge/identities.hpp"
#include "cloneforge/minimal.hpp"

namespace cloneforge {

Verdict bp_membership(const Operation& f, const OperationSet& F, int d, std::size_t cap) {
  if (f.k() != F.k()) throw Error(ErrorCode::DomainMismatch, "operation and set live on different domains");
  if (d < 2) throw Error(ErrorCode::BadParams, "subpower dimension must be at least 2");
  if (F.empty()) throw Error(ErrorCode::EmptySet, "empty operation set");
  const int k = f.k();
  const std::size_t points = table_length(k, d);
  const int n = f.arity();

  // Generator sets are strictly increasing index sequences of length 1..n.
  std::map<std::vector<std::size_t>, bool> seen;
  for (int size = 1; size <= n && static_cast<std::size_t>(size) <= points; ++size) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
    while (true) {
      std::vector<std::vector<Value>> gens;
      for (auto i : idx) {
        std::vector<Value> t(static_cast<std::size_t>(d));
        decode_tuple(i, k, t);
        gens.push_back(std::move(t));
      }
      const Relation sub = generate_subpower(F, d, gens);
      if (!preserves(f, sub)) {
        Verdict v = make_verdict(Answer::no, "f does not preserve a subpower of the generated algebra");
        v.certificate.relations.push_back(sub);
        return v;
      }
      int pos = size - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == points - static_cast<std::size_t>(size - pos)) --pos;
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
      for (int i = pos + 1; i < size; ++i) idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
  }

  const PartSearch nu = search_part(F, d + 1, cap, [](const Operation& g) {
    return check_identities(g, Identity::near_unanimity);
  });
  const std::string arity = std::to_string(d + 1);
  switch (nu.outcome) {
    case PartSearch::Outcome::found: {
      Verdict v = make_verdict(Answer::yes, "f preserves every subpower and the clone has a " + arity + "-ary near-unanimity term");
      v.certificate.operations.push_back(*nu.found);
      return v;
    }
    case PartSearch::Outcome::cap_hit: {
      Verdict v = make_verdict(Answer::yes, "f preserves every subpower");
      v.certificate.assumptions.push_back("Clo(F) has a " + arity + "-ary near-unanimity term (search cut off after " +
                                          std::to_string(nu.explored) + " tables)");
      return v;
    }
    case PartSearch::Outcome::closed:
      break;
  }
  return make_verdict(Answer::unknown, "f preserves every subpower but Clo(F) has no " + arity +
                                           "-ary near-unanimity term, so subpowers do not decide membership");
}

MinimalGeneratorList certified_minimal_generators(int k, std::size_t cap, int threads) {
  if (k < 2 || k > 3) throw Error(ErrorCode::IncompleteList, "a complete minimal-clone list is available only for k <= 3");
  const EnumerationReport report = enumerate_minimal_clones(k, cap, threads);
  return MinimalGeneratorList{k, report.clone_generators, true};
}

bool is_rigid(const Relation& rho, const MinimalGeneratorList& list) {
  if (!list.certified) throw Error(ErrorCode::IncompleteList, "minimal-clone list is not certified complete");
  if (list.k != rho.k()) throw Error(ErrorCode::IncompleteList, "minimal-clone list belongs to another domain");
  for (const auto& g : list.generators) {
    if (preserves(g, rho)) return false;
  }
  return true;
}

}  // namespace cloneforge
