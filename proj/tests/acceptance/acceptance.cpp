// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <array>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cloneforge/cli.hpp"
#include "cloneforge/closure.hpp"
#include "cloneforge/error.hpp"
#include "cloneforge/identities.hpp"
#include "cloneforge/json_io.hpp"
#include "cloneforge/maximal.hpp"
#include "cloneforge/minimal.hpp"
#include "helpers.hpp"

using namespace cloneforge;
using namespace cloneforge::testing;

namespace {

struct Result {
  bool ok = true;
  std::ostringstream detail;
  std::string failed;

  void expect(bool cond, const std::string& what) {
    if (cond) return;
    failed += (failed.empty() ? "" : "; ") + what;
    ok = false;
  }
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<void(Result&)>& body) {
  Result r;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.expect(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) r.expect(false, "took longer than " + std::to_string(static_cast<int>(limit_s)) + " s");
  if (!r.ok) ++failures;
  std::string detail = r.detail.str();
  if (!r.ok) detail += (detail.empty() ? "failed: " : " | failed: ") + r.failed;
  std::printf("%s %2d %-34s %8.2f s  %s\n", r.ok ? "PASS" : "FAIL", id, name.c_str(), secs, detail.c_str());
  std::fflush(stdout);
}

std::map<std::string, int> maximal_breakdown(const std::vector<MaximalWitness>& ws) {
  std::map<std::string, int> out;
  for (const auto& w : ws) {
    std::string key(to_string(w.rtype));
    if (w.rtype == RelationType::central || w.rtype == RelationType::h_regular) key += std::to_string(w.m);
    ++out[key];
  }
  return out;
}

std::string run_cli(const std::vector<std::string>& args, int* code = nullptr) {
  std::string out;
  std::string err;
  const int c = cli::main_entry(args, out, err);
  if (code) *code = c;
  return out;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto dir = std::filesystem::temp_directory_path() / "cloneforge-acceptance";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << text;
  return path.string();
}

// Essentially unary or not onto, decided from the table alone.
bool essentially_unary_or_not_onto(const Operation& f) {
  std::set<Value> range(f.table().begin(), f.table().end());
  if (static_cast<int>(range.size()) < f.k()) return true;
  int essential = 0;
  std::vector<Value> a(static_cast<std::size_t>(f.arity()));
  for (int i = 0; i < f.arity(); ++i) {
    bool matters = false;
    for (std::size_t idx = 0; idx < f.size() && !matters; ++idx) {
      decode_tuple(idx, f.k(), a);
      std::vector<Value> b = a;
      for (int v = 0; v < f.k() && !matters; ++v) {
        b[static_cast<std::size_t>(i)] = static_cast<Value>(v);
        matters = f(a) != f(b);
      }
    }
    essential += matters ? 1 : 0;
  }
  return essential <= 1;
}

// All ternary operations on k=3 meeting the minority identities.
std::vector<Operation> all_minorities3() {
  std::vector<Operation> out;
  std::vector<std::array<int, 3>> distinct;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        if (a != b && a != c && b != c) distinct.push_back({a, b, c});
  for (int code = 0; code < 729; ++code) {
    std::vector<Value> t(27);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
          int v = a;
          if (a == b) v = c;
          else if (a == c) v = b;
          else if (b == c) v = a;
          t[static_cast<std::size_t>((a * 3 + b) * 3 + c)] = static_cast<Value>(v);
        }
    int rest = code;
    for (const auto& d : distinct) {
      t[static_cast<std::size_t>((d[0] * 3 + d[1]) * 3 + d[2])] = static_cast<Value>(rest % 3);
      rest /= 3;
    }
    out.emplace_back(3, 3, std::move(t));
  }
  return out;
}

std::string classification_of(const Operation& f) {
  try {
    return to_string(classify_minimal_type(f));
  } catch (const Error& e) {
    return "error:" + std::string(to_string(e.code()));
  }
}

}  // namespace

int main() {
  std::optional<EnumerationReport> census3;

  criterion(1, "maximal clones on 3 elements", 30, [](Result& r) {
    int code = 0;
    const Json rep = Json::parse(run_cli({"gen-maximal", "--k", "3"}, &code));
    r.expect(code == 0, "exit code");
    r.expect(rep["count"] == 18 && rep["witnesses"].size() == 18, "CLI count");
    const auto& ws = gen_all_maximal(3);
    std::set<std::vector<Value>> unary;
    for (const auto& w : ws) unary.insert(unary_part_key(w.relation));
    r.expect(unary.size() == 18, "distinct unary parts");
    const std::map<std::string, int> expected = {{"bounded_order", 3}, {"fpf_prime_perm", 1}, {"affine", 1},
                                                 {"equivalence", 3},   {"central1", 6},       {"central2", 3},
                                                 {"h_regular3", 1}};
    r.expect(maximal_breakdown(ws) == expected, "breakdown");
    r.detail << "18 clones, breakdown 3,1,1,3,6+3,1";
  });

  criterion(2, "maximal clones on 2 elements", 1, [](Result& r) {
    const Value zero[] = {0};
    const Value one[] = {1};
    const std::set<Relation> post = {chain_order(2), graph_of(named("not")), subset_relation(2, zero),
                                     subset_relation(2, one), affine_relation(2, 1)};
    std::set<Relation> got;
    for (const auto& w : gen_all_maximal(2)) got.insert(w.relation);
    r.expect(gen_all_maximal(2).size() == 5 && got == post, "Post's list");
    r.detail << "5 witnesses";
  });

  criterion(3, "completeness vs brute force", 300, [](Result& r) {
    std::mt19937_64 rng(1001);
    int disagreements = 0;
    for (int k : {2, 3}) {
      for (int trial = 0; trial < 200; ++trial) {
        std::vector<Operation> ops;
        const int count = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < count; ++i) ops.push_back(random_operation(rng, k, 1 + static_cast<int>(rng() % 2)));
        const OperationSet F(k, ops);
        disagreements += is_complete(F).complete != complete_bruteforce(F) ? 1 : 0;
      }
    }
    r.expect(disagreements == 0, std::to_string(disagreements) + " disagreements");
    r.detail << "400 sets, " << disagreements << " disagreements";
  });

  criterion(4, "Sheffer vs brute force", 300, [](Result& r) {
    int disagreements = 0;
    for (const auto& f : all_operations(2, 2)) {
      disagreements += is_sheffer(f).yes() != complete_bruteforce(OperationSet(2, {f})) ? 1 : 0;
    }
    std::mt19937_64 rng(1002);
    for (int trial = 0; trial < 500; ++trial) {
      const Operation f = random_operation(rng, 3, 2 + trial % 2);
      disagreements += is_sheffer(f).yes() != complete_bruteforce(OperationSet(3, {f})) ? 1 : 0;
    }
    r.expect(is_sheffer(named("nand")).yes() && is_sheffer(named("nor")).yes(), "NAND/NOR");
    r.expect(disagreements == 0, std::to_string(disagreements) + " disagreements");
    r.detail << "516 operations, " << disagreements << " disagreements";
  });

  criterion(5, "minimal clones on 2 elements", 60, [](Result& r) {
    const EnumerationReport rep = enumerate_minimal_clones(2);
    r.expect(rep.total_clones == 7 && rep.similarity_classes == 5, "totals");
    r.expect(rep.classes_of(MinimalTag::unary) == 2 && rep.clones_of(MinimalTag::unary) == 3, "unary");
    r.expect(rep.classes_of(MinimalTag::binary_idempotent) == 1 && rep.clones_of(MinimalTag::binary_idempotent) == 2,
             "binary");
    r.expect(rep.classes_of(MinimalTag::majority) == 1 && rep.clones_of(MinimalTag::majority) == 1, "majority");
    r.expect(rep.classes_of(MinimalTag::minority) == 1 && rep.clones_of(MinimalTag::minority) == 1, "minority");
    r.detail << rep.total_clones << " clones, " << rep.similarity_classes << " classes";
  });

  criterion(6, "minimal clones on 3 elements", 1800, [&](Result& r) {
    census3 = enumerate_minimal_clones(3);
    const EnumerationReport& rep = *census3;
    r.expect(rep.similarity_classes == 24, "classes");
    r.expect(rep.classes_of(MinimalTag::unary) == 4, "unary");
    r.expect(rep.classes_of(MinimalTag::binary_idempotent) == 12, "binary");
    r.expect(rep.classes_of(MinimalTag::majority) == 3, "majority");
    r.expect(rep.classes_of(MinimalTag::semiprojection) == 5, "semiprojection");
    r.expect(rep.classes_of(MinimalTag::minority) == 0, "minority");
    r.expect(rep.classes_of(MinimalTag::pixley_case) == 0, "other");
    r.detail << rep.similarity_classes << " classes (" << rep.classes_of(MinimalTag::unary) << "/"
             << rep.classes_of(MinimalTag::binary_idempotent) << "/" << rep.classes_of(MinimalTag::majority) << "/"
             << rep.classes_of(MinimalTag::semiprojection) << "/" << rep.classes_of(MinimalTag::minority) << "), "
             << rep.total_clones << " clones";
  });

  criterion(7, "minority theorem both ways", 600, [](Result& r) {
    const auto minorities = all_minorities3();
    std::set<std::vector<Value>> distinct;
    int not_no = 0;
    int disagreements = 0;
    bool identities = true;
    for (const auto& f : minorities) {
      distinct.insert(std::vector<Value>(f.table().begin(), f.table().end()));
      identities = identities && check_identities(f, Identity::minority);
      const MinimalityReport fast = is_minimal_clone(f, 3);
      const MinimalityReport slow = bounded_minimality_search(f, 3);
      not_no += fast.verdict.no() ? 0 : 1;
      disagreements += fast.verdict.answer != slow.verdict.answer ? 1 : 0;
    }
    r.expect(distinct.size() == 729 && identities, "729 distinct minorities");
    r.expect(not_no == 0, std::to_string(not_no) + " minorities not rejected");
    const Operation x3 = ternary_sum(2);
    const MinimalityReport fast = is_minimal_clone(x3, 3);
    const MinimalityReport slow = bounded_minimality_search(x3, 3);
    r.expect(fast.verdict.yes(), "XOR3 minimal");
    disagreements += fast.verdict.answer != slow.verdict.answer ? 1 : 0;
    r.expect(disagreements == 0, std::to_string(disagreements) + " path disagreements");
    r.detail << "729 no, XOR3 yes, " << disagreements << " path disagreements";
  });

  criterion(8, "Slupecki characterization", 120, [](Result& r) {
    const Relation iota = slupecki(3);
    int disagreements = 0;
    for (int n : {1, 2}) {
      for (const auto& f : all_operations(3, n)) {
        disagreements += preserves(f, iota) != essentially_unary_or_not_onto(f) ? 1 : 0;
      }
    }
    std::mt19937_64 rng(1008);
    for (int trial = 0; trial < 100000; ++trial) {
      const Operation f = random_operation(rng, 3, 3);
      disagreements += preserves(f, iota) != essentially_unary_or_not_onto(f) ? 1 : 0;
    }
    r.expect(disagreements == 0, std::to_string(disagreements) + " disagreements");
    r.detail << "19710 exhaustive + 100000 sampled, " << disagreements << " disagreements";
  });

  criterion(9, "affine normal form over Z3", 30, [](Result& r) {
    const ClonePart part = pol_part({affine_relation(3, 1)}, 2);
    std::size_t affine = 0;
    for (const auto& f : part.ops) affine += in_affine_clone(f, 3, 1) ? 1 : 0;
    r.expect(part.size() == 27, "size " + std::to_string(part.size()));
    r.expect(affine == part.size(), "in_affine_clone");
    r.detail << part.size() << " binary polymorphisms, all affine";
  });

  criterion(10, "part statistics fixtures", 60, [](Result& r) {
    const auto lin = part_statistics(OperationSet(3, {affine_sum(3)}), 2);
    const auto dd = part_statistics(OperationSet(3, {named("dual_discriminator", 3)}), 3);
    const auto med = part_statistics(OperationSet(2, {named("median")}), 3);
    r.expect(lin.closed && lin.non_projections == 1, "affine Z3 binary non-projections");
    r.expect(dd.closed && dd.majority_count == 3, "dual discriminator majorities");
    r.expect(med.closed && med.majority_count == 1, "median majorities");
    r.detail << "p-2=" << lin.non_projections << ", majorities " << dd.majority_count << " and " << med.majority_count;
  });

  criterion(11, "stability properties", 300, [&](Result& r) {
    if (!census3) census3 = enumerate_minimal_clones(3);
    std::size_t majority_clones = 0;
    for (int k : {2, 3}) {
      const auto gens = k == 3 ? census3->clone_generators : enumerate_minimal_clones(2).clone_generators;
      for (const auto& g : gens) {
        if (g.arity() != 3 || !check_identities(g, Identity::majority)) continue;
        ++majority_clones;
        const ClonePart part = clone_part(OperationSet(k, {g}), 3);
        r.expect(part.closed, "ternary part closed");
        for (const auto& f : part.ops) {
          if (!is_projection(f)) r.expect(check_identities(f, Identity::majority), "non-majority member");
        }
      }
    }
    for (int n : {1, 2}) {
      const ClonePart part = clone_part(OperationSet(3, {named("ell", 3)}), n);
      r.expect(part.closed, "ell part closed");
      for (const auto& f : part.ops) r.expect(is_projection(f), "ell non-projection of arity " + std::to_string(n));
    }
    r.expect(majority_clones > 0, "no majority clones enumerated");
    r.detail << majority_clones << " majority clones, ell arity 1-2 projections only";
  });

  criterion(12, "Taylor witnesses", 600, [](Result& r) {
    r.expect(has_taylor_witness(OperationSet(3, {named("dual_discriminator", 3)})).yes(), "dual discriminator");
    r.expect(has_taylor_witness(OperationSet(2, {named("median")})).yes(), "median");
    r.expect(has_taylor_witness(OperationSet(2, {ternary_sum(2)})).yes(), "XOR3");
    const Verdict ell = has_taylor_witness(OperationSet(3, {named("ell", 3)}));
    r.expect(ell.no(), "ell");
    r.detail << "3 yes, ell: " << ell.certificate.claim;
  });

  criterion(13, "conjugation invariance", 300, [](Result& r) {
    std::mt19937_64 rng(1013);
    const std::vector<Operation> cand2 = minimal_clone_candidates(2);
    const std::vector<Operation> cand3 = minimal_clone_candidates(3);
    int failed = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const int k = 2 + trial % 2;
      const Bijection pi = random_bijection(rng, k);
      const Operation f = random_operation(rng, k, 2 + static_cast<int>(rng() % 2));
      const OperationSet F(k, {f});
      bool ok = is_complete(F).complete == is_complete(conjugate(F, pi)).complete;
      ok = ok && is_sheffer(f).answer == is_sheffer(conjugate(f, pi)).answer;
      const auto& cands = k == 2 ? cand2 : cand3;
      const Operation g = cands[rng() % cands.size()];
      const Operation h = conjugate(g, pi);
      ok = ok && classification_of(g) == classification_of(h);
      ok = ok && is_minimal_clone(g, 3).verdict.answer == is_minimal_clone(h, 3).verdict.answer;
      failed += ok ? 0 : 1;
    }
    r.expect(failed == 0, std::to_string(failed) + " failures");
    r.detail << "1000 trials, " << failed << " failures";
  });

  criterion(14, "CLI determinism", 1800, [](Result& r) {
    const auto median = write_temp("median.json", to_json(named("median")).dump());
    const auto dd = write_temp("dd.json", to_json(named("dual_discriminator", 3)).dump());
    const auto le = write_temp("le.json", to_json(chain_order(2)).dump());
    Json ops = Json::array();
    for (const auto& u : all_operations(3, 1)) ops.push_back(to_json(u));
    ops.push_back(to_json(named("max", 3)));
    const auto slup = write_temp("slup.json", ops.dump());
    const std::vector<std::vector<std::string>> commands = {
        {"gen-maximal", "--k", "3"},
        {"gen-maximal", "--k", "4", "--type", "central"},
        {"check-complete", dd},
        {"check-fcomplete", dd},
        {"check-sheffer", dd},
        {"check-slupecki", slup},
        {"closure", dd, "--arity", "3", "--tables"},
        {"classify-min", median},
        {"check-min", dd},
        {"enumerate-min", "--k", "2"},
        {"taylor-witness", dd},
        {"preserves", median, le},
        {"builtin", "ell", "--k", "3"},
        {"rigid", le},
        {"check-complete", dd, "--format", "text"},
    };
    int unstable = 0;
    for (const auto& cmd : commands) {
      std::vector<std::string> one = cmd;
      one.insert(one.end(), {"--threads", "1"});
      std::vector<std::string> many = cmd;
      many.insert(many.end(), {"--threads", "4"});
      const std::string first = run_cli(one);
      bool same = !first.empty();
      for (int rep = 0; rep < 2; ++rep) same = same && run_cli(one) == first;
      same = same && run_cli(many) == first;
      if (!same) {
        ++unstable;
        r.expect(false, cmd.front());
      }
    }
    const std::string one3 = run_cli({"enumerate-min", "--k", "3", "--threads", "1"});
    const std::string many3 = run_cli({"enumerate-min", "--k", "3", "--threads", "4"});
    r.expect(!one3.empty() && one3 == many3, "enumerate-min k=3 across threads");
    r.detail << commands.size() << " commands x 4 runs + census k=3 at 1 and 4 threads";
  });

  std::printf("%s: %d failing criteria\n", failures == 0 ? "ALL PASS" : "SOME FAIL", failures);
  return failures == 0 ? 0 : 1;
}
