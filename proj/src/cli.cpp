#include "cloneforge/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "cloneforge/builtin.hpp"
#include "cloneforge/closure.hpp"
#include "cloneforge/error.hpp"
#include "cloneforge/identities.hpp"
#include "cloneforge/json_io.hpp"
#include "cloneforge/maximal.hpp"
#include "cloneforge/membership.hpp"
#include "cloneforge/minimal.hpp"

namespace cloneforge::cli {

namespace {

Json header(const Command& cmd, const std::string& path) {
  Json j;
  j["tool"] = "cloneforge";
  j["version"] = kVersion;
  j["command"] = cmd.verb;
  j["cap"] = cmd.cap;
  j["seed"] = cmd.seed;
  j["path"] = path;
  return j;
}

void merge(Json& into, const Json& fields) {
  for (auto it = fields.begin(); it != fields.end(); ++it) into[it.key()] = it.value();
}

std::string render(const Json& j, const std::string& format) {
  if (format == "text") {
    std::string s;
    for (auto it = j.begin(); it != j.end(); ++it) {
      s += it.key() + ": " + (it.value().is_string() ? it.value().get<std::string>() : it.value().dump()) + "\n";
    }
    return s;
  }
  return j.dump(2) + "\n";
}

const std::string& single_input(const Command& cmd) {
  if (cmd.inputs.size() != 1) throw Error(ErrorCode::BadParams, cmd.verb + " expects exactly one input file");
  return cmd.inputs.front();
}

Operation input_operation(const Command& cmd) {
  const auto& path = single_input(cmd);
  return expect_operation(read_input(path), path);
}

OperationSet input_set(const Command& cmd) {
  const auto& path = single_input(cmd);
  return expect_operation_set(read_input(path), path);
}

Json witness_list(const std::vector<MaximalWitness>& ws) {
  Json list = Json::array();
  for (const auto& w : ws) list.push_back(to_json(w));
  return list;
}

Outcome finish(const Command& cmd, const Json& report, int code) { return Outcome{code, render(report, cmd.format)}; }

Outcome gen_maximal(const Command& cmd) {
  if (!cmd.k) throw Error(ErrorCode::BadParams, "gen-maximal needs --k");
  std::vector<MaximalWitness> ws;
  std::string path;
  if (cmd.type) {
    const auto t = relation_type_from_string(*cmd.type);
    if (!t) throw Error(ErrorCode::BadParams, "unknown relation type '" + *cmd.type + "'");
    ws = gen_type(*cmd.k, *t, cmd.m);
    path = "type-enumeration";
  } else {
    ws = gen_all_maximal(*cmd.k);
    path = *cmd.k == 2 ? "post-list" : "rosenberg-enumeration+unary-part-dedup";
  }
  Json r = header(cmd, path);
  r["k"] = *cmd.k;
  r["count"] = ws.size();
  Json breakdown = Json::object();
  for (const auto& w : ws) {
    std::string key(to_string(w.rtype));
    if (w.rtype == RelationType::central || w.rtype == RelationType::h_regular) key += "_m" + std::to_string(w.m);
    breakdown[key] = breakdown.value(key, 0) + 1;
  }
  r["breakdown"] = std::move(breakdown);
  r["witnesses"] = witness_list(ws);
  return finish(cmd, r, kRan);
}

Outcome check_complete(const Command& cmd) {
  const auto report = is_complete(input_set(cmd));
  Json r = header(cmd, "rosenberg-witnesses");
  r["blocking"] = report.blocking().size();
  merge(r, to_json(report));
  return finish(cmd, r, kRan);
}

Outcome check_sheffer(const Command& cmd) {
  const Operation f = input_operation(cmd);
  const Verdict v = is_sheffer(f);
  Json violations = Json::object();
  for (const auto& w : gen_all_maximal(f.k())) {
    const bool relevant = w.rtype == RelationType::fpf_prime_perm || w.rtype == RelationType::equivalence ||
                          (w.rtype == RelationType::central && w.m == 1);
    if (!relevant) continue;
    const std::string key(w.rtype == RelationType::central ? "central_m1" : std::string(to_string(w.rtype)));
    Json e = violations.value(key, Json{{"witnesses", 0}, {"violated", 0}});
    e["witnesses"] = e["witnesses"].get<int>() + 1;
    e["violated"] = e["violated"].get<int>() + (preserves(f, w.relation) ? 0 : 1);
    violations[key] = std::move(e);
  }
  Json r = header(cmd, "sheffer-witnesses");
  r["sheffer"] = v.yes();
  r["violations"] = std::move(violations);
  merge(r, to_json(v));
  return finish(cmd, r, kRan);
}

Outcome check_fcomplete(const Command& cmd) {
  const Verdict v = is_functionally_complete(input_set(cmd));
  Json r = header(cmd, "rosenberg-witnesses-with-constants");
  r["functionally_complete"] = v.yes();
  merge(r, to_json(v));
  return finish(cmd, r, kRan);
}

Outcome check_slupecki(const Command& cmd) {
  const Verdict v = slupecki_criterion(input_set(cmd));
  Json r = header(cmd, "slupecki-criterion");
  r["complete"] = v.yes();
  merge(r, to_json(v));
  return finish(cmd, r, kRan);
}

Outcome closure(const Command& cmd) {
  if (!cmd.arity) throw Error(ErrorCode::BadParams, "closure needs --arity");
  const ClonePart part = clone_part(input_set(cmd), *cmd.arity, cmd.cap);
  Json r = header(cmd, "stratified-closure");
  merge(r, part_summary(part, statistics_of(part), cmd.tables));
  return finish(cmd, r, part.cap_hit ? kUnknown : kRan);
}

Outcome classify_min(const Command& cmd) {
  const MinimalType t = classify_minimal_type(input_operation(cmd));
  Json r = header(cmd, "minor-identification");
  r["type"] = to_json(t);
  return finish(cmd, r, kRan);
}

Outcome check_min(const Command& cmd) {
  const Operation f = input_operation(cmd);
  const int nmax = cmd.nmax.value_or(std::max(3, f.k()));
  const MinimalityReport rep = is_minimal_clone(f, nmax, cmd.cap);
  Json r = header(cmd, std::string(to_string(rep.path)));
  r["minimal"] = rep.verdict.yes();
  merge(r, to_json(rep));
  return finish(cmd, r, rep.verdict.unknown() ? kUnknown : kRan);
}

Outcome enumerate_min(const Command& cmd) {
  if (!cmd.k) throw Error(ErrorCode::BadParams, "enumerate-min needs --k");
  const EnumerationReport rep = enumerate_minimal_clones(*cmd.k, cmd.cap, cmd.threads);
  Json r = header(cmd, "candidate-census");
  merge(r, to_json(rep));
  return finish(cmd, r, kRan);
}

Outcome taylor_witness(const Command& cmd) {
  const Verdict v = has_taylor_witness(input_set(cmd), cmd.cap);
  const bool projected = v.no() && !v.certificate.relations.empty();
  Json r = header(cmd, projected ? "projection-subuniverse" : "rare-area-search");
  merge(r, to_json(v));
  return finish(cmd, r, v.unknown() ? kUnknown : kRan);
}

Outcome preserves_verb(const Command& cmd) {
  if (cmd.inputs.size() != 2) throw Error(ErrorCode::BadParams, "preserves expects OP.json REL.json");
  const Operation f = expect_operation(read_input(cmd.inputs[0]), cmd.inputs[0]);
  const Relation rho = expect_relation(read_input(cmd.inputs[1]), cmd.inputs[1]);
  if (f.k() != rho.k()) throw Error(ErrorCode::DomainMismatch, "operation and relation live on different domains");
  Json r = header(cmd, "tuple-selection");
  r["preserves"] = preserves(f, rho);
  return finish(cmd, r, kRan);
}

Outcome builtin_verb(const Command& cmd) {
  const auto& name = single_input(cmd);
  BuiltinParams params;
  if (cmd.k) params.k = *cmd.k;
  if (cmd.p) params.p = *cmd.p;
  if (cmd.d) params.d = *cmd.d;
  if (cmd.arity) params.n = *cmd.arity;
  if (cmd.index) params.i = *cmd.index;
  params.coefficients = cmd.coefficients;
  if (!cmd.relation_file.empty()) params.relation = expect_relation(read_input(cmd.relation_file), cmd.relation_file);
  if (!cmd.operation_file.empty()) {
    params.operation = expect_operation(read_input(cmd.operation_file), cmd.operation_file);
  }
  Json r = header(cmd, "catalog");
  r["name"] = name;
  r["operation"] = to_json(builtin(name, params));
  return finish(cmd, r, kRan);
}

Outcome rigid(const Command& cmd) {
  const auto& path = single_input(cmd);
  const Relation rho = expect_relation(read_input(path), path);
  const MinimalGeneratorList list = certified_minimal_generators(rho.k(), cmd.cap, cmd.threads);
  Json r = header(cmd, "minimal-clone-census");
  r["generators_checked"] = list.generators.size();
  r["rigid"] = is_rigid(rho, list);
  return finish(cmd, r, kRan);
}

Operation random_operation(std::mt19937_64& rng, int k, int arity) {
  std::vector<Value> t(table_length(k, arity));
  for (auto& v : t) v = static_cast<Value>(rng() % static_cast<unsigned>(k));
  return Operation(k, arity, std::move(t));
}

// Seeded agreement checks between independent decision paths.
Outcome selftest(const Command& cmd) {
  std::mt19937_64 rng(cmd.seed);
  Json checks = Json::array();
  bool all_ok = true;
  for (int k : {2, 3}) {
    int agree = 0;
    int invariant = 0;
    const auto bijections = all_bijections(k);
    for (int trial = 0; trial < cmd.count; ++trial) {
      std::vector<Operation> ops;
      const int size = 1 + static_cast<int>(rng() % 2);
      for (int i = 0; i < size; ++i) ops.push_back(random_operation(rng, k, 1 + static_cast<int>(rng() % 2)));
      const OperationSet F(k, ops);
      const bool rosenberg = is_complete(F).complete;
      agree += rosenberg == complete_bruteforce(F) ? 1 : 0;
      const auto& pi = bijections[rng() % bijections.size()];
      invariant += rosenberg == is_complete(conjugate(F, pi)).complete ? 1 : 0;
    }
    Json e;
    e["k"] = k;
    e["trials"] = cmd.count;
    e["completeness_agreement"] = agree;
    e["conjugation_invariance"] = invariant;
    all_ok = all_ok && agree == cmd.count && invariant == cmd.count;
    checks.push_back(std::move(e));
  }
  Json r = header(cmd, "property-checks");
  r["passed"] = all_ok;
  r["checks"] = std::move(checks);
  return finish(cmd, r, kRan);
}

using Handler = std::function<Outcome(const Command&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"gen-maximal", gen_maximal},       {"check-complete", check_complete}, {"check-fcomplete", check_fcomplete},
      {"check-sheffer", check_sheffer},   {"check-slupecki", check_slupecki}, {"closure", closure},
      {"classify-min", classify_min},     {"check-min", check_min},           {"enumerate-min", enumerate_min},
      {"taylor-witness", taylor_witness}, {"preserves", preserves_verb},      {"builtin", builtin_verb},
      {"rigid", rigid},                   {"selftest", selftest},
  };
  return table;
}

int exit_code_for(ErrorCode code) {
  return code == ErrorCode::CapExceeded || code == ErrorCode::Inconclusive ? kUnknown : kUsage;
}

}  // namespace

std::size_t default_cap() {
  const char* env = std::getenv("CLONEFORGE_CAP");
  if (env == nullptr || *env == '\0') return kDefaultCap;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0 || env[0] == '-') {
    throw Error(ErrorCode::BadParams, std::string("CLONEFORGE_CAP must be a positive integer, got '") + env + "'");
  }
  return static_cast<std::size_t>(v);
}

Outcome run(const Command& cmd) {
  const auto it = handlers().find(cmd.verb);
  try {
    if (it == handlers().end()) throw Error(ErrorCode::BadParams, "unknown verb '" + cmd.verb + "'");
    if (cmd.format != "json" && cmd.format != "text") throw Error(ErrorCode::BadParams, "--format must be json or text");
    if (cmd.threads < 1) throw Error(ErrorCode::BadParams, "--threads must be positive");
    return it->second(cmd);
  } catch (const Error& e) {
    const int code = exit_code_for(e.code());
    Json r = header(cmd, "error");
    if (code == kUnknown) r["verdict"] = "unknown";
    r["error"] = Json{{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    return Outcome{code, render(r, cmd.format)};
  }
}

int main_entry(const std::vector<std::string>& args, std::string& out, std::string& err) {
  Command cmd;
  std::optional<std::size_t> cap;
  CLI::App app{"Clone-theory workbench on finite domains", "cloneforge"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--cap", cap, "table cap for closures (default 200000 or CLONEFORGE_CAP)");
    sub->add_option("--seed", cmd.seed, "seed for randomized checks");
    sub->add_option("--format", cmd.format, "json or text");
    sub->add_option("--out", cmd.out, "write the report to this file");
    sub->add_option("--threads", cmd.threads, "worker threads");
  };
  auto with_file = [&](const char* name, const char* help, std::size_t files) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("files", cmd.inputs, "input JSON file(s); '-' reads stdin")->required()->expected(static_cast<int>(files));
    common(sub);
    return sub;
  };

  CLI::App* gen = app.add_subcommand("gen-maximal", "list one witness relation per maximal clone");
  gen->add_option("--k", cmd.k, "domain size")->required();
  gen->add_option("--type", cmd.type, "restrict to one relation type");
  gen->add_option("--m", cmd.m, "arity for central and h_regular types");
  common(gen);
  with_file("check-complete", "completeness via the maximal clones", 1);
  with_file("check-fcomplete", "completeness in the presence of all constants", 1);
  with_file("check-sheffer", "Sheffer test for one operation", 1);
  with_file("check-slupecki", "completeness for sets containing all unary operations", 1);
  CLI::App* clo = with_file("closure", "n-ary part of a generated clone", 1);
  clo->add_option("--arity", cmd.arity, "arity of the part")->required();
  clo->add_flag("--tables", cmd.tables, "include every table of the part");
  clo->add_flag("--stats", "census of the part (always included)");
  with_file("classify-min", "shape of a candidate minimal-clone generator", 1);
  CLI::App* min = with_file("check-min", "is the generated clone minimal", 1);
  min->add_option("--nmax", cmd.nmax, "largest arity searched (default max(3, k))");
  CLI::App* en = app.add_subcommand("enumerate-min", "census of minimal clones");
  en->add_option("--k", cmd.k, "domain size (2 or 3)")->required();
  common(en);
  with_file("taylor-witness", "search for a rare-area Taylor term", 1);
  with_file("preserves", "does OP preserve REL", 2);
  CLI::App* bi = with_file("builtin", "print a catalog operation", 1);
  bi->add_option("--k", cmd.k, "domain size");
  bi->add_option("--p", cmd.p, "prime");
  bi->add_option("--d", cmd.d, "dimension");
  bi->add_option("--arity", cmd.arity, "arity");
  bi->add_option("--index", cmd.index, "index or constant value");
  bi->add_option("--coefficients", cmd.coefficients, "linear coefficients, then the constant")->delimiter(',');
  bi->add_option("--relation", cmd.relation_file, "relation file for s_rho");
  bi->add_option("--operation", cmd.operation_file, "operation file for star_extension");
  with_file("rigid", "is Pol(REL) the projection clone", 1);
  CLI::App* self = app.add_subcommand("selftest", "");
  self->group("");
  self->add_option("--count", cmd.count, "trials per domain");
  common(self);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out = app.help();
    return kRan;
  } catch (const CLI::CallForAllHelp&) {
    out = app.help("", CLI::AppFormatMode::All);
    return kRan;
  } catch (const CLI::CallForVersion&) {
    out = std::string(kVersion) + "\n";
    return kRan;
  } catch (const CLI::ParseError& e) {
    err = std::string(e.what()) + "\n";
    return kUsage;
  }
  for (const CLI::App* sub : app.get_subcommands()) cmd.verb = sub->get_name();

  try {
    cmd.cap = cap.value_or(default_cap());
  } catch (const Error& e) {
    err = std::string(e.what()) + "\n";
    return kUsage;
  }
  if (cmd.cap == 0) {
    err = "--cap must be positive\n";
    return kUsage;
  }

  const Outcome result = run(cmd);
  if (result.exit_code == kUsage) err = "cloneforge: " + cmd.verb + " failed, see report\n";
  if (cmd.out.empty()) {
    out = result.output;
  } else {
    std::ofstream file(cmd.out, std::ios::binary);
    if (!file) {
      err = "cannot write " + cmd.out + "\n";
      return kUsage;
    }
    file << result.output;
  }
  return result.exit_code;
}

}  // namespace cloneforge::cli
