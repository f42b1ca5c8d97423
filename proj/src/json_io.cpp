#include "cloneforge/json_io.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "cloneforge/canonical.hpp"
#include "cloneforge/error.hpp"

namespace cloneforge {

namespace {

[[noreturn]] void invalid(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ValidationError, where + ": " + what);
}

int integer_field(const Json& j, const char* name, const std::string& where) {
  const std::string path = where + "." + name;
  if (!j.contains(name)) invalid(path, "missing field");
  const Json& v = j.at(name);
  if (!v.is_number_integer()) invalid(path, "expected an integer");
  return v.get<int>();
}

void check_domain(int k, const std::string& where) {
  if (k < 1 || k > kMaxDomainSize) invalid(where + ".k", "domain size must be in 1.." + std::to_string(kMaxDomainSize));
}

Value element(const Json& v, int k, const std::string& where) {
  if (!v.is_number_integer()) invalid(where, "expected an integer");
  const long long x = v.get<long long>();
  if (x < 0 || x >= k) invalid(where, "value " + std::to_string(x) + " outside 0.." + std::to_string(k - 1));
  return static_cast<Value>(x);
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Json params_of(const MaximalWitness& w) {
  Json p = Json::object();
  switch (w.rtype) {
    case RelationType::bounded_order:
      break;
    case RelationType::fpf_prime_perm:
      p["cycle_length"] = w.prime;
      break;
    case RelationType::affine:
      p["p"] = w.prime;
      p["d"] = w.dimension;
      break;
    case RelationType::equivalence: {
      break;
    }
    case RelationType::central:
      p["m"] = w.m;
      p["center"] = w.center;
      break;
    case RelationType::h_regular: {
      p["m"] = w.m;
      Json fam = Json::array();
      for (const auto& theta : w.family) {
        // Blocks as sorted element lists, in order of least element.
        std::vector<std::vector<int>> blocks;
        std::vector<bool> placed(static_cast<std::size_t>(theta.k()), false);
        for (int a = 0; a < theta.k(); ++a) {
          if (placed[static_cast<std::size_t>(a)]) continue;
          std::vector<int> block;
          for (int b = 0; b < theta.k(); ++b) {
            const Value pair[2] = {static_cast<Value>(a), static_cast<Value>(b)};
            if (theta.contains(pair)) {
              block.push_back(b);
              placed[static_cast<std::size_t>(b)] = true;
            }
          }
          blocks.push_back(std::move(block));
        }
        fam.push_back(blocks);
      }
      p["family"] = std::move(fam);
      break;
    }
  }
  return p;
}

}  // namespace

Operation operation_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) invalid(where, "expected an operation object");
  const int k = integer_field(j, "k", where);
  check_domain(k, where);
  const int arity = integer_field(j, "arity", where);
  if (arity < 0) invalid(where + ".arity", "arity must be non-negative");
  if (!j.contains("table") || !j.at("table").is_array()) invalid(where + ".table", "expected an array");
  const Json& t = j.at("table");
  std::size_t expected = 0;
  try {
    expected = table_length(k, arity);
  } catch (const Error& e) {
    invalid(where + ".arity", e.what());
  }
  if (t.size() != expected) {
    invalid(where + ".table", "length " + std::to_string(t.size()) + " but k^arity = " + std::to_string(expected));
  }
  std::vector<Value> table;
  table.reserve(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) table.push_back(element(t[i], k, where + ".table[" + std::to_string(i) + "]"));
  return Operation(k, arity, std::move(table));
}

Relation relation_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) invalid(where, "expected a relation object");
  const int k = integer_field(j, "k", where);
  check_domain(k, where);
  const int arity = integer_field(j, "arity", where);
  if (arity < 1) invalid(where + ".arity", "arity must be positive");
  if (!j.contains("tuples") || !j.at("tuples").is_array()) invalid(where + ".tuples", "expected an array");
  std::vector<Value> flat;
  const Json& ts = j.at("tuples");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const std::string path = where + ".tuples[" + std::to_string(i) + "]";
    if (!ts[i].is_array() || ts[i].size() != static_cast<std::size_t>(arity)) {
      invalid(path, "expected a tuple of length " + std::to_string(arity));
    }
    for (std::size_t c = 0; c < ts[i].size(); ++c) flat.push_back(element(ts[i][c], k, path + "[" + std::to_string(c) + "]"));
  }
  return Relation::from_flat(k, arity, std::move(flat));
}

OperationSet operation_set_from_json(const Json& j, const std::string& where) {
  const Json* list = &j;
  std::string base = where;
  std::optional<int> declared_k;
  if (j.is_object()) {
    if (j.contains("table")) {
      Operation f = operation_from_json(j, where);
      const int k = f.k();
      return OperationSet(k, {std::move(f)});
    }
    if (!j.contains("operations")) invalid(where, "expected an operation, an array, or an object with \"operations\"");
    list = &j.at("operations");
    base = where + ".operations";
    if (j.contains("k")) {
      declared_k = integer_field(j, "k", where);
      check_domain(*declared_k, where);
    }
  }
  if (!list->is_array()) invalid(base, "expected an array of operations");
  if (list->empty()) invalid(base, "operation set is empty");
  std::vector<Operation> ops;
  for (std::size_t i = 0; i < list->size(); ++i) {
    const std::string path = base + "[" + std::to_string(i) + "]";
    Operation f = operation_from_json((*list)[i], path);
    if (!declared_k) declared_k = f.k();
    if (f.k() != *declared_k) invalid(path + ".k", "all operations must share one domain");
    ops.push_back(std::move(f));
  }
  return OperationSet(*declared_k, std::move(ops));
}

Input parse_input(std::string_view text, const std::string& source) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorCode::ParseError,
                source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON (" + e.what() + ")");
  }
  const std::string where = source + ":$";
  if (j.is_array() || (j.is_object() && j.contains("operations"))) return operation_set_from_json(j, where);
  if (j.is_object() && j.contains("tuples")) return relation_from_json(j, where);
  if (j.is_object() && j.contains("table")) return operation_from_json(j, where);
  invalid(where, "not an operation, operation set, or relation");
}

Input read_input(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, path + ": cannot open file");
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return parse_input(text, path == "-" ? "<stdin>" : path);
}

Operation expect_operation(const Input& in, const std::string& source) {
  if (const auto* f = std::get_if<Operation>(&in)) return *f;
  if (const auto* s = std::get_if<OperationSet>(&in); s && s->size() == 1) return (*s)[0];
  invalid(source, "expected a single operation");
}

OperationSet expect_operation_set(const Input& in, const std::string& source) {
  if (const auto* f = std::get_if<Operation>(&in)) return OperationSet(f->k(), {*f});
  if (const auto* s = std::get_if<OperationSet>(&in)) return *s;
  invalid(source, "expected an operation or an operation set");
}

Relation expect_relation(const Input& in, const std::string& source) {
  if (const auto* r = std::get_if<Relation>(&in)) return *r;
  invalid(source, "expected a relation");
}

Json to_json(const Operation& f) {
  Json j;
  j["k"] = f.k();
  j["arity"] = f.arity();
  Json t = Json::array();
  for (Value v : f.table()) t.push_back(static_cast<int>(v));
  j["table"] = std::move(t);
  return j;
}

Json to_json(const Relation& rho) {
  Json j;
  j["k"] = rho.k();
  j["arity"] = rho.arity();
  Json ts = Json::array();
  for (std::size_t i = 0; i < rho.size(); ++i) {
    Json t = Json::array();
    for (Value v : rho.tuple(i)) t.push_back(static_cast<int>(v));
    ts.push_back(std::move(t));
  }
  j["tuples"] = std::move(ts);
  return j;
}

Json to_json(const Verdict& v) {
  Json j;
  j["verdict"] = std::string(to_string(v.answer));
  j["claim"] = v.certificate.claim;
  Json w = Json::object();
  if (!v.certificate.operations.empty()) {
    Json ops = Json::array();
    for (const auto& f : v.certificate.operations) ops.push_back(to_json(f));
    w["operations"] = std::move(ops);
  }
  if (!v.certificate.relations.empty()) {
    Json rels = Json::array();
    for (const auto& r : v.certificate.relations) rels.push_back(to_json(r));
    w["relations"] = std::move(rels);
  }
  j["witness"] = std::move(w);
  j["assumptions"] = v.certificate.assumptions;
  return j;
}

Json to_json(const MaximalWitness& w) {
  Json j;
  j["rtype"] = std::string(to_string(w.rtype));
  j["params"] = params_of(w);
  j["relation"] = to_json(w.relation);
  return j;
}

Json to_json(const CompletenessReport& r) {
  Json j;
  j["complete"] = r.complete;
  Json per = Json::array();
  for (const auto& c : r.per_witness) {
    Json e = to_json(c.witness);
    e["preserved"] = !c.violator.has_value();
    e["violator"] = c.violator ? to_json(*c.violator) : Json(nullptr);
    per.push_back(std::move(e));
  }
  j["per_witness"] = std::move(per);
  return j;
}

Json to_json(const MinimalType& t) {
  Json j;
  j["tag"] = std::string(to_string(t.tag));
  j["arity"] = t.arity;
  if (t.tag == MinimalTag::semiprojection) j["target"] = t.target;
  return j;
}

Json to_json(const MinimalityReport& r) {
  Json j = to_json(r.verdict);
  j["path"] = std::string(to_string(r.path));
  j["rule"] = r.rule;
  j["n_max"] = r.n_max;
  j["exact"] = r.exact;
  j["reduced"] = r.reduced ? to_json(*r.reduced) : Json(nullptr);
  j["non_generating_member"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  return j;
}

Json to_json(const EnumerationReport& r) {
  Json j;
  j["k"] = r.k;
  j["candidates"] = r.candidates;
  j["total_clones"] = r.total_clones;
  j["similarity_classes"] = r.similarity_classes;
  Json breakdown = Json::object();
  for (MinimalTag tag : {MinimalTag::unary, MinimalTag::binary_idempotent, MinimalTag::majority, MinimalTag::minority,
                         MinimalTag::semiprojection}) {
    Json e;
    e["classes"] = r.classes_of(tag);
    e["clones"] = r.clones_of(tag);
    breakdown[std::string(to_string(tag))] = std::move(e);
  }
  j["breakdown"] = std::move(breakdown);
  Json classes = Json::array();
  for (const auto& c : r.classes) {
    Json e;
    e["tag"] = std::string(to_string(c.tag));
    e["clones"] = c.clones;
    e["ternary_part_size"] = c.ternary_part_size;
    e["key"] = c.key;
    e["representative"] = to_json(c.representative);
    classes.push_back(std::move(e));
  }
  j["classes"] = std::move(classes);
  return j;
}

Json part_summary(const ClonePart& part, const PartStatistics& stats, bool with_tables) {
  Json j;
  j["k"] = part.k;
  j["arity"] = part.arity;
  j["size"] = part.size();
  j["closed"] = part.closed;
  j["cap_hit"] = part.cap_hit;
  Json census;
  census["non_projections"] = stats.non_projections;
  if (part.arity == 3) {
    census["majority"] = stats.majority_count;
    census["minority"] = stats.minority_count;
  }
  if (part.arity >= 3) census["semiprojection"] = stats.semiprojection_count;
  j["census"] = std::move(census);
  if (with_tables) {
    Json tables = Json::array();
    for (const auto& f : part.ops) {
      Json t = Json::array();
      for (Value v : f.table()) t.push_back(static_cast<int>(v));
      tables.push_back(std::move(t));
    }
    j["tables"] = std::move(tables);
  }
  return j;
}

}  // namespace cloneforge
