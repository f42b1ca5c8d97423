#pragma once

#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "cloneforge/closure.hpp"
#include "cloneforge/maximal.hpp"
#include "cloneforge/minimal.hpp"
#include "cloneforge/operation.hpp"
#include "cloneforge/relation.hpp"
#include "cloneforge/verdict.hpp"

namespace cloneforge {

using Json = nlohmann::ordered_json;

// Any value an input file may hold. A file with a top-level array (or an
// object with an "operations" array) is an operation set.
using Input = std::variant<Operation, OperationSet, Relation>;

// Parses JSON text; `source` names the origin in diagnostics. Throws
// ParseError (malformed JSON, with line and column) or ValidationError
// (well-formed JSON that is not a valid value, with the offending field).
Input parse_input(std::string_view text, const std::string& source = "<input>");
Input read_input(const std::string& path);  // "-" reads stdin

Operation operation_from_json(const Json& j, const std::string& where = "$");
Relation relation_from_json(const Json& j, const std::string& where = "$");
OperationSet operation_set_from_json(const Json& j, const std::string& where = "$");

// Views of an Input with a ValidationError on mismatch.
Operation expect_operation(const Input& in, const std::string& source);
OperationSet expect_operation_set(const Input& in, const std::string& source);
Relation expect_relation(const Input& in, const std::string& source);

Json to_json(const Operation& f);
Json to_json(const Relation& rho);
Json to_json(const Verdict& v);
Json to_json(const MaximalWitness& w);
Json to_json(const CompletenessReport& r);
Json to_json(const MinimalityReport& r);
Json to_json(const EnumerationReport& r);
Json to_json(const MinimalType& t);
Json part_summary(const ClonePart& part, const PartStatistics& stats, bool with_tables);

}  // namespace cloneforge
