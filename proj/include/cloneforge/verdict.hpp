#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cloneforge/operation.hpp"
#include "cloneforge/relation.hpp"

namespace cloneforge {

enum class Answer { yes, no, unknown };

std::string_view to_string(Answer a);

// Machine-checkable evidence for a verdict: the claim in words, witness
// operations and/or relations, and any hypotheses the decision relied on.
struct Certificate {
  std::string claim;
  std::vector<Operation> operations;
  std::vector<Relation> relations;
  std::vector<std::string> assumptions;
};

struct Verdict {
  Answer answer = Answer::unknown;
  Certificate certificate;

  bool yes() const noexcept { return answer == Answer::yes; }
  bool no() const noexcept { return answer == Answer::no; }
  bool unknown() const noexcept { return answer == Answer::unknown; }
};

inline Verdict make_verdict(Answer a, std::string claim) {
  Verdict v;
  v.answer = a;
  v.certificate.claim = std::move(claim);
  return v;
}

inline Verdict from_bool(bool b, std::string claim) { return make_verdict(b ? Answer::yes : Answer::no, std::move(claim)); }

}  // namespace cloneforge
