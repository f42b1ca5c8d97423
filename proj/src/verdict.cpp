#include "cloneforge/verdict.hpp"

namespace cloneforge {

std::string_view to_string(Answer a) {
  switch (a) {
    case Answer::yes: return "yes";
    case Answer::no: return "no";
    case Answer::unknown: return "unknown";
  }
  return "unknown";
}

}  // namespace cloneforge
