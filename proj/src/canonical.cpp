#include "cloneforge/canonical.hpp"

#include <algorithm>

#include "cloneforge/error.hpp"

namespace cloneforge {

namespace {

void require_small(int k) {
  if (k > kMaxCanonicalDomain) {
    throw Error(ErrorCode::DomainTooLarge, "canonical keys enumerate k! bijections; k <= 6 required");
  }
}

std::string header(char tag, int k, int arity) {
  std::string s;
  s.push_back(tag);
  s.push_back(static_cast<char>(k));
  s.push_back(static_cast<char>(arity));
  return s;
}

std::string ops_serialization(const std::vector<Operation>& ops, int k, int arity) {
  std::vector<Operation> sorted = ops;
  std::sort(sorted.begin(), sorted.end());
  std::string s = header('P', k, arity);
  for (const auto& f : sorted) s.append(f.table().begin(), f.table().end());
  return s;
}

}  // namespace

std::string serialize(const Operation& f) {
  std::string s = header('O', f.k(), f.arity());
  s.append(f.table().begin(), f.table().end());
  return s;
}

std::string serialize(const Relation& rho) {
  std::string s = header('R', rho.k(), rho.arity());
  s.append(rho.flat().begin(), rho.flat().end());
  return s;
}

std::string canonical_key(const Operation& f) {
  require_small(f.k());
  std::string best;
  for (const auto& pi : all_bijections(f.k())) {
    std::string s = serialize(conjugate(f, pi));
    if (best.empty() || s < best) best = std::move(s);
  }
  return best;
}

std::string canonical_key(const Relation& rho) {
  require_small(rho.k());
  std::string best;
  for (const auto& pi : all_bijections(rho.k())) {
    std::string s = serialize(conjugate(rho, pi));
    if (best.empty() || s < best) best = std::move(s);
  }
  return best;
}

std::string canonical_key(const ClonePart& part) {
  require_small(part.k);
  std::string best;
  std::vector<Operation> image;
  for (const auto& pi : all_bijections(part.k)) {
    image.clear();
    for (const auto& f : part.ops) image.push_back(conjugate(f, pi));
    std::string s = ops_serialization(image, part.k, part.arity);
    if (best.empty() || s < best) best = std::move(s);
  }
  return best;
}

std::string to_hex(const std::string& bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 15]);
  }
  return out;
}

}  // namespace cloneforge
