#pragma once

#include <algorithm>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "cloneforge/builtin.hpp"
#include "cloneforge/operation.hpp"
#include "cloneforge/relation.hpp"

namespace cloneforge::testing {

inline Operation op(int k, int arity, std::initializer_list<int> table) {
  std::vector<int> t(table);
  return make_operation(k, arity, t);
}

inline Operation named(const std::string& name, int k = 2) {
  BuiltinParams p;
  p.k = k;
  return builtin(name, p);
}

inline Operation affine_sum(int p, int d = 1) {
  BuiltinParams params;
  params.p = p;
  params.d = d;
  return builtin("affine_maltsev", params);
}

inline Operation ternary_sum(int p, int d = 1) {
  BuiltinParams params;
  params.p = p;
  params.d = d;
  return builtin("ternary_sum", params);
}

inline Relation rel(int k, int arity, const std::vector<std::vector<int>>& tuples) {
  return make_relation(k, arity, tuples);
}

inline Operation random_operation(std::mt19937_64& rng, int k, int arity) {
  std::vector<Value> t(table_length(k, arity));
  for (auto& v : t) v = static_cast<Value>(rng() % static_cast<unsigned>(k));
  return Operation(k, arity, std::move(t));
}

inline Bijection random_bijection(std::mt19937_64& rng, int k) {
  std::vector<Value> images(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) images[static_cast<std::size_t>(i)] = static_cast<Value>(i);
  std::shuffle(images.begin(), images.end(), rng);
  return Bijection(std::move(images));
}

inline Bijection swap01(int k) {
  std::vector<Value> images(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) images[static_cast<std::size_t>(i)] = static_cast<Value>(i);
  std::swap(images[0], images[1]);
  return Bijection(std::move(images));
}

// Every n-ary table on k elements, in index order.
inline std::vector<Operation> all_operations(int k, int n) {
  std::vector<Operation> out;
  const std::size_t len = table_length(k, n);
  std::vector<Value> t(len, 0);
  while (true) {
    out.emplace_back(k, n, t);
    std::size_t pos = len;
    bool carry = true;
    while (carry && pos > 0) {
      --pos;
      if (++t[pos] < k) carry = false;
      else t[pos] = 0;
    }
    if (carry) break;
  }
  return out;
}

}  // namespace cloneforge::testing
