#include "cloneforge/builtin.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "cloneforge/error.hpp"

namespace cloneforge {

namespace {

using Fn = std::function<int(std::span<const Value>)>;

Operation tabulate(int k, int n, const Fn& fn) {
  const std::size_t len = table_length(k, n);
  std::vector<Value> table(len);
  std::vector<Value> args(static_cast<std::size_t>(n));
  for (std::size_t idx = 0; idx < len; ++idx) {
    decode_tuple(idx, k, args);
    table[idx] = static_cast<Value>(fn(args));
  }
  return Operation(k, n, std::move(table));
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::BadParams, what);
}

void require_k(const BuiltinParams& p, int lo) {
  require(p.k >= lo && p.k <= kMaxDomainSize, "domain size out of range for this family");
}

int power(int base, int e) {
  int r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Coordinatewise a*x + b*y + c*z over Z_p^d, digits most significant first.
Operation vector_form(int p, int d, int a, int b, int c) {
  require(is_prime(p) && d >= 1, "need a prime p and d >= 1");
  const int k = power(p, d);
  require(k <= kMaxDomainSize, "p^d exceeds the supported domain size");
  return tabulate(k, 3, [&](std::span<const Value> x) {
    int out = 0;
    int scale = 1;
    int u = x[0];
    int v = x[1];
    int w = x[2];
    for (int digit = 0; digit < d; ++digit) {
      const int value = (((a * (u % p) + b * (v % p) + c * (w % p)) % p) + p) % p;
      out += value * scale;
      scale *= p;
      u /= p;
      v /= p;
      w /= p;
    }
    return out;
  });
}

bool pairwise_distinct(std::span<const Value> t) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      if (t[i] == t[j]) return false;
    }
  }
  return true;
}

int majority_or_first(std::span<const Value> x) {
  if (x[1] == x[2]) return x[1];
  return x[0];
}

using Builder = std::function<Operation(const BuiltinParams&)>;

const std::map<std::string, Builder, std::less<>>& catalog() {
  static const std::map<std::string, Builder, std::less<>> table = {
      {"and", [](const BuiltinParams&) { return tabulate(2, 2, [](auto x) { return x[0] & x[1]; }); }},
      {"or", [](const BuiltinParams&) { return tabulate(2, 2, [](auto x) { return x[0] | x[1]; }); }},
      {"nand", [](const BuiltinParams&) { return tabulate(2, 2, [](auto x) { return 1 - (x[0] & x[1]); }); }},
      {"nor", [](const BuiltinParams&) { return tabulate(2, 2, [](auto x) { return 1 - (x[0] | x[1]); }); }},
      {"xor", [](const BuiltinParams&) { return tabulate(2, 2, [](auto x) { return x[0] ^ x[1]; }); }},
      {"not", [](const BuiltinParams&) { return tabulate(2, 1, [](auto x) { return 1 - x[0]; }); }},
      {"min",
       [](const BuiltinParams& p) {
         require_k(p, 2);
         return tabulate(p.k, 2, [](auto x) { return std::min(x[0], x[1]); });
       }},
      {"max",
       [](const BuiltinParams& p) {
         require_k(p, 2);
         return tabulate(p.k, 2, [](auto x) { return std::max(x[0], x[1]); });
       }},
      {"median",
       [](const BuiltinParams& p) {
         require_k(p, 2);
         return tabulate(p.k, 3, [](auto x) {
           return std::max(std::min(x[0], x[1]), std::max(std::min(x[0], x[2]), std::min(x[1], x[2])));
         });
       }},
      {"webb",
       [](const BuiltinParams& p) {
         require_k(p, 2);
         return tabulate(p.k, 2, [&](auto x) { return (std::max(x[0], x[1]) + 1) % p.k; });
       }},
      {"projection",
       [](const BuiltinParams& p) {
         require_k(p, 1);
         return projection(p.k, p.n, p.i);
       }},
      {"constant",
       [](const BuiltinParams& p) {
         require_k(p, 1);
         require(p.i >= 0 && p.i < p.k, "constant value out of range");
         return constant(p.k, static_cast<Value>(p.i));
       }},
      {"dual_discriminator",
       [](const BuiltinParams& p) {
         require_k(p, 2);
         return tabulate(p.k, 3, [](auto x) { return x[0] == x[1] ? x[0] : x[2]; });
       }},
      {"discriminator",
       [](const BuiltinParams& p) {
         require_k(p, 2);
         return tabulate(p.k, 3, [](auto x) { return x[0] == x[1] ? x[2] : x[0]; });
       }},
      {"ell",
       [](const BuiltinParams& p) {
         require(p.k >= 3 && p.k <= 8, "ell needs 3 <= k <= 8");
         return tabulate(p.k, p.k, [](auto x) { return pairwise_distinct(x) ? x[x.size() - 1] : x[0]; });
       }},
      {"switching",
       [](const BuiltinParams& p) {
         require_k(p, 2);
         return tabulate(p.k, 3, [](auto x) {
           if (x[0] == x[1]) return static_cast<int>(x[2]);
           if (x[0] == x[2]) return static_cast<int>(x[1]);
           if (x[1] == x[2]) return static_cast<int>(x[0]);
           return static_cast<int>(x[0]);
         });
       }},
      {"ternary_sum", [](const BuiltinParams& p) { return vector_form(p.p, p.d, 1, 1, 1); }},
      {"affine_maltsev", [](const BuiltinParams& p) { return vector_form(p.p, p.d, 1, -1, 1); }},
      {"p_cyclic",
       [](const BuiltinParams& p) {
         require(is_prime(p.p) && p.p * p.p <= kMaxDomainSize, "p_cyclic needs a prime p with p^2 <= 16");
         const int k = p.p * p.p;
         return tabulate(k, 2, [&](auto x) { return (((1 - p.p) * x[0] + p.p * x[1]) % k + k) % k; });
       }},
      {"rect_band_z6",
       [](const BuiltinParams&) { return tabulate(6, 2, [](auto x) { return (3 * x[0] + 4 * x[1]) % 6; }); }},
      {"linear_mod",
       [](const BuiltinParams& p) {
         require_k(p, 2);
         require(p.coefficients.size() >= 2, "linear_mod needs at least one coefficient and a constant");
         const int n = static_cast<int>(p.coefficients.size()) - 1;
         return tabulate(p.k, n, [&](auto x) {
           long acc = p.coefficients.back();
           for (int i = 0; i < n; ++i) acc += static_cast<long>(p.coefficients[static_cast<std::size_t>(i)]) * x[static_cast<std::size_t>(i)];
           return static_cast<int>(((acc % p.k) + p.k) % p.k);
         });
       }},
      {"s_rho",
       [](const BuiltinParams& p) {
         require(p.relation.has_value() && p.relation->arity() == 2, "s_rho needs a binary relation");
         const Relation& rho = *p.relation;
         const int k = rho.k();
         require(k >= 3 && k <= 8, "s_rho needs 3 <= k <= 8");
         return tabulate(k, k, [&](auto x) {
           const Value ends[2] = {x[0], x[x.size() - 1]};
           if (pairwise_distinct(x) && rho.contains(ends)) return static_cast<int>(x[x.size() - 1]);
           return static_cast<int>(x[0]);
         });
       }},
      {"star_extension",
       [](const BuiltinParams& p) {
         require(p.operation.has_value() && p.operation->arity() == 3, "star_extension needs a ternary operation");
         const Operation& f = *p.operation;
         const int star = f.k();
         require(star + 1 <= kMaxDomainSize, "extended domain too large");
         return tabulate(star + 1, 3, [&](auto x) {
           const bool has_star = x[0] == star || x[1] == star || x[2] == star;
           if (!has_star) return static_cast<int>(f(x));
           if (pairwise_distinct(x)) return static_cast<int>(x[0]);
           return majority_or_first(x);
         });
       }},
  };
  return table;
}

}  // namespace

Operation builtin(std::string_view name, const BuiltinParams& params) {
  const auto& cat = catalog();
  const auto it = cat.find(name);
  if (it == cat.end()) throw Error(ErrorCode::BadParams, "unknown builtin '" + std::string(name) + "'");
  return it->second(params);
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : catalog()) names.push_back(name);
  return names;
}

}  // namespace cloneforge
