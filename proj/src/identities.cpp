#include "cloneforge/identities.hpp"

#include <string>
#include <vector>

#include "cloneforge/error.hpp"

namespace cloneforge {

namespace {

struct Evaluator {
  const Operation& f;
  int k;
  int n;
  std::vector<std::size_t> weight;

  explicit Evaluator(const Operation& op) : f(op), k(op.k()), n(op.arity()), weight(static_cast<std::size_t>(n)) {
    std::size_t w = 1;
    for (int i = n - 1; i >= 0; --i) {
      weight[static_cast<std::size_t>(i)] = w;
      w *= static_cast<std::size_t>(k);
    }
  }

  template <typename Args>
  Value operator()(const Args& args) const {
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) idx += weight[static_cast<std::size_t>(i)] * args[static_cast<std::size_t>(i)];
    return f.at(idx);
  }

  // f(x, ..., x) with y at position pos (0-based).
  Value lone(Value x, Value y, int pos) const {
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) idx += weight[static_cast<std::size_t>(i)] * (i == pos ? y : x);
    return f.at(idx);
  }
};

void require_arity(const Operation& f, int arity, Identity id) {
  if (f.arity() != arity) {
    throw Error(ErrorCode::ArityMismatch, std::string(to_string(id)) + " needs arity " + std::to_string(arity));
  }
}

void require_min_arity(const Operation& f, int arity, Identity id) {
  if (f.arity() < arity) {
    throw Error(ErrorCode::ArityMismatch,
                std::string(to_string(id)) + " needs arity at least " + std::to_string(arity));
  }
}

// Checks a list of ternary identities f(pattern(x,y)) = rhs(x,y) for all x, y,
// where pattern entries 0/1 stand for x/y.
bool ternary_xy(const Operation& f, std::initializer_list<std::array<int, 3>> patterns, bool rhs_is_x) {
  const Evaluator e(f);
  for (int x = 0; x < e.k; ++x) {
    for (int y = 0; y < e.k; ++y) {
      for (const auto& p : patterns) {
        const std::array<Value, 3> args = {static_cast<Value>(p[0] ? y : x), static_cast<Value>(p[1] ? y : x),
                                           static_cast<Value>(p[2] ? y : x)};
        if (e(args) != (rhs_is_x ? x : y)) return false;
      }
    }
  }
  return true;
}

bool wnu_core(const Evaluator& e) {
  for (int x = 0; x < e.k; ++x) {
    for (int y = 0; y < e.k; ++y) {
      const Value first = e.lone(static_cast<Value>(x), static_cast<Value>(y), 0);
      for (int pos = 1; pos < e.n; ++pos) {
        if (e.lone(static_cast<Value>(x), static_cast<Value>(y), pos) != first) return false;
      }
    }
  }
  return true;
}

bool self_commuting(const Operation& f) {
  const Evaluator e(f);
  const int n = e.n;
  const std::size_t cells = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  const std::size_t total = table_length(e.k, static_cast<int>(cells));
  std::vector<Value> m(cells);
  std::vector<Value> inner(static_cast<std::size_t>(n));
  std::vector<Value> rows(static_cast<std::size_t>(n));
  std::vector<Value> cols(static_cast<std::size_t>(n));
  for (std::size_t idx = 0; idx < total; ++idx) {
    decode_tuple(idx, e.k, m);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) inner[static_cast<std::size_t>(c)] = m[static_cast<std::size_t>(r * n + c)];
      rows[static_cast<std::size_t>(r)] = e(inner);
    }
    for (int c = 0; c < n; ++c) {
      for (int r = 0; r < n; ++r) inner[static_cast<std::size_t>(r)] = m[static_cast<std::size_t>(r * n + c)];
      cols[static_cast<std::size_t>(c)] = e(inner);
    }
    if (e(rows) != e(cols)) return false;
  }
  return true;
}

}  // namespace

std::string_view to_string(Identity id) {
  switch (id) {
    case Identity::idempotent: return "idempotent";
    case Identity::maltsev: return "maltsev";
    case Identity::majority: return "majority";
    case Identity::minority: return "minority";
    case Identity::arithmetical: return "arithmetical";
    case Identity::near_unanimity: return "near_unanimity";
    case Identity::weak_near_unanimity: return "weak_near_unanimity";
    case Identity::special_wnu: return "special_wnu";
    case Identity::rare_area: return "rare_area";
    case Identity::olsak: return "olsak";
    case Identity::entropic: return "entropic";
    case Identity::self_commuting: return "self_commuting";
    case Identity::conservative: return "conservative";
    case Identity::semiprojection: return "semiprojection";
  }
  return "unknown";
}

std::optional<Identity> identity_from_string(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(Identity::semiprojection); ++i) {
    const auto id = static_cast<Identity>(i);
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

bool check_identities(const Operation& f, Identity family, int target) {
  const Evaluator e(f);
  switch (family) {
    case Identity::idempotent:
      return is_idempotent(f);
    case Identity::maltsev:
      require_arity(f, 3, family);
      return ternary_xy(f, {{0, 0, 1}, {1, 0, 0}}, false);
    case Identity::majority:
      require_arity(f, 3, family);
      return ternary_xy(f, {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}, true);
    case Identity::minority:
      require_arity(f, 3, family);
      return ternary_xy(f, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, true);
    case Identity::arithmetical:
      require_arity(f, 3, family);
      return ternary_xy(f, {{0, 0, 1}, {1, 0, 1}, {1, 0, 0}}, false);
    case Identity::near_unanimity:
      require_min_arity(f, 3, family);
      for (int x = 0; x < e.k; ++x) {
        for (int y = 0; y < e.k; ++y) {
          for (int pos = 0; pos < e.n; ++pos) {
            if (e.lone(static_cast<Value>(x), static_cast<Value>(y), pos) != x) return false;
          }
        }
      }
      return true;
    case Identity::weak_near_unanimity:
      require_min_arity(f, 2, family);
      return is_idempotent(f) && wnu_core(e);
    case Identity::special_wnu: {
      require_min_arity(f, 2, family);
      if (!is_idempotent(f) || !wnu_core(e)) return false;
      const int last = e.n - 1;
      for (int x = 0; x < e.k; ++x) {
        for (int y = 0; y < e.k; ++y) {
          const Value inner = e.lone(static_cast<Value>(x), static_cast<Value>(y), last);
          if (e.lone(static_cast<Value>(x), inner, last) != inner) return false;
        }
      }
      return true;
    }
    case Identity::rare_area:
      require_arity(f, 4, family);
      if (!is_idempotent(f)) return false;
      for (int r = 0; r < e.k; ++r) {
        for (int a = 0; a < e.k; ++a) {
          for (int c = 0; c < e.k; ++c) {
            const std::array<Value, 4> lhs = {static_cast<Value>(r), static_cast<Value>(a), static_cast<Value>(r),
                                              static_cast<Value>(c)};
            const std::array<Value, 4> rhs = {static_cast<Value>(a), static_cast<Value>(r), static_cast<Value>(c),
                                              static_cast<Value>(a)};
            if (e(lhs) != e(rhs)) return false;
          }
        }
      }
      return true;
    case Identity::olsak:
      require_arity(f, 6, family);
      if (!is_idempotent(f)) return false;
      for (int x = 0; x < e.k; ++x) {
        for (int y = 0; y < e.k; ++y) {
          const auto X = static_cast<Value>(x);
          const auto Y = static_cast<Value>(y);
          const std::array<Value, 6> a = {X, Y, Y, Y, X, X};
          const std::array<Value, 6> b = {Y, X, Y, X, Y, X};
          const std::array<Value, 6> c = {Y, Y, X, X, X, Y};
          const Value va = e(a);
          if (e(b) != va || e(c) != va) return false;
        }
      }
      return true;
    case Identity::entropic:
      require_arity(f, 2, family);
      return self_commuting(f);
    case Identity::self_commuting:
      return self_commuting(f);
    case Identity::conservative: {
      std::vector<Value> args(static_cast<std::size_t>(e.n));
      for (std::size_t idx = 0; idx < f.size(); ++idx) {
        decode_tuple(idx, e.k, args);
        bool hit = false;
        for (Value a : args) hit = hit || a == f.at(idx);
        if (!hit) return false;
      }
      return true;
    }
    case Identity::semiprojection:
      require_min_arity(f, 3, family);
      if (target < 1 || target > f.arity()) throw Error(ErrorCode::BadIndex, "semiprojection target out of range");
      return semiprojection_target(f) == target;
  }
  return false;
}

std::optional<int> semiprojection_target(const Operation& f) {
  const int n = f.arity();
  if (n < 3 || is_projection(f)) return std::nullopt;
  std::vector<Value> args(static_cast<std::size_t>(n));
  // Candidates are narrowed by every argument tuple with a repeated entry.
  std::vector<bool> alive(static_cast<std::size_t>(n), true);
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    decode_tuple(idx, f.k(), args);
    bool repeated = false;
    for (int i = 0; i < n && !repeated; ++i) {
      for (int j = i + 1; j < n && !repeated; ++j) repeated = args[static_cast<std::size_t>(i)] == args[static_cast<std::size_t>(j)];
    }
    if (!repeated) continue;
    for (int i = 0; i < n; ++i) {
      if (args[static_cast<std::size_t>(i)] != f.at(idx)) alive[static_cast<std::size_t>(i)] = false;
    }
  }
  for (int i = 0; i < n; ++i) {
    if (alive[static_cast<std::size_t>(i)]) return i + 1;
  }
  return std::nullopt;
}

std::optional<int> identification_target(const Operation& f, int i, int j) {
  const int n = f.arity();
  if (i < 1 || j <= i || j > n) throw Error(ErrorCode::BadIndex, "identification needs 1 <= i < j <= arity");
  std::vector<Value> args(static_cast<std::size_t>(n));
  std::vector<bool> alive(static_cast<std::size_t>(n), true);
  alive[static_cast<std::size_t>(j - 1)] = false;  // reported as i
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    decode_tuple(idx, f.k(), args);
    if (args[static_cast<std::size_t>(i - 1)] != args[static_cast<std::size_t>(j - 1)]) continue;
    for (int q = 0; q < n; ++q) {
      if (args[static_cast<std::size_t>(q)] != f.at(idx)) alive[static_cast<std::size_t>(q)] = false;
    }
  }
  for (int q = 0; q < n; ++q) {
    if (alive[static_cast<std::size_t>(q)]) return q + 1;
  }
  return std::nullopt;
}

bool minors_trivial(const Operation& f) {
  const int n = f.arity();
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (!identification_target(f, i, j)) return false;
    }
  }
  return true;
}

std::array<bool, 3> ternary_merge_pattern(const Operation& f) {
  if (f.arity() != 3) throw Error(ErrorCode::ArityMismatch, "ternary operation expected");
  constexpr std::array<std::array<int, 2>, 3> pairs = {{{1, 2}, {1, 3}, {2, 3}}};
  std::array<bool, 3> merged{};
  for (std::size_t p = 0; p < 3; ++p) {
    const auto q = identification_target(f, pairs[p][0], pairs[p][1]);
    if (!q) throw Error(ErrorCode::NotMinorsTrivial, "an identification minor is not a projection");
    merged[p] = *q == pairs[p][0];
  }
  return merged;
}

}  // namespace cloneforge
