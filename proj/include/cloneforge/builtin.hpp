#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cloneforge/operation.hpp"
#include "cloneforge/relation.hpp"

namespace cloneforge {

// Parameters for the named families. Each family reads only the fields it
// needs; unused fields are ignored.
struct BuiltinParams {
  int k = 2;
  int p = 2;        // prime for group-based families
  int d = 1;        // dimension over Z_p
  int n = 1;        // arity (projection)
  int i = 1;        // index (projection) or value (constant)
  std::vector<int> coefficients;  // linear_mod: a_1..a_n, then the constant
  std::optional<Relation> relation;   // s_rho
  std::optional<Operation> operation; // star_extension
};

// Catalog tags:
//   and, or, nand, nor, xor, not           Boolean connectives (k = 2)
//   min, max                               chain lattice operations
//   median                                 median of the chain 0 < ... < k-1
//   webb                                   (max(x, y) + 1) mod k
//   projection, constant                   pr_i^(n), c_i
//   dual_discriminator                     d(a,b,c) = a if a = b else c
//   discriminator                          t(a,b,c) = c if a = b else a
//   ell                                    l_k(a) = a_k if {a} = A else a_1
//   switching                              minority, first argument on distinct triples
//   ternary_sum                            x1 + x2 + x3 over Z_p^d
//   affine_maltsev                         x1 - x2 + x3 over Z_p^d
//   p_cyclic                               (1 - p)x1 + p x2 on Z_{p^2}
//   rect_band_z6                           3x1 + 4x2 on Z_6
//   linear_mod                             a_1 x_1 + ... + a_n x_n + c on Z_k
//   s_rho                                  k-ary: b_k if the b_i are distinct and (b_1, b_k) in rho, else b_1
//   star_extension                         ternary f on A extended to A + {*}, * = k
Operation builtin(std::string_view name, const BuiltinParams& params);

std::vector<std::string> builtin_names();

}  // namespace cloneforge
