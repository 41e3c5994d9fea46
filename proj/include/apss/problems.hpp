#pragma once

/// \file apss/problems.hpp
/// \brief Test problem generators.
///
/// gen_kron_example builds the Kronecker-structured Stokes-like system
///
///   A = blockdiag(I(x)T + T(x)I, I(x)T + T(x)I),   B = (I(x)F, F(x)I),
///   C = (C1; c1; c2),  C1 = E(x)F,
///
/// with T = tridiag(-1,2,-1)/h^2, F = tridiag(0,1,-1)/h, h = 1/(p+1),
/// E = diag(1, p+1, 2p+1, ..., p^2-p+1), and c1/c2 the sums of the first and
/// second halves of C1's rows. C has rank p^2 with l = p^2 + 2, so the
/// assembled operator is singular.

#include <cstddef>
#include <cstdint>
#include <random>

#include "apss/saddle.hpp"

namespace apss {

/// Portable uniform stream: std::mt19937_64 (fully specified by the C++
/// standard) with the top 53 bits of each draw mapped to [0, 1). Does not go
/// through <random> distributions, whose output is implementation-defined.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform in [-1, 1).
  double next_signed() { return 2.0 * next_unit() - 1.0; }

 private:
  std::mt19937_64 engine_;
};

struct KronOptions {
  /// Stack (C1; c2; c2) instead of (C1; c1; c2). Same rank deficiency.
  bool duplicate_row = false;
};

/// Requires p even and >= 2. Dimensions n = 2p^2, m = p^2, l = p^2 + 2.
SaddleSystem gen_kron_example(std::size_t p, KronOptions opts = {});

/// Random singular system: A = M^T M + I, B of full row rank (checked),
/// C with `deficiency` trailing rows that are random combinations of the
/// leading l - deficiency rows. Entries are drawn from UniformStream(seed)
/// in the order M, B, leading rows of C, combination weights (row-major).
/// Requires 1 <= deficiency <= l, l - deficiency <= m <= n.
SaddleSystem gen_random_singular(std::size_t n, std::size_t m, std::size_t l,
                                 std::size_t deficiency, std::uint64_t seed);

}  // namespace apss
