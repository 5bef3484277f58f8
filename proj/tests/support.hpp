#pragma once

// Shared helpers for the test binaries: element enumeration for small finite
// abelian groups and brute-force (multi)linear-map oracles that are
// independent of the library's own constructions.

#include "nilprod/exactlin.hpp"

#include <vector>

namespace testsupport {

using namespace nilprod;
using namespace nilprod::exactlin;

// All elements of a finite group as coordinate vectors; guards against
// accidental use on infinite groups.
inline std::vector<std::vector<Int>> all_elements(const FgAbGroup& A) {
  Int n = A.order();
  if (n == 0 || n > 100000) throw std::runtime_error("all_elements: group too large");
  std::vector<std::vector<Int>> out;
  std::vector<Int> cur(A.rank(), Int(0));
  for (Int c = 0; c < n; ++c) {
    out.push_back(cur);
    for (int i = A.rank() - 1; i >= 0; --i) {
      cur[i] += 1;
      if (cur[i] < A.invariant_factors[i]) break;
      cur[i] = 0;
    }
  }
  return out;
}

inline std::vector<Int> add_in(const FgAbGroup& A, std::vector<Int> x, const std::vector<Int>& y) {
  for (size_t i = 0; i < x.size(); ++i) x[i] += y[i];
  return reduce_coords(A, std::move(x));
}

// Z/n arithmetic for oracle targets.
inline long modn(long x, long n) {
  long r = x % n;
  return r < 0 ? r + n : r;
}

// Given generator images m[i][j] in Z/n, build the full table of the induced
// candidate map A x B -> Z/n and report whether it is well defined and
// bilinear.  Any genuine bilinear map arises this way, so counting the
// successes counts Bil(A x B, Z/n).
inline bool bilinear_table_ok(const FgAbGroup& A, const FgAbGroup& B, long n,
                              const std::vector<std::vector<long>>& m) {
  auto elsA = all_elements(A);
  auto elsB = all_elements(B);
  auto value = [&](const std::vector<Int>& a, const std::vector<Int>& b) {
    long s = 0;
    for (int i = 0; i < A.rank(); ++i)
      for (int j = 0; j < B.rank(); ++j)
        s += static_cast<long>(a[i] % n) * static_cast<long>(b[j] % n) % n * m[i][j] % n;
    return modn(s, n);
  };
  for (const auto& a : elsA)
    for (const auto& a2 : elsA)
      for (const auto& b : elsB) {
        if (value(add_in(A, a, a2), b) != modn(value(a, b) + value(a2, b), n)) return false;
      }
  for (const auto& a : elsA)
    for (const auto& b : elsB)
      for (const auto& b2 : elsB) {
        if (value(a, add_in(B, b, b2)) != modn(value(a, b) + value(a, b2), n)) return false;
      }
  return true;
}

// Count bilinear maps A x B -> Z/n by enumerating all generator-image tables.
inline long count_bilinear(const FgAbGroup& A, const FgAbGroup& B, long n) {
  int ra = A.rank(), rb = B.rank();
  int cells = ra * rb;
  long total = 1;
  for (int i = 0; i < cells; ++i) total *= n;
  long count = 0;
  std::vector<std::vector<long>> m(ra, std::vector<long>(rb, 0));
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (int i = 0; i < ra; ++i)
      for (int j = 0; j < rb; ++j) {
        m[i][j] = c % n;
        c /= n;
      }
    if (bilinear_table_ok(A, B, n, m)) ++count;
  }
  return count;
}

// Count homomorphisms T -> Z/n from the invariant factors: a generator of
// order d maps to the gcd(d, n) elements killed by d.
inline long count_homs(const FgAbGroup& T, long n) {
  long count = 1;
  for (const Int& d : T.invariant_factors) {
    long dl = static_cast<long>(d);
    long g = dl == 0 ? n : static_cast<long>(gcd_nonneg(Int(dl), Int(n)));
    count *= g;
  }
  return count;
}

// Count alternating bilinear maps A x A -> Z/n (f(x, x) = 0 for every x).
inline long count_alternating(const FgAbGroup& A, long n) {
  int ra = A.rank();
  int cells = ra * ra;
  long total = 1;
  for (int i = 0; i < cells; ++i) total *= n;
  auto els = all_elements(A);
  long count = 0;
  std::vector<std::vector<long>> m(ra, std::vector<long>(ra, 0));
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (int i = 0; i < ra; ++i)
      for (int j = 0; j < ra; ++j) {
        m[i][j] = c % n;
        c /= n;
      }
    if (!bilinear_table_ok(A, A, n, m)) continue;
    bool alternating = true;
    for (const auto& x : els) {
      long s = 0;
      for (int i = 0; i < ra; ++i)
        for (int j = 0; j < ra; ++j)
          s += static_cast<long>(x[i] % n) * static_cast<long>(x[j] % n) % n * m[i][j] % n;
      if (modn(s, n) != 0) {
        alternating = false;
        break;
      }
    }
    if (alternating) ++count;
  }
  return count;
}

// Random small integer matrix with entries in [-bound, bound].
inline IntMatrix random_int_matrix(Rng& rng, int rows, int cols, long bound) {
  IntMatrix M(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) M.at(i, j) = Int(rng.range(-bound, bound));
  return M;
}

// Random unimodular matrix as a product of elementary operations.
inline IntMatrix random_unimodular(Rng& rng, int n, int ops = 12) {
  IntMatrix U = IntMatrix::identity(n);
  for (int k = 0; k < ops; ++k) {
    int i = static_cast<int>(rng.below(n)), j = static_cast<int>(rng.below(n));
    if (i == j) continue;
    Int q(rng.range(-3, 3));
    for (int c = 0; c < n; ++c) U.at(i, c) += q * U.at(j, c);
  }
  return U;
}

// Random invariant-factor style orders (0 = free summand).
inline std::vector<Int> random_orders(Rng& rng, int max_len, bool allow_free = true) {
  static const long pool[] = {2, 3, 4, 5, 6, 8, 9, 12};
  int len = static_cast<int>(rng.below(max_len + 1));
  std::vector<Int> v;
  for (int i = 0; i < len; ++i) {
    if (allow_free && rng.below(4) == 0)
      v.push_back(0);
    else
      v.push_back(pool[rng.below(8)]);
  }
  return v;
}

}  // namespace testsupport
