#pragma once

// A small zoo of structure-constant algebras (Heisenberg, sl2, filiform,
// truncated polynomials, ...) plus seeded randomizers built from them.
// Shared by the property suites behind `nilprod check` and by the tests.

#include <utility>
#include <vector>

#include "nilprod/nonassoc.hpp"

namespace nilprod::examples {

using exactlin::fadd;
using exactlin::field_rank;
using exactlin::field_solve;
using exactlin::fm_apply;
using exactlin::fm_col;
using exactlin::fm_set_col;
using exactlin::fnorm;
using exactlin::fsub;
using exactlin::span_basis;
using nonassoc::ideal_closure;
using nonassoc::make_sc;
using nonassoc::quotient_by_ideal;
using nonassoc::QuotientAlgebra;
using nonassoc::sc_mul;
using nonassoc::SCAlgebra;
using nonassoc::Variety;
using exactlin::Field;
using exactlin::FieldMatrix;

struct Entry {
  int i, j, k;
  long v;
};

inline SCAlgebra sc_from(const Field& F, int dim, Variety var, const std::vector<Entry>& entries) {
  SCAlgebra A = make_sc(F, dim, var);
  for (const Entry& e : entries) A.cc(e.i, e.j, e.k) = fnorm(F, Rat(e.v));
  return A;
}

// Brackets given for i < j only; antisymmetrised.
inline SCAlgebra lie_from(const Field& F, int dim, const std::vector<Entry>& brackets) {
  SCAlgebra A = make_sc(F, dim, Variety::Lie);
  for (const Entry& e : brackets) {
    A.cc(e.i, e.j, e.k) = fadd(F, A.cc(e.i, e.j, e.k), fnorm(F, Rat(e.v)));
    A.cc(e.j, e.i, e.k) = fsub(F, A.cc(e.j, e.i, e.k), fnorm(F, Rat(e.v)));
  }
  return A;
}

// Basis x, y, z with [x, y] = z.
inline SCAlgebra heisenberg(const Field& F) { return lie_from(F, 3, {{0, 1, 2, 1}}); }

// Basis h, e, f with [h,e] = 2e, [h,f] = -2f, [e,f] = h.
inline SCAlgebra sl2(const Field& F) {
  return lie_from(F, 3, {{0, 1, 1, 2}, {0, 2, 2, -2}, {1, 2, 0, 1}});
}

// Basis x, y with [x, y] = x (solvable, not nilpotent).
inline SCAlgebra solv2(const Field& F) { return lie_from(F, 2, {{0, 1, 0, 1}}); }

// Basis x, y, z, w with [x,y] = z, [x,z] = w (nilpotent of class 3).
inline SCAlgebra filiform4(const Field& F) { return lie_from(F, 4, {{0, 1, 2, 1}, {0, 2, 3, 1}}); }

// Basis x, y, z, w, v with [x,y] = z, [x,z] = w, [x,w] = v (class 4).
inline SCAlgebra filiform5(const Field& F) {
  return lie_from(F, 5, {{0, 1, 2, 1}, {0, 2, 3, 1}, {0, 3, 4, 1}});
}

// Two-dimensional Leibniz algebra x.x = y, all other products zero.
inline SCAlgebra leib2(const Field& F) { return sc_from(F, 2, Variety::Leib, {{0, 0, 1, 1}}); }

// Strictly upper triangular n x n matrices, basis E_{ij} (i < j) in
// lexicographic order; E_{ij} E_{kl} = [j == k] E_{il}.
inline SCAlgebra upper_assoc(const Field& F, int n) {
  std::vector<std::pair<int, int>> basis;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) basis.emplace_back(i, j);
  SCAlgebra A = make_sc(F, static_cast<int>(basis.size()), Variety::Assoc);
  for (size_t a = 0; a < basis.size(); ++a)
    for (size_t b = 0; b < basis.size(); ++b) {
      if (basis[a].second != basis[b].first) continue;
      for (size_t c = 0; c < basis.size(); ++c)
        if (basis[c] == std::make_pair(basis[a].first, basis[b].second))
          A.cc(static_cast<int>(a), static_cast<int>(b), static_cast<int>(c)) = fnorm(F, Rat(1));
    }
  return A;
}

// x k[x] / x^4: basis x, x^2, x^3 (commutative, associative, nilpotent).
inline SCAlgebra trunc_poly(const Field& F) {
  return sc_from(F, 3, Variety::CommAssoc, {{0, 0, 1, 1}, {0, 1, 2, 1}, {1, 0, 2, 1}});
}

inline SCAlgebra commutator_algebra(const SCAlgebra& A) {
  SCAlgebra L = make_sc(A.field, A.dim, Variety::Lie);
  for (int i = 0; i < A.dim; ++i)
    for (int j = 0; j < A.dim; ++j)
      for (int k = 0; k < A.dim; ++k) L.cc(i, j, k) = fsub(A.field, A.cc(i, j, k), A.cc(j, i, k));
  return L;
}

inline SCAlgebra dsum_sc(const SCAlgebra& A, const SCAlgebra& B, Variety var) {
  SCAlgebra S = make_sc(A.field, A.dim + B.dim, var);
  for (int i = 0; i < A.dim; ++i)
    for (int j = 0; j < A.dim; ++j)
      for (int k = 0; k < A.dim; ++k) S.cc(i, j, k) = A.cc(i, j, k);
  for (int i = 0; i < B.dim; ++i)
    for (int j = 0; j < B.dim; ++j)
      for (int k = 0; k < B.dim; ++k) S.cc(A.dim + i, A.dim + j, A.dim + k) = B.cc(i, j, k);
  return S;
}

// Right Leibniz algebra on g (+) g with (x, m).(y, n) = ([x,y], [m,y]).
inline SCAlgebra hemisemidirect(const SCAlgebra& g) {
  const int n = g.dim;
  SCAlgebra L = make_sc(g.field, 2 * n, Variety::Leib);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        L.cc(i, j, k) = g.cc(i, j, k);
        L.cc(n + i, j, n + k) = g.cc(i, j, k);
      }
  return L;
}

// Matrix from a list of columns.
inline FieldMatrix cmat(const Field& F, int dim, std::vector<std::vector<long>> cols) {
  FieldMatrix M(F, dim, static_cast<int>(cols.size()));
  for (int j = 0; j < M.cols; ++j)
    for (int i = 0; i < dim; ++i)
      M.at(i, j) = fnorm(F, Rat(cols[static_cast<size_t>(j)][static_cast<size_t>(i)]));
  return M;
}

inline FieldMatrix fm_inverse(const FieldMatrix& P) {
  FieldMatrix inv(P.field, P.rows, P.cols);
  for (int j = 0; j < P.cols; ++j) {
    std::vector<Rat> e(static_cast<size_t>(P.rows), Rat(0));
    e[static_cast<size_t>(j)] = fnorm(P.field, Rat(1));
    fm_set_col(inv, j, field_solve(P, e).value());
  }
  return inv;
}

inline SCAlgebra basis_change(Rng& rng, const SCAlgebra& A) {
  const int n = A.dim;
  FieldMatrix P(A.field, n, n);
  do {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) P.at(i, j) = fnorm(A.field, Rat(rng.range(-2, 2)));
  } while (field_rank(P) < n);
  const FieldMatrix Pinv = fm_inverse(P);
  SCAlgebra B = make_sc(A.field, n, A.variety);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::vector<Rat> prod = fm_apply(Pinv, sc_mul(A, fm_col(P, i), fm_col(P, j)));
      for (int k = 0; k < n; ++k) B.cc(i, j, k) = prod[k];
    }
  return B;
}

inline FieldMatrix random_subspace(Rng& rng, const SCAlgebra& A, int gens) {
  FieldMatrix M(A.field, A.dim, gens);
  for (int i = 0; i < A.dim; ++i)
    for (int j = 0; j < gens; ++j) M.at(i, j) = fnorm(A.field, Rat(rng.range(-2, 2)));
  return span_basis(M);
}

inline FieldMatrix random_ideal(Rng& rng, const SCAlgebra& A, int gens) {
  return ideal_closure(A, random_subspace(rng, A, gens));
}

inline SCAlgebra random_nilpotent_lie(Rng& rng, const Field& F) {
  SCAlgebra base = [&] {
    switch (rng.below(5)) {
      case 0: return make_sc(F, 1 + static_cast<int>(rng.below(4)), Variety::Lie);
      case 1: return heisenberg(F);
      case 2:
        return dsum_sc(heisenberg(F), make_sc(F, 1 + static_cast<int>(rng.below(2)), Variety::Lie),
                       Variety::Lie);
      case 3: return filiform4(F);
      default: return dsum_sc(filiform4(F), make_sc(F, 1, Variety::Lie), Variety::Lie);
    }
  }();
  return basis_change(rng, base);
}

// Nilpotent Lie algebras up to dimension 6.
inline SCAlgebra random_nilpotent_lie6(Rng& rng, const Field& F) {
  switch (rng.below(4)) {
    case 0: return random_nilpotent_lie(rng, F);
    case 1: return basis_change(rng, filiform5(F));
    case 2: return basis_change(rng, commutator_algebra(upper_assoc(F, 4)));
    default: return basis_change(rng, dsum_sc(heisenberg(F), heisenberg(F), Variety::Lie));
  }
}

inline SCAlgebra random_lie(Rng& rng, const Field& F) {
  switch (rng.below(4)) {
    case 0: return random_nilpotent_lie(rng, F);
    case 1: return basis_change(rng, sl2(F));
    case 2: return basis_change(rng, solv2(F));
    default:
      return basis_change(rng, dsum_sc(solv2(F), make_sc(F, 1 + static_cast<int>(rng.below(3)),
                                                         Variety::Lie),
                                       Variety::Lie));
  }
}

inline SCAlgebra random_leibniz(Rng& rng, const Field& F) {
  SCAlgebra base = [&] {
    switch (rng.below(4)) {
      case 0: return leib2(F);
      case 1:
        return dsum_sc(leib2(F), make_sc(F, 1 + static_cast<int>(rng.below(3)), Variety::Leib),
                       Variety::Leib);
      case 2: return hemisemidirect(solv2(F));
      default: return dsum_sc(leib2(F), leib2(F), Variety::Leib);
    }
  }();
  base = basis_change(rng, base);
  if (rng.below(2) == 0) {
    QuotientAlgebra q = quotient_by_ideal(base, random_ideal(rng, base, 1));
    if (q.alg.dim > 0) return q.alg;
  }
  return base;
}

inline SCAlgebra random_assoc(Rng& rng, const Field& F) {
  SCAlgebra base = [&] {
    switch (rng.below(4)) {
      case 0: return upper_assoc(F, 3);
      case 1: return trunc_poly(F);
      case 2: return dsum_sc(upper_assoc(F, 3), make_sc(F, 1, Variety::Assoc), Variety::Assoc);
      default: return dsum_sc(trunc_poly(F), make_sc(F, 2, Variety::Assoc), Variety::Assoc);
    }
  }();
  return basis_change(rng, base);
}

inline nonassoc::LieRep adjoint_rep(const SCAlgebra& g) {
  nonassoc::LieRep r;
  r.g = g;
  r.m = g.dim;
  for (int i = 0; i < g.dim; ++i) {
    FieldMatrix m(g.field, g.dim, g.dim);
    for (int j = 0; j < g.dim; ++j)
      for (int k = 0; k < g.dim; ++k) m.at(k, j) = g.cc(i, j, k);  // ad(e_i) e_j
    r.rho.push_back(m);
  }
  return r;
}

}  // namespace nilprod::examples
