#pragma once

// Two-step nilpotent algebras over a commutative base ring (Z, Q or F_p).
// The operad data collapses to a based module P2 of binary operations with a
// symmetry involution t.  An algebra is a based module split as Abar (+) D
// where D carries the squares: the multiplication is a single module map
//   mu: (Abar (x) Abar) (x) P2 -> D
// subject to the symmetry law mu(v (x) u (x) x) = mu(u (x) v (x) t x), with
// D = im(mu) and D central (D . anything = 0).  Coproducts, products, the
// cosmash product, the tensor (bilinear) product, the symmetry isomorphism,
// abelianisation and the lower central series are all computed exactly.

#include "nilprod/exactlin.hpp"

#include <string>
#include <vector>

namespace nilprod::operad2 {

using exactlin::FgAbGroup;
using exactlin::FieldMatrix;
using exactlin::IntMatrix;

// ---------------------------------------------------------------------------
// Base rings and based modules

struct Ring {
  enum class Kind { Z, Q, Fp } kind = Kind::Z;
  long p = 0;  // modulus for Fp

  bool is_field() const { return kind != Kind::Z; }
  bool operator==(const Ring&) const = default;
};

Ring ring_Z();
Ring ring_Q();
Ring ring_Fp(long p);
std::string ring_to_string(const Ring& R);

// Field used for matrix arithmetic: exact rationals for Z (integrality is
// enforced separately at the boundaries) and F_p for prime fields.
exactlin::Field ring_field(const Ring& R);

// A based module: a fixed list of coordinate generators, the j-th of order
// orders[j] (0 = free).  Over a field all orders are 0 and rank = dimension.
// Coordinates are never re-normalised behind the caller's back, so block
// constructions keep stable indices; canonical invariant factors are computed
// only when comparing isomorphism types.
struct Mod {
  Ring ring;
  std::vector<Int> orders;

  int rank() const { return static_cast<int>(orders.size()); }
};

Mod mod_zero(const Ring& R);
Mod mod_free(const Ring& R, int n);
Mod mod_from_orders(const Ring& R, std::vector<Int> orders);  // fields: orders must be 0

Mod mod_dsum(const Mod& A, const Mod& B);
// Tensor of based modules is based: coordinate (i, j) has order
// gcd(orders_A[i], orders_B[j]) at flat index i * rank(B) + j.
Mod mod_tensor(const Mod& A, const Mod& B);
// Flat index (i * rank(B) + j) * rank(C) + k.
Mod mod_tensor3(const Mod& A, const Mod& B, const Mod& C);

// Canonical isomorphism type (Z and F_p are compared by invariant factors of
// their integer models, Q by dimension).
FgAbGroup mod_invariants(const Mod& M);
bool mod_iso(const Mod& A, const Mod& B);
std::string mod_to_string(const Mod& M);
bool mod_is_trivial(const Mod& M);

// Entry-wise canonical representatives: integers reduced into [0, d) per
// torsion coordinate for Z, residues for F_p, reduced fractions for Q.
std::vector<Rat> reduce_vec(const Mod& M, std::vector<Rat> v);
FieldMatrix reduce_map(const FieldMatrix& f, const Mod& dst);

// f respects the coordinate orders: order(src_j) * f_col(j) vanishes in dst.
// Over Z this also requires integral entries.
bool map_well_defined(const FieldMatrix& f, const Mod& src, const Mod& dst);
bool map_equal_mod(const FieldMatrix& f, const FieldMatrix& g, const Mod& dst);

// Kronecker product, flat row index i * rows(B) + j (matching mod_tensor).
FieldMatrix kron(const FieldMatrix& A, const FieldMatrix& B);
FieldMatrix kron3(const FieldMatrix& A, const FieldMatrix& B, const FieldMatrix& C);

// Quotient of M by the column span of an (integral, for Z) relation matrix,
// with projection and a section of it.
struct ModQuotient {
  Mod mod;
  FieldMatrix proj;  // rank(mod) x rank(M)
  FieldMatrix sect;  // rank(M) x rank(mod)
};
ModQuotient mod_quotient(const Mod& M, const FieldMatrix& relations);

// Exact-integer bridge (Z modules): canonical form plus the matrix of a based
// map on canonical coordinates.
FgAbGroup based_to_canonical(const Mod& M);
IntMatrix map_to_canonical(const FieldMatrix& f, const Mod& src, const Mod& dst,
                           const FgAbGroup& src_canon, const FgAbGroup& dst_canon);

// ---------------------------------------------------------------------------
// Operads

struct Operad2 {
  Ring ring;
  Mod P2;
  FieldMatrix t;  // involution on P2
  std::string label;

  bool operator==(const Operad2& o) const {
    return ring == o.ring && P2.orders == o.P2.orders && t == o.t;
  }
};

enum class Preset { Comm, Assoc, Lie, Leib };

// Comm: P2 = R, t = id.  Assoc, Leib: P2 = R^2, t = swap.  Lie: P2 = R,
// t = -id (rejected over F_2, where the sign collapses: BadCharacteristic).
Operad2 preset_operad(Preset which, const Ring& R);
std::string preset_name(Preset which);

// Arbitrary (P2, t); throws NotInvolution unless t*t = id modulo the orders
// and t is well defined.
Operad2 operad_from_bifunctor_data(const Ring& R, const Mod& P2, const FieldMatrix& t,
                                   std::string label = "custom");

// ---------------------------------------------------------------------------
// Algebras

// Multiplication matrix columns are indexed by flat triples
// (i * rank(Abar) + j) * rank(P2) + k  for  e_i (x) e_j (x) x_k.
struct Alg2 {
  Operad2 op;
  Mod Abar, D;
  FieldMatrix mu;  // rank(D) rows, rank(Abar)^2 * rank(P2) columns
};

Alg2 abelian_algebra(const Operad2& op, const Mod& M);
// Free 2-step nilpotent algebra on the module M: D is the quotient of
// (M (x) M) (x) P2 by the symmetry relations, mu the quotient map.
Alg2 free_nil2(const Operad2& op, const Mod& M);

Mod alg_carrier(const Alg2& A);  // Abar (+) D
int alg_rank(const Alg2& A);

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> problems;
};
// Checks shapes, ring/field consistency, integrality over Z, well-definedness
// of mu with respect to the coordinate orders, the symmetry law, and that mu
// is onto D.  Problems carry concrete witnesses; nothing is repaired.
ValidationReport validate_algebra(const Alg2& A);
void require_valid(const Alg2& A);  // throws InvalidAlgebra on first problem

// ---------------------------------------------------------------------------
// Morphisms

// An algebra map preserves the splitting up to a central correction:
//   (a, d) |-> (bar a, mix a + dd d),
// multiplicative iff dd . mu_src = mu_dst . (bar (x) bar (x) id).
struct Alg2Map {
  FieldMatrix bar;  // Abar_src -> Abar_dst
  FieldMatrix mix;  // Abar_src -> D_dst
  FieldMatrix dd;   // D_src -> D_dst
};

Alg2Map id_map(const Alg2& A);
Alg2Map zero_map(const Alg2& src, const Alg2& dst);
Alg2Map compose_maps(const Alg2Map& g, const Alg2Map& f);  // g after f
bool is_algebra_map(const Alg2& src, const Alg2& dst, const Alg2Map& f);
bool maps_equal(const Alg2& dst, const Alg2Map& f, const Alg2Map& g);

// Module map M -> M' induces an algebra map free_nil2(M) -> free_nil2(M').
Alg2Map free_map(const Alg2& freeA, const Alg2& freeB, const FieldMatrix& on_gens);

// ---------------------------------------------------------------------------
// Coproduct, product, cosmash, symmetry, abelianisation, lcs

// A + B carried by Abar_A (+) Abar_B (+) (D_A (+) D_B (+) (Abar_A (x) Abar_B) (x) P2);
// the mixed summand occupies the last mixed_rank coordinates of D.
struct Coproduct2 {
  Alg2 alg;
  Alg2Map inj1, inj2;
  int mixed_rank = 0;
};
Coproduct2 coproduct2(const Alg2& A, const Alg2& B);

// Universal map out of the coproduct determined by f: A -> X, g: B -> X:
//   <f, g>(a, b, a' (x) b' (x) x) = f(a) + g(b) + mu_X(bar f a' (x) bar g b' (x) x).
Alg2Map copair(const Coproduct2& C, const Alg2& A, const Alg2& B, const Alg2& X,
               const Alg2Map& f, const Alg2Map& g);

struct Product2 {
  Alg2 alg;
  Alg2Map proj1, proj2;
};
Product2 product2(const Alg2& A, const Alg2& B);

// The kernel of the canonical comparison A + B -> A x B: the mixed summand
// (Abar_A (x) Abar_B) (x) P2 with zero multiplication, included into the
// coproduct as the third block of D.
struct Cosmash2 {
  Alg2 alg;
  Alg2Map incl;  // into coproduct2(A, B).alg
};
Cosmash2 cosmash2(const Alg2& A, const Alg2& B);

// The comparison map coproduct2(A,B) -> product2(A,B) (identity on Abar,
// kills the mixed summand).
Alg2Map comparison_map(const Alg2& A, const Alg2& B);

// The tensor product of algebras is the cosmash of their abelianisations;
// for split algebras that is the same based module as cosmash2(A, B).
Alg2 bilinear2(const Alg2& A, const Alg2& B);

// Symmetry isomorphism cosmash2(A,B) -> cosmash2(B,A),
// a (x) b (x) x |-> b (x) a (x) (t x), as a matrix on the mixed coordinates.
FieldMatrix symmetry2(const Alg2& A, const Alg2& B);

struct Abelianization2 {
  Alg2 alg;  // Abar with zero multiplication
  Alg2Map quotient;
};
Abelianization2 abelianization2(const Alg2& A);

// gamma_1 = carrier, gamma_2 = D, gamma_3 = 0 (2-step nilpotency is
// structural: D is central and D . A = 0 by definition).
std::vector<Mod> lcs2(const Alg2& A);

}  // namespace nilprod::operad2
