#pragma once

// Structure-constant algebras with one bilinear operation over an exact field
// (Q or F_p), tagged by variety: identity checking, subalgebra and ideal
// closures, Higgins binary and ternary commutators, the lower central series
// by spans of >= n-fold products, nilpotent quotients, Birkhoff reflectors
// Leib -> Lie and Assoc -> Comm with the reflector/Nil_n commutation test,
// bilinear (tensor) products of algebras, abelian-extension analysis, and
// Kronecker-sum tensor products of Lie representations.

#include "nilprod/exactlin.hpp"

#include <string>
#include <vector>

namespace nilprod::nonassoc {

using exactlin::Field;
using exactlin::FieldMatrix;

enum class Variety { Lie, Leib, Assoc, CommAssoc, None };
std::string variety_name(Variety v);

// e_i . e_j = sum_k c[(i*dim + j)*dim + k] e_k
struct SCAlgebra {
  Field field;
  int dim = 0;
  std::vector<Rat> c;
  Variety variety = Variety::None;

  const Rat& cc(int i, int j, int k) const {
    return c[(static_cast<size_t>(i) * dim + j) * dim + k];
  }
  Rat& cc(int i, int j, int k) { return c[(static_cast<size_t>(i) * dim + j) * dim + k]; }
};

SCAlgebra make_sc(const Field& F, int dim, Variety v = Variety::None);
std::vector<Rat> sc_mul(const SCAlgebra& A, const std::vector<Rat>& x, const std::vector<Rat>& y);

// ---------------------------------------------------------------------------
// Identities

struct IdentityReport {
  bool ok = true;
  std::vector<std::string> failures;  // failing basis triples, human-readable
};
// Exact verification on all basis tuples (the identities are multilinear).
IdentityReport check_identity(const SCAlgebra& A, Variety v);
// Tag invariant: if A carries a variety tag, its identities must hold.
void require_tag_consistent(const SCAlgebra& A);

// ---------------------------------------------------------------------------
// Subspaces (column spans inside the ambient algebra)

// Basis of span{u v, v u : u in U, v in V} taken over basis columns.
FieldMatrix product_span(const SCAlgebra& A, const FieldMatrix& U, const FieldMatrix& V);
FieldMatrix full_space(const SCAlgebra& A);

bool is_ideal(const SCAlgebra& A, const FieldMatrix& S);
// Two-sided annihilator {v : va = av = 0 for all a}.
FieldMatrix center_space(const SCAlgebra& A);
FieldMatrix subalgebra_closure(const SCAlgebra& A, const FieldMatrix& S);
// Smallest subspace containing S stable under multiplication by A on both
// sides; terminates by dimension count.
FieldMatrix ideal_closure(const SCAlgebra& A, const FieldMatrix& S);

// The Higgins commutator [K, L]: the span of all mixed monomials.  Computed
// as a fixpoint from the subalgebra closures; completeness: any monomial
// containing letters from both K and L decomposes as u.v where u, v are
// shorter monomials, and inductively u, v each lie in <K>, <L> or M, so the
// top product lies in [<K>,<L>]_0, [M,<K>]_0, [M,<L>]_0 or [M,M]_0.
FieldMatrix higgins_commutator(const SCAlgebra& A, const FieldMatrix& K, const FieldMatrix& L);

// [K, L, M] = [[K,L],M] v [[M,K],L] for ideals (the decomposition requires
// normality; non-ideal inputs are rejected, never approximated).
FieldMatrix ternary_commutator(const SCAlgebra& A, const FieldMatrix& K, const FieldMatrix& L,
                               const FieldMatrix& M);

// ---------------------------------------------------------------------------
// Lower central series and nilpotent quotients

// gamma[n-1] = gamma_n = span of all products of >= n factors in any
// bracketing, computed by dynamic programming over P_k = sum_{i+j=k} P_i.P_j;
// the chain is listed up to (and including) its first stable term.
struct LcsResult {
  std::vector<FieldMatrix> gamma;
  std::vector<FieldMatrix> left_normed;  // L_1 = A, L_{n+1} = [L_n, A]_0
  int stable_index = 0;                  // smallest n with gamma_n = gamma_{n+1}
  bool nilpotent = false;
  int nilpotency_class = 0;  // largest n with gamma_n != 0 (nilpotent case)
};
LcsResult lower_central_series(const SCAlgebra& A);
// gamma_n, reading past the end of the recorded chain as the stable term.
const FieldMatrix& gamma_term(const LcsResult& r, int n);

struct QuotientAlgebra {
  SCAlgebra alg;
  FieldMatrix proj;    // new coords from old
  FieldMatrix sect;    // a section of proj
  FieldMatrix kernel;  // basis of the ideal that was killed
};
// Precondition: I is an ideal (checked).
QuotientAlgebra quotient_by_ideal(const SCAlgebra& A, const FieldMatrix& I);

// A / gamma_{n+1}; n = 1 is the abelianisation.
QuotientAlgebra nilpotentisation(const SCAlgebra& A, int n);

// Quotient by the ideal closure of the variety-difference elements:
// Leib -> Lie kills the squares span{[x,x]} (basis squares plus the
// polarised cross terms [e_i,e_j] + [e_j,e_i]); Assoc -> Comm kills
// span{xy - yx}.  The source tag is required (subvarieties accepted).
QuotientAlgebra birkhoff_reflect(const SCAlgebra& A, Variety target);

// Thm-style commutation of the reflector with Nil_n: computes both composite
// quotients of A and compares their kernels (the canonical comparison induced
// on generators is an isomorphism iff the kernels agree).
struct CommuteReport {
  bool commutes = false;
  FieldMatrix kernel_nil_first;       // ker(A -> Birkhoff(Nil_n A))
  FieldMatrix kernel_reflect_first;   // ker(A -> Nil_n(Birkhoff A))
};
CommuteReport commute_nil_birkhoff_test(const SCAlgebra& A, int n);

// ---------------------------------------------------------------------------
// Bilinear (tensor) products of algebras

// ab(A) (x) ab(B) for Lie/CommAssoc, (ab A (x) ab B) + (ab B (x) ab A) for
// Assoc/Leib, with basis labels.
struct BilinearDescription {
  Variety variety = Variety::None;
  int dim_ab_A = 0, dim_ab_B = 0;
  int dim = 0;
  std::vector<std::string> labels;
};
BilinearDescription bilinear_product_sc(const SCAlgebra& A, const SCAlgebra& B, Variety v);

// ---------------------------------------------------------------------------
// Abelian extensions 0 -> A -> X -> X/A -> 0

struct ExtensionReport {
  FieldMatrix AA;    // [A, A]
  FieldMatrix AAX;   // [A, A, X] (ternary)
  FieldMatrix join;  // [A,A] v [A,A,X] (verified to be an ideal already)
  bool abelian_kernel = false;     // [A,A] = 0
  bool abelian_extension = false;  // abelian kernel and [A,A,X] = 0
  QuotientAlgebra quotient;        // X / join: the largest quotient making A abelian
};
ExtensionReport abelian_extension_analysis(const SCAlgebra& X, const FieldMatrix& A);

// ---------------------------------------------------------------------------
// Lie representations and their tensor product

struct LieRep {
  SCAlgebra g;                   // must be Lie-tagged
  int m = 0;                     // dimension of the representation space
  std::vector<FieldMatrix> rho;  // one m x m matrix per basis element of g
};
bool rep_axiom_holds(const LieRep& r);

// Kronecker sum xi (x) zeta: x |-> xi(x) (x) 1 + 1 (x) zeta(x); validates the
// inputs (RepAxiomFailure) and that both live over the same algebra
// (AlgebraMismatch).  The output satisfies the representation axiom exactly.
LieRep rep_tensor_lie(const LieRep& xi, const LieRep& zeta);

}  // namespace nilprod::nonassoc
