#pragma once

// Exact linear algebra kernel over the integers, the rationals and prime
// fields: Smith normal form, finitely generated abelian groups presented by
// relation matrices, kernels/cokernels/images, tensor and exterior squares.
// Everything is computed with arbitrary-precision arithmetic; all values are
// immutable after construction and all operations are pure.

#include "nilprod/common.hpp"

#include <optional>
#include <vector>

namespace nilprod::exactlin {

// ---------------------------------------------------------------------------
// Integer matrices

struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Int> a;  // row-major, rows*cols entries

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  IntMatrix(std::vector<std::vector<Int>> rows_in);

  Int& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Int& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static IntMatrix identity(int n);
  static IntMatrix zero(int r, int c) { return IntMatrix(r, c); }
  static IntMatrix diag(const std::vector<Int>& d);

  bool operator==(const IntMatrix&) const = default;
};

IntMatrix im_mul(const IntMatrix& A, const IntMatrix& B);
IntMatrix im_add(const IntMatrix& A, const IntMatrix& B);
IntMatrix im_sub(const IntMatrix& A, const IntMatrix& B);
IntMatrix im_neg(const IntMatrix& A);
IntMatrix im_scale(const Int& c, const IntMatrix& A);
IntMatrix transpose(const IntMatrix& A);
IntMatrix hstack(const IntMatrix& A, const IntMatrix& B);
IntMatrix vstack(const IntMatrix& A, const IntMatrix& B);
std::vector<Int> im_apply(const IntMatrix& A, const std::vector<Int>& x);
std::vector<Int> im_col(const IntMatrix& A, int j);
void im_set_col(IntMatrix& A, int j, const std::vector<Int>& v);
bool im_is_zero(const IntMatrix& A);

// Fraction-free determinant (Bareiss); used by tests to certify unimodularity
// of the SNF transforms independently of their bookkeeping.
Int det(const IntMatrix& A);

// gcd with the conventions gcd(d, 0) = |d| and gcd(0, 0) = 0.
Int gcd_nonneg(const Int& x, const Int& y);

// ---------------------------------------------------------------------------
// Smith normal form

// U * M * V = D with U, V unimodular and D diagonal, nonnegative, with
// d1 | d2 | ... | dr followed by zeros.  Uinv and Vinv are maintained during
// the reduction so that callers can translate between coordinates without
// inverting anything afterwards.
struct SnfResult {
  IntMatrix U, D, V;
  IntMatrix Uinv, Vinv;
};

// Pivot rule (pinned for reproducibility): smallest absolute value among the
// remaining nonzero entries, ties broken by lowest row index then lowest
// column index.
SnfResult smith_normal_form(const IntMatrix& M);

// Lattice kernel {x : Mx = 0}, returned as columns forming a basis of the
// (saturated) kernel sublattice.
IntMatrix int_kernel(const IntMatrix& M);

// Particular integer solution of M y = b, if one exists.
std::optional<std::vector<Int>> int_solve(const IntMatrix& M, const std::vector<Int>& b);
bool in_image(const IntMatrix& M, const std::vector<Int>& b);

// ---------------------------------------------------------------------------
// Finitely generated abelian groups

// Change-of-basis data attached to a group computed from a presentation:
// to_canonical maps presentation-generator coordinates onto the canonical
// coordinates; representatives is a section of it (to_canonical *
// representatives = identity on canonical coordinates).
struct BasisWitness {
  IntMatrix to_canonical;
  IntMatrix representatives;
};

// Invariant factors: finite factors (each >= 2) first, in divisibility order,
// then one 0 per free summand.
struct FgAbGroup {
  std::vector<Int> invariant_factors;
  std::optional<IntMatrix> presentation;
  std::optional<BasisWitness> basis_witness;

  int rank() const { return static_cast<int>(invariant_factors.size()); }
  bool is_trivial() const { return invariant_factors.empty(); }
  // group order; 0 when infinite
  Int order() const;
};

bool same_invariants(const FgAbGroup& A, const FgAbGroup& B);
std::string factors_to_string(const FgAbGroup& A);

FgAbGroup fgab_trivial();
FgAbGroup fgab_free(int n);
FgAbGroup fgab_cyclic(const Int& d);
// Accepts any list of coordinate orders (0 = free, entries need not form a
// chain) and canonicalises it.
FgAbGroup fgab_from_factors(const std::vector<Int>& orders);

// Cokernel of the row span: relations are the rows of M, generators its
// columns; the result is Z^cols / rowspan(M) with witness populated.
FgAbGroup fgab_from_presentation(const IntMatrix& M);

// Reduce a coordinate vector modulo the invariant factors (torsion
// coordinates into [0, d), free coordinates untouched).
std::vector<Int> reduce_coords(const FgAbGroup& A, std::vector<Int> v);

// Diagonal matrix whose columns span the relation lattice of A in canonical
// coordinates (one column d_i * e_i per torsion coordinate).
IntMatrix order_relations(const FgAbGroup& A);

// ---------------------------------------------------------------------------
// Direct sums, tensor and exterior squares, cokernels of maps

struct DsumFgab {
  FgAbGroup group;
  IntMatrix inj1, inj2;    // canonical coords of summand -> canonical coords of sum
  IntMatrix proj1, proj2;  // retractions with proj_i * inj_j = delta_ij
};
DsumFgab dsum_fgab(const FgAbGroup& A, const FgAbGroup& B);

// Full tensor-product data: the group plus the two-way witness between pure
// pair generators a_i (x) b_j (flat index i*rb + j) and canonical coordinates.
struct TensorFgab {
  FgAbGroup group;
  IntMatrix pair_to_canon;  // rank x (ra*rb)
  IntMatrix canon_to_pair;  // (ra*rb) x rank, a section of pair_to_canon
  int ra = 0, rb = 0;

  int pair_index(int i, int j) const { return i * rb + j; }
};
TensorFgab tensor_fgab_full(const FgAbGroup& A, const FgAbGroup& B);
FgAbGroup tensor_fgab(const FgAbGroup& A, const FgAbGroup& B);

// Functoriality: the matrix of f (x) g on canonical coordinates, where
// src = tensor_fgab_full(A, B), dst = tensor_fgab_full(A', B') and
// f: A -> A', g: B -> B' in canonical coordinates.
IntMatrix map_on_tensor(const IntMatrix& f, const IntMatrix& g,
                        const TensorFgab& src, const TensorFgab& dst);

// The twist a (x) b |-> sign * (b (x) a) on canonical coordinates,
// src = A (x) B, dst = B (x) A.
IntMatrix tensor_twist(const TensorFgab& src, const TensorFgab& dst, int sign);

FgAbGroup exterior_square_fgab(const FgAbGroup& A);

// Cokernel of f: A -> B (canonical coordinates).  proj maps B onto the
// cokernel, sect is a section of proj.  Throws DomainMismatch when f does not
// respect the torsion orders of A.
struct CokernelFgab {
  FgAbGroup coker;
  IntMatrix proj;  // rank(coker) x rank(B)
  IntMatrix sect;  // rank(B) x rank(coker)
};
CokernelFgab map_cokernel(const IntMatrix& f, const FgAbGroup& A, const FgAbGroup& B);

// Subgroups of a group T, given by generator columns in canonical coords.
FgAbGroup subgroup_invariants(const FgAbGroup& T, const IntMatrix& gens);
bool subgroup_contains(const FgAbGroup& T, const IntMatrix& gens, const std::vector<Int>& x);
bool subgroup_equal(const FgAbGroup& T, const IntMatrix& gens1, const IntMatrix& gens2);
// Generators of the kernel of f: A -> B (canonical coords both sides),
// i.e. of {x in A : f(x) = 0 in B}; columns of the result generate it.
IntMatrix fgab_map_kernel_gens(const IntMatrix& f, const FgAbGroup& A, const FgAbGroup& B);

// ---------------------------------------------------------------------------
// Exact field matrices (Q or F_p, p prime)

struct Field {
  long p = 0;  // 0 = rationals, otherwise a prime
  bool is_rational() const { return p == 0; }
  bool operator==(const Field&) const = default;
};

Field field_Q();
Field field_Fp(long p);  // validates primality
bool is_prime(long p);

// Field scalar arithmetic on Rat values; for F_p the canonical representative
// in [0, p) with denominator 1 is maintained.
Rat fnorm(const Field& F, const Rat& x);
Rat fadd(const Field& F, const Rat& x, const Rat& y);
Rat fsub(const Field& F, const Rat& x, const Rat& y);
Rat fmul(const Field& F, const Rat& x, const Rat& y);
Rat fneg(const Field& F, const Rat& x);
Rat finv(const Field& F, const Rat& x);

struct FieldMatrix {
  Field field;
  int rows = 0;
  int cols = 0;
  std::vector<Rat> a;

  FieldMatrix() = default;
  FieldMatrix(Field f, int r, int c)
      : field(f), rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  Rat& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Rat& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static FieldMatrix identity(Field f, int n);
  static FieldMatrix zero(Field f, int r, int c) { return FieldMatrix(f, r, c); }

  bool operator==(const FieldMatrix&) const = default;
};

FieldMatrix fm_mul(const FieldMatrix& A, const FieldMatrix& B);
FieldMatrix fm_add(const FieldMatrix& A, const FieldMatrix& B);
FieldMatrix fm_sub(const FieldMatrix& A, const FieldMatrix& B);
FieldMatrix fm_neg(const FieldMatrix& A);
FieldMatrix fm_scale(const Rat& c, const FieldMatrix& A);
FieldMatrix fm_transpose(const FieldMatrix& A);
FieldMatrix fm_hstack(const FieldMatrix& A, const FieldMatrix& B);
FieldMatrix fm_vstack(const FieldMatrix& A, const FieldMatrix& B);
std::vector<Rat> fm_apply(const FieldMatrix& A, const std::vector<Rat>& x);
std::vector<Rat> fm_col(const FieldMatrix& A, int j);
void fm_set_col(FieldMatrix& A, int j, const std::vector<Rat>& v);
FieldMatrix fm_cols(const FieldMatrix& A, const std::vector<int>& idx);
bool fm_is_zero(const FieldMatrix& A);

struct RrefResult {
  FieldMatrix R;
  std::vector<int> pivots;  // pivot column of each pivot row
  int rank = 0;
};
RrefResult field_rref(const FieldMatrix& M);
int field_rank(const FieldMatrix& M);

// Columns form a basis of ker(M).
FieldMatrix field_kernel(const FieldMatrix& M);

std::optional<std::vector<Rat>> field_solve(const FieldMatrix& M, const std::vector<Rat>& b);

// Column spans.
bool span_contains(const FieldMatrix& space, const FieldMatrix& vectors);
bool span_contains_vec(const FieldMatrix& space, const std::vector<Rat>& v);
bool span_equal(const FieldMatrix& A, const FieldMatrix& B);
// Basis of the column span (subset of columns, deterministic choice).
FieldMatrix span_basis(const FieldMatrix& M);
FieldMatrix span_sum(const FieldMatrix& A, const FieldMatrix& B);
FieldMatrix span_intersect(const FieldMatrix& A, const FieldMatrix& B);

// dim V - dim W plus coset representatives, requiring W <= V (columns span);
// throws NotSubspace otherwise.
struct FieldQuotient {
  int dim = 0;
  FieldMatrix reps;  // ambient-coordinates columns completing W to V
};
FieldQuotient field_quotient(const FieldMatrix& V, const FieldMatrix& W);

}  // namespace nilprod::exactlin
