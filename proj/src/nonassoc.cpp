#include "nilprod/nonassoc.hpp"

#include "nilprod/operad2.hpp"

#include <sstream>

namespace nilprod::nonassoc {

using exactlin::fadd;
using exactlin::field_kernel;
using exactlin::field_rank;
using exactlin::fm_add;
using exactlin::fm_apply;
using exactlin::fm_col;
using exactlin::fm_is_zero;
using exactlin::fm_mul;
using exactlin::fm_set_col;
using exactlin::fm_sub;
using exactlin::fmul;
using exactlin::fnorm;
using exactlin::is_prime;
using exactlin::span_basis;
using exactlin::span_contains;
using exactlin::span_equal;
using exactlin::span_sum;

namespace {

std::string ename(int i) { return "e" + std::to_string(i + 1); }

void check_space(const SCAlgebra& A, const FieldMatrix& S, const char* what) {
  if (S.rows != A.dim || !(S.field == A.field))
    fail("NotSubspace", std::string(what) + ": expected columns in a " +
                            std::to_string(A.dim) + "-dimensional space over the algebra's field");
}

operad2::Ring ring_of(const Field& F) {
  return F.is_rational() ? operad2::ring_Q() : operad2::ring_Fp(F.p);
}

bool variety_fits(Variety tag, Variety v) {
  if (tag == v) return true;
  if (v == Variety::Leib && tag == Variety::Lie) return true;
  if (v == Variety::Assoc && tag == Variety::CommAssoc) return true;
  return false;
}

std::vector<Rat> basis_vec(const Field& F, int n, int i) {
  std::vector<Rat> v(n, Rat(0));
  v[i] = fnorm(F, Rat(1));
  return v;
}

}  // namespace

std::string variety_name(Variety v) {
  switch (v) {
    case Variety::Lie: return "Lie";
    case Variety::Leib: return "Leibniz";
    case Variety::Assoc: return "associative";
    case Variety::CommAssoc: return "commutative associative";
    case Variety::None: return "untagged";
  }
  return "?";
}

SCAlgebra make_sc(const Field& F, int dim, Variety v) {
  if (dim < 0) fail("BadDimension", "negative dimension");
  if (!F.is_rational() && !is_prime(F.p)) fail("BadField", "modulus must be prime");
  SCAlgebra A;
  A.field = F;
  A.dim = dim;
  A.c.assign(static_cast<size_t>(dim) * dim * dim, Rat(0));
  A.variety = v;
  return A;
}

std::vector<Rat> sc_mul(const SCAlgebra& A, const std::vector<Rat>& x, const std::vector<Rat>& y) {
  const int n = A.dim;
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
    fail("NotSubspace", "vector length does not match the algebra dimension");
  std::vector<Rat> out(n, Rat(0));
  for (int i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (y[j] == 0) continue;
      const Rat xy = fmul(A.field, x[i], y[j]);
      for (int k = 0; k < n; ++k) {
        const Rat& cijk = A.cc(i, j, k);
        if (cijk == 0) continue;
        out[k] = fadd(A.field, out[k], fmul(A.field, xy, cijk));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Identities

namespace {

bool vec_zero(const std::vector<Rat>& v) {
  for (const Rat& x : v)
    if (x != 0) return false;
  return true;
}

std::vector<Rat> vsub(const Field& F, const std::vector<Rat>& a, const std::vector<Rat>& b) {
  std::vector<Rat> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = exactlin::fsub(F, a[i], b[i]);
  return out;
}

}  // namespace

IdentityReport check_identity(const SCAlgebra& A, Variety v) {
  IdentityReport rep;
  const int n = A.dim;
  auto e = [&](int i) { return basis_vec(A.field, n, i); };
  auto mul = [&](const std::vector<Rat>& x, const std::vector<Rat>& y) { return sc_mul(A, x, y); };
  auto flag = [&](const std::string& msg) {
    rep.ok = false;
    rep.failures.push_back(msg);
  };

  // All identities below are multilinear, so basis tuples suffice; for Lie the
  // alternating law [x,x] = 0 needs the diagonal and the polarised sums too.
  switch (v) {
    case Variety::None: break;
    case Variety::Lie: {
      for (int i = 0; i < n; ++i)
        if (!vec_zero(mul(e(i), e(i)))) flag("alternating law fails at (" + ename(i) + ")");
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          std::vector<Rat> s = mul(e(i), e(j));
          std::vector<Rat> t = mul(e(j), e(i));
          for (int k = 0; k < n; ++k) s[k] = fadd(A.field, s[k], t[k]);
          if (!vec_zero(s))
            flag("antisymmetry fails at (" + ename(i) + ", " + ename(j) + ")");
        }
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) {
            std::vector<Rat> s = mul(mul(e(i), e(j)), e(k));
            std::vector<Rat> t = mul(mul(e(j), e(k)), e(i));
            std::vector<Rat> u = mul(mul(e(k), e(i)), e(j));
            for (int m = 0; m < n; ++m) s[m] = fadd(A.field, fadd(A.field, s[m], t[m]), u[m]);
            if (!vec_zero(s))
              flag("Jacobi fails at (" + ename(i) + ", " + ename(j) + ", " + ename(k) + ")");
          }
      break;
    }
    case Variety::Leib: {
      // Right Leibniz: x(yz) = (xy)z - (xz)y.
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) {
            std::vector<Rat> lhs = mul(e(i), mul(e(j), e(k)));
            std::vector<Rat> rhs = vsub(A.field, mul(mul(e(i), e(j)), e(k)),
                                        mul(mul(e(i), e(k)), e(j)));
            if (!vec_zero(vsub(A.field, lhs, rhs)))
              flag("Leibniz law fails at (" + ename(i) + ", " + ename(j) + ", " + ename(k) + ")");
          }
      break;
    }
    case Variety::CommAssoc:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (!vec_zero(vsub(A.field, mul(e(i), e(j)), mul(e(j), e(i)))))
            flag("commutativity fails at (" + ename(i) + ", " + ename(j) + ")");
      [[fallthrough]];
    case Variety::Assoc: {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            if (!vec_zero(vsub(A.field, mul(mul(e(i), e(j)), e(k)), mul(e(i), mul(e(j), e(k))))))
              flag("associativity fails at (" + ename(i) + ", " + ename(j) + ", " + ename(k) +
                   ")");
      break;
    }
  }
  return rep;
}

void require_tag_consistent(const SCAlgebra& A) {
  if (A.variety == Variety::None) return;
  IdentityReport rep = check_identity(A, A.variety);
  if (!rep.ok)
    fail("IdentityFailure",
         variety_name(A.variety) + " tag inconsistent: " + rep.failures.front());
}

// ---------------------------------------------------------------------------
// Subspaces

FieldMatrix full_space(const SCAlgebra& A) { return FieldMatrix::identity(A.field, A.dim); }

FieldMatrix product_span(const SCAlgebra& A, const FieldMatrix& U, const FieldMatrix& V) {
  check_space(A, U, "product_span");
  check_space(A, V, "product_span");
  FieldMatrix cand(A.field, A.dim, 2 * U.cols * V.cols);
  int col = 0;
  for (int i = 0; i < U.cols; ++i) {
    const std::vector<Rat> u = fm_col(U, i);
    for (int j = 0; j < V.cols; ++j) {
      const std::vector<Rat> v = fm_col(V, j);
      fm_set_col(cand, col++, sc_mul(A, u, v));
      fm_set_col(cand, col++, sc_mul(A, v, u));
    }
  }
  return span_basis(cand);
}

bool is_ideal(const SCAlgebra& A, const FieldMatrix& S) {
  check_space(A, S, "is_ideal");
  return span_contains(S, product_span(A, full_space(A), S));
}

FieldMatrix center_space(const SCAlgebra& A) {
  const int n = A.dim;
  // Rows (i, k) of the stacked system: sum_j c(i,j,k) v_j = 0 (left products)
  // and sum_j c(j,i,k) v_j = 0 (right products).
  FieldMatrix M(A.field, 2 * n * n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        M.at((i * n + k), j) = A.cc(i, j, k);
        M.at(n * n + (i * n + k), j) = A.cc(j, i, k);
      }
  return field_kernel(M);
}

FieldMatrix subalgebra_closure(const SCAlgebra& A, const FieldMatrix& S) {
  check_space(A, S, "subalgebra_closure");
  FieldMatrix V = span_basis(S);
  for (;;) {
    FieldMatrix W = span_sum(V, product_span(A, V, V));
    if (W.cols == V.cols) return V;
    V = W;
  }
}

FieldMatrix ideal_closure(const SCAlgebra& A, const FieldMatrix& S) {
  check_space(A, S, "ideal_closure");
  const FieldMatrix full = full_space(A);
  FieldMatrix V = span_basis(S);
  for (;;) {
    FieldMatrix W = span_sum(V, product_span(A, full, V));
    if (W.cols == V.cols) return V;
    V = W;
  }
}

FieldMatrix higgins_commutator(const SCAlgebra& A, const FieldMatrix& K, const FieldMatrix& L) {
  check_space(A, K, "higgins_commutator");
  check_space(A, L, "higgins_commutator");
  const FieldMatrix KH = subalgebra_closure(A, K);
  const FieldMatrix LH = subalgebra_closure(A, L);
  // Fixpoint for the span of mixed monomials.  Any monomial with letters from
  // both K and L splits at its top product as u.v with u, v shorter; by
  // induction u and v each lie in <K>, <L> or in the mixed span M, so the top
  // product is covered by one of the four product spans below.
  FieldMatrix M = product_span(A, KH, LH);
  for (;;) {
    FieldMatrix W = span_sum(M, product_span(A, M, KH));
    W = span_sum(W, product_span(A, M, LH));
    W = span_sum(W, product_span(A, M, M));
    if (W.cols == M.cols) return M;
    M = W;
  }
}

FieldMatrix ternary_commutator(const SCAlgebra& A, const FieldMatrix& K, const FieldMatrix& L,
                               const FieldMatrix& M) {
  if (!is_ideal(A, K)) fail("NotIdeal", "ternary commutator: first argument is not an ideal");
  if (!is_ideal(A, L)) fail("NotIdeal", "ternary commutator: second argument is not an ideal");
  if (!is_ideal(A, M)) fail("NotIdeal", "ternary commutator: third argument is not an ideal");
  const FieldMatrix KL = higgins_commutator(A, K, L);
  const FieldMatrix MK = higgins_commutator(A, M, K);
  return span_sum(higgins_commutator(A, KL, M), higgins_commutator(A, MK, L));
}

// ---------------------------------------------------------------------------
// Lower central series

LcsResult lower_central_series(const SCAlgebra& A) {
  const FieldMatrix full = full_space(A);
  const int chain_len = A.dim + 2;    // the descending chain stabilises within dim+1 steps
  const int depth = 2 * A.dim + 4;    // product lengths computed exactly up to here

  // P[k] = span of all products of exactly k basis letters (any bracketing).
  std::vector<FieldMatrix> P(depth + 1, FieldMatrix(A.field, A.dim, 0));
  P[1] = full;
  for (int k = 2; k <= depth; ++k)
    for (int i = 1; i < k; ++i) P[k] = span_sum(P[k], product_span(A, P[i], P[k - i]));

  // gamma_n = sum_{k >= n} P[k].  The tail beyond `depth` is contained in the
  // stable term S: a product of k > depth letters splits at its top product
  // as u.v, the longer factor has at least k/2 > dim+1 >= stable_index
  // letters, hence lies in S by induction on k, and S absorbs multiplication
  // by A because it is an ideal (verified below).  So the truncated sums are
  // exact for every n.
  std::vector<FieldMatrix> J(chain_len + 2, FieldMatrix(A.field, A.dim, 0));
  for (int k = depth; k >= chain_len + 1; --k) J[chain_len + 1] = span_sum(J[chain_len + 1], P[k]);
  for (int n = chain_len; n >= 1; --n) J[n] = span_sum(P[n], J[n + 1]);

  LcsResult res;
  res.stable_index = chain_len;
  for (int n = 1; n <= chain_len; ++n)
    if (span_equal(J[n], J[n + 1])) {
      res.stable_index = n;
      break;
    }
  const FieldMatrix& S = J[res.stable_index];
  if (!is_ideal(A, S)) fail("InternalError", "stable lower-central term is not an ideal");

  for (int n = 1; n <= res.stable_index; ++n) res.gamma.push_back(J[n]);
  res.nilpotent = (res.gamma.back().cols == 0);
  if (res.nilpotent) res.nilpotency_class = res.stable_index - 1;

  // Left-normed chain, listed with the same up-to-first-stable-term rule.
  FieldMatrix L = full;
  res.left_normed.push_back(L);
  for (;;) {
    FieldMatrix next = product_span(A, L, full);
    if (span_equal(next, L)) break;
    res.left_normed.push_back(next);
    L = next;
  }
  return res;
}

const FieldMatrix& gamma_term(const LcsResult& r, int n) {
  if (n < 1) fail("BadDimension", "lower-central index must be >= 1");
  const size_t i = static_cast<size_t>(n) - 1;
  return i < r.gamma.size() ? r.gamma[i] : r.gamma.back();
}

// ---------------------------------------------------------------------------
// Quotients

QuotientAlgebra quotient_by_ideal(const SCAlgebra& A, const FieldMatrix& I) {
  check_space(A, I, "quotient_by_ideal");
  if (!is_ideal(A, I)) fail("NotIdeal", "quotient by a non-ideal subspace");
  const operad2::Ring R = ring_of(A.field);
  operad2::ModQuotient mq = operad2::mod_quotient(operad2::mod_free(R, A.dim), span_basis(I));
  const int q = mq.mod.rank();

  QuotientAlgebra out;
  out.alg = make_sc(A.field, q, A.variety);
  out.proj = mq.proj;
  out.sect = mq.sect;
  out.kernel = span_basis(I);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      const std::vector<Rat> prod =
          fm_apply(out.proj, sc_mul(A, fm_col(out.sect, i), fm_col(out.sect, j)));
      for (int k = 0; k < q; ++k) out.alg.cc(i, j, k) = prod[k];
    }
  return out;
}

QuotientAlgebra nilpotentisation(const SCAlgebra& A, int n) {
  if (n < 1) fail("BadDimension", "nilpotency class must be >= 1");
  LcsResult lcs = lower_central_series(A);
  return quotient_by_ideal(A, gamma_term(lcs, n + 1));
}

QuotientAlgebra birkhoff_reflect(const SCAlgebra& A, Variety target) {
  const int n = A.dim;
  auto e = [&](int i) { return basis_vec(A.field, n, i); };
  FieldMatrix gens(A.field, n, 0);
  auto push = [&](const std::vector<Rat>& v) {
    FieldMatrix col(A.field, n, 1);
    fm_set_col(col, 0, v);
    gens = exactlin::fm_hstack(gens, col);
  };

  if (target == Variety::Lie) {
    if (!variety_fits(A.variety, Variety::Leib))
      fail("WrongVariety", "reflection to Lie expects a Leibniz-tagged algebra, got " +
                               variety_name(A.variety));
    // span{[x,x]}: basis squares plus the polarised cross terms.
    for (int i = 0; i < n; ++i) push(sc_mul(A, e(i), e(i)));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        std::vector<Rat> v = sc_mul(A, e(i), e(j));
        std::vector<Rat> w = sc_mul(A, e(j), e(i));
        for (int k = 0; k < n; ++k) v[k] = fadd(A.field, v[k], w[k]);
        push(v);
      }
  } else if (target == Variety::CommAssoc) {
    if (!variety_fits(A.variety, Variety::Assoc))
      fail("WrongVariety", "reflection to commutative expects an associative-tagged algebra, got " +
                               variety_name(A.variety));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        push(vsub(A.field, sc_mul(A, e(i), e(j)), sc_mul(A, e(j), e(i))));
  } else {
    fail("WrongVariety", "unsupported reflection target " + variety_name(target));
  }

  QuotientAlgebra out = quotient_by_ideal(A, ideal_closure(A, gens));
  out.alg.variety = target;
  return out;
}

namespace {

// Kernel in A of the composite of two quotient maps q2 . q1: the preimage
// q1^{-1}(ker q2) = ker q1 + sect1(ker q2).
FieldMatrix composite_kernel(const QuotientAlgebra& first, const FieldMatrix& second_kernel) {
  return span_sum(first.kernel, fm_mul(first.sect, second_kernel));
}

}  // namespace

CommuteReport commute_nil_birkhoff_test(const SCAlgebra& A, int n) {
  if (!variety_fits(A.variety, Variety::Leib))
    fail("WrongVariety", "commutation test expects a Leibniz-tagged algebra");
  QuotientAlgebra nil = nilpotentisation(A, n);
  QuotientAlgebra refl_of_nil = birkhoff_reflect(nil.alg, Variety::Lie);

  QuotientAlgebra refl = birkhoff_reflect(A, Variety::Lie);
  QuotientAlgebra nil_of_refl = nilpotentisation(refl.alg, n);

  CommuteReport rep;
  rep.kernel_nil_first = composite_kernel(nil, refl_of_nil.kernel);
  rep.kernel_reflect_first = composite_kernel(refl, nil_of_refl.kernel);
  // Both composites are quotients of A, so the comparison induced on the
  // images of the generators is an isomorphism iff the kernels coincide.
  rep.commutes = span_equal(rep.kernel_nil_first, rep.kernel_reflect_first);
  return rep;
}

// ---------------------------------------------------------------------------
// Bilinear products

BilinearDescription bilinear_product_sc(const SCAlgebra& A, const SCAlgebra& B, Variety v) {
  if (!(A.field == B.field))
    fail("VarietyMismatch", "bilinear product requires a shared ground field");
  if (!variety_fits(A.variety, v) || !variety_fits(B.variety, v))
    fail("VarietyMismatch", "bilinear product in " + variety_name(v) + " expects both factors " +
                                "tagged accordingly (got " + variety_name(A.variety) + ", " +
                                variety_name(B.variety) + ")");
  if (v == Variety::None) fail("VarietyMismatch", "bilinear product needs a variety");

  BilinearDescription out;
  out.variety = v;
  out.dim_ab_A = A.dim - field_rank(product_span(A, full_space(A), full_space(A)));
  out.dim_ab_B = B.dim - field_rank(product_span(B, full_space(B), full_space(B)));

  const bool symmetric_op = (v == Variety::Lie || v == Variety::CommAssoc);
  out.dim = (symmetric_op ? 1 : 2) * out.dim_ab_A * out.dim_ab_B;
  for (int i = 0; i < out.dim_ab_A; ++i)
    for (int j = 0; j < out.dim_ab_B; ++j)
      out.labels.push_back("a" + std::to_string(i + 1) + "(x)b" + std::to_string(j + 1));
  if (!symmetric_op)
    for (int j = 0; j < out.dim_ab_B; ++j)
      for (int i = 0; i < out.dim_ab_A; ++i)
        out.labels.push_back("b" + std::to_string(j + 1) + "(x)a" + std::to_string(i + 1));
  return out;
}

// ---------------------------------------------------------------------------
// Abelian extensions

ExtensionReport abelian_extension_analysis(const SCAlgebra& X, const FieldMatrix& A) {
  if (!is_ideal(X, A)) fail("NotIdeal", "extension analysis requires an ideal kernel");
  ExtensionReport rep;
  rep.AA = higgins_commutator(X, A, A);
  rep.AAX = ternary_commutator(X, A, A, full_space(X));
  rep.join = span_sum(rep.AA, rep.AAX);
  // Normality of the join is automatic here; it is asserted, not re-closed.
  if (!is_ideal(X, rep.join)) fail("InternalError", "commutator join is not an ideal");
  rep.abelian_kernel = (rep.AA.cols == 0);
  rep.abelian_extension = rep.abelian_kernel && (rep.AAX.cols == 0);
  rep.quotient = quotient_by_ideal(X, rep.join);
  return rep;
}

// ---------------------------------------------------------------------------
// Lie representation tensor products

bool rep_axiom_holds(const LieRep& r) {
  const int n = r.g.dim;
  if (static_cast<int>(r.rho.size()) != n) return false;
  for (const FieldMatrix& m : r.rho)
    if (m.rows != r.m || m.cols != r.m || !(m.field == r.g.field)) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      FieldMatrix lhs = fm_sub(fm_mul(r.rho[i], r.rho[j]), fm_mul(r.rho[j], r.rho[i]));
      FieldMatrix rhs(r.g.field, r.m, r.m);
      for (int k = 0; k < n; ++k)
        if (r.g.cc(i, j, k) != 0) rhs = fm_add(rhs, exactlin::fm_scale(r.g.cc(i, j, k), r.rho[k]));
      if (!fm_is_zero(fm_sub(lhs, rhs))) return false;
    }
  return true;
}

LieRep rep_tensor_lie(const LieRep& xi, const LieRep& zeta) {
  if (xi.g.variety != Variety::Lie || zeta.g.variety != Variety::Lie)
    fail("AlgebraMismatch", "representation tensor requires Lie-tagged algebras");
  if (!(xi.g.field == zeta.g.field) || xi.g.dim != zeta.g.dim || xi.g.c != zeta.g.c)
    fail("AlgebraMismatch", "representations live over different Lie algebras");
  if (!rep_axiom_holds(xi)) fail("RepAxiomFailure", "first representation violates the axiom");
  if (!rep_axiom_holds(zeta)) fail("RepAxiomFailure", "second representation violates the axiom");

  const FieldMatrix I1 = FieldMatrix::identity(xi.g.field, xi.m);
  const FieldMatrix I2 = FieldMatrix::identity(xi.g.field, zeta.m);
  LieRep out;
  out.g = xi.g;
  out.m = xi.m * zeta.m;
  for (int i = 0; i < xi.g.dim; ++i)
    out.rho.push_back(fm_add(operad2::kron(xi.rho[i], I2), operad2::kron(I1, zeta.rho[i])));
  if (!rep_axiom_holds(out)) fail("InternalError", "Kronecker sum lost the representation axiom");
  return out;
}

}  // namespace nilprod::nonassoc
