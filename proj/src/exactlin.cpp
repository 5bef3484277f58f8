#include "nilprod/exactlin.hpp"

#include <algorithm>
#include <sstream>

namespace nilprod::exactlin {

// ---------------------------------------------------------------------------
// IntMatrix basics

IntMatrix::IntMatrix(std::vector<std::vector<Int>> rows_in) {
  rows = static_cast<int>(rows_in.size());
  cols = rows ? static_cast<int>(rows_in[0].size()) : 0;
  a.resize(static_cast<size_t>(rows) * cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(rows_in[i].size()) != cols)
      fail("BadMatrix", "ragged row in matrix literal");
    for (int j = 0; j < cols; ++j) at(i, j) = rows_in[i][j];
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix I(n, n);
  for (int i = 0; i < n; ++i) I.at(i, i) = 1;
  return I;
}

IntMatrix IntMatrix::diag(const std::vector<Int>& d) {
  int n = static_cast<int>(d.size());
  IntMatrix D(n, n);
  for (int i = 0; i < n; ++i) D.at(i, i) = d[i];
  return D;
}

IntMatrix im_mul(const IntMatrix& A, const IntMatrix& B) {
  if (A.cols != B.rows) fail("BadMatrix", "im_mul shape mismatch");
  IntMatrix C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      const Int& aik = A.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < B.cols; ++j) C.at(i, j) += aik * B.at(k, j);
    }
  return C;
}

IntMatrix im_add(const IntMatrix& A, const IntMatrix& B) {
  if (A.rows != B.rows || A.cols != B.cols) fail("BadMatrix", "im_add shape mismatch");
  IntMatrix C(A.rows, A.cols);
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = A.a[i] + B.a[i];
  return C;
}

IntMatrix im_sub(const IntMatrix& A, const IntMatrix& B) {
  if (A.rows != B.rows || A.cols != B.cols) fail("BadMatrix", "im_sub shape mismatch");
  IntMatrix C(A.rows, A.cols);
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = A.a[i] - B.a[i];
  return C;
}

IntMatrix im_neg(const IntMatrix& A) {
  IntMatrix C(A.rows, A.cols);
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = -A.a[i];
  return C;
}

IntMatrix im_scale(const Int& c, const IntMatrix& A) {
  IntMatrix C(A.rows, A.cols);
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = c * A.a[i];
  return C;
}

IntMatrix transpose(const IntMatrix& A) {
  IntMatrix T(A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
  return T;
}

IntMatrix hstack(const IntMatrix& A, const IntMatrix& B) {
  if (A.rows != B.rows) fail("BadMatrix", "hstack row mismatch");
  IntMatrix C(A.rows, A.cols + B.cols);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
    for (int j = 0; j < B.cols; ++j) C.at(i, A.cols + j) = B.at(i, j);
  }
  return C;
}

IntMatrix vstack(const IntMatrix& A, const IntMatrix& B) {
  if (A.cols != B.cols) fail("BadMatrix", "vstack col mismatch");
  IntMatrix C(A.rows + B.rows, A.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
  for (int i = 0; i < B.rows; ++i)
    for (int j = 0; j < B.cols; ++j) C.at(A.rows + i, j) = B.at(i, j);
  return C;
}

std::vector<Int> im_apply(const IntMatrix& A, const std::vector<Int>& x) {
  if (static_cast<int>(x.size()) != A.cols) fail("BadMatrix", "im_apply shape mismatch");
  std::vector<Int> y(A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j)
      if (A.at(i, j) != 0) y[i] += A.at(i, j) * x[j];
  return y;
}

std::vector<Int> im_col(const IntMatrix& A, int j) {
  std::vector<Int> v(A.rows);
  for (int i = 0; i < A.rows; ++i) v[i] = A.at(i, j);
  return v;
}

void im_set_col(IntMatrix& A, int j, const std::vector<Int>& v) {
  for (int i = 0; i < A.rows; ++i) A.at(i, j) = v[i];
}

bool im_is_zero(const IntMatrix& A) {
  for (const Int& x : A.a)
    if (x != 0) return false;
  return true;
}

Int det(const IntMatrix& A) {
  if (A.rows != A.cols) fail("BadMatrix", "det of non-square matrix");
  int n = A.rows;
  if (n == 0) return 1;
  // Bareiss fraction-free elimination
  IntMatrix M = A;
  Int sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (M.at(k, k) == 0) {
      int swap = -1;
      for (int i = k + 1; i < n; ++i)
        if (M.at(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(M.at(k, j), M.at(swap, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        M.at(i, j) = (M.at(i, j) * M.at(k, k) - M.at(i, k) * M.at(k, j)) / prev;
    prev = M.at(k, k);
  }
  return sign * M.at(n - 1, n - 1);
}

Int gcd_nonneg(const Int& x, const Int& y) {
  Int g = boost::multiprecision::gcd(x, y);
  return g < 0 ? Int(-g) : g;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

// Elementary operations maintaining U*M*V = D together with the inverses of
// U and V.
struct SnfWork {
  IntMatrix A, U, Uinv, V, Vinv;

  void row_swap(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < A.cols; ++c) std::swap(A.at(i, c), A.at(j, c));
    for (int c = 0; c < U.cols; ++c) std::swap(U.at(i, c), U.at(j, c));
    for (int r = 0; r < Uinv.rows; ++r) std::swap(Uinv.at(r, i), Uinv.at(r, j));
  }
  void col_swap(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < A.rows; ++r) std::swap(A.at(r, i), A.at(r, j));
    for (int r = 0; r < V.rows; ++r) std::swap(V.at(r, i), V.at(r, j));
    for (int c = 0; c < Vinv.cols; ++c) std::swap(Vinv.at(i, c), Vinv.at(j, c));
  }
  // row_i -= q * row_t
  void row_addmul(int i, int t, const Int& q) {
    if (q == 0) return;
    for (int c = 0; c < A.cols; ++c) A.at(i, c) -= q * A.at(t, c);
    for (int c = 0; c < U.cols; ++c) U.at(i, c) -= q * U.at(t, c);
    for (int r = 0; r < Uinv.rows; ++r) Uinv.at(r, t) += q * Uinv.at(r, i);
  }
  // col_j -= q * col_t
  void col_addmul(int j, int t, const Int& q) {
    if (q == 0) return;
    for (int r = 0; r < A.rows; ++r) A.at(r, j) -= q * A.at(r, t);
    for (int r = 0; r < V.rows; ++r) V.at(r, j) -= q * V.at(r, t);
    for (int c = 0; c < Vinv.cols; ++c) Vinv.at(t, c) += q * Vinv.at(j, c);
  }
  void row_negate(int i) {
    for (int c = 0; c < A.cols; ++c) A.at(i, c) = -A.at(i, c);
    for (int c = 0; c < U.cols; ++c) U.at(i, c) = -U.at(i, c);
    for (int r = 0; r < Uinv.rows; ++r) Uinv.at(r, i) = -Uinv.at(r, i);
  }

  // Smallest-absolute-value nonzero entry of A[t.., t..]; ties broken by
  // lowest row index, then lowest column index.  Returns false when the
  // submatrix is zero.
  bool find_pivot(int t, int& pi, int& pj) const {
    bool found = false;
    Int best = 0;
    for (int i = t; i < A.rows; ++i)
      for (int j = t; j < A.cols; ++j) {
        const Int& x = A.at(i, j);
        if (x == 0) continue;
        Int ax = x < 0 ? Int(-x) : x;
        if (!found || ax < best) {
          found = true;
          best = ax;
          pi = i;
          pj = j;
        }
      }
    return found;
  }
};

}  // namespace

SnfResult smith_normal_form(const IntMatrix& M) {
  SnfWork w{M, IntMatrix::identity(M.rows), IntMatrix::identity(M.rows),
            IntMatrix::identity(M.cols), IntMatrix::identity(M.cols)};
  int n = std::min(M.rows, M.cols);
  for (int t = 0; t < n; ++t) {
    int pi, pj;
    if (!w.find_pivot(t, pi, pj)) break;
    w.row_swap(t, pi);
    w.col_swap(t, pj);
    for (;;) {
      // Clear column t below and row t right of the pivot; truncated division
      // leaves remainders strictly smaller in absolute value, so re-selecting
      // the minimal pivot makes progress.
      bool clean = true;
      for (int i = t + 1; i < w.A.rows; ++i) {
        if (w.A.at(i, t) == 0) continue;
        w.row_addmul(i, t, w.A.at(i, t) / w.A.at(t, t));
        if (w.A.at(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < w.A.cols; ++j) {
        if (w.A.at(t, j) == 0) continue;
        w.col_addmul(j, t, w.A.at(t, j) / w.A.at(t, t));
        if (w.A.at(t, j) != 0) clean = false;
      }
      if (!clean) {
        w.find_pivot(t, pi, pj);
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        continue;
      }
      // Pivot isolated; enforce that it divides the remaining submatrix.
      const Int& p = w.A.at(t, t);
      int oi = -1;
      for (int i = t + 1; i < w.A.rows && oi < 0; ++i)
        for (int j = t + 1; j < w.A.cols; ++j)
          if (w.A.at(i, j) % p != 0) {
            oi = i;
            break;
          }
      if (oi < 0) break;
      w.row_addmul(t, oi, Int(-1));  // row_t += row_oi, keeps A[t][t] = p
    }
    if (w.A.at(t, t) < 0) w.row_negate(t);
  }
  return SnfResult{std::move(w.U), std::move(w.A), std::move(w.V),
                   std::move(w.Uinv), std::move(w.Vinv)};
}

namespace {

int snf_rank(const IntMatrix& D) {
  int r = 0, n = std::min(D.rows, D.cols);
  while (r < n && D.at(r, r) != 0) ++r;
  return r;
}

}  // namespace

IntMatrix int_kernel(const IntMatrix& M) {
  SnfResult s = smith_normal_form(M);
  int r = snf_rank(s.D);
  IntMatrix K(M.cols, M.cols - r);
  for (int j = r; j < M.cols; ++j)
    for (int i = 0; i < M.cols; ++i) K.at(i, j - r) = s.V.at(i, j);
  return K;
}

std::optional<std::vector<Int>> int_solve(const IntMatrix& M, const std::vector<Int>& b) {
  if (static_cast<int>(b.size()) != M.rows) fail("BadMatrix", "int_solve shape mismatch");
  SnfResult s = smith_normal_form(M);
  int r = snf_rank(s.D);
  std::vector<Int> z = im_apply(s.U, b);
  std::vector<Int> y(M.cols);
  for (int i = 0; i < M.rows; ++i) {
    if (i < r) {
      if (z[i] % s.D.at(i, i) != 0) return std::nullopt;
      if (i < M.cols) y[i] = z[i] / s.D.at(i, i);
    } else if (z[i] != 0) {
      return std::nullopt;
    }
  }
  return im_apply(s.V, y);
}

bool in_image(const IntMatrix& M, const std::vector<Int>& b) {
  return int_solve(M, b).has_value();
}

// ---------------------------------------------------------------------------
// FgAbGroup

Int FgAbGroup::order() const {
  Int n = 1;
  for (const Int& d : invariant_factors) {
    if (d == 0) return 0;
    n *= d;
  }
  return n;
}

bool same_invariants(const FgAbGroup& A, const FgAbGroup& B) {
  return A.invariant_factors == B.invariant_factors;
}

std::string factors_to_string(const FgAbGroup& A) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < A.invariant_factors.size(); ++i)
    os << (i ? "," : "") << A.invariant_factors[i];
  os << "]";
  return os.str();
}

FgAbGroup fgab_trivial() { return FgAbGroup{}; }

FgAbGroup fgab_free(int n) {
  FgAbGroup G;
  G.invariant_factors.assign(n, Int(0));
  return G;
}

FgAbGroup fgab_cyclic(const Int& d) { return fgab_from_factors({d}); }

FgAbGroup fgab_from_factors(const std::vector<Int>& orders) {
  return fgab_from_presentation(IntMatrix::diag(orders));
}

FgAbGroup fgab_from_presentation(const IntMatrix& M) {
  // Relations are the rows of M; present Z^cols / rowspan via the SNF of M^T.
  const int g = M.cols;
  SnfResult s = smith_normal_form(transpose(M));
  std::vector<Int> order(g, Int(0));
  int n = std::min(g, M.rows);
  for (int i = 0; i < n; ++i) order[i] = s.D.at(i, i);

  std::vector<int> kept;
  for (int i = 0; i < g; ++i)
    if (order[i] != 1) kept.push_back(i);

  FgAbGroup G;
  for (int i : kept) G.invariant_factors.push_back(order[i]);
  G.presentation = M;
  BasisWitness w;
  w.to_canonical = IntMatrix(static_cast<int>(kept.size()), g);
  w.representatives = IntMatrix(g, static_cast<int>(kept.size()));
  for (size_t k = 0; k < kept.size(); ++k) {
    for (int j = 0; j < g; ++j) w.to_canonical.at(static_cast<int>(k), j) = s.U.at(kept[k], j);
    for (int i = 0; i < g; ++i) w.representatives.at(i, static_cast<int>(k)) = s.Uinv.at(i, kept[k]);
  }
  G.basis_witness = std::move(w);
  return G;
}

std::vector<Int> reduce_coords(const FgAbGroup& A, std::vector<Int> v) {
  if (static_cast<int>(v.size()) != A.rank()) fail("BadMatrix", "coordinate size mismatch");
  for (int i = 0; i < A.rank(); ++i) {
    const Int& d = A.invariant_factors[i];
    if (d != 0) {
      v[i] %= d;
      if (v[i] < 0) v[i] += d;
    }
  }
  return v;
}

IntMatrix order_relations(const FgAbGroup& A) {
  std::vector<int> torsion;
  for (int i = 0; i < A.rank(); ++i)
    if (A.invariant_factors[i] != 0) torsion.push_back(i);
  IntMatrix R(A.rank(), static_cast<int>(torsion.size()));
  for (size_t k = 0; k < torsion.size(); ++k)
    R.at(torsion[k], static_cast<int>(k)) = A.invariant_factors[torsion[k]];
  return R;
}

// ---------------------------------------------------------------------------
// Direct sum / tensor / exterior / cokernel

DsumFgab dsum_fgab(const FgAbGroup& A, const FgAbGroup& B) {
  std::vector<Int> orders = A.invariant_factors;
  orders.insert(orders.end(), B.invariant_factors.begin(), B.invariant_factors.end());
  FgAbGroup S = fgab_from_factors(orders);
  const BasisWitness& w = *S.basis_witness;
  const int ra = A.rank(), rb = B.rank();
  DsumFgab out;
  out.inj1 = IntMatrix(S.rank(), ra);
  out.inj2 = IntMatrix(S.rank(), rb);
  out.proj1 = IntMatrix(ra, S.rank());
  out.proj2 = IntMatrix(rb, S.rank());
  for (int k = 0; k < S.rank(); ++k) {
    for (int i = 0; i < ra; ++i) {
      out.inj1.at(k, i) = w.to_canonical.at(k, i);
      out.proj1.at(i, k) = w.representatives.at(i, k);
    }
    for (int j = 0; j < rb; ++j) {
      out.inj2.at(k, j) = w.to_canonical.at(k, ra + j);
      out.proj2.at(j, k) = w.representatives.at(ra + j, k);
    }
  }
  out.group = std::move(S);
  return out;
}

TensorFgab tensor_fgab_full(const FgAbGroup& A, const FgAbGroup& B) {
  const int ra = A.rank(), rb = B.rank();
  std::vector<Int> orders(static_cast<size_t>(ra) * rb);
  for (int i = 0; i < ra; ++i)
    for (int j = 0; j < rb; ++j)
      orders[static_cast<size_t>(i) * rb + j] =
          gcd_nonneg(A.invariant_factors[i], B.invariant_factors[j]);
  FgAbGroup T = fgab_from_factors(orders);
  TensorFgab out;
  out.pair_to_canon = T.basis_witness->to_canonical;
  out.canon_to_pair = T.basis_witness->representatives;
  out.ra = ra;
  out.rb = rb;
  out.group = std::move(T);
  return out;
}

FgAbGroup tensor_fgab(const FgAbGroup& A, const FgAbGroup& B) {
  return tensor_fgab_full(A, B).group;
}

IntMatrix map_on_tensor(const IntMatrix& f, const IntMatrix& g,
                        const TensorFgab& src, const TensorFgab& dst) {
  if (f.cols != src.ra || g.cols != src.rb || f.rows != dst.ra || g.rows != dst.rb)
    fail("BadMatrix", "map_on_tensor shape mismatch");
  // pure pair (i,j) of src |-> sum_{u,v} f[u][i] g[v][j] * pair'(u,v)
  IntMatrix on_pairs(dst.ra * dst.rb, src.ra * src.rb);
  for (int i = 0; i < src.ra; ++i)
    for (int j = 0; j < src.rb; ++j) {
      int c = src.pair_index(i, j);
      for (int u = 0; u < dst.ra; ++u) {
        if (f.at(u, i) == 0) continue;
        for (int v = 0; v < dst.rb; ++v)
          on_pairs.at(dst.pair_index(u, v), c) = f.at(u, i) * g.at(v, j);
      }
    }
  return im_mul(dst.pair_to_canon, im_mul(on_pairs, src.canon_to_pair));
}

IntMatrix tensor_twist(const TensorFgab& src, const TensorFgab& dst, int sign) {
  if (src.ra != dst.rb || src.rb != dst.ra) fail("BadMatrix", "tensor_twist shape mismatch");
  IntMatrix on_pairs(dst.ra * dst.rb, src.ra * src.rb);
  for (int i = 0; i < src.ra; ++i)
    for (int j = 0; j < src.rb; ++j)
      on_pairs.at(dst.pair_index(j, i), src.pair_index(i, j)) = sign;
  return im_mul(dst.pair_to_canon, im_mul(on_pairs, src.canon_to_pair));
}

FgAbGroup exterior_square_fgab(const FgAbGroup& A) {
  std::vector<Int> orders;
  for (int i = 0; i < A.rank(); ++i)
    for (int j = i + 1; j < A.rank(); ++j)
      orders.push_back(gcd_nonneg(A.invariant_factors[i], A.invariant_factors[j]));
  return fgab_from_factors(orders);
}

CokernelFgab map_cokernel(const IntMatrix& f, const FgAbGroup& A, const FgAbGroup& B) {
  if (f.rows != B.rank() || f.cols != A.rank())
    fail("BadMatrix", "map_cokernel shape mismatch");
  // f respects torsion: d_j * f(e_j) must lie in B's relation lattice.
  for (int j = 0; j < A.rank(); ++j) {
    const Int& dj = A.invariant_factors[j];
    if (dj == 0) continue;
    for (int i = 0; i < B.rank(); ++i) {
      const Int& di = B.invariant_factors[i];
      Int v = dj * f.at(i, j);
      bool ok = (di == 0) ? (v == 0) : (v % di == 0);
      if (!ok)
        fail("DomainMismatch", "matrix does not respect torsion orders at column " +
                                   std::to_string(j));
    }
  }
  // Relations on B's canonical generators: the image columns plus B's orders.
  IntMatrix rel = transpose(f);
  IntMatrix orders = transpose(order_relations(B));
  IntMatrix pres = rel.rows ? vstack(rel, orders) : orders;
  FgAbGroup C = fgab_from_presentation(pres);
  CokernelFgab out;
  out.proj = C.basis_witness->to_canonical;
  out.sect = C.basis_witness->representatives;
  out.coker = std::move(C);
  return out;
}

namespace {

// Columns spanning im(gens) + relation lattice of T, as a single matrix.
IntMatrix with_lattice(const FgAbGroup& T, const IntMatrix& gens) {
  IntMatrix R = order_relations(T);
  if (gens.cols == 0) return R;
  if (R.cols == 0) return gens;
  return hstack(gens, R);
}

}  // namespace

FgAbGroup subgroup_invariants(const FgAbGroup& T, const IntMatrix& gens) {
  if (gens.rows != T.rank()) fail("BadMatrix", "subgroup generator shape mismatch");
  const int m = gens.cols;
  if (m == 0) return fgab_trivial();
  // The subgroup is Z^m / {x : gens*x lies in the relation lattice}.
  IntMatrix R = order_relations(T);
  IntMatrix K = int_kernel(R.cols ? hstack(gens, R) : gens);
  IntMatrix relations(K.cols, m);
  for (int c = 0; c < K.cols; ++c)
    for (int i = 0; i < m; ++i) relations.at(c, i) = K.at(i, c);
  FgAbGroup H = fgab_from_presentation(relations);
  H.presentation.reset();
  H.basis_witness.reset();
  return H;
}

bool subgroup_contains(const FgAbGroup& T, const IntMatrix& gens, const std::vector<Int>& x) {
  return in_image(with_lattice(T, gens), x);
}

bool subgroup_equal(const FgAbGroup& T, const IntMatrix& gens1, const IntMatrix& gens2) {
  for (int j = 0; j < gens2.cols; ++j)
    if (!subgroup_contains(T, gens1, im_col(gens2, j))) return false;
  for (int j = 0; j < gens1.cols; ++j)
    if (!subgroup_contains(T, gens2, im_col(gens1, j))) return false;
  return true;
}

IntMatrix fgab_map_kernel_gens(const IntMatrix& f, const FgAbGroup& A, const FgAbGroup& B) {
  if (f.rows != B.rank() || f.cols != A.rank()) fail("BadMatrix", "kernel shape mismatch");
  // x in ker iff f*x lies in B's relation lattice; add A's own relations so
  // the generators are taken modulo them.
  IntMatrix RB = order_relations(B);
  IntMatrix K = int_kernel(RB.cols ? hstack(f, RB) : f);
  IntMatrix gens(A.rank(), K.cols + 0);
  for (int c = 0; c < K.cols; ++c)
    for (int i = 0; i < A.rank(); ++i) gens.at(i, c) = K.at(i, c);
  return gens;
}

// ---------------------------------------------------------------------------
// Fields

Field field_Q() { return Field{0}; }

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Field field_Fp(long p) {
  if (!is_prime(p)) fail("BadField", "modulus " + std::to_string(p) + " is not prime");
  return Field{p};
}

Rat fnorm(const Field& F, const Rat& x) {
  if (F.is_rational()) return x;  // cpp_rational keeps itself reduced
  Int num = boost::multiprecision::numerator(x);
  Int den = boost::multiprecision::denominator(x);
  Int p(F.p);
  Int n = num % p;
  if (n < 0) n += p;
  Int d = den % p;
  if (d < 0) d += p;
  if (d == 0) fail("BadField", "denominator not invertible mod p");
  if (d != 1) {
    // modular inverse by Fermat (p prime)
    Int inv = 1, base = d, e = p - 2;
    while (e > 0) {
      if (e % 2 == 1) inv = inv * base % p;
      base = base * base % p;
      e /= 2;
    }
    n = n * inv % p;
  }
  return Rat(n);
}

Rat fadd(const Field& F, const Rat& x, const Rat& y) { return fnorm(F, x + y); }
Rat fsub(const Field& F, const Rat& x, const Rat& y) { return fnorm(F, x - y); }
Rat fmul(const Field& F, const Rat& x, const Rat& y) { return fnorm(F, x * y); }
Rat fneg(const Field& F, const Rat& x) { return fnorm(F, -x); }

Rat finv(const Field& F, const Rat& x) {
  Rat xn = fnorm(F, x);
  if (xn == 0) fail("BadField", "division by zero");
  return fnorm(F, Rat(1) / xn);
}

FieldMatrix FieldMatrix::identity(Field f, int n) {
  FieldMatrix I(f, n, n);
  for (int i = 0; i < n; ++i) I.at(i, i) = 1;
  return I;
}

namespace {

void check_same_field(const FieldMatrix& A, const FieldMatrix& B) {
  if (!(A.field == B.field)) fail("BadField", "mixed fields in matrix operation");
}

}  // namespace

FieldMatrix fm_mul(const FieldMatrix& A, const FieldMatrix& B) {
  check_same_field(A, B);
  if (A.cols != B.rows) fail("BadMatrix", "fm_mul shape mismatch");
  FieldMatrix C(A.field, A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      const Rat& aik = A.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < B.cols; ++j) C.at(i, j) += aik * B.at(k, j);
    }
  for (Rat& x : C.a) x = fnorm(A.field, x);
  return C;
}

FieldMatrix fm_add(const FieldMatrix& A, const FieldMatrix& B) {
  check_same_field(A, B);
  if (A.rows != B.rows || A.cols != B.cols) fail("BadMatrix", "fm_add shape mismatch");
  FieldMatrix C(A.field, A.rows, A.cols);
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = fadd(A.field, A.a[i], B.a[i]);
  return C;
}

FieldMatrix fm_sub(const FieldMatrix& A, const FieldMatrix& B) {
  check_same_field(A, B);
  if (A.rows != B.rows || A.cols != B.cols) fail("BadMatrix", "fm_sub shape mismatch");
  FieldMatrix C(A.field, A.rows, A.cols);
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = fsub(A.field, A.a[i], B.a[i]);
  return C;
}

FieldMatrix fm_neg(const FieldMatrix& A) {
  FieldMatrix C(A.field, A.rows, A.cols);
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = fneg(A.field, A.a[i]);
  return C;
}

FieldMatrix fm_scale(const Rat& c, const FieldMatrix& A) {
  FieldMatrix C(A.field, A.rows, A.cols);
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = fmul(A.field, c, A.a[i]);
  return C;
}

FieldMatrix fm_transpose(const FieldMatrix& A) {
  FieldMatrix T(A.field, A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
  return T;
}

FieldMatrix fm_hstack(const FieldMatrix& A, const FieldMatrix& B) {
  check_same_field(A, B);
  if (A.rows != B.rows) fail("BadMatrix", "fm_hstack row mismatch");
  FieldMatrix C(A.field, A.rows, A.cols + B.cols);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
    for (int j = 0; j < B.cols; ++j) C.at(i, A.cols + j) = B.at(i, j);
  }
  return C;
}

FieldMatrix fm_vstack(const FieldMatrix& A, const FieldMatrix& B) {
  check_same_field(A, B);
  if (A.cols != B.cols) fail("BadMatrix", "fm_vstack col mismatch");
  FieldMatrix C(A.field, A.rows + B.rows, A.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
  for (int i = 0; i < B.rows; ++i)
    for (int j = 0; j < B.cols; ++j) C.at(A.rows + i, j) = B.at(i, j);
  return C;
}

std::vector<Rat> fm_apply(const FieldMatrix& A, const std::vector<Rat>& x) {
  if (static_cast<int>(x.size()) != A.cols) fail("BadMatrix", "fm_apply shape mismatch");
  std::vector<Rat> y(A.rows);
  for (int i = 0; i < A.rows; ++i) {
    Rat s = 0;
    for (int j = 0; j < A.cols; ++j)
      if (A.at(i, j) != 0) s += A.at(i, j) * x[j];
    y[i] = fnorm(A.field, s);
  }
  return y;
}

std::vector<Rat> fm_col(const FieldMatrix& A, int j) {
  std::vector<Rat> v(A.rows);
  for (int i = 0; i < A.rows; ++i) v[i] = A.at(i, j);
  return v;
}

void fm_set_col(FieldMatrix& A, int j, const std::vector<Rat>& v) {
  for (int i = 0; i < A.rows; ++i) A.at(i, j) = v[i];
}

FieldMatrix fm_cols(const FieldMatrix& A, const std::vector<int>& idx) {
  FieldMatrix C(A.field, A.rows, static_cast<int>(idx.size()));
  for (size_t k = 0; k < idx.size(); ++k)
    for (int i = 0; i < A.rows; ++i) C.at(i, static_cast<int>(k)) = A.at(i, idx[k]);
  return C;
}

bool fm_is_zero(const FieldMatrix& A) {
  for (const Rat& x : A.a)
    if (x != 0) return false;
  return true;
}

RrefResult field_rref(const FieldMatrix& M) {
  RrefResult res{M, {}, 0};
  FieldMatrix& R = res.R;
  const Field& F = M.field;
  int row = 0;
  for (int col = 0; col < M.cols && row < M.rows; ++col) {
    int piv = -1;
    for (int i = row; i < M.rows; ++i)
      if (R.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < M.cols; ++j) std::swap(R.at(piv, j), R.at(row, j));
    Rat inv = finv(F, R.at(row, col));
    for (int j = 0; j < M.cols; ++j) R.at(row, j) = fmul(F, inv, R.at(row, j));
    for (int i = 0; i < M.rows; ++i) {
      if (i == row || R.at(i, col) == 0) continue;
      Rat c = R.at(i, col);
      for (int j = 0; j < M.cols; ++j)
        R.at(i, j) = fsub(F, R.at(i, j), fmul(F, c, R.at(row, j)));
    }
    res.pivots.push_back(col);
    ++row;
  }
  res.rank = row;
  return res;
}

int field_rank(const FieldMatrix& M) { return field_rref(M).rank; }

FieldMatrix field_kernel(const FieldMatrix& M) {
  RrefResult r = field_rref(M);
  std::vector<int> free_cols;
  {
    size_t k = 0;
    for (int j = 0; j < M.cols; ++j) {
      if (k < r.pivots.size() && r.pivots[k] == j)
        ++k;
      else
        free_cols.push_back(j);
    }
  }
  FieldMatrix K(M.field, M.cols, static_cast<int>(free_cols.size()));
  for (size_t c = 0; c < free_cols.size(); ++c) {
    K.at(free_cols[c], static_cast<int>(c)) = 1;
    for (size_t pr = 0; pr < r.pivots.size(); ++pr)
      K.at(r.pivots[pr], static_cast<int>(c)) =
          fneg(M.field, r.R.at(static_cast<int>(pr), free_cols[c]));
  }
  return K;
}

std::optional<std::vector<Rat>> field_solve(const FieldMatrix& M, const std::vector<Rat>& b) {
  if (static_cast<int>(b.size()) != M.rows) fail("BadMatrix", "field_solve shape mismatch");
  FieldMatrix Mb(M.field, M.rows, M.cols + 1);
  for (int i = 0; i < M.rows; ++i) {
    for (int j = 0; j < M.cols; ++j) Mb.at(i, j) = M.at(i, j);
    Mb.at(i, M.cols) = fnorm(M.field, b[i]);
  }
  RrefResult r = field_rref(Mb);
  if (!r.pivots.empty() && r.pivots.back() == M.cols) return std::nullopt;
  std::vector<Rat> x(M.cols);
  for (size_t pr = 0; pr < r.pivots.size(); ++pr)
    x[r.pivots[pr]] = r.R.at(static_cast<int>(pr), M.cols);
  return x;
}

bool span_contains_vec(const FieldMatrix& space, const std::vector<Rat>& v) {
  return field_solve(space, v).has_value();
}

bool span_contains(const FieldMatrix& space, const FieldMatrix& vectors) {
  for (int j = 0; j < vectors.cols; ++j)
    if (!span_contains_vec(space, fm_col(vectors, j))) return false;
  return true;
}

bool span_equal(const FieldMatrix& A, const FieldMatrix& B) {
  return span_contains(A, B) && span_contains(B, A);
}

FieldMatrix span_basis(const FieldMatrix& M) {
  RrefResult r = field_rref(M);
  return fm_cols(M, r.pivots);
}

FieldMatrix span_sum(const FieldMatrix& A, const FieldMatrix& B) {
  return span_basis(fm_hstack(A, B));
}

FieldMatrix span_intersect(const FieldMatrix& A, const FieldMatrix& B) {
  // Zassenhaus-free version: ker of [A | -B] projected through A.
  if (A.cols == 0 || B.cols == 0) return FieldMatrix(A.field, A.rows, 0);
  FieldMatrix K = field_kernel(fm_hstack(A, fm_neg(B)));
  FieldMatrix coeffA(A.field, A.cols, K.cols);
  for (int j = 0; j < K.cols; ++j)
    for (int i = 0; i < A.cols; ++i) coeffA.at(i, j) = K.at(i, j);
  return span_basis(fm_mul(A, coeffA));
}

FieldQuotient field_quotient(const FieldMatrix& V, const FieldMatrix& W) {
  check_same_field(V, W);
  if (V.rows != W.rows) fail("BadMatrix", "field_quotient ambient mismatch");
  int rv = field_rank(V);
  if (field_rank(fm_hstack(V, W)) > rv)
    fail("NotSubspace", "second space is not contained in the first");
  // Pivots of [W | V] landing in the V block pick coset representatives.
  RrefResult r = field_rref(fm_hstack(W, V));
  FieldQuotient out;
  std::vector<int> rep_cols;
  for (int pc : r.pivots)
    if (pc >= W.cols) rep_cols.push_back(pc - W.cols);
  out.reps = fm_cols(V, rep_cols);
  out.dim = static_cast<int>(rep_cols.size());
  return out;
}

}  // namespace nilprod::exactlin
