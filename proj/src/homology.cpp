#include "nilprod/homology.hpp"

namespace nilprod::homology {

using exactlin::fadd;
using exactlin::field_kernel;
using exactlin::field_quotient;
using exactlin::field_rank;
using exactlin::field_solve;
using exactlin::fm_apply;
using exactlin::fm_col;
using exactlin::fm_hstack;
using exactlin::fm_is_zero;
using exactlin::fm_mul;
using exactlin::fm_set_col;
using exactlin::fmul;
using exactlin::fneg;
using exactlin::fnorm;
using exactlin::fsub;
using exactlin::span_basis;
using exactlin::span_contains_vec;
using exactlin::span_equal;
using nonassoc::full_space;
using nonassoc::product_span;
using nonassoc::sc_mul;
using nonassoc::Variety;

int wedge2_dim(int n) { return n * (n - 1) / 2; }

int wedge2_index(int i, int j, int n) {
  // pairs (0,1), (0,2), ..., (0,n-1), (1,2), ...
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

std::vector<Rat> wedge2_coords(const Field& F, int n, const std::vector<Rat>& u,
                               const std::vector<Rat>& v) {
  std::vector<Rat> out(static_cast<size_t>(wedge2_dim(n)), Rat(0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Rat c = fsub(F, fmul(F, u[static_cast<size_t>(i)], v[static_cast<size_t>(j)]),
                         fmul(F, u[static_cast<size_t>(j)], v[static_cast<size_t>(i)]));
      out[static_cast<size_t>(wedge2_index(i, j, n))] = c;
    }
  return out;
}

FieldMatrix wedge2_map(const FieldMatrix& f) {
  const int m = f.rows, n = f.cols;
  FieldMatrix out(f.field, wedge2_dim(m), wedge2_dim(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      fm_set_col(out, wedge2_index(i, j, n), wedge2_coords(f.field, m, fm_col(f, i), fm_col(f, j)));
  return out;
}

namespace {

std::vector<Rat> basis_vec(const Field& F, int n, int i) {
  std::vector<Rat> v(static_cast<size_t>(n), Rat(0));
  v[static_cast<size_t>(i)] = fnorm(F, Rat(1));
  return v;
}

void require_lie(const SCAlgebra& g, const char* what) {
  if (g.variety != Variety::Lie)
    fail("WrongVariety", std::string(what) + " expects a Lie-tagged algebra, got " +
                             nonassoc::variety_name(g.variety));
  nonassoc::require_tag_consistent(g);
}

// v ^ e_k as a wedge coordinate vector.
std::vector<Rat> wedge_with_basis(const Field& F, int n, const std::vector<Rat>& v, int k) {
  return wedge2_coords(F, n, v, basis_vec(F, n, k));
}

void vadd_scaled(const Field& F, std::vector<Rat>& acc, const Rat& c,
                 const std::vector<Rat>& v) {
  for (size_t i = 0; i < acc.size(); ++i) acc[i] = fadd(F, acc[i], fmul(F, c, v[i]));
}

FieldMatrix inverse_of(const FieldMatrix& P) {
  FieldMatrix inv(P.field, P.rows, P.cols);
  for (int j = 0; j < P.cols; ++j) {
    auto sol = field_solve(P, basis_vec(P.field, P.rows, j));
    if (!sol) fail("InternalError", "basis matrix is singular");
    fm_set_col(inv, j, *sol);
  }
  return inv;
}

}  // namespace

FieldMatrix wedge_d2(const SCAlgebra& g) {
  const int n = g.dim;
  FieldMatrix d2(g.field, n, wedge2_dim(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::vector<Rat> col(static_cast<size_t>(n));
      for (int k = 0; k < n; ++k) col[static_cast<size_t>(k)] = fneg(g.field, g.cc(i, j, k));
      fm_set_col(d2, wedge2_index(i, j, n), col);
    }
  return d2;
}

FieldMatrix wedge_d3(const SCAlgebra& g) {
  const int n = g.dim;
  const int w2 = wedge2_dim(n);
  std::vector<std::array<int, 3>> triples;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) triples.push_back({i, j, k});
  FieldMatrix d3(g.field, w2, static_cast<int>(triples.size()));
  const Rat one = fnorm(g.field, Rat(1));
  for (size_t t = 0; t < triples.size(); ++t) {
    const auto [i, j, k] = triples[t];
    std::vector<Rat> col(static_cast<size_t>(w2), Rat(0));
    // -[e_i,e_j] ^ e_k + [e_i,e_k] ^ e_j - [e_j,e_k] ^ e_i
    vadd_scaled(g.field, col, fneg(g.field, one),
                wedge_with_basis(g.field, n, sc_mul(g, basis_vec(g.field, n, i),
                                                    basis_vec(g.field, n, j)),
                                 k));
    vadd_scaled(g.field, col, one,
                wedge_with_basis(g.field, n, sc_mul(g, basis_vec(g.field, n, i),
                                                    basis_vec(g.field, n, k)),
                                 j));
    vadd_scaled(g.field, col, fneg(g.field, one),
                wedge_with_basis(g.field, n, sc_mul(g, basis_vec(g.field, n, j),
                                                    basis_vec(g.field, n, k)),
                                 i));
    fm_set_col(d3, static_cast<int>(t), col);
  }
  return d3;
}

namespace {

HomologySpace make_space(const FieldMatrix& cycles, const FieldMatrix& bnds) {
  HomologySpace H;
  H.cycles = span_basis(cycles);
  H.boundaries = span_basis(bnds);
  exactlin::FieldQuotient q = field_quotient(H.cycles, H.boundaries);
  H.dim = q.dim;
  H.reps = q.reps;
  return H;
}

}  // namespace

HomologySpace ce_homology(const SCAlgebra& g, int degree) {
  require_lie(g, "homology");
  if (degree == 1)
    return make_space(FieldMatrix::identity(g.field, g.dim),
                      product_span(g, full_space(g), full_space(g)));
  if (degree == 2) return make_space(field_kernel(wedge_d2(g)), wedge_d3(g));
  fail("BadDimension", "homology implemented in degrees 1 and 2");
}

std::vector<Rat> homology_class(const HomologySpace& H, const std::vector<Rat>& cycle) {
  if (!span_contains_vec(H.cycles, cycle)) fail("InternalError", "vector is not a cycle");
  if (H.dim == 0) return {};
  auto sol = field_solve(fm_hstack(H.reps, H.boundaries), cycle);
  if (!sol) fail("InternalError", "cycle not reached by representatives and boundaries");
  return std::vector<Rat>(sol->begin(), sol->begin() + H.dim);
}

CentralExtension central_extension_validate(const SCAlgebra& B, const FieldMatrix& K) {
  require_lie(B, "central extension");
  const int n = B.dim;
  CentralExtension E;
  E.B = B;
  E.K = span_basis(K);

  // Centrality: every product of a K vector with a basis vector vanishes.
  // A violating pair is reported; a nonzero product landing outside K would
  // also break ideal-ness, reported separately.
  const FieldMatrix prod = product_span(B, full_space(B), E.K);
  if (prod.cols != 0) {
    if (!exactlin::span_contains(E.K, prod))
      fail("NotIdeal", "the kernel is not an ideal of the ambient algebra");
    for (int c = 0; c < E.K.cols; ++c)
      for (int i = 0; i < n; ++i) {
        std::vector<Rat> p = sc_mul(B, fm_col(E.K, c), basis_vec(B.field, n, i));
        bool nonzero = false;
        for (const Rat& x : p) nonzero = nonzero || (x != 0);
        if (nonzero)
          fail("NotCentral", "kernel vector " + std::to_string(c + 1) +
                                 " has a nonzero bracket with basis vector e" +
                                 std::to_string(i + 1));
      }
    fail("NotCentral", "kernel brackets do not vanish");
  }

  // Pinned complement: standard basis vectors accepted greedily against K.
  FieldMatrix T = E.K;
  std::vector<int> complement;
  for (int i = 0; i < n && T.cols < n; ++i) {
    FieldMatrix cand(B.field, n, 1);
    fm_set_col(cand, 0, basis_vec(B.field, n, i));
    FieldMatrix ext = fm_hstack(T, cand);
    if (field_rank(ext) > T.cols) {
      T = ext;
      complement.push_back(i);
    }
  }
  const int a = static_cast<int>(complement.size());

  // Basis order: complement first, K last; the projection reads off the
  // complement coordinates and the section embeds them back.
  FieldMatrix C(B.field, n, a);
  for (int j = 0; j < a; ++j) fm_set_col(C, j, basis_vec(B.field, n, complement[static_cast<size_t>(j)]));
  FieldMatrix Tinv = inverse_of(fm_hstack(C, E.K));
  FieldMatrix proj(B.field, a, n);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < n; ++j) proj.at(i, j) = Tinv.at(i, j);
  E.proj = proj;
  E.sect = C;

  E.A = nonassoc::make_sc(B.field, a, Variety::Lie);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < a; ++j) {
      const std::vector<Rat> p = fm_apply(proj, sc_mul(B, fm_col(C, i), fm_col(C, j)));
      for (int k = 0; k < a; ++k) E.A.cc(i, j, k) = p[static_cast<size_t>(k)];
    }
  return E;
}

GaneaSequence ganea_sequence(const CentralExtension& E) {
  const SCAlgebra& B = E.B;
  const SCAlgebra& A = E.A;
  const Field F = B.field;
  const int n = B.dim;
  const int k = E.K.cols;

  GaneaSequence S;
  S.ext = E;
  S.char2 = (F.p == 2);
  S.H1B = ce_homology(B, 1);
  S.H1A = ce_homology(A, 1);
  S.H2B = ce_homology(B, 2);
  S.H2A = ce_homology(A, 2);
  S.dims = {k * S.H1B.dim, S.H2B.dim, S.H2A.dim, k, S.H1B.dim, S.H1A.dim};

  // g1: k (x) class(b) |-> class(k ^ b).  Centrality makes k ^ b a cycle and
  // the class independent of the representative b.
  S.g1 = FieldMatrix(F, S.H2B.dim, k * S.H1B.dim);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < S.H1B.dim; ++j) {
      const std::vector<Rat> w =
          wedge2_coords(F, n, fm_col(E.K, i), fm_col(S.H1B.reps, j));
      fm_set_col(S.g1, i * S.H1B.dim + j, homology_class(S.H2B, w));
    }

  // g2: induced by Lambda^2 of the projection.
  const FieldMatrix lp = wedge2_map(E.proj);
  S.g2 = FieldMatrix(F, S.H2A.dim, S.H2B.dim);
  for (int j = 0; j < S.H2B.dim; ++j)
    fm_set_col(S.g2, j, homology_class(S.H2A, fm_apply(lp, fm_col(S.H2B.reps, j))));

  // g3: class(sum x^y) |-> sum [sect x, sect y], which lands in K because the
  // projection of the value is -d2 of a cycle.
  S.g3 = FieldMatrix(F, k, S.H2A.dim);
  for (int j = 0; j < S.H2A.dim; ++j) {
    const std::vector<Rat> w = fm_col(S.H2A.reps, j);
    std::vector<Rat> val(static_cast<size_t>(n), Rat(0));
    for (int p = 0; p < A.dim; ++p)
      for (int q = p + 1; q < A.dim; ++q) {
        const Rat& c = w[static_cast<size_t>(wedge2_index(p, q, A.dim))];
        if (c == 0) continue;
        vadd_scaled(F, val, c, sc_mul(B, fm_col(E.sect, p), fm_col(E.sect, q)));
      }
    auto sol = field_solve(E.K, val);
    if (!sol) fail("InternalError", "connecting value escaped the kernel");
    fm_set_col(S.g3, j, *sol);
  }

  // g4: include K, project to H1(B).
  S.g4 = FieldMatrix(F, S.H1B.dim, k);
  for (int i = 0; i < k; ++i) fm_set_col(S.g4, i, homology_class(S.H1B, fm_col(E.K, i)));

  // g5: induced by the projection.
  S.g5 = FieldMatrix(F, S.H1A.dim, S.H1B.dim);
  for (int j = 0; j < S.H1B.dim; ++j)
    fm_set_col(S.g5, j, homology_class(S.H1A, fm_apply(E.proj, fm_col(S.H1B.reps, j))));
  return S;
}

ExactnessReport exactness_check(const GaneaSequence& S) {
  ExactnessReport R;
  R.dims = S.dims;
  const std::array<const FieldMatrix*, 5> maps{&S.g1, &S.g2, &S.g3, &S.g4, &S.g5};
  for (size_t i = 0; i < 5; ++i) R.ranks[i] = field_rank(*maps[i]);

  R.complex_ok = true;
  for (size_t i = 0; i + 1 < 5; ++i)
    R.complex_ok = R.complex_ok && fm_is_zero(fm_mul(*maps[i + 1], *maps[i]));

  for (size_t i = 0; i + 1 < 5; ++i)
    R.exact_at[i] = span_equal(span_basis(*maps[i]), field_kernel(*maps[i + 1]));
  R.end_surjective = (field_rank(S.g5) == S.dims[5]);

  R.exact = R.complex_ok && R.end_surjective;
  for (bool b : R.exact_at) R.exact = R.exact && b;
  return R;
}

LcsGaneaReport lcs_ganea_application(const SCAlgebra& X, int n) {
  require_lie(X, "lower-central-series application");
  if (n < 2) fail("BadDimension", "the application needs n >= 2");
  nonassoc::LcsResult lcs = nonassoc::lower_central_series(X);
  // central_extension_validate rejects the quotient when [gamma_n, X] != 0,
  // i.e. when the class exceeds n.
  CentralExtension E = central_extension_validate(X, nonassoc::gamma_term(lcs, n));

  LcsGaneaReport rep;
  rep.seq = ganea_sequence(E);
  rep.fragment_dims = {rep.seq.dims[0], rep.seq.dims[1], rep.seq.dims[2], rep.seq.dims[3]};
  ExactnessReport ex = exactness_check(rep.seq);
  rep.fragment_exact = ex.complex_ok && ex.exact_at[0] && ex.exact_at[1];
  return rep;
}

}  // namespace nilprod::homology
