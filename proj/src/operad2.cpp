#include "nilprod/operad2.hpp"

#include <algorithm>
#include <utility>

namespace nilprod::operad2 {

using namespace exactlin;

namespace {

Int to_int(const Rat& x, const char* what) {
  if (boost::multiprecision::denominator(x) != 1)
    fail("NotIntegral", std::string(what) + ": entry " + x.str() + " is not an integer");
  return boost::multiprecision::numerator(x);
}

IntMatrix to_int_matrix(const FieldMatrix& M, const char* what) {
  IntMatrix out(M.rows, M.cols);
  for (int i = 0; i < M.rows; ++i)
    for (int j = 0; j < M.cols; ++j) out.at(i, j) = to_int(M.at(i, j), what);
  return out;
}

FieldMatrix to_field_matrix(const IntMatrix& M, const Field& F) {
  FieldMatrix out(F, M.rows, M.cols);
  for (int i = 0; i < M.rows; ++i)
    for (int j = 0; j < M.cols; ++j) out.at(i, j) = fnorm(F, Rat(M.at(i, j)));
  return out;
}

bool is_integral(const FieldMatrix& M) {
  for (const auto& x : M.a)
    if (boost::multiprecision::denominator(x) != 1) return false;
  return true;
}

// order of the flat tensor coordinate: gcd of the factor orders
Int gcd3(const Int& a, const Int& b, const Int& c) {
  return gcd_nonneg(gcd_nonneg(a, b), c);
}

int flat3(int i, int j, int k, int rj, int rk) { return (i * rj + j) * rk + k; }

}  // namespace

// ---------------------------------------------------------------------------
// Rings and modules

Ring ring_Z() { return Ring{Ring::Kind::Z, 0}; }
Ring ring_Q() { return Ring{Ring::Kind::Q, 0}; }

Ring ring_Fp(long p) {
  field_Fp(p);  // validates primality
  return Ring{Ring::Kind::Fp, p};
}

std::string ring_to_string(const Ring& R) {
  switch (R.kind) {
    case Ring::Kind::Z: return "Z";
    case Ring::Kind::Q: return "Q";
    default: return "F" + std::to_string(R.p);
  }
}

Field ring_field(const Ring& R) {
  return R.kind == Ring::Kind::Fp ? field_Fp(R.p) : field_Q();
}

Mod mod_zero(const Ring& R) { return Mod{R, {}}; }

Mod mod_free(const Ring& R, int n) {
  return Mod{R, std::vector<Int>(static_cast<size_t>(n), Int(0))};
}

Mod mod_from_orders(const Ring& R, std::vector<Int> orders) {
  for (const auto& d : orders) {
    if (d < 0) fail("BadModule", "negative coordinate order");
    if (R.is_field() && d != 0)
      fail("BadModule", "modules over " + ring_to_string(R) + " have no torsion coordinates");
  }
  return Mod{R, std::move(orders)};
}

Mod mod_dsum(const Mod& A, const Mod& B) {
  if (!(A.ring == B.ring)) fail("RingMismatch", "direct sum over different rings");
  std::vector<Int> orders = A.orders;
  orders.insert(orders.end(), B.orders.begin(), B.orders.end());
  return Mod{A.ring, std::move(orders)};
}

Mod mod_tensor(const Mod& A, const Mod& B) {
  if (!(A.ring == B.ring)) fail("RingMismatch", "tensor over different rings");
  std::vector<Int> orders;
  orders.reserve(static_cast<size_t>(A.rank()) * B.rank());
  for (const auto& da : A.orders)
    for (const auto& db : B.orders) orders.push_back(gcd_nonneg(da, db));
  return Mod{A.ring, std::move(orders)};
}

Mod mod_tensor3(const Mod& A, const Mod& B, const Mod& C) {
  return mod_tensor(mod_tensor(A, B), C);
}

FgAbGroup mod_invariants(const Mod& M) {
  if (M.ring.kind == Ring::Kind::Fp)
    return fgab_from_factors(std::vector<Int>(static_cast<size_t>(M.rank()), Int(M.ring.p)));
  return fgab_from_factors(M.orders);
}

bool mod_iso(const Mod& A, const Mod& B) {
  return A.ring == B.ring && same_invariants(mod_invariants(A), mod_invariants(B));
}

std::string mod_to_string(const Mod& M) {
  if (M.ring.kind == Ring::Kind::Z) return factors_to_string(mod_invariants(M));
  int dim = 0;
  for (const auto& d : M.orders)
    if (d != 1) ++dim;
  return ring_to_string(M.ring) + "^" + std::to_string(dim);
}

bool mod_is_trivial(const Mod& M) {
  return std::all_of(M.orders.begin(), M.orders.end(), [](const Int& d) { return d == 1; });
}

std::vector<Rat> reduce_vec(const Mod& M, std::vector<Rat> v) {
  const Field F = ring_field(M.ring);
  for (size_t i = 0; i < v.size(); ++i) {
    if (M.ring.kind == Ring::Kind::Z && M.orders[i] != 0) {
      Int x = to_int(v[i], "reduce_vec");
      const Int d = M.orders[i];
      x %= d;
      if (x < 0) x += d;
      v[i] = Rat(x);
    } else {
      v[i] = fnorm(F, v[i]);
    }
  }
  return v;
}

FieldMatrix reduce_map(const FieldMatrix& f, const Mod& dst) {
  FieldMatrix out = f;
  for (int j = 0; j < f.cols; ++j) {
    auto col = reduce_vec(dst, fm_col(f, j));
    fm_set_col(out, j, col);
  }
  return out;
}

bool map_well_defined(const FieldMatrix& f, const Mod& src, const Mod& dst) {
  if (f.rows != dst.rank() || f.cols != src.rank()) return false;
  if (src.ring.kind != Ring::Kind::Z) return true;
  if (!is_integral(f)) return false;
  for (int j = 0; j < f.cols; ++j) {
    const Int& o = src.orders[static_cast<size_t>(j)];
    if (o == 0) continue;
    for (int i = 0; i < f.rows; ++i) {
      const Int v = o * boost::multiprecision::numerator(f.at(i, j));
      const Int& p = dst.orders[static_cast<size_t>(i)];
      if (p == 0 ? v != 0 : v % p != 0) return false;
    }
  }
  return true;
}

bool map_equal_mod(const FieldMatrix& f, const FieldMatrix& g, const Mod& dst) {
  if (f.rows != g.rows || f.cols != g.cols) return false;
  return reduce_map(f, dst) == reduce_map(g, dst);
}

FieldMatrix kron(const FieldMatrix& A, const FieldMatrix& B) {
  FieldMatrix out(A.field, A.rows * B.rows, A.cols * B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      const Rat& a = A.at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < B.rows; ++j)
        for (int l = 0; l < B.cols; ++l)
          out.at(i * B.rows + j, k * B.cols + l) = fmul(A.field, a, B.at(j, l));
    }
  return out;
}

FieldMatrix kron3(const FieldMatrix& A, const FieldMatrix& B, const FieldMatrix& C) {
  return kron(kron(A, B), C);
}

ModQuotient mod_quotient(const Mod& M, const FieldMatrix& relations) {
  const int n = M.rank();
  if (relations.rows != n) fail("ShapeMismatch", "relation columns must live in the module");
  const Field F = ring_field(M.ring);

  if (M.ring.kind == Ring::Kind::Z) {
    const IntMatrix rel = to_int_matrix(relations, "mod_quotient");
    const IntMatrix pres = vstack(transpose(rel), IntMatrix::diag(M.orders));
    FgAbGroup Q = fgab_from_presentation(pres);
    ModQuotient out;
    out.mod = Mod{M.ring, Q.invariant_factors};
    out.proj = to_field_matrix(Q.basis_witness->to_canonical, F);
    out.sect = to_field_matrix(Q.basis_witness->representatives, F);
    return out;
  }

  // Field case: row-reduce the relations, quotient onto the non-pivot
  // coordinates.
  FieldMatrix rel(F, relations.cols, n);
  for (int i = 0; i < relations.rows; ++i)
    for (int j = 0; j < relations.cols; ++j) rel.at(j, i) = fnorm(F, relations.at(i, j));
  const RrefResult r = field_rref(rel);
  std::vector<bool> is_pivot(static_cast<size_t>(n), false);
  for (int c : r.pivots) is_pivot[static_cast<size_t>(c)] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < n; ++c)
    if (!is_pivot[static_cast<size_t>(c)]) free_cols.push_back(c);

  const int dim = static_cast<int>(free_cols.size());
  ModQuotient out;
  out.mod = mod_free(M.ring, dim);
  out.proj = FieldMatrix::zero(F, dim, n);
  out.sect = FieldMatrix::zero(F, n, dim);
  for (int q = 0; q < dim; ++q) {
    out.proj.at(q, free_cols[static_cast<size_t>(q)]) = 1;
    out.sect.at(free_cols[static_cast<size_t>(q)], q) = 1;
  }
  for (int row = 0; row < r.rank; ++row) {
    const int p = r.pivots[static_cast<size_t>(row)];
    for (int q = 0; q < dim; ++q)
      out.proj.at(q, p) = fneg(F, r.R.at(row, free_cols[static_cast<size_t>(q)]));
  }
  return out;
}

FgAbGroup based_to_canonical(const Mod& M) {
  if (M.ring.kind != Ring::Kind::Z)
    fail("RingMismatch", "canonical form of a based module is an integer-side notion");
  return fgab_from_factors(M.orders);
}

IntMatrix map_to_canonical(const FieldMatrix& f, const Mod& src, const Mod& dst,
                           const FgAbGroup& src_canon, const FgAbGroup& dst_canon) {
  (void)src;
  (void)dst;
  const IntMatrix fi = to_int_matrix(f, "map_to_canonical");
  return im_mul(dst_canon.basis_witness->to_canonical,
                im_mul(fi, src_canon.basis_witness->representatives));
}

// ---------------------------------------------------------------------------
// Operads

std::string preset_name(Preset which) {
  switch (which) {
    case Preset::Comm: return "Comm";
    case Preset::Assoc: return "Assoc";
    case Preset::Lie: return "Lie";
    default: return "Leib";
  }
}

Operad2 preset_operad(Preset which, const Ring& R) {
  const Field F = ring_field(R);
  switch (which) {
    case Preset::Comm: {
      FieldMatrix t = FieldMatrix::identity(F, 1);
      return Operad2{R, mod_free(R, 1), std::move(t), "Comm"};
    }
    case Preset::Lie: {
      if (R.kind == Ring::Kind::Fp && R.p == 2)
        fail("BadCharacteristic",
             "the Lie sign action is trivial over F_2; the preset degenerates");
      FieldMatrix t = FieldMatrix::zero(F, 1, 1);
      t.at(0, 0) = fnorm(F, Rat(-1));
      return Operad2{R, mod_free(R, 1), std::move(t), "Lie"};
    }
    case Preset::Assoc:
    case Preset::Leib: {
      FieldMatrix t = FieldMatrix::zero(F, 2, 2);
      t.at(0, 1) = 1;
      t.at(1, 0) = 1;
      return Operad2{R, mod_free(R, 2), std::move(t), preset_name(which)};
    }
  }
  fail("BadPreset", "unknown preset");
}

Operad2 operad_from_bifunctor_data(const Ring& R, const Mod& P2, const FieldMatrix& t,
                                   std::string label) {
  if (!(P2.ring == R)) fail("RingMismatch", "P2 must be a module over the operad's base ring");
  if (t.rows != P2.rank() || t.cols != P2.rank())
    fail("NotInvolution", "symmetry action has the wrong shape");
  if (!map_well_defined(t, P2, P2))
    fail("NotInvolution", "symmetry action does not respect the coordinate orders");
  const FieldMatrix tt = fm_mul(t, t);
  if (!map_equal_mod(tt, FieldMatrix::identity(ring_field(R), P2.rank()), P2))
    fail("NotInvolution", "symmetry action does not square to the identity");
  return Operad2{R, P2, reduce_map(t, P2), std::move(label)};
}

// ---------------------------------------------------------------------------
// Algebras

Alg2 abelian_algebra(const Operad2& op, const Mod& M) {
  if (!(M.ring == op.ring)) fail("RingMismatch", "module ring differs from the operad's");
  const int cols = M.rank() * M.rank() * op.P2.rank();
  return Alg2{op, M, mod_zero(op.ring), FieldMatrix::zero(ring_field(op.ring), 0, cols)};
}

namespace {

// Symmetry relations e_(j,i,k) - sum_m t(m,k) e_(i,j,m) inside (M (x) M) (x) P2.
FieldMatrix symmetry_relations(const Operad2& op, const Mod& M) {
  const int r = M.rank(), rp = op.P2.rank();
  const int n = r * r * rp;
  FieldMatrix rel(ring_field(op.ring), n, n);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < rp; ++k) {
        const int c = flat3(i, j, k, r, rp);
        rel.at(flat3(j, i, k, r, rp), c) = fadd(rel.field, rel.at(flat3(j, i, k, r, rp), c), Rat(1));
        for (int m = 0; m < rp; ++m) {
          const Rat& tm = op.t.at(m, k);
          if (tm == 0) continue;
          const int row = flat3(i, j, m, r, rp);
          rel.at(row, c) = fsub(rel.field, rel.at(row, c), tm);
        }
      }
  return rel;
}

}  // namespace

Alg2 free_nil2(const Operad2& op, const Mod& M) {
  if (!(M.ring == op.ring)) fail("RingMismatch", "module ring differs from the operad's");
  const Mod S = mod_tensor3(M, M, op.P2);
  const ModQuotient q = mod_quotient(S, symmetry_relations(op, M));
  return Alg2{op, M, q.mod, reduce_map(q.proj, q.mod)};
}

Mod alg_carrier(const Alg2& A) { return mod_dsum(A.Abar, A.D); }
int alg_rank(const Alg2& A) { return A.Abar.rank() + A.D.rank(); }

ValidationReport validate_algebra(const Alg2& A) {
  ValidationReport rep;
  auto problem = [&rep](std::string s) {
    rep.valid = false;
    rep.problems.push_back(std::move(s));
  };

  const int r = A.Abar.rank(), rp = A.op.P2.rank(), d = A.D.rank();
  if (!(A.Abar.ring == A.op.ring) || !(A.D.ring == A.op.ring)) {
    problem("carrier modules live over a different ring than the operad");
    return rep;
  }
  if (A.mu.rows != d || A.mu.cols != r * r * rp) {
    problem("multiplication matrix has shape " + std::to_string(A.mu.rows) + "x" +
            std::to_string(A.mu.cols) + ", expected " + std::to_string(d) + "x" +
            std::to_string(r * r * rp));
    return rep;
  }
  if (A.op.ring.kind == Ring::Kind::Z && !is_integral(A.mu)) {
    for (int i = 0; i < A.mu.rows && rep.valid; ++i)
      for (int j = 0; j < A.mu.cols && rep.valid; ++j)
        if (boost::multiprecision::denominator(A.mu.at(i, j)) != 1)
          problem("entry (" + std::to_string(i) + "," + std::to_string(j) +
                  ") of the multiplication is not an integer: " + A.mu.at(i, j).str());
    return rep;
  }

  // well-definedness: the order of a pure triple must kill its image
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < rp; ++k) {
        const Int g = gcd3(A.Abar.orders[static_cast<size_t>(i)],
                           A.Abar.orders[static_cast<size_t>(j)],
                           A.op.P2.orders[static_cast<size_t>(k)]);
        if (g == 0) continue;
        const int c = flat3(i, j, k, r, rp);
        for (int row = 0; row < d; ++row) {
          const Int v = g * to_int(A.mu.at(row, c), "validate_algebra");
          const Int& p = A.D.orders[static_cast<size_t>(row)];
          if (p == 0 ? v != 0 : v % p != 0) {
            problem("mu is not well defined on e_" + std::to_string(i) + " (x) e_" +
                    std::to_string(j) + " (x) x_" + std::to_string(k) + ": order " + g.str() +
                    " does not kill the image coordinate " + std::to_string(row));
            break;
          }
        }
      }

  // symmetry law mu(e_j (x) e_i (x) x_k) = mu(e_i (x) e_j (x) t x_k)
  const Field F = ring_field(A.op.ring);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < rp; ++k) {
        std::vector<Rat> lhs = fm_col(A.mu, flat3(j, i, k, r, rp));
        std::vector<Rat> rhs(static_cast<size_t>(d), Rat(0));
        for (int m = 0; m < rp; ++m) {
          const Rat& tm = A.op.t.at(m, k);
          if (tm == 0) continue;
          const auto col = fm_col(A.mu, flat3(i, j, m, r, rp));
          for (int row = 0; row < d; ++row)
            rhs[static_cast<size_t>(row)] =
                fadd(F, rhs[static_cast<size_t>(row)], fmul(F, tm, col[static_cast<size_t>(row)]));
        }
        if (reduce_vec(A.D, lhs) != reduce_vec(A.D, rhs)) {
          problem("symmetry fails on e_" + std::to_string(j) + " (x) e_" + std::to_string(i) +
                  " (x) x_" + std::to_string(k));
        }
      }

  // the squares must fill D exactly: mu onto D
  if (A.op.ring.kind == Ring::Kind::Z) {
    const IntMatrix mu_int = to_int_matrix(A.mu, "validate_algebra");
    const IntMatrix pres = vstack(transpose(mu_int), IntMatrix::diag(A.D.orders));
    const FgAbGroup coker = fgab_from_presentation(pres);
    if (!coker.is_trivial())
      problem("mu is not onto D: cokernel " + factors_to_string(coker));
  } else {
    int dim_d = 0;
    for (const auto& o : A.D.orders)
      if (o != 1) ++dim_d;
    if (field_rank(A.mu) != dim_d)
      problem("mu is not onto D: rank " + std::to_string(field_rank(A.mu)) + " < " +
              std::to_string(dim_d));
  }
  return rep;
}

void require_valid(const Alg2& A) {
  const ValidationReport rep = validate_algebra(A);
  if (!rep.valid) fail("InvalidAlgebra", rep.problems.front());
}

// ---------------------------------------------------------------------------
// Morphisms

Alg2Map id_map(const Alg2& A) {
  const Field F = ring_field(A.op.ring);
  return Alg2Map{FieldMatrix::identity(F, A.Abar.rank()),
                 FieldMatrix::zero(F, A.D.rank(), A.Abar.rank()),
                 FieldMatrix::identity(F, A.D.rank())};
}

Alg2Map zero_map(const Alg2& src, const Alg2& dst) {
  const Field F = ring_field(src.op.ring);
  return Alg2Map{FieldMatrix::zero(F, dst.Abar.rank(), src.Abar.rank()),
                 FieldMatrix::zero(F, dst.D.rank(), src.Abar.rank()),
                 FieldMatrix::zero(F, dst.D.rank(), src.D.rank())};
}

Alg2Map compose_maps(const Alg2Map& g, const Alg2Map& f) {
  return Alg2Map{fm_mul(g.bar, f.bar),
                 fm_add(fm_mul(g.mix, f.bar), fm_mul(g.dd, f.mix)),
                 fm_mul(g.dd, f.dd)};
}

bool is_algebra_map(const Alg2& src, const Alg2& dst, const Alg2Map& f) {
  if (!map_well_defined(f.bar, src.Abar, dst.Abar)) return false;
  if (!map_well_defined(f.mix, src.Abar, dst.D)) return false;
  if (!map_well_defined(f.dd, src.D, dst.D)) return false;
  const FieldMatrix idp = FieldMatrix::identity(ring_field(src.op.ring), src.op.P2.rank());
  return map_equal_mod(fm_mul(f.dd, src.mu), fm_mul(dst.mu, kron3(f.bar, f.bar, idp)), dst.D);
}

bool maps_equal(const Alg2& dst, const Alg2Map& f, const Alg2Map& g) {
  return map_equal_mod(f.bar, g.bar, dst.Abar) && map_equal_mod(f.mix, g.mix, dst.D) &&
         map_equal_mod(f.dd, g.dd, dst.D);
}

Alg2Map free_map(const Alg2& freeA, const Alg2& freeB, const FieldMatrix& on_gens) {
  // Recompute the (deterministic) free quotients to recover the sections.
  const Mod SA = mod_tensor3(freeA.Abar, freeA.Abar, freeA.op.P2);
  const ModQuotient qa = mod_quotient(SA, symmetry_relations(freeA.op, freeA.Abar));
  const Mod SB = mod_tensor3(freeB.Abar, freeB.Abar, freeB.op.P2);
  const ModQuotient qb = mod_quotient(SB, symmetry_relations(freeB.op, freeB.Abar));
  const FieldMatrix idp = FieldMatrix::identity(ring_field(freeA.op.ring), freeA.op.P2.rank());
  const FieldMatrix dd = fm_mul(qb.proj, fm_mul(kron3(on_gens, on_gens, idp), qa.sect));
  return Alg2Map{on_gens, FieldMatrix::zero(on_gens.field, freeB.D.rank(), freeA.Abar.rank()),
                 reduce_map(dd, freeB.D)};
}

// ---------------------------------------------------------------------------
// Coproduct, product, cosmash

Coproduct2 coproduct2(const Alg2& A, const Alg2& B) {
  if (!(A.op == B.op)) fail("OperadMismatch", "coproduct of algebras over different operads");
  const Field F = ring_field(A.op.ring);
  const int rA = A.Abar.rank(), rB = B.Abar.rank(), rp = A.op.P2.rank();
  const int dA = A.D.rank(), dB = B.D.rank();
  const Mod mixed = mod_tensor3(A.Abar, B.Abar, A.op.P2);
  const int m = mixed.rank();

  const Mod abar = mod_dsum(A.Abar, B.Abar);
  const Mod dmod = mod_dsum(mod_dsum(A.D, B.D), mixed);
  const int rC = rA + rB;

  FieldMatrix mu(F, dA + dB + m, rC * rC * rp);
  for (int u = 0; u < rC; ++u)
    for (int v = 0; v < rC; ++v)
      for (int k = 0; k < rp; ++k) {
        const int c = flat3(u, v, k, rC, rp);
        if (u < rA && v < rA) {
          const auto col = fm_col(A.mu, flat3(u, v, k, rA, rp));
          for (int row = 0; row < dA; ++row) mu.at(row, c) = col[static_cast<size_t>(row)];
        } else if (u >= rA && v >= rA) {
          const auto col = fm_col(B.mu, flat3(u - rA, v - rA, k, rB, rp));
          for (int row = 0; row < dB; ++row) mu.at(dA + row, c) = col[static_cast<size_t>(row)];
        } else if (u < rA) {
          // pure mixed generator a_u (x) b_(v-rA) (x) x_k
          mu.at(dA + dB + flat3(u, v - rA, k, rB, rp), c) = 1;
        } else {
          // b (x) a (x) x = a (x) b (x) t x
          for (int w = 0; w < rp; ++w) {
            const Rat& tw = A.op.t.at(w, k);
            if (tw != 0) mu.at(dA + dB + flat3(v, u - rA, w, rB, rp), c) = tw;
          }
        }
      }

  Coproduct2 out;
  out.alg = Alg2{A.op, abar, dmod, reduce_map(mu, dmod)};
  out.mixed_rank = m;

  auto block_inj = [&F](int total, int offset, int size) {
    FieldMatrix M = FieldMatrix::zero(F, total, size);
    for (int i = 0; i < size; ++i) M.at(offset + i, i) = 1;
    return M;
  };
  out.inj1 = Alg2Map{block_inj(rC, 0, rA), FieldMatrix::zero(F, dA + dB + m, rA),
                     block_inj(dA + dB + m, 0, dA)};
  out.inj2 = Alg2Map{block_inj(rC, rA, rB), FieldMatrix::zero(F, dA + dB + m, rB),
                     block_inj(dA + dB + m, dA, dB)};
  return out;
}

Alg2Map copair(const Coproduct2& C, const Alg2& A, const Alg2& B, const Alg2& X,
               const Alg2Map& f, const Alg2Map& g) {
  (void)A;
  (void)B;
  const FieldMatrix idp = FieldMatrix::identity(ring_field(X.op.ring), X.op.P2.rank());
  const FieldMatrix h = fm_mul(X.mu, kron3(f.bar, g.bar, idp));
  Alg2Map out;
  out.bar = fm_hstack(f.bar, g.bar);
  out.mix = fm_hstack(f.mix, g.mix);
  out.dd = fm_hstack(fm_hstack(f.dd, g.dd), h);
  out.bar = reduce_map(out.bar, X.Abar);
  out.mix = reduce_map(out.mix, X.D);
  out.dd = reduce_map(out.dd, X.D);
  (void)C;
  return out;
}

Product2 product2(const Alg2& A, const Alg2& B) {
  if (!(A.op == B.op)) fail("OperadMismatch", "product of algebras over different operads");
  const Field F = ring_field(A.op.ring);
  const int rA = A.Abar.rank(), rB = B.Abar.rank(), rp = A.op.P2.rank();
  const int dA = A.D.rank(), dB = B.D.rank();
  const int rC = rA + rB;

  FieldMatrix mu(F, dA + dB, rC * rC * rp);
  for (int u = 0; u < rC; ++u)
    for (int v = 0; v < rC; ++v)
      for (int k = 0; k < rp; ++k) {
        const int c = flat3(u, v, k, rC, rp);
        if (u < rA && v < rA) {
          const auto col = fm_col(A.mu, flat3(u, v, k, rA, rp));
          for (int row = 0; row < dA; ++row) mu.at(row, c) = col[static_cast<size_t>(row)];
        } else if (u >= rA && v >= rA) {
          const auto col = fm_col(B.mu, flat3(u - rA, v - rA, k, rB, rp));
          for (int row = 0; row < dB; ++row) mu.at(dA + row, c) = col[static_cast<size_t>(row)];
        }
      }

  Product2 out;
  out.alg = Alg2{A.op, mod_dsum(A.Abar, B.Abar), mod_dsum(A.D, B.D), std::move(mu)};
  auto block_proj = [&F](int total, int offset, int size) {
    FieldMatrix M = FieldMatrix::zero(F, size, total);
    for (int i = 0; i < size; ++i) M.at(i, offset + i) = 1;
    return M;
  };
  out.proj1 = Alg2Map{block_proj(rC, 0, rA), FieldMatrix::zero(F, dA, rC),
                      block_proj(dA + dB, 0, dA)};
  out.proj2 = Alg2Map{block_proj(rC, rA, rB), FieldMatrix::zero(F, dB, rC),
                      block_proj(dA + dB, dA, dB)};
  return out;
}

Cosmash2 cosmash2(const Alg2& A, const Alg2& B) {
  if (!(A.op == B.op)) fail("OperadMismatch", "cosmash of algebras over different operads");
  const Field F = ring_field(A.op.ring);
  const Mod mixed = mod_tensor3(A.Abar, B.Abar, A.op.P2);
  const int m = mixed.rank();
  const int dA = A.D.rank(), dB = B.D.rank();
  const int rC = A.Abar.rank() + B.Abar.rank();

  Cosmash2 out;
  out.alg = abelian_algebra(A.op, mixed);
  FieldMatrix mix = FieldMatrix::zero(F, dA + dB + m, m);
  for (int i = 0; i < m; ++i) mix.at(dA + dB + i, i) = 1;
  out.incl = Alg2Map{FieldMatrix::zero(F, rC, m), std::move(mix),
                     FieldMatrix::zero(F, dA + dB + m, 0)};
  return out;
}

Alg2Map comparison_map(const Alg2& A, const Alg2& B) {
  const Field F = ring_field(A.op.ring);
  const int rC = A.Abar.rank() + B.Abar.rank();
  const int dP = A.D.rank() + B.D.rank();
  const int m = A.Abar.rank() * B.Abar.rank() * A.op.P2.rank();
  FieldMatrix dd = FieldMatrix::zero(F, dP, dP + m);
  for (int i = 0; i < dP; ++i) dd.at(i, i) = 1;
  return Alg2Map{FieldMatrix::identity(F, rC), FieldMatrix::zero(F, dP, rC), std::move(dd)};
}

Alg2 bilinear2(const Alg2& A, const Alg2& B) {
  // By definition the cosmash of the abelianisations; since the carrier of
  // ab(X) is Abar_X, this is coordinate-for-coordinate the module of
  // cosmash2(A, B) itself.
  return cosmash2(abelianization2(A).alg, abelianization2(B).alg).alg;
}

FieldMatrix symmetry2(const Alg2& A, const Alg2& B) {
  const Field F = ring_field(A.op.ring);
  const int rA = A.Abar.rank(), rB = B.Abar.rank(), rp = A.op.P2.rank();
  const Mod dst = mod_tensor3(B.Abar, A.Abar, A.op.P2);
  FieldMatrix s(F, rB * rA * rp, rA * rB * rp);
  for (int i = 0; i < rA; ++i)
    for (int j = 0; j < rB; ++j)
      for (int k = 0; k < rp; ++k) {
        const int c = flat3(i, j, k, rB, rp);
        for (int m = 0; m < rp; ++m) {
          const Rat& tm = A.op.t.at(m, k);
          if (tm != 0) s.at(flat3(j, i, m, rA, rp), c) = tm;
        }
      }
  return reduce_map(s, dst);
}

Abelianization2 abelianization2(const Alg2& A) {
  const Field F = ring_field(A.op.ring);
  Abelianization2 out;
  out.alg = abelian_algebra(A.op, A.Abar);
  out.quotient = Alg2Map{FieldMatrix::identity(F, A.Abar.rank()),
                         FieldMatrix::zero(F, 0, A.Abar.rank()),
                         FieldMatrix::zero(F, 0, A.D.rank())};
  return out;
}

std::vector<Mod> lcs2(const Alg2& A) {
  return {alg_carrier(A), A.D, mod_zero(A.op.ring)};
}

}  // namespace nilprod::operad2
