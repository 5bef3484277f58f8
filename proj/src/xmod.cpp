#include "nilprod/xmod.hpp"

namespace nilprod::xmod {

using exactlin::dsum_fgab;
using exactlin::fgab_free;
using exactlin::fgab_from_presentation;
using exactlin::fgab_map_kernel_gens;
using exactlin::fgab_trivial;
using exactlin::im_add;
using exactlin::im_apply;
using exactlin::im_mul;
using exactlin::im_sub;
using exactlin::map_cokernel;
using exactlin::map_on_tensor;
using exactlin::reduce_coords;
using exactlin::subgroup_invariants;
using exactlin::tensor_fgab_full;
using exactlin::tensor_twist;

namespace {

using exactlin::im_col;

// Reduce every column modulo the invariant factors of T.
IntMatrix reduce_mod(const FgAbGroup& T, IntMatrix M) {
  for (int j = 0; j < M.cols; ++j) {
    const std::vector<Int> v = reduce_coords(T, im_col(M, j));
    for (int i = 0; i < M.rows; ++i) M.at(i, j) = v[static_cast<size_t>(i)];
  }
  return M;
}

bool reduces_to_zero(const FgAbGroup& T, const std::vector<Int>& v) {
  for (const Int& x : reduce_coords(T, v))
    if (x != 0) return false;
  return true;
}

void require_hom(const IntMatrix& d, const FgAbGroup& A, const FgAbGroup& G,
                 const char* what) {
  if (d.rows != G.rank() || d.cols != A.rank())
    fail("DomainMismatch", std::string(what) + ": boundary is " + std::to_string(d.rows) +
                               "x" + std::to_string(d.cols) + ", expected " +
                               std::to_string(G.rank()) + "x" + std::to_string(A.rank()));
  for (int j = 0; j < A.rank(); ++j) {
    const Int& ord = A.invariant_factors[static_cast<size_t>(j)];
    if (ord == 0) continue;
    std::vector<Int> v = im_col(d, j);
    for (Int& x : v) x *= ord;
    if (!reduces_to_zero(G, v))
      fail("DomainMismatch", std::string(what) + ": image of the order-" +
                                 ord.str() + " generator " + std::to_string(j + 1) +
                                 " is not killed by that order");
  }
}

}  // namespace

AbCrossedModule ab_xmod(FgAbGroup base, FgAbGroup top, IntMatrix d) {
  require_hom(d, top, base, "crossed module");
  AbCrossedModule M;
  M.G = std::move(base);
  M.A = std::move(top);
  M.d = reduce_mod(M.G, std::move(d));
  return M;
}

AbCrossedModule xmod_zero() {
  return {fgab_trivial(), fgab_trivial(), IntMatrix(0, 0)};
}

AbCrossedModule xmod_unit() { return {fgab_free(1), fgab_trivial(), IntMatrix(1, 0)}; }

XmodTensor xmod_tensor_full(const AbCrossedModule& M, const AbCrossedModule& N) {
  XmodTensor T;
  T.top = tensor_fgab_full(M.G, N.G);
  T.t_gb = tensor_fgab_full(M.G, N.A);
  T.t_ah = tensor_fgab_full(M.A, N.G);
  T.t_ab = tensor_fgab_full(M.A, N.A);
  T.mid_sum = dsum_fgab(T.t_gb.group, T.t_ah.group);

  const IntMatrix dxB =
      map_on_tensor(M.d, IntMatrix::identity(N.A.rank()), T.t_ab, T.t_gb);
  const IntMatrix Axe =
      map_on_tensor(IntMatrix::identity(M.A.rank()), N.d, T.t_ab, T.t_ah);
  T.alpha = im_sub(im_mul(T.mid_sum.inj1, dxB), im_mul(T.mid_sum.inj2, Axe));

  const IntMatrix Gxe =
      map_on_tensor(IntMatrix::identity(M.G.rank()), N.d, T.t_gb, T.top);
  const IntMatrix dxH =
      map_on_tensor(M.d, IntMatrix::identity(N.G.rank()), T.t_ah, T.top);
  T.eps_hat = im_add(im_mul(Gxe, T.mid_sum.proj1), im_mul(dxH, T.mid_sum.proj2));

  // (1(x)e)(d(x)1) = d(x)e = (d(x)1)(1(x)e): the boundary kills im(alpha), so
  // it descends to the cokernel.  Verified, not assumed.
  const IntMatrix comp = im_mul(T.eps_hat, T.alpha);
  for (int j = 0; j < comp.cols; ++j)
    if (!reduces_to_zero(T.top.group, im_col(comp, j)))
      fail("InternalError", "induced boundary does not kill the tensor relations");

  T.middle = map_cokernel(T.alpha, T.t_ab.group, T.mid_sum.group);
  T.result.G = T.top.group;
  T.result.A = T.middle.coker;
  T.result.d = reduce_mod(T.top.group, im_mul(T.eps_hat, T.middle.sect));
  return T;
}

AbCrossedModule xmod_tensor(const AbCrossedModule& M, const AbCrossedModule& N) {
  return xmod_tensor_full(M, N).result;
}

PrecrossedTensor pxmod_tensor(const AbCrossedModule& M, const AbCrossedModule& N) {
  const TensorFgab top = tensor_fgab_full(M.G, N.G);
  const TensorFgab t_gb = tensor_fgab_full(M.G, N.A);
  const TensorFgab t_ah = tensor_fgab_full(M.A, N.G);
  const TensorFgab t_ab = tensor_fgab_full(M.A, N.A);
  const DsumFgab two = dsum_fgab(t_gb.group, t_ah.group);
  const DsumFgab three = dsum_fgab(two.group, t_ab.group);

  PrecrossedTensor P;
  P.top = top.group;
  P.middle = three.group;
  P.inj_gb = im_mul(three.inj1, two.inj1);
  P.inj_ah = im_mul(three.inj1, two.inj2);
  P.inj_ab = three.inj2;
  P.proj_gb = im_mul(two.proj1, three.proj1);
  P.proj_ah = im_mul(two.proj2, three.proj1);
  P.proj_ab = three.proj2;

  const IntMatrix Gxe =
      map_on_tensor(IntMatrix::identity(M.G.rank()), N.d, t_gb, top);
  const IntMatrix dxH =
      map_on_tensor(M.d, IntMatrix::identity(N.G.rank()), t_ah, top);
  const IntMatrix dxe = map_on_tensor(M.d, N.d, t_ab, top);
  P.d = reduce_mod(P.top, im_add(im_add(im_mul(Gxe, P.proj_gb), im_mul(dxH, P.proj_ah)),
                                 im_mul(dxe, P.proj_ab)));
  return P;
}

IntMatrix pxmod_comparison(const AbCrossedModule& M, const AbCrossedModule& N) {
  const XmodTensor T = xmod_tensor_full(M, N);
  const PrecrossedTensor P = pxmod_tensor(M, N);
  const IntMatrix dxB =
      map_on_tensor(M.d, IntMatrix::identity(N.A.rank()), T.t_ab, T.t_gb);
  // (u, v, w) |-> (u + (d(x)1)w, v), then the cokernel projection.
  const IntMatrix s =
      im_add(im_mul(T.mid_sum.inj1, im_add(P.proj_gb, im_mul(dxB, P.proj_ab))),
             im_mul(T.mid_sum.inj2, P.proj_ah));
  return reduce_mod(T.middle.coker, im_mul(T.middle.proj, s));
}

XmodSymmetry xmod_twist(const AbCrossedModule& M, const AbCrossedModule& N) {
  const XmodTensor F = xmod_tensor_full(M, N);
  const XmodTensor R = xmod_tensor_full(N, M);
  XmodSymmetry S;
  S.top = reduce_mod(R.top.group, tensor_twist(F.top, R.top, +1));
  // Swap the two summands, twisting each: A(x)H -> H(x)A lands first,
  // G(x)B -> B(x)G second.  This intertwines the alphas up to sign, hence
  // descends to the cokernels.
  const IntMatrix tau = im_add(
      im_mul(R.mid_sum.inj1, im_mul(tensor_twist(F.t_ah, R.t_gb, 1), F.mid_sum.proj2)),
      im_mul(R.mid_sum.inj2, im_mul(tensor_twist(F.t_gb, R.t_ah, 1), F.mid_sum.proj1)));
  S.middle = reduce_mod(R.middle.coker,
                        im_mul(R.middle.proj, im_mul(tau, F.middle.sect)));
  return S;
}

AbCrossedModule xmod_abelianize(const GroupXModInput& X) {
  const int nG = X.gens_G, nA = X.gens_A;
  if (nG < 0 || nA < 0 || X.rel_G.cols != nG || X.rel_A.cols != nA ||
      static_cast<int>(X.action.size()) != nG ||
      X.boundary.rows != nG || X.boundary.cols != nA)
    fail("DomainMismatch", "presentation, action and boundary sizes disagree");
  for (const IntMatrix& a : X.action)
    if (a.rows != nA || a.cols != nA)
      fail("DomainMismatch", "action matrices must be " + std::to_string(nA) + "x" +
                                 std::to_string(nA));

  const FgAbGroup abG = fgab_from_presentation(X.rel_G);
  const FgAbGroup abA = fgab_from_presentation(X.rel_A);
  const IntMatrix& toG = abG.basis_witness->to_canonical;
  const IntMatrix& toA = abA.basis_witness->to_canonical;
  const IntMatrix& repA = abA.basis_witness->representatives;

  // Each action matrix must preserve the relation lattice and induce an
  // automorphism of ab(A).
  std::vector<IntMatrix> induced;
  for (int i = 0; i < nG; ++i) {
    for (int r = 0; r < X.rel_A.rows; ++r) {
      std::vector<Int> rel(static_cast<size_t>(nA));
      for (int j = 0; j < nA; ++j) rel[static_cast<size_t>(j)] = X.rel_A.at(r, j);
      if (!reduces_to_zero(abA, im_apply(toA, im_apply(X.action[static_cast<size_t>(i)], rel))))
        fail("ActionInvalid", "action of generator " + std::to_string(i + 1) +
                                  " does not preserve relator " + std::to_string(r + 1));
    }
    IntMatrix ind =
        reduce_mod(abA, im_mul(toA, im_mul(X.action[static_cast<size_t>(i)], repA)));
    if (!map_cokernel(ind, abA, abA).coker.is_trivial())
      fail("ActionInvalid", "action of generator " + std::to_string(i + 1) +
                                " is not surjective on the abelianisation");
    if (!subgroup_invariants(abA, fgab_map_kernel_gens(ind, abA, abA)).is_trivial())
      fail("ActionInvalid", "action of generator " + std::to_string(i + 1) +
                                " is not injective on the abelianisation");
    induced.push_back(std::move(ind));
  }

  // Coinvariant relations (action(g) - id) a, in canonical coordinates.
  IntMatrix C(abA.rank(), nG * abA.rank());
  for (int i = 0; i < nG; ++i)
    for (int j = 0; j < abA.rank(); ++j)
      for (int k = 0; k < abA.rank(); ++k)
        C.at(k, i * abA.rank() + j) =
            induced[static_cast<size_t>(i)].at(k, j) - (k == j ? Int(1) : Int(0));
  const exactlin::CokernelFgab co = map_cokernel(C, fgab_free(C.cols), abA);

  // The boundary must define a map on ab(A) and be constant on action orbits.
  for (int r = 0; r < X.rel_A.rows; ++r) {
    std::vector<Int> rel(static_cast<size_t>(nA));
    for (int j = 0; j < nA; ++j) rel[static_cast<size_t>(j)] = X.rel_A.at(r, j);
    if (!reduces_to_zero(abG, im_apply(toG, im_apply(X.boundary, rel))))
      fail("ActionInvalid", "boundary does not kill relator " + std::to_string(r + 1));
  }
  const IntMatrix d0 = reduce_mod(abG, im_mul(toG, im_mul(X.boundary, repA)));
  for (int j = 0; j < C.cols; ++j)
    if (!reduces_to_zero(abG, im_apply(d0, im_col(C, j))))
      fail("ActionInvalid", "boundary is not invariant under the action");

  AbCrossedModule R;
  R.G = abG;
  R.A = co.coker;
  R.d = reduce_mod(abG, im_mul(d0, co.sect));
  return R;
}

}  // namespace nilprod::xmod
