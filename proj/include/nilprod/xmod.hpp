#pragma once

// Bilinear tensor products of abelian crossed modules (boundary morphisms of
// finitely generated abelian groups), the precrossed variant that skips the
// cokernel step, the symmetry twist, and abelianisation of group crossed
// modules given by presentation and action data.

#include "nilprod/exactlin.hpp"

#include <vector>

namespace nilprod::xmod {

using exactlin::CokernelFgab;
using exactlin::DsumFgab;
using exactlin::FgAbGroup;
using exactlin::IntMatrix;
using exactlin::TensorFgab;

// A boundary homomorphism d: A -> G in canonical coordinates (rank(G) x
// rank(A)); the abelian crossed module (G, A, d).
struct AbCrossedModule {
  FgAbGroup G;  // base
  FgAbGroup A;  // top
  IntMatrix d;
};

// Validates that d respects the torsion of A and stores it reduced.
AbCrossedModule ab_xmod(FgAbGroup base, FgAbGroup top, IntMatrix d);
AbCrossedModule xmod_zero();
AbCrossedModule xmod_unit();  // (Z, 0, 0)

// The tensor of (G, A, d) and (H, B, e): base G(x)H, top the cokernel of
//   alpha = <d(x)1_B, -1_A(x)e> : A(x)B -> (G(x)B) (+) (A(x)H),
// boundary induced by eps_hat = <1_G(x)e, d(x)1_H>; eps_hat kills the image
// of alpha, which is verified on every call.
struct XmodTensor {
  AbCrossedModule result;
  TensorFgab top;            // G (x) H with pair witnesses
  TensorFgab t_gb, t_ah, t_ab;
  DsumFgab mid_sum;          // (G(x)B) (+) (A(x)H)
  IntMatrix alpha;           // A(x)B -> mid_sum.group
  IntMatrix eps_hat;         // mid_sum.group -> G(x)H
  CokernelFgab middle;       // the quotient by im(alpha)
};
XmodTensor xmod_tensor_full(const AbCrossedModule& M, const AbCrossedModule& N);
AbCrossedModule xmod_tensor(const AbCrossedModule& M, const AbCrossedModule& N);

// The precrossed tensor keeps all three summands and takes no quotient:
//   (G(x)H, (G(x)B) (+) (A(x)H) (+) (A(x)B), <1_G(x)e, d(x)1_H, d(x)e>).
struct PrecrossedTensor {
  FgAbGroup top;
  FgAbGroup middle;
  IntMatrix d;
  IntMatrix inj_gb, inj_ah, inj_ab;     // summand injections
  IntMatrix proj_gb, proj_ah, proj_ab;  // retractions
};
PrecrossedTensor pxmod_tensor(const AbCrossedModule& M, const AbCrossedModule& N);

// The canonical surjection from the precrossed middle onto the crossed one,
// (u, v, w) |-> class of (u + (d(x)1)w, v).  It commutes with the two
// boundaries and its kernel is generated by the image of alpha together with
// the graph columns w - (d(x)1)w.
IntMatrix pxmod_comparison(const AbCrossedModule& M, const AbCrossedModule& N);

// The symmetry: top is the plain tensor twist G(x)H -> H(x)G, middle the
// induced isomorphism of the two cokernels (swap the summands and twist each).
struct XmodSymmetry {
  IntMatrix top;
  IntMatrix middle;
};
XmodSymmetry xmod_twist(const AbCrossedModule& M, const AbCrossedModule& N);

// A group crossed module entered through abelianised data: relator
// exponent-sum rows presenting G and A, one exponent matrix per G-generator
// for the action on A's generators, and the boundary exponent matrix.
struct GroupXModInput {
  int gens_G = 0, gens_A = 0;
  IntMatrix rel_G{0, 0};  // rows over the G generators
  IntMatrix rel_A{0, 0};  // rows over the A generators
  std::vector<IntMatrix> action;  // gens_G matrices, each gens_A x gens_A
  IntMatrix boundary{0, 0};       // gens_G x gens_A
};

// (G/[G,G], A/[A,G], induced boundary): the base abelianised by Smith normal
// form, the top reduced further by the coinvariant relations
// (action(g) - id) a.  Rejects actions that do not induce automorphisms of
// ab(A) or boundaries not constant on action orbits.
AbCrossedModule xmod_abelianize(const GroupXModInput& X);

}  // namespace nilprod::xmod
