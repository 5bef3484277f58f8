#pragma once

// Groups: abelianisation of finite presentations, nil-2 free products of
// finitely generated abelian groups A +2 B with the explicit normal-form
// group law, the cosmash product inside them, Higgins commutators of
// subgroups, and the bilinear (tensor) product of arbitrary finitely
// presented groups through abelianisation.

#include "nilprod/exactlin.hpp"

#include <memory>
#include <string>
#include <vector>

namespace nilprod::nilgrp {

using exactlin::FgAbGroup;
using exactlin::IntMatrix;
using exactlin::TensorFgab;

// Words are lists of signed 1-based generator indices (+k = generator k,
// -k = its inverse); only exponent sums are ever used.
struct FpGroupPresentation {
  std::vector<std::string> generators;
  std::vector<std::vector<int>> relators;
};

// Cokernel of the exponent-sum matrix of the relators.  The witness columns
// give the class of each presentation generator.  Throws UnknownGenerator
// when a relator letter is out of range.
FgAbGroup abelianization_gp(const FpGroupPresentation& P);

// ab(X) (x)_Z ab(Y), with the class of each original generator pair retained:
// column (i * #gens(Y) + j) is the class of x_i (x) y_j.
struct BilinearGp {
  FgAbGroup group;
  IntMatrix generator_pairs;
  int gens_x = 0, gens_y = 0;
};
BilinearGp bilinear_product_gp(const FpGroupPresentation& X, const FpGroupPresentation& Y);

// ---------------------------------------------------------------------------
// The nil-2 coproduct A +2 B

// Carrier A x B x (A (x) B), multiplication
//   (a, b, t) (a', b', t') = (a + a', b + b', t + t' - a' (x) b),
// derived from the normal form i1(a) i2(b) c with c central.
struct Nil2Data {
  FgAbGroup A, B;
  TensorFgab T;
};

struct Nil2Element {
  std::shared_ptr<const Nil2Data> data;
  std::vector<Int> a, b, t;
};

class Nil2CoproductGroup {
 public:
  Nil2CoproductGroup(const FgAbGroup& A, const FgAbGroup& B);

  const FgAbGroup& A() const { return data_->A; }
  const FgAbGroup& B() const { return data_->B; }
  const FgAbGroup& tensor() const { return data_->T.group; }
  const std::shared_ptr<const Nil2Data>& data() const { return data_; }

  Nil2Element identity() const;
  Nil2Element i1(const std::vector<Int>& a) const;
  Nil2Element i2(const std::vector<Int>& b) const;
  Nil2Element central(const std::vector<Int>& t) const;
  Nil2Element make(const std::vector<Int>& a, const std::vector<Int>& b,
                   const std::vector<Int>& t) const;

  // group order; 0 when infinite
  Int order() const;

 private:
  std::shared_ptr<const Nil2Data> data_;
};

Nil2CoproductGroup nil2_coproduct(const FgAbGroup& A, const FgAbGroup& B);

Nil2Element nil2_mul(const Nil2Element& g, const Nil2Element& h);
Nil2Element nil2_inv(const Nil2Element& g);
Nil2Element nil2_commutator(const Nil2Element& g, const Nil2Element& h);
bool nil2_equal(const Nil2Element& g, const Nil2Element& h);
bool nil2_is_identity(const Nil2Element& g);

// ---------------------------------------------------------------------------
// Cosmash, Higgins commutator, symmetry

// The kernel {(0, 0, t)} of the retraction A +2 B -> A x B, which is the
// tensor product A (x) B; the inclusion is t |-> (0, 0, t).
struct CosmashGp {
  FgAbGroup group;
  TensorFgab witness;
};
CosmashGp cosmash_gp(const FgAbGroup& A, const FgAbGroup& B);

// [K, L] for subgroups given by generator lists.  In class <= 2 the
// commutator map is bilinear, so the generator-pair commutators generate;
// they are all central, so the result is a subgroup of the tensor part.
struct SubgroupOfTensor {
  FgAbGroup isomorphism_type;
  IntMatrix gens;  // columns in the tensor part's canonical coordinates
};
SubgroupOfTensor higgins_commutator_nil2(const Nil2CoproductGroup& G,
                                         const std::vector<Nil2Element>& K_gens,
                                         const std::vector<Nil2Element>& L_gens);

// The symmetry isomorphism A (x) B -> B (x) A of the group-theoretic bilinear
// product: a (x) b |-> -(b (x) a), i.e. minus the canonical twist.
IntMatrix symmetry_gp(const FgAbGroup& A, const FgAbGroup& B);

}  // namespace nilprod::nilgrp
