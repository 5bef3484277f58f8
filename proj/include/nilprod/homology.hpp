#pragma once

// Low-degree Lie algebra homology over an exact field: the chain
// differentials on exterior powers, H1 and H2 with explicit cycle, boundary
// and representative bases, validation of central extensions, and the
// six-term Ganea sequence of a central extension together with an exactness
// checker and the application to lower-central-series quotients.

#include "nilprod/nonassoc.hpp"

#include <array>
#include <vector>

namespace nilprod::homology {

using exactlin::Field;
using exactlin::FieldMatrix;
using nonassoc::SCAlgebra;

// Exterior square coordinates: pairs (i, j) with i < j in lexicographic
// order; e_i ^ e_j = -(e_j ^ e_i), e_i ^ e_i = 0.
int wedge2_dim(int n);
int wedge2_index(int i, int j, int n);  // requires i < j
std::vector<Rat> wedge2_coords(const Field& F, int n, const std::vector<Rat>& u,
                               const std::vector<Rat>& v);
// Functorial action on the exterior square of a linear map.
FieldMatrix wedge2_map(const FieldMatrix& f);

// d2(x ^ y) = -[x, y]; d3(x ^ y ^ z) = -[x,y]^z + [x,z]^y - [y,z]^x.
// Triples are indexed (i, j, k) with i < j < k, lexicographic.
FieldMatrix wedge_d2(const SCAlgebra& g);
FieldMatrix wedge_d3(const SCAlgebra& g);

// A homology space presented inside its chain group: column bases for the
// cycles and boundaries, plus chosen coset representatives of dimension dim.
struct HomologySpace {
  int dim = 0;
  FieldMatrix cycles;
  FieldMatrix boundaries;
  FieldMatrix reps;  // cycle columns spanning a complement of the boundaries
};
// degree 1: chain group g, cycles = g, boundaries = [g, g].
// degree 2: chain group Lambda^2 g, cycles = ker d2, boundaries = im d3.
HomologySpace ce_homology(const SCAlgebra& g, int degree);

// Coordinates of a cycle's class with respect to reps (exact; the vector must
// be a cycle).
std::vector<Rat> homology_class(const HomologySpace& H, const std::vector<Rat>& cycle);

// ---------------------------------------------------------------------------
// Central extensions 0 -> K -> B -> A -> 0

struct CentralExtension {
  SCAlgebra B;
  FieldMatrix K;   // basis of the central ideal
  SCAlgebra A;     // B / K with induced constants
  FieldMatrix proj;  // A-coordinates of B elements (kills K)
  FieldMatrix sect;  // the pinned section: lifts A basis vectors into the
                     // standard-basis complement of K, chosen greedily
};
// Checks that K is an ideal with [K, B] = 0 and builds the quotient data.
CentralExtension central_extension_validate(const SCAlgebra& B, const FieldMatrix& K);

// ---------------------------------------------------------------------------
// The six-term sequence K (x) ab(B) -> H2(B) -> H2(A) -> K -> H1(B) -> H1(A)

struct GaneaSequence {
  CentralExtension ext;
  HomologySpace H1B, H1A, H2B, H2A;
  std::array<int, 6> dims{};  // K (x) ab B, H2 B, H2 A, K, H1 B, H1 A
  FieldMatrix g1, g2, g3, g4, g5;
  bool char2 = false;  // flagged: alternating vs antisymmetric coincide only
                       // away from characteristic 2
};
// g1: k (x) class(b) |-> class(k ^ b)      (a cycle by centrality)
// g2: induced by Lambda^2 of the projection
// g3: class(sum x^y) |-> sum [lift x, lift y]  (lands in K)
// g4: inclusion of K followed by the H1 projection
// g5: induced by the projection on abelianisations
GaneaSequence ganea_sequence(const CentralExtension& E);

struct ExactnessReport {
  bool complex_ok = false;        // all consecutive composites vanish
  std::array<bool, 4> exact_at{};  // at H2 B, H2 A, K, H1 B
  bool end_surjective = false;     // g5 onto
  bool exact = false;              // all of the above
  std::array<int, 6> dims{};
  std::array<int, 5> ranks{};
};
ExactnessReport exactness_check(const GaneaSequence& S);

// The four-term fragment gamma_n(X) (x) ab(X) -> H2(X) -> H2(X/gamma_n) ->
// gamma_n(X) arising from the lower central series; requires n >= 2 and a
// nilpotent X of class at most n (otherwise gamma_n is not central).
struct LcsGaneaReport {
  GaneaSequence seq;
  std::array<int, 4> fragment_dims{};
  bool fragment_exact = false;  // exactness at the fragment's two interior nodes
};
LcsGaneaReport lcs_ganea_application(const SCAlgebra& X, int n);

}  // namespace nilprod::homology
