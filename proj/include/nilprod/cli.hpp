#pragma once

// Manifest-driven front end.  A manifest is a small line-oriented language
// declaring named objects and commands over them:
//
//   [fgab A]
//   factors = [4]
//
//   [lie h3]
//   dim = 3
//   bracket e1 e2 = e3
//
//   [cmd t]
//   do = tensor fgab A A
//
// Section kinds: fgab, gp, operad, nil2alg, sc, lie (structure constants
// with the brackets antisymmetrised), lierep, xmod, central and cmd.  The
// parser resolves every cross-reference and type-checks command signatures;
// execution produces a schema-versioned JSON document, deterministic for a
// fixed (manifest, seed) pair up to the per-command timing fields.  The
// randomized property suites behind `nilprod check` live here as well.

#include "nilprod/common.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

namespace nilprod::cli {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Declarations (one struct per section kind)

// Z | Q | F_p, written Z, Q, F<p> in manifests.
struct RingSpec {
  char kind = 'Z';
  long p = 0;
  bool operator==(const RingSpec&) const = default;
};

std::string ring_word(const RingSpec& r);
// SyntaxError (citing the given line) on anything else.
RingSpec parse_ring_word(const std::string& s, int line = 0);

// [fgab]  factors = [d1, d2, ...]   (0 = a free summand)
struct FgabDecl {
  std::vector<Int> factors;
  bool operator==(const FgabDecl&) const = default;
};

// [gp]  generators = [a, b]  and one  relator = a^2 b^-1  line per relator.
// Relators are stored as (generator index, exponent) runs; only exponent
// sums matter for the abelian invariants computed here.
struct GpDecl {
  std::vector<std::string> generators;
  std::vector<std::vector<std::pair<int, Int>>> relators;
  bool operator==(const GpDecl&) const = default;
};

// [operad]  preset = comm|assoc|lie|leib,  ring = Z|Q|F<p>
struct OperadDecl {
  std::string preset;
  RingSpec ring;
  bool operator==(const OperadDecl&) const = default;
};

// [nil2alg]  operad = name  and either  free = [orders]  or  abelian = [orders]
struct Nil2AlgDecl {
  std::string operad;
  bool free = true;
  std::vector<Int> module;
  bool operator==(const Nil2AlgDecl&) const = default;
};

// One  bracket ei ej = <linear combination>  line; indices are 0-based here.
struct BracketLine {
  int i = 0;
  int j = 0;
  std::vector<std::pair<int, Rat>> rhs;
  bool operator==(const BracketLine&) const = default;
};

// [sc] / [lie]  dim = n,  field = Q|F<p>,  variety = ...,  bracket lines.
// Unstated products are zero; the lie form antisymmetrises each line.
struct ScDecl {
  int dim = 0;
  RingSpec field{'Q', 0};
  std::string variety = "none";
  bool antisymmetrise = false;
  std::vector<BracketLine> brackets;
  bool operator==(const ScDecl&) const = default;
};

// [lierep]  algebra = name,  dim = m,  one  rho ei = [[row], ...]  per basis
// element of the algebra.
struct LierepDecl {
  std::string algebra;
  int dim = 0;
  std::vector<std::vector<std::vector<Rat>>> rho;
  bool operator==(const LierepDecl&) const = default;
};

// [xmod]  base = fgab-name,  top = fgab-name,  boundary = [[row], ...]
// (rank(base) rows of rank(top) integers).
struct XmodDecl {
  std::string base;
  std::string top;
  std::vector<std::vector<Int>> boundary;
  bool operator==(const XmodDecl&) const = default;
};

// [central]  of = algebra-name,  one  vector = [c1, ..., cn]  per spanning
// vector of the central ideal.
struct CentralDecl {
  std::string of;
  std::vector<std::vector<Rat>> vectors;
  bool operator==(const CentralDecl&) const = default;
};

// [cmd]  do = <verb and arguments, rest of line>
struct CmdDecl {
  std::vector<std::string> words;
  bool operator==(const CmdDecl&) const = default;
};

struct Declaration {
  std::string kind;
  std::string name;
  std::variant<FgabDecl, GpDecl, OperadDecl, Nil2AlgDecl, ScDecl, LierepDecl, XmodDecl,
               CentralDecl, CmdDecl>
      payload;
  bool operator==(const Declaration&) const = default;
};

struct Manifest {
  std::vector<Declaration> decls;
  bool operator==(const Manifest&) const = default;
};

// ---------------------------------------------------------------------------
// Parsing

// Errors: SyntaxError (with line and column), DuplicateName,
// UnresolvedReference, KindMismatch.  All cross-references and command
// signatures are checked here, so run() only sees resolvable manifests.
Manifest parse_manifest(const std::string& text);

// Canonical text form; parse_manifest(serialize_manifest(m)) == m.
std::string serialize_manifest(const Manifest& m);

// ---------------------------------------------------------------------------
// Execution

struct ResultDocument {
  Json doc;
  bool ok = true;  // false iff some command verdict failed
};

// Builds every declaration, then executes the cmd sections in order.
// Declaration-building errors propagate as exceptions (usage errors);
// failed verdicts only clear `ok`.
ResultDocument run(const Manifest& m, std::uint64_t seed);

// One row per variety (Gp, CAlg, Alg, Lie, Leib, Mod) for free objects of
// the given ranks over the given base ring, computed through the cosmash
// machinery; rows a preset cannot inhabit (Lie over F_2) carry an "error".
Json table1_rows(const RingSpec& ring, int a, int b);

// The randomized property suites: bilinearity, rightexact, symmetry, gamma,
// ganea, birkhoff, xmod.  Unknown names raise UnknownSuite; the empty
// selection yields an empty, passing report.
extern const std::vector<std::string> kSuiteNames;
ResultDocument check_suites(const std::vector<std::string>& selection, std::uint64_t seed,
                            int cases);

}  // namespace nilprod::cli
