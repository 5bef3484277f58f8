#include "nilprod/cli.hpp"
#include "nilprod/examples.hpp"
#include "nilprod/homology.hpp"
#include "nilprod/nilgrp.hpp"
#include "nilprod/operad2.hpp"
#include "nilprod/xmod.hpp"

#include <algorithm>
#include <chrono>
#include <map>

namespace nilprod::cli {

using namespace nilprod::exactlin;
namespace op2 = nilprod::operad2;
namespace na = nilprod::nonassoc;
namespace hm = nilprod::homology;
namespace xm = nilprod::xmod;

namespace {

// ---------------------------------------------------------------------------
// Small conversions

op2::Ring to_ring(const RingSpec& r) {
  if (r.kind == 'Z') return op2::ring_Z();
  if (r.kind == 'Q') return op2::ring_Q();
  return op2::ring_Fp(r.p);
}

Field to_field(const RingSpec& r) { return r.kind == 'Q' ? field_Q() : field_Fp(r.p); }

na::Variety to_variety(const std::string& v) {
  if (v == "lie") return na::Variety::Lie;
  if (v == "leibniz") return na::Variety::Leib;
  if (v == "assoc") return na::Variety::Assoc;
  if (v == "commassoc") return na::Variety::CommAssoc;
  return na::Variety::None;
}

op2::Preset to_preset(const std::string& p) {
  if (p == "comm") return op2::Preset::Comm;
  if (p == "assoc") return op2::Preset::Assoc;
  if (p == "lie") return op2::Preset::Lie;
  return op2::Preset::Leib;
}

std::string int_str(const Int& x) { return x.str(); }

Json json_factors(const FgAbGroup& G) {
  Json a = Json::array();
  for (const Int& d : G.invariant_factors) a.push_back(int_str(d));
  return a;
}

Json json_orders(const std::vector<Int>& orders) {
  Json a = Json::array();
  for (const Int& d : orders) a.push_back(int_str(d));
  return a;
}

Json json_intmatrix(const IntMatrix& M) {
  Json rows = Json::array();
  for (int i = 0; i < M.rows; ++i) {
    Json r = Json::array();
    for (int j = 0; j < M.cols; ++j) r.push_back(int_str(M.at(i, j)));
    rows.push_back(r);
  }
  return rows;
}

std::int64_t ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                               t0)
      .count();
}

// ---------------------------------------------------------------------------
// Building declarations

struct Env {
  const Manifest& m;
  std::map<std::string, FgAbGroup> groups;  // fgab sections and abelianised gp sections
  std::map<std::string, op2::Operad2> operads;
  std::map<std::string, op2::Alg2> algebras;
  std::map<std::string, na::SCAlgebra> scs;
  std::map<std::string, na::LieRep> reps;
  std::map<std::string, xm::AbCrossedModule> xmods;
  std::map<std::string, hm::CentralExtension> centrals;

  explicit Env(const Manifest& manifest) : m(manifest) {}

  const Declaration& decl(const std::string& name) const {
    for (const Declaration& d : m.decls)
      if (d.name == name) return d;
    fail("InternalError", "unresolved name '" + name + "' after parsing");
  }

  const FgAbGroup& group(const std::string& name) {
    if (auto it = groups.find(name); it != groups.end()) return it->second;
    const Declaration& d = decl(name);
    FgAbGroup G;
    if (const auto* f = std::get_if<FgabDecl>(&d.payload)) {
      G = fgab_from_factors(f->factors);
    } else {
      const auto& g = std::get<GpDecl>(d.payload);
      // relator exponent sums present the abelianisation
      IntMatrix rel(static_cast<int>(g.relators.size()), static_cast<int>(g.generators.size()));
      for (size_t i = 0; i < g.relators.size(); ++i)
        for (const auto& [idx, e] : g.relators[i]) rel.at(static_cast<int>(i), idx) += e;
      G = fgab_from_presentation(rel);
    }
    return groups.emplace(name, std::move(G)).first->second;
  }

  const op2::Operad2& operad(const std::string& name) {
    if (auto it = operads.find(name); it != operads.end()) return it->second;
    const auto& p = std::get<OperadDecl>(decl(name).payload);
    return operads.emplace(name, op2::preset_operad(to_preset(p.preset), to_ring(p.ring)))
        .first->second;
  }

  const op2::Alg2& algebra(const std::string& name) {
    if (auto it = algebras.find(name); it != algebras.end()) return it->second;
    const auto& p = std::get<Nil2AlgDecl>(decl(name).payload);
    const op2::Operad2& op = operad(p.operad);
    const op2::Mod M = op2::mod_from_orders(op.ring, p.module);
    op2::Alg2 A = p.free ? op2::free_nil2(op, M) : op2::abelian_algebra(op, M);
    return algebras.emplace(name, std::move(A)).first->second;
  }

  const na::SCAlgebra& sc(const std::string& name) {
    if (auto it = scs.find(name); it != scs.end()) return it->second;
    const auto& p = std::get<ScDecl>(decl(name).payload);
    const Field F = to_field(p.field);
    na::SCAlgebra A = na::make_sc(F, p.dim, to_variety(p.variety));
    for (const BracketLine& b : p.brackets)
      for (const auto& [k, c] : b.rhs) {
        A.cc(b.i, b.j, k) = fnorm(F, c);
        if (p.antisymmetrise) A.cc(b.j, b.i, k) = fneg(F, fnorm(F, c));
      }
    na::require_tag_consistent(A);
    return scs.emplace(name, std::move(A)).first->second;
  }

  const na::LieRep& rep(const std::string& name) {
    if (auto it = reps.find(name); it != reps.end()) return it->second;
    const auto& p = std::get<LierepDecl>(decl(name).payload);
    na::LieRep r;
    r.g = sc(p.algebra);
    r.m = p.dim;
    for (const auto& mat : p.rho) {
      FieldMatrix M(r.g.field, p.dim, p.dim);
      for (int i = 0; i < p.dim; ++i)
        for (int j = 0; j < p.dim; ++j)
          M.at(i, j) = fnorm(r.g.field, mat[static_cast<size_t>(i)][static_cast<size_t>(j)]);
      r.rho.push_back(std::move(M));
    }
    if (!na::rep_axiom_holds(r))
      fail("RepAxiomFailure", "'" + name + "' does not satisfy the representation axiom");
    return reps.emplace(name, std::move(r)).first->second;
  }

  const xm::AbCrossedModule& xmod(const std::string& name) {
    if (auto it = xmods.find(name); it != xmods.end()) return it->second;
    const auto& p = std::get<XmodDecl>(decl(name).payload);
    const FgAbGroup& G = group(p.base);
    const FgAbGroup& A = group(p.top);
    IntMatrix d(G.rank(), A.rank());
    if (!p.boundary.empty()) {
      if (static_cast<int>(p.boundary.size()) != G.rank() ||
          static_cast<int>(p.boundary.front().size()) != A.rank())
        fail("DomainMismatch", "'" + name + "': boundary must be " + std::to_string(G.rank()) +
                                   " x " + std::to_string(A.rank()) +
                                   " in canonical coordinates");
      for (int i = 0; i < d.rows; ++i)
        for (int j = 0; j < d.cols; ++j)
          d.at(i, j) = p.boundary[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return xmods.emplace(name, xm::ab_xmod(G, A, d)).first->second;
  }

  const hm::CentralExtension& central(const std::string& name) {
    if (auto it = centrals.find(name); it != centrals.end()) return it->second;
    const auto& p = std::get<CentralDecl>(decl(name).payload);
    const na::SCAlgebra& B = sc(p.of);
    FieldMatrix K(B.field, B.dim, static_cast<int>(p.vectors.size()));
    for (int j = 0; j < K.cols; ++j)
      for (int i = 0; i < K.rows; ++i)
        K.at(i, j) = fnorm(B.field, p.vectors[static_cast<size_t>(j)][static_cast<size_t>(i)]);
    return centrals.emplace(name, hm::central_extension_validate(B, K)).first->second;
  }

  void build(const Declaration& d) {
    if (d.kind == "fgab" || d.kind == "gp") group(d.name);
    else if (d.kind == "operad") operad(d.name);
    else if (d.kind == "nil2alg") algebra(d.name);
    else if (d.kind == "sc" || d.kind == "lie") sc(d.name);
    else if (d.kind == "lierep") rep(d.name);
    else if (d.kind == "xmod") xmod(d.name);
    else if (d.kind == "central") central(d.name);
  }
};

// ---------------------------------------------------------------------------
// Random inputs for the property suites

FgAbGroup random_fgab(Rng& rng, int max_rank) {
  static const long pool[] = {0, 0, 2, 3, 4, 6, 8, 9};
  const int r = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_rank) + 1));
  std::vector<Int> f;
  for (int i = 0; i < r; ++i) f.emplace_back(pool[rng.below(8)]);
  return fgab_from_factors(f);
}

// A torsion-respecting matrix, i.e. a valid morphism src -> dst.
IntMatrix random_fgab_hom(Rng& rng, const FgAbGroup& src, const FgAbGroup& dst) {
  IntMatrix f(dst.rank(), src.rank());
  for (int i = 0; i < f.rows; ++i)
    for (int j = 0; j < f.cols; ++j) {
      const Int& o = src.invariant_factors[static_cast<size_t>(j)];
      const Int& p = dst.invariant_factors[static_cast<size_t>(i)];
      const long c = rng.range(-3, 3);
      if (o == 0) f.at(i, j) = c;
      else if (p == 0) f.at(i, j) = 0;
      else f.at(i, j) = (p / gcd_nonneg(p, o)) * c;
    }
  return f;
}

op2::Mod random_module(Rng& rng, const op2::Ring& R, int max_rank) {
  const int r = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_rank) + 1));
  if (R.is_field()) return op2::mod_free(R, r);
  static const long pool[] = {0, 0, 2, 3, 4, 6, 8, 9};
  std::vector<Int> orders;
  for (int i = 0; i < r; ++i) orders.emplace_back(pool[rng.below(8)]);
  return op2::mod_from_orders(R, orders);
}

// A free 2-step nilpotent algebra, optionally with the square part collapsed
// along random relations (which preserves validity).
op2::Alg2 random_algebra(Rng& rng, const op2::Operad2& op, int max_gens) {
  const op2::Mod M = random_module(rng, op.ring, max_gens);
  op2::Alg2 A = op2::free_nil2(op, M);
  if (A.D.rank() > 0 && rng.below(2) == 0) {
    const Field F = op2::ring_field(op.ring);
    const int nrel = static_cast<int>(rng.below(static_cast<std::uint64_t>(A.D.rank())) + 1);
    FieldMatrix rel(F, A.D.rank(), nrel);
    for (int i = 0; i < rel.rows; ++i)
      for (int j = 0; j < rel.cols; ++j) rel.at(i, j) = fnorm(F, Rat(rng.range(-3, 3)));
    const op2::ModQuotient q = op2::mod_quotient(A.D, rel);
    A = op2::Alg2{op, M, q.mod, op2::reduce_map(fm_mul(q.proj, A.mu), q.mod)};
  }
  return A;
}

FieldMatrix random_central_subspace(Rng& rng, const na::SCAlgebra& B) {
  const FieldMatrix Z = na::center_space(B);
  const int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(Z.cols) + 1));
  FieldMatrix R(B.field, Z.cols, t);
  for (int i = 0; i < R.rows; ++i)
    for (int j = 0; j < R.cols; ++j) R.at(i, j) = fnorm(B.field, Rat(rng.range(-2, 2)));
  return span_basis(fm_mul(Z, R));
}

xm::AbCrossedModule random_xmod(Rng& rng) {
  const FgAbGroup G = random_fgab(rng, 3);
  const FgAbGroup A = random_fgab(rng, 3);
  return xm::ab_xmod(G, A, random_fgab_hom(rng, A, G));
}

// ---------------------------------------------------------------------------
// The property suites (one call = one case)

bool case_bilinearity(Rng& rng) {
  const op2::Ring rings[] = {op2::ring_Q(), op2::ring_Z()};
  const op2::Preset presets[] = {op2::Preset::Comm, op2::Preset::Assoc, op2::Preset::Lie,
                                 op2::Preset::Leib};
  for (const op2::Ring& R : rings)
    for (op2::Preset p : presets) {
      const op2::Operad2 op = op2::preset_operad(p, R);
      const op2::Alg2 A = random_algebra(rng, op, 2);
      const op2::Alg2 B = random_algebra(rng, op, 2);
      const op2::Alg2 C = random_algebra(rng, op, 2);
      const op2::Alg2 lhs = op2::cosmash2(op2::coproduct2(A, B).alg, C).alg;
      const op2::Alg2 rhs =
          op2::product2(op2::cosmash2(A, C).alg, op2::cosmash2(B, C).alg).alg;
      if (!op2::mod_iso(op2::alg_carrier(lhs), op2::alg_carrier(rhs))) return false;
    }
  return true;
}

bool case_rightexact(Rng& rng) {
  const FgAbGroup A = random_fgab(rng, 3);
  const FgAbGroup B = random_fgab(rng, 3);
  const FgAbGroup X = random_fgab(rng, 3);
  const IntMatrix f = random_fgab_hom(rng, A, B);
  const CokernelFgab C = map_cokernel(f, A, B);
  const IntMatrix ix = IntMatrix::identity(X.rank());

  // exactness of  A (x) X -> B (x) X -> C (x) X -> 0  and of the mirrored
  // sequence with X on the left
  for (int side = 0; side < 2; ++side) {
    const TensorFgab TA = side == 0 ? tensor_fgab_full(A, X) : tensor_fgab_full(X, A);
    const TensorFgab TB = side == 0 ? tensor_fgab_full(B, X) : tensor_fgab_full(X, B);
    const TensorFgab TC = side == 0 ? tensor_fgab_full(C.coker, X) : tensor_fgab_full(X, C.coker);
    const IntMatrix fX = side == 0 ? map_on_tensor(f, ix, TA, TB) : map_on_tensor(ix, f, TA, TB);
    const IntMatrix pX =
        side == 0 ? map_on_tensor(C.proj, ix, TB, TC) : map_on_tensor(ix, C.proj, TB, TC);

    // at the middle: ker(p (x) 1) = im(f (x) 1)
    const IntMatrix ker = fgab_map_kernel_gens(pX, TB.group, TC.group);
    if (!subgroup_equal(TB.group, ker, fX)) return false;
    // at the end: p (x) 1 onto
    if (!map_cokernel(pX, TB.group, TC.group).coker.is_trivial()) return false;
  }
  return true;
}

bool case_symmetry(Rng& rng) {
  // group-theoretic bilinear product: minus the twist on torsion-free inputs
  const FgAbGroup A = fgab_free(static_cast<int>(rng.below(4)));
  const FgAbGroup B = fgab_free(static_cast<int>(rng.below(4)));
  const TensorFgab TAB = tensor_fgab_full(A, B);
  const TensorFgab TBA = tensor_fgab_full(B, A);
  if (!(nilgrp::symmetry_gp(A, B) == tensor_twist(TAB, TBA, -1))) return false;

  // Comm preset: the plain twist on the mixed coordinates, stored reduced
  // modulo the coordinate orders of the target
  const op2::Ring rings[] = {op2::ring_Z(), op2::ring_Q(), op2::ring_Fp(5)};
  const op2::Ring R = rings[rng.below(3)];
  const op2::Operad2 comm = op2::preset_operad(op2::Preset::Comm, R);
  const op2::Alg2 A2 = op2::abelian_algebra(comm, random_module(rng, R, 3));
  const op2::Alg2 B2 = op2::abelian_algebra(comm, random_module(rng, R, 3));
  const int ra = A2.Abar.rank(), rb = B2.Abar.rank();
  FieldMatrix expected(op2::ring_field(R), ra * rb, ra * rb);
  for (int i = 0; i < ra; ++i)
    for (int j = 0; j < rb; ++j) expected.at(j * ra + i, i * rb + j) = 1;
  const op2::Mod mba = op2::cosmash2(B2, A2).alg.Abar;
  return op2::symmetry2(A2, B2) == op2::reduce_map(expected, mba);
}

bool case_gamma(Rng& rng) {
  const Field F = rng.below(2) == 0 ? field_Q() : field_Fp(5);
  na::SCAlgebra A = [&] {
    switch (rng.below(3)) {
      case 0: return examples::random_lie(rng, F);
      case 1: return examples::random_leibniz(rng, F);
      default: return examples::random_assoc(rng, F);
    }
  }();
  const na::LcsResult r = na::lower_central_series(A);
  for (int n = 1; n <= 4; ++n) {
    const size_t i = std::min<size_t>(static_cast<size_t>(n) - 1, r.left_normed.size() - 1);
    if (!span_equal(na::gamma_term(r, n), r.left_normed[i])) return false;
  }

  // operad engine: gamma_2 = D and gamma_3 = 0 hold structurally
  const op2::Ring rings[] = {op2::ring_Z(), op2::ring_Q(), op2::ring_Fp(5)};
  const op2::Ring R = rings[rng.below(3)];
  const op2::Preset presets[] = {op2::Preset::Comm, op2::Preset::Assoc, op2::Preset::Lie,
                                 op2::Preset::Leib};
  const op2::Alg2 X = random_algebra(rng, op2::preset_operad(presets[rng.below(4)], R), 3);
  const std::vector<op2::Mod> chain = op2::lcs2(X);
  return chain.size() == 3 && chain[1].orders == X.D.orders && op2::mod_is_trivial(chain[2]);
}

bool case_ganea(Rng& rng) {
  const na::SCAlgebra B = examples::random_nilpotent_lie6(rng, field_Q());
  const FieldMatrix K = random_central_subspace(rng, B);
  const hm::CentralExtension E = hm::central_extension_validate(B, K);
  return hm::exactness_check(hm::ganea_sequence(E)).exact;
}

bool case_birkhoff(Rng& rng) {
  const Field F = rng.below(2) == 0 ? field_Q() : field_Fp(5);
  const na::SCAlgebra A = examples::random_leibniz(rng, F);
  return na::commute_nil_birkhoff_test(A, 1).commutes &&
         na::commute_nil_birkhoff_test(A, 2).commutes;
}

bool case_xmod(Rng& rng) {
  const xm::AbCrossedModule M = random_xmod(rng);
  const xm::AbCrossedModule N = random_xmod(rng);
  const xm::XmodTensor T = xm::xmod_tensor_full(M, N);  // verifies eps_hat . alpha = 0

  // symmetric up to isomorphism on both layers, with an involutive twist
  const xm::AbCrossedModule TNM = xm::xmod_tensor(N, M);
  if (!same_invariants(T.result.G, TNM.G) || !same_invariants(T.result.A, TNM.A)) return false;
  const xm::XmodSymmetry s = xm::xmod_twist(M, N);
  const xm::XmodSymmetry back = xm::xmod_twist(N, M);
  const IntMatrix round = im_mul(back.top, s.top);
  for (int j = 0; j < round.cols; ++j) {
    std::vector<Int> col = im_col(round, j);
    col[static_cast<size_t>(j)] -= 1;
    for (const Int& c : reduce_coords(T.result.G, col))
      if (c != 0) return false;
  }

  // (Z, 0, 0) is a unit
  const xm::AbCrossedModule TU = xm::xmod_tensor(M, xm::xmod_unit());
  return same_invariants(TU.G, M.G) && same_invariants(TU.A, M.A);
}

std::uint64_t name_stream(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
  return h;
}

Json run_suite(const std::string& name, std::uint64_t seed, int cases) {
  bool (*fn)(Rng&) = nullptr;
  if (name == "bilinearity") fn = case_bilinearity;
  else if (name == "rightexact") fn = case_rightexact;
  else if (name == "symmetry") fn = case_symmetry;
  else if (name == "gamma") fn = case_gamma;
  else if (name == "ganea") fn = case_ganea;
  else if (name == "birkhoff") fn = case_birkhoff;
  else if (name == "xmod") fn = case_xmod;
  else fail("UnknownSuite", "'" + name + "' is not a suite");

  const auto t0 = std::chrono::steady_clock::now();
  const Rng base = Rng(seed).split(name_stream(name));
  int failures = 0;
  Json failed = Json::array();
  for (int i = 0; i < cases; ++i) {
    Rng rng = base.split(static_cast<std::uint64_t>(i));
    if (!fn(rng)) {
      ++failures;
      if (failed.size() < 10) failed.push_back(i);
    }
  }
  Json row;
  row["suite"] = name;
  row["cases"] = cases;
  row["failures"] = failures;
  if (failures > 0) row["failed_cases"] = failed;
  row["ok"] = failures == 0;
  row["ms"] = ms_since(t0);
  return row;
}

}  // namespace

Json table1_rows(const RingSpec& ring, int a, int b) {
  Json rows = Json::array();
  {
    Json r;
    r["variety"] = "Gp";
    const FgAbGroup T = tensor_fgab(fgab_free(a), fgab_free(b));
    r["dim"] = T.rank();
    r["factors"] = json_factors(T);
    rows.push_back(r);
  }
  const std::pair<const char*, std::string> algebra_rows[] = {
      {"CAlg", "comm"}, {"Alg", "assoc"}, {"Lie", "lie"}, {"Leib", "leib"}};
  const op2::Ring R = to_ring(ring);
  for (const auto& [label, preset] : algebra_rows) {
    Json r;
    r["variety"] = label;
    try {
      const op2::Operad2 op = op2::preset_operad(to_preset(preset), R);
      const op2::Alg2 A = op2::abelian_algebra(op, op2::mod_free(R, a));
      const op2::Alg2 B = op2::abelian_algebra(op, op2::mod_free(R, b));
      const op2::Mod carrier = op2::alg_carrier(op2::cosmash2(A, B).alg);
      r["dim"] = carrier.rank();
      if (ring.kind == 'Z') r["factors"] = json_orders(carrier.orders);
    } catch (const Error& e) {
      r["error"] = e.what();
    }
    rows.push_back(r);
  }
  {
    // modules: no binary operations at all, so the cosmash is trivial
    Json r;
    r["variety"] = "Mod";
    const op2::Operad2 op = op2::operad_from_bifunctor_data(
        R, op2::mod_zero(R), FieldMatrix(op2::ring_field(R), 0, 0), "mod");
    const op2::Alg2 A = op2::abelian_algebra(op, op2::mod_free(R, a));
    const op2::Alg2 B = op2::abelian_algebra(op, op2::mod_free(R, b));
    r["dim"] = op2::alg_carrier(op2::cosmash2(A, B).alg).rank();
    rows.push_back(r);
  }
  return rows;
}

const std::vector<std::string> kSuiteNames = {"bilinearity", "rightexact", "symmetry", "gamma",
                                              "ganea",       "birkhoff",   "xmod"};

ResultDocument check_suites(const std::vector<std::string>& selection, std::uint64_t seed,
                            int cases) {
  for (const std::string& s : selection)
    if (std::find(kSuiteNames.begin(), kSuiteNames.end(), s) == kSuiteNames.end())
      fail("UnknownSuite", "'" + s + "' is not a suite");
  std::vector<std::string> todo;
  for (const std::string& s : selection)
    if (std::find(todo.begin(), todo.end(), s) == todo.end()) todo.push_back(s);

  ResultDocument rd;
  rd.doc["schema"] = "nilprod/1";
  rd.doc["seed"] = seed;
  rd.doc["cases"] = cases;
  Json suites = Json::array();
  for (const std::string& s : todo) {
    Json row = run_suite(s, seed, cases);
    rd.ok = rd.ok && row["ok"].get<bool>();
    suites.push_back(std::move(row));
  }
  rd.doc["suites"] = std::move(suites);
  rd.doc["ok"] = rd.ok;
  return rd;
}

ResultDocument run(const Manifest& m, std::uint64_t seed) {
  Env env(m);
  ResultDocument rd;
  rd.doc["schema"] = "nilprod/1";
  rd.doc["seed"] = seed;

  Json decls = Json::array();
  for (const Declaration& d : m.decls) {
    env.build(d);
    if (d.kind == "cmd") continue;
    Json e;
    e["name"] = d.name;
    e["kind"] = d.kind;
    decls.push_back(e);
  }
  rd.doc["declarations"] = std::move(decls);

  Json cmds = Json::array();
  for (const Declaration& d : m.decls) {
    if (d.kind != "cmd") continue;
    const auto& words = std::get<CmdDecl>(d.payload).words;
    const auto t0 = std::chrono::steady_clock::now();
    Json row;
    row["name"] = d.name;
    std::string joined;
    for (const std::string& w : words) joined += (joined.empty() ? "" : " ") + w;
    row["command"] = joined;

    bool ok = true;
    const std::string& verb = words[0];
    // tensor/cosmash may carry a leading kind assertion: "tensor fgab A B"
    const size_t k = (verb == "tensor" || verb == "cosmash") && words.size() == 4 ? 2 : 1;

    if (verb == "tensor") {
      const Declaration& x = env.decl(words[k]);
      if (x.kind == "fgab" || x.kind == "gp") {
        const FgAbGroup T = tensor_fgab(env.group(words[k]), env.group(words[k + 1]));
        row["factors"] = json_factors(T);
        row["dim"] = T.rank();
      } else if (x.kind == "sc" || x.kind == "lie") {
        const na::SCAlgebra& A = env.sc(words[k]);
        const na::BilinearDescription bd =
            na::bilinear_product_sc(A, env.sc(words[k + 1]), A.variety);
        row["variety"] = na::variety_name(bd.variety);
        row["dim_ab_left"] = bd.dim_ab_A;
        row["dim_ab_right"] = bd.dim_ab_B;
        row["dim"] = bd.dim;
        Json labels = Json::array();
        for (const std::string& s : bd.labels) labels.push_back(s);
        row["labels"] = labels;
      } else if (x.kind == "nil2alg") {
        const op2::Alg2 T = op2::bilinear2(env.algebra(words[k]), env.algebra(words[k + 1]));
        const op2::Mod carrier = op2::alg_carrier(T);
        row["dim"] = carrier.rank();
        row["orders"] = json_orders(carrier.orders);
      } else {  // xmod
        const xm::AbCrossedModule T =
            xm::xmod_tensor(env.xmod(words[k]), env.xmod(words[k + 1]));
        row["base_factors"] = json_factors(T.G);
        row["top_factors"] = json_factors(T.A);
        row["boundary"] = json_intmatrix(T.d);
      }
    } else if (verb == "cosmash") {
      const Declaration& x = env.decl(words[k]);
      if (x.kind == "fgab") {
        const nilgrp::CosmashGp c = nilgrp::cosmash_gp(env.group(words[k]),
                                                       env.group(words[k + 1]));
        row["factors"] = json_factors(c.group);
        row["dim"] = c.group.rank();
      } else {
        const op2::Cosmash2 c = op2::cosmash2(env.algebra(words[k]), env.algebra(words[k + 1]));
        const op2::Mod carrier = op2::alg_carrier(c.alg);
        row["dim"] = carrier.rank();
        row["orders"] = json_orders(carrier.orders);
      }
    } else if (verb == "invariants") {
      const FgAbGroup& G = env.group(words[1]);
      row["factors"] = json_factors(G);
      row["dim"] = G.rank();
    } else if (verb == "ganea") {
      const hm::GaneaSequence S = hm::ganea_sequence(env.central(words[2]));
      const hm::ExactnessReport R = hm::exactness_check(S);
      row["dims"] = Json(R.dims);
      row["ranks"] = Json(R.ranks);
      row["char2"] = S.char2;
      row["exact"] = R.exact;
      ok = R.exact;
    } else if (verb == "homology") {
      const int deg = words[2] == "1" ? 1 : 2;
      row["degree"] = deg;
      row["dim"] = hm::ce_homology(env.sc(words[1]), deg).dim;
    } else if (verb == "lcs") {
      const Declaration& x = env.decl(words[1]);
      Json dims = Json::array();
      if (x.kind == "nil2alg") {
        for (const op2::Mod& M : op2::lcs2(env.algebra(words[1]))) dims.push_back(M.rank());
        row["dims"] = dims;
      } else {
        const na::LcsResult r = na::lower_central_series(env.sc(words[1]));
        for (const FieldMatrix& g : r.gamma) dims.push_back(g.cols);
        row["dims"] = dims;
        row["nilpotent"] = r.nilpotent;
        if (r.nilpotent) row["class"] = r.nilpotency_class;
      }
    } else if (verb == "birkhoff") {
      const na::QuotientAlgebra q = na::birkhoff_reflect(
          env.sc(words[1]), words[2] == "lie" ? na::Variety::Lie : na::Variety::CommAssoc);
      row["target"] = words[2];
      row["dim"] = q.alg.dim;
      row["kernel_dim"] = q.kernel.cols;
    } else if (verb == "kronecker") {
      const na::LieRep t = na::rep_tensor_lie(env.rep(words[1]), env.rep(words[2]));
      row["dim"] = t.m;
      const bool axiom = na::rep_axiom_holds(t);
      row["axiom"] = axiom;
      ok = axiom;
    } else if (verb == "satisfies") {
      const na::IdentityReport rep = na::check_identity(env.sc(words[1]), to_variety(words[2]));
      row["variety"] = words[2];
      row["holds"] = rep.ok;
      if (!rep.ok) {
        Json fs = Json::array();
        for (size_t i = 0; i < rep.failures.size() && i < 5; ++i) fs.push_back(rep.failures[i]);
        row["failures"] = fs;
      }
      ok = rep.ok;
    } else if (verb == "nilpotent") {
      const na::LcsResult r = na::lower_central_series(env.sc(words[1]));
      row["nilpotent"] = r.nilpotent;
      if (r.nilpotent) row["class"] = r.nilpotency_class;
      ok = r.nilpotent;
      if (words.size() == 3 && ok) {
        const int bound = std::stoi(words[2]);
        row["class_bound"] = bound;
        ok = r.nilpotency_class <= bound;
      }
    } else if (verb == "check") {
      const int cases = words.size() == 3 ? std::stoi(words[2]) : 25;
      Json suite = run_suite(words[1], seed, cases);
      ok = suite["ok"].get<bool>();
      row["suite_report"] = std::move(suite);
    } else {  // table1
      row["rows"] = table1_rows(parse_ring_word(words[2]), std::stoi(words[4]),
                                std::stoi(words[5]));
    }

    row["ok"] = ok;
    row["ms"] = ms_since(t0);
    rd.ok = rd.ok && ok;
    cmds.push_back(std::move(row));
  }
  rd.doc["commands"] = std::move(cmds);
  rd.doc["ok"] = rd.ok;
  return rd;
}

}  // namespace nilprod::cli
