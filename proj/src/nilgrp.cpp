#include "nilprod/nilgrp.hpp"

#include <utility>

namespace nilprod::nilgrp {

using namespace exactlin;

namespace {

void check_len(const FgAbGroup& G, const std::vector<Int>& v, const char* what) {
  if (static_cast<int>(v.size()) != G.rank())
    fail("GroupMismatch", std::string(what) + ": coordinate vector has wrong length");
}

std::vector<Int> vec_add(const FgAbGroup& G, std::vector<Int> x, const std::vector<Int>& y) {
  for (size_t i = 0; i < x.size(); ++i) x[i] += y[i];
  return reduce_coords(G, std::move(x));
}

std::vector<Int> vec_neg(const FgAbGroup& G, std::vector<Int> x) {
  for (auto& c : x) c = -c;
  return reduce_coords(G, std::move(x));
}

// Canonical coordinates of the pure tensor a (x) b.
std::vector<Int> pure_tensor(const TensorFgab& T, const std::vector<Int>& a,
                             const std::vector<Int>& b) {
  std::vector<Int> p(static_cast<size_t>(T.ra) * T.rb, Int(0));
  for (int i = 0; i < T.ra; ++i)
    for (int j = 0; j < T.rb; ++j) p[T.pair_index(i, j)] = a[i] * b[j];
  return reduce_coords(T.group, im_apply(T.pair_to_canon, p));
}

void check_same_group(const Nil2Element& g, const Nil2Element& h) {
  if (g.data == h.data) return;
  if (!g.data || !h.data)
    fail("GroupMismatch", "element without an ambient nil-2 coproduct");
  if (!same_invariants(g.data->A, h.data->A) || !same_invariants(g.data->B, h.data->B))
    fail("GroupMismatch", "elements belong to different nil-2 coproducts");
}

}  // namespace

FgAbGroup abelianization_gp(const FpGroupPresentation& P) {
  const int n = static_cast<int>(P.generators.size());
  IntMatrix M(static_cast<int>(P.relators.size()), n);
  for (size_t r = 0; r < P.relators.size(); ++r) {
    for (int letter : P.relators[r]) {
      const int idx = letter > 0 ? letter : -letter;
      if (idx < 1 || idx > n)
        fail("UnknownGenerator",
             "relator letter " + std::to_string(letter) + " is outside 1.." + std::to_string(n));
      M.at(static_cast<int>(r), idx - 1) += (letter > 0 ? 1 : -1);
    }
  }
  return fgab_from_presentation(M);
}

BilinearGp bilinear_product_gp(const FpGroupPresentation& X, const FpGroupPresentation& Y) {
  const FgAbGroup ax = abelianization_gp(X);
  const FgAbGroup ay = abelianization_gp(Y);
  const TensorFgab T = tensor_fgab_full(ax, ay);
  const int gx = static_cast<int>(X.generators.size());
  const int gy = static_cast<int>(Y.generators.size());
  IntMatrix pairs(T.group.rank(), gx * gy);
  for (int i = 0; i < gx; ++i) {
    const auto ci = im_col(ax.basis_witness->to_canonical, i);
    for (int j = 0; j < gy; ++j) {
      const auto cj = im_col(ay.basis_witness->to_canonical, j);
      im_set_col(pairs, i * gy + j, pure_tensor(T, ci, cj));
    }
  }
  return BilinearGp{T.group, std::move(pairs), gx, gy};
}

// ---------------------------------------------------------------------------

Nil2CoproductGroup::Nil2CoproductGroup(const FgAbGroup& A, const FgAbGroup& B)
    : data_(std::make_shared<Nil2Data>(Nil2Data{A, B, tensor_fgab_full(A, B)})) {}

Nil2CoproductGroup nil2_coproduct(const FgAbGroup& A, const FgAbGroup& B) {
  return Nil2CoproductGroup(A, B);
}

Nil2Element Nil2CoproductGroup::identity() const {
  return Nil2Element{data_, std::vector<Int>(data_->A.rank(), Int(0)),
                     std::vector<Int>(data_->B.rank(), Int(0)),
                     std::vector<Int>(data_->T.group.rank(), Int(0))};
}

Nil2Element Nil2CoproductGroup::make(const std::vector<Int>& a, const std::vector<Int>& b,
                                     const std::vector<Int>& t) const {
  check_len(data_->A, a, "make");
  check_len(data_->B, b, "make");
  check_len(data_->T.group, t, "make");
  return Nil2Element{data_, reduce_coords(data_->A, a), reduce_coords(data_->B, b),
                     reduce_coords(data_->T.group, t)};
}

Nil2Element Nil2CoproductGroup::i1(const std::vector<Int>& a) const {
  check_len(data_->A, a, "i1");
  auto g = identity();
  g.a = reduce_coords(data_->A, a);
  return g;
}

Nil2Element Nil2CoproductGroup::i2(const std::vector<Int>& b) const {
  check_len(data_->B, b, "i2");
  auto g = identity();
  g.b = reduce_coords(data_->B, b);
  return g;
}

Nil2Element Nil2CoproductGroup::central(const std::vector<Int>& t) const {
  check_len(data_->T.group, t, "central");
  auto g = identity();
  g.t = reduce_coords(data_->T.group, t);
  return g;
}

Int Nil2CoproductGroup::order() const {
  const Int oa = data_->A.order(), ob = data_->B.order(), ot = data_->T.group.order();
  if (oa == 0 || ob == 0 || ot == 0) return 0;
  return oa * ob * ot;
}

Nil2Element nil2_mul(const Nil2Element& g, const Nil2Element& h) {
  check_same_group(g, h);
  const Nil2Data& d = *g.data;
  // (a,b,t)(a',b',t') = (a+a', b+b', t+t' - a' (x) b): moving i1(a') past
  // i2(b) costs the commutator [i2(b), i1(a')] = -(a' (x) b), which is central.
  const auto cross = pure_tensor(d.T, h.a, g.b);
  std::vector<Int> t(g.t.size());
  for (size_t k = 0; k < t.size(); ++k) t[k] = g.t[k] + h.t[k] - cross[k];
  return Nil2Element{g.data, vec_add(d.A, g.a, h.a), vec_add(d.B, g.b, h.b),
                     reduce_coords(d.T.group, std::move(t))};
}

Nil2Element nil2_inv(const Nil2Element& g) {
  const Nil2Data& d = *g.data;
  // (a,b,t)^{-1} = (-a, -b, -t - a (x) b)
  const auto cross = pure_tensor(d.T, g.a, g.b);
  std::vector<Int> t(g.t.size());
  for (size_t k = 0; k < t.size(); ++k) t[k] = -g.t[k] - cross[k];
  return Nil2Element{g.data, vec_neg(d.A, g.a), vec_neg(d.B, g.b),
                     reduce_coords(d.T.group, std::move(t))};
}

Nil2Element nil2_commutator(const Nil2Element& g, const Nil2Element& h) {
  return nil2_mul(nil2_mul(nil2_inv(g), nil2_inv(h)), nil2_mul(g, h));
}

bool nil2_equal(const Nil2Element& g, const Nil2Element& h) {
  check_same_group(g, h);
  return g.a == h.a && g.b == h.b && g.t == h.t;
}

bool nil2_is_identity(const Nil2Element& g) {
  auto zero = [](const std::vector<Int>& v) {
    for (const auto& c : v)
      if (c != 0) return false;
    return true;
  };
  return zero(g.a) && zero(g.b) && zero(g.t);
}

// ---------------------------------------------------------------------------

CosmashGp cosmash_gp(const FgAbGroup& A, const FgAbGroup& B) {
  TensorFgab T = tensor_fgab_full(A, B);
  FgAbGroup grp = T.group;
  return CosmashGp{std::move(grp), std::move(T)};
}

SubgroupOfTensor higgins_commutator_nil2(const Nil2CoproductGroup& G,
                                         const std::vector<Nil2Element>& K_gens,
                                         const std::vector<Nil2Element>& L_gens) {
  const auto& d = G.data();
  const int rt = d->T.group.rank();
  std::vector<std::vector<Int>> cols;
  cols.reserve(K_gens.size() * L_gens.size());
  for (const auto& k : K_gens) {
    for (const auto& l : L_gens) {
      if (k.data != d && (!k.data || !same_invariants(k.data->A, d->A) ||
                          !same_invariants(k.data->B, d->B)))
        fail("GroupMismatch", "subgroup generator from a different coproduct");
      const Nil2Element c = nil2_commutator(k, l);
      // Commutators are central with trivial A- and B-parts, so [K, L] is
      // generated inside the tensor part by the generator pairs (the
      // commutator map is bilinear in class 2).
      cols.push_back(c.t);
    }
  }
  IntMatrix gens(rt, static_cast<int>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) im_set_col(gens, static_cast<int>(j), cols[j]);
  FgAbGroup iso = subgroup_invariants(d->T.group, gens);
  return SubgroupOfTensor{std::move(iso), std::move(gens)};
}

IntMatrix symmetry_gp(const FgAbGroup& A, const FgAbGroup& B) {
  const TensorFgab TAB = tensor_fgab_full(A, B);
  const TensorFgab TBA = tensor_fgab_full(B, A);
  // Swapping the two injections conjugates [i1 a, i2 b] = a (x) b into
  // [i2 a, i1 b] = -(b (x) a), so the induced map is minus the twist.
  return tensor_twist(TAB, TBA, -1);
}

}  // namespace nilprod::nilgrp
