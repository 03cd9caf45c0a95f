#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "affweyl/affine.hpp"

namespace affweyl {

// A length-preserving automorphism of W of finite order, factored as
// Ad(omega) composed with a permutation of the finite diagram.
struct Twist {
  std::vector<int> diagram_perm;  // permutation of finite node indices
  IVec omega_coords;              // canonical Omega coordinates
  AffineElement omega_rep;
  IMat linear;   // cocharacter matrix of the diagram part
  int order = 1;

  std::vector<int32_t> conj_w;   // w -> index of P w P^{-1} in the finite table
  std::vector<int> omega_perm;   // induced permutation of Omega positions
  std::vector<int> simple_perm;  // induced permutation of the affine simple reflections

  bool is_identity() const {
    for (size_t i = 0; i < diagram_perm.size(); ++i)
      if (diagram_perm[i] != (int)i) return false;
    return affweyl::is_zero(omega_coords);
  }
  bool trivial_on_omega() const {
    for (size_t i = 0; i < omega_perm.size(); ++i)
      if (omega_perm[i] != (int)i) return false;
    return true;
  }
};

// Accepts canonical coordinates either at full length or restricted to the
// invariant factors > 1 (the form used in config files).
inline IVec expand_omega_coords(const OmegaGroup& om, const IVec& given) {
  if ((int)given.size() == om.ab.n) return om.ab.reduce(given);
  if ((int)given.size() == (int)om.ab.nontrivial_factors().size()) {
    IVec full(om.ab.n, 0);
    int j = 0;
    for (int i = 0; i < om.ab.n; ++i)
      if (om.ab.moduli[i] > 1) full[i] = given[j++];
    return om.ab.reduce(full);
  }
  throw error("omega coordinate vector has wrong size");
}

// Canonical coordinates restricted to the invariant factors > 1.
inline IVec strip_omega_coords(const OmegaGroup& om, const IVec& full) {
  IVec out;
  for (int i = 0; i < om.ab.n; ++i)
    if (om.ab.moduli[i] > 1) out.push_back(full[i]);
  return out;
}

inline AffineElement apply(const AffineWeyl& w, const Twist& t, const AffineElement& x) {
  AffineElement y;
  IVec pl = mat_vec(t.linear, w.lam_vec(x));
  for (int i = 0; i < w.rank(); ++i) y.lam[i] = pl[i];
  y.w = t.conj_w[x.w];
  return w.mul(w.mul(t.omega_rep, y), w.inv(t.omega_rep));
}

// g . x = g x theta(g)^{-1}
inline AffineElement twisted_conjugate(const AffineWeyl& w, const Twist& t, const AffineElement& g,
                                       const AffineElement& x) {
  return w.mul(w.mul(g, x), w.inv(apply(w, t, g)));
}

inline Twist build_twist(const AffineWeyl& w, const std::vector<int>& diagram_perm,
                         const IVec& omega_coords, long long check_bound = 4) {
  const RootDatum& d = w.datum();
  const int r = d.rank;
  Twist t;
  t.diagram_perm = diagram_perm;
  if ((int)diagram_perm.size() != r) throw error("diagram permutation has wrong size");
  std::vector<bool> hit(r, false);
  for (int v : diagram_perm) {
    if (v < 0 || v >= r || hit[v]) throw error("not a permutation of the finite nodes");
    hit[v] = true;
  }
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (d.cartan(diagram_perm[i], diagram_perm[j]) != d.cartan(i, j))
        throw error("permutation does not preserve the Cartan matrix");

  // In coweight coordinates the diagram part permutes the basis vectors.
  t.linear = IMat(r, r);
  for (int i = 0; i < r; ++i) t.linear(diagram_perm[i], i) = 1;
  for (int i = 0; i < r; ++i)
    if (!d.in_lattice(mat_vec(t.linear, d.lattice.row(i))))
      throw error("diagram part does not stabilize the translation lattice");

  int opos = w.omega().pos_of(expand_omega_coords(w.omega(), omega_coords));
  t.omega_rep = w.omega().rep[opos];
  t.omega_coords = w.omega().coords[opos];

  // Conjugation table for the finite part; fails if P does not normalize W0.
  t.conj_w.resize(d.w0.size());
  IMat pinv = transpose(t.linear);  // permutation matrices are orthogonal
  for (int i = 0; i < d.w0.size(); ++i)
    t.conj_w[i] = d.w0.index_of(mat_mul(mat_mul(t.linear, d.w0.mat[i]), pinv));

  // Induced permutation of Omega.
  for (int i = 0; i < w.omega().size(); ++i) {
    AffineElement img = apply(w, t, w.omega().rep[i]);
    if (w.length(img) != 0) throw error("twist does not preserve length zero");
    t.omega_perm.push_back(w.omega().pos_of(w.kappa(img)));
  }

  // Induced permutation of the affine simple reflections.
  const auto& simples = w.simple_reflections();
  for (const auto& s : simples) {
    AffineElement img = apply(w, t, s);
    auto it = std::find(simples.begin(), simples.end(), img);
    if (it == simples.end()) throw error("twist does not permute the simple reflections");
    t.simple_perm.push_back((int)(it - simples.begin()));
  }

  // Finite order: theta^k = Ad(c_k) . P^k with c_{k+1} = omega * P(c_k); the identity
  // needs P^k = 1 and c_k = 1 (W has trivial center for semisimple data).
  {
    IMat pk = t.linear;
    AffineElement ck = t.omega_rep;
    int k = 1;
    const int cap = 1000;
    while (!(pk == IMat::identity(r) && ck == w.identity())) {
      AffineElement pc;
      IVec pl = mat_vec(t.linear, w.lam_vec(ck));
      for (int i = 0; i < r; ++i) pc.lam[i] = pl[i];
      pc.w = t.conj_w[ck.w];
      ck = w.mul(t.omega_rep, pc);
      pk = mat_mul(t.linear, pk);
      if (++k > cap) throw error("twist order exceeds cap");
    }
    t.order = k;
  }

  // Empirical length preservation on a window.
  for (const auto& x : w.enumerate_by_length(check_bound))
    if (w.length(apply(w, t, x)) != w.length(x))
      throw error("twist is not length-preserving");

  return t;
}

inline Twist identity_twist(const AffineWeyl& w) {
  std::vector<int> id(w.rank());
  for (int i = 0; i < w.rank(); ++i) id[i] = i;
  return build_twist(w, id, w.omega().ab.zero(), 0);
}

// A twist-stable subgroup of Omega. Membership in W(Gamma) = W_a x| Gamma is
// decided through kappa.
struct GammaSubgroup {
  std::vector<int> members;        // positions in the Omega enumeration, sorted
  std::vector<IVec> member_coords; // canonical coordinates, same order

  int size() const { return (int)members.size(); }
  bool contains(const IVec& coords, const OmegaGroup& om) const {
    return std::binary_search(members.begin(), members.end(), om.pos_of(coords));
  }
};

inline GammaSubgroup build_gamma(const AffineWeyl& w, const Twist& t,
                                 const std::vector<IVec>& generator_coords) {
  const OmegaGroup& om = w.omega();
  std::set<int> closure{om.pos_of(om.ab.zero())};
  for (const auto& gc : generator_coords) closure.insert(om.pos_of(expand_omega_coords(om, gc)));
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<int> cur(closure.begin(), closure.end());
    for (int a : cur)
      for (int b : cur)
        if (closure.insert(om.pos_of(om.ab.add(om.coords[a], om.coords[b]))).second) changed = true;
  }
  GammaSubgroup g;
  g.members.assign(closure.begin(), closure.end());
  for (int p : g.members) {
    g.member_coords.push_back(om.coords[p]);
    if (std::find(g.members.begin(), g.members.end(), t.omega_perm[p]) == g.members.end())
      throw error("gamma subgroup is not twist-stable");
  }
  return g;
}

inline GammaSubgroup trivial_gamma(const AffineWeyl& w, const Twist& t) {
  return build_gamma(w, t, {});
}
inline GammaSubgroup full_gamma(const AffineWeyl& w, const Twist& t) {
  std::vector<IVec> gens;
  for (const auto& c : w.omega().coords) gens.push_back(c);
  return build_gamma(w, t, gens);
}

}  // namespace affweyl
