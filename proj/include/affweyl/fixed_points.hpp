#pragma once

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "affweyl/verifiers.hpp"

namespace affweyl {

// The action of a twist on the apartment: v -> linear * v + translation.
struct AffineAction {
  IMat linear;
  IVec translation;
  int order = 1;
  std::vector<int> wall_perm;  // induced permutation of the alcove walls

  QVec act(const QVec& v) const {
    QVec r(linear.rows);
    for (int i = 0; i < linear.rows; ++i) {
      Rat s(translation[i]);
      for (int j = 0; j < linear.cols; ++j) s += Rat(linear(i, j)) * v[j];
      r[i] = s;
    }
    return r;
  }
  bool is_identity() const { return linear == IMat::identity(linear.rows) && is_zero(translation); }
};

namespace detail {

// Walls of the base alcove as affine functionals (character, level).
inline std::vector<std::pair<IVec, long long>> alcove_walls(const AffineWeyl& w) {
  std::vector<std::pair<IVec, long long>> walls;
  for (int i = 0; i < w.rank(); ++i) {
    IVec e(w.rank(), 0);
    e[i] = 1;
    walls.push_back({e, 0});
  }
  for (size_t f = 0; f < w.datum().factors.size(); ++f)
    walls.push_back({w.datum().pos_roots[w.datum().highest[f]].root, 1});
  return walls;
}

// Vertices of the base alcove: per irreducible factor the origin or a
// fundamental coweight divided by its mark, combined additively across factors.
inline std::vector<QVec> alcove_vertices(const AffineWeyl& w) {
  const RootDatum& d = w.datum();
  std::vector<QVec> verts{QVec(d.rank, Rat(0))};
  for (size_t f = 0; f < d.factors.size(); ++f) {
    const IVec& marks = d.pos_roots[d.highest[f]].root;
    std::vector<QVec> next;
    for (const auto& base : verts) {
      next.push_back(base);  // factor vertex at the origin
      for (int i = d.factors[f].first; i < d.factors[f].second; ++i) {
        QVec v = base;
        v[i] += Rat(1, marks[i]);
        next.push_back(v);
      }
    }
    verts = std::move(next);
  }
  return verts;
}

inline QVec alcove_barycenter(const AffineWeyl& w) {
  auto verts = alcove_vertices(w);
  QVec b(w.rank(), Rat(0));
  for (const auto& v : verts) b = b + v;
  return Rat(1, (long long)verts.size()) * b;
}

// Integer inverse of a unimodular matrix.
inline IMat unimodular_inverse(const IMat& m) {
  QMat q(m.rows, 2 * m.rows);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.rows; ++j) q(i, j) = Rat(m(i, j));
    q(i, m.rows + i) = Rat(1);
  }
  if (rref(q, m.rows) != m.rows) throw error("matrix is singular");
  IMat inv(m.rows, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.rows; ++j) {
      Rat v = q(i, m.rows + j);
      if (!v.is_integer()) throw error("matrix inverse is not integral");
      inv(i, j) = v.num();
    }
  return inv;
}

// W0-invariant form on the cocharacter space: B(v,u) = sum over positive roots
// of <v,gamma><u,gamma>.
inline IMat invariant_gram(const RootDatum& d) {
  IMat g(d.rank, d.rank);
  for (const auto& pr : d.pos_roots)
    for (int i = 0; i < d.rank; ++i)
      for (int j = 0; j < d.rank; ++j) g(i, j) += pr.root[i] * pr.root[j];
  return g;
}

inline Rat quad_form(const IMat& g, const QVec& v, const QVec& u) {
  Rat s;
  for (int i = 0; i < g.rows; ++i)
    for (int j = 0; j < g.cols; ++j) s += Rat(g(i, j)) * v[i] * u[j];
  return s;
}

}  // namespace detail

// The affine map realizing a twist on the apartment: the composition of the
// length-zero part's alcove symmetry with the coweight permutation.
inline AffineAction sigma_affine_action(const AffineWeyl& w, const Twist& sigma) {
  AffineAction a;
  a.linear = mat_mul(w.datum().w0.mat[sigma.omega_rep.w], sigma.linear);
  a.translation = w.lam_vec(sigma.omega_rep);
  a.order = sigma.order;

  // Induced permutation of the alcove walls; it must match the permutation of
  // the simple reflections, and the vertex set must be permuted.
  auto walls = detail::alcove_walls(w);
  IMat minv_t = transpose(detail::unimodular_inverse(a.linear));
  for (size_t i = 0; i < walls.size(); ++i) {
    IVec c2 = mat_vec(minv_t, walls[i].first);
    long long k2 = walls[i].second + dot(c2, a.translation);
    int image = -1;
    for (size_t j = 0; j < walls.size(); ++j) {
      if (walls[j].first == c2 && walls[j].second == k2) image = (int)j;
      if (walls[j].first == negate(c2) && walls[j].second == -k2) image = (int)j;
    }
    if (image < 0) throw error("twist action does not permute the alcove walls");
    a.wall_perm.push_back(image);
  }
  if (a.wall_perm != sigma.simple_perm)
    throw error("apartment action disagrees with the simple-reflection permutation");

  auto verts = detail::alcove_vertices(w);
  for (const auto& v : verts) {
    QVec img = a.act(v);
    if (std::find(verts.begin(), verts.end(), img) == verts.end())
      throw error("twist action does not preserve the base alcove");
  }
  return a;
}

// The fixed affine subspace of the apartment action, with a distinguished
// special point e of the induced relative arrangement.
struct FixedApartment {
  QVec anchor;                  // some fixed point (the alcove barycenter works)
  std::vector<QVec> directions; // basis of the fixed subspace of the linear part
  QVec base_point;              // e

  bool whole_space = false;

  bool contains(const QVec& p) const {
    // p - anchor must lie in the span of the directions
    if (directions.empty()) return p == anchor;
    QMat m((int)p.size(), (int)directions.size());
    for (int i = 0; i < (int)p.size(); ++i)
      for (int j = 0; j < (int)directions.size(); ++j) m(i, j) = directions[j][i];
    return solve(m, p - anchor).has_value();
  }
};

namespace detail {

// Direction classes of the roots restricted to the fixed subspace, canonically scaled.
struct RestrictionClasses {
  std::vector<QVec> keys;                 // canonical restriction per class
  std::vector<std::vector<int>> members;  // indices of positive roots
};

inline RestrictionClasses restriction_classes(const AffineWeyl& w,
                                              const std::vector<QVec>& dirs) {
  RestrictionClasses rc;
  std::map<std::vector<std::pair<long long, long long>>, int> seen;
  for (int k = 0; k < w.datum().num_positive(); ++k) {
    const IVec& root = w.datum().pos_roots[k].root;
    QVec rho(dirs.size());
    bool nonzero = false;
    for (size_t j = 0; j < dirs.size(); ++j) {
      rho[j] = w.datum().pairing(root, dirs[j]);
      if (!rho[j].is_zero()) nonzero = true;
    }
    if (!nonzero) continue;  // constant on the fixed subspace
    Rat scale;
    for (const auto& x : rho)
      if (!x.is_zero()) { scale = Rat(1) / x; break; }
    QVec canon = scale * rho;
    std::vector<std::pair<long long, long long>> key;
    for (const auto& x : canon) key.push_back({x.num(), x.den()});
    auto [it, fresh] = seen.emplace(key, (int)rc.keys.size());
    if (fresh) {
      rc.keys.push_back(canon);
      rc.members.push_back({});
    }
    rc.members[it->second].push_back(k);
  }
  return rc;
}

}  // namespace detail

inline FixedApartment fixed_apartment(const AffineWeyl& w, const AffineAction& action) {
  const int r = w.rank();
  FixedApartment fa;

  QMat m_minus_i(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      m_minus_i(i, j) = Rat(action.linear(i, j)) - Rat(i == j ? 1 : 0);
  QVec rhs(r);
  for (int i = 0; i < r; ++i) rhs[i] = Rat(-action.translation[i]);
  auto sol = solve(m_minus_i, rhs);
  if (!sol) throw error("apartment action has no fixed point");
  fa.anchor = *sol;
  fa.directions = nullspace(m_minus_i);
  fa.whole_space = (int)fa.directions.size() == r;

  QVec bary = detail::alcove_barycenter(w);
  if (action.act(bary) != bary) throw error("barycenter is not fixed by the alcove symmetry");

  const int k = (int)fa.directions.size();
  if (k == 0) {
    fa.base_point = fa.anchor;
    return fa;
  }

  detail::RestrictionClasses rc = detail::restriction_classes(w, fa.directions);
  IMat gram = detail::invariant_gram(w.datum());

  // Pick independent classes to pin candidate points on integer levels.
  std::vector<int> indep;
  {
    QMat acc(k, 0);
    std::vector<QVec> rows;
    for (int c = 0; c < (int)rc.keys.size() && (int)indep.size() < k; ++c) {
      std::vector<QVec> trial = rows;
      trial.push_back(rc.keys[c]);
      QMat m((int)trial.size(), k);
      for (int i = 0; i < (int)trial.size(); ++i)
        for (int j = 0; j < k; ++j) m(i, j) = trial[i][j];
      if (rref(m, k) == (int)trial.size()) {
        rows = trial;
        indep.push_back(c);
      }
    }
    if ((int)indep.size() != k)
      throw error("relative root directions do not span the fixed subspace");
  }

  auto is_special = [&](const QVec& p) {
    for (size_t c = 0; c < rc.keys.size(); ++c) {
      bool hit = false;
      for (int rk : rc.members[c])
        if (w.datum().pairing(w.datum().pos_roots[rk].root, p).is_integer()) { hit = true; break; }
      if (!hit) return false;
    }
    return true;
  };

  // A candidate point is pinned by choosing, for each independent class, one
  // member root and one integer level of its hyperplane family.
  auto candidate = [&](const std::vector<int>& roots,
                       const std::vector<long long>& levels) -> std::optional<QVec> {
    QMat m(k, k);
    QVec b(k);
    for (int i = 0; i < k; ++i) {
      const IVec& root = w.datum().pos_roots[roots[i]].root;
      for (int j = 0; j < k; ++j) m(i, j) = w.datum().pairing(root, fa.directions[j]);
      b[i] = Rat(levels[i]) - w.datum().pairing(root, fa.anchor);
    }
    auto t = solve(m, b);
    if (!t) return std::nullopt;
    QVec p = fa.anchor;
    for (int j = 0; j < k; ++j) p = p + (*t)[j] * fa.directions[j];
    return p;
  };

  std::vector<std::vector<int>> root_choices{{}};
  for (int i = 0; i < k; ++i) {
    std::vector<std::vector<int>> next;
    for (const auto& base : root_choices)
      for (int rk : rc.members[indep[i]]) {
        auto ext = base;
        ext.push_back(rk);
        next.push_back(ext);
      }
    root_choices = std::move(next);
  }

  QVec best;
  bool have_best = false;
  Rat best_dist;
  long long first_hit = 0;
  for (long long radius = 2; radius <= 128; radius *= 2) {
    for (const auto& roots : root_choices) {
      std::vector<long long> center(k);
      for (int i = 0; i < k; ++i) {
        Rat v = w.datum().pairing(w.datum().pos_roots[roots[i]].root, bary);
        center[i] = v.num() / v.den();  // truncation is fine, the ring search widens
      }
      std::vector<long long> lv(k);
      std::vector<long long> idx(k, -radius);
      for (;;) {
        for (int i = 0; i < k; ++i) lv[i] = center[i] + idx[i];
        if (auto p = candidate(roots, lv)) {
          if (is_special(*p)) {
            Rat dist = detail::quad_form(gram, *p - bary, *p - bary);
            if (!have_best || dist < best_dist || (dist == best_dist && lex_less(*p, best))) {
              best = *p;
              best_dist = dist;
              if (!have_best) first_hit = radius;
              have_best = true;
            }
          }
        }
        int i = k - 1;
        while (i >= 0 && idx[i] == radius) idx[i--] = -radius;
        if (i < 0) break;
        ++idx[i];
      }
    }
    if (have_best && radius >= 2 * first_hit) break;  // confirming ring past the first hit
  }
  if (!have_best) throw error("no special point found on the fixed subspace");
  fa.base_point = best;
  return fa;
}

// An affine subspace in simple-coroot coordinates, reduced to a canonical form:
// direction rows in echelon form with primitive integer entries, and the base
// point cleared at the pivot columns.
struct CorootSubspace {
  QVec base;
  std::vector<QVec> dirs;
  bool whole_space = false;
};

inline CorootSubspace subspace_in_coroot_coords(const AffineWeyl& w, const FixedApartment& fa) {
  const RootDatum& d = w.datum();
  auto to_coroot = [&](const QVec& p) {
    // p = sum c_i alpha_i^vee with the coroots as rows of the Cartan matrix
    QMat m(d.rank, d.rank);
    for (int i = 0; i < d.rank; ++i)
      for (int j = 0; j < d.rank; ++j) m(i, j) = Rat(d.cartan(j, i));
    auto c = solve(m, p);
    if (!c) throw error("point is not in the coroot span");
    return *c;
  };

  CorootSubspace out;
  out.whole_space = fa.whole_space;
  out.base = to_coroot(fa.base_point);
  QMat dm((int)fa.directions.size(), d.rank);
  for (int i = 0; i < (int)fa.directions.size(); ++i) {
    QVec c = to_coroot(fa.directions[i]);
    for (int j = 0; j < d.rank; ++j) dm(i, j) = c[j];
  }
  rref(dm, d.rank);
  for (int i = 0; i < dm.rows; ++i) {
    QVec row(d.rank);
    bool nonzero = false;
    for (int j = 0; j < d.rank; ++j) {
      row[j] = dm(i, j);
      if (!row[j].is_zero()) nonzero = true;
    }
    if (!nonzero) continue;
    int pivot = 0;
    while (row[pivot].is_zero()) ++pivot;
    // clear the base point along this direction
    out.base = out.base - (out.base[pivot] / row[pivot]) * row;
    // scale to primitive integer coordinates
    long long l = 1;
    for (const auto& x : row) l = std::lcm(l, x.den());
    long long g = 0;
    for (const auto& x : row) g = std::gcd(g, std::llabs(x.num()) * (l / x.den()));
    Rat scale(l, g == 0 ? 1 : g);
    out.dirs.push_back(scale * row);
  }
  return out;
}

// The fixed subgroup with its relative generators, relative length table and
// distinguished special point.
struct FixedSubgroupData {
  Twist sigma;
  AffineAction action;
  FixedApartment apartment;
  std::vector<AffineElement> rel_gens;  // longest elements of the orbit parabolics
  std::vector<std::vector<int>> orbits; // sigma-orbits on the affine simple reflections
  std::vector<AffineElement> rel_omega; // sigma-fixed length-zero elements
  long long table_bound = 0;
  std::unordered_map<AffineElement, long long, AffineElementHash> rel_len;

  bool in_window(const AffineElement& x) const { return rel_len.count(x) != 0; }
  long long rel_length(const AffineElement& x) const {
    auto it = rel_len.find(x);
    if (it == rel_len.end()) throw error("element outside the relative window");
    return it->second;
  }
};

inline void extend_relative_window(const AffineWeyl& w, FixedSubgroupData& f, long long bound,
                                   size_t max_elements = 2000000) {
  if (bound <= f.table_bound && !f.rel_len.empty()) return;
  f.rel_len.clear();
  std::vector<AffineElement> shell = f.rel_omega;
  for (const auto& x : shell) f.rel_len[x] = 0;
  for (long long level = 0; level < bound; ++level) {
    std::vector<AffineElement> next;
    for (const auto& x : shell)
      for (const auto& g : f.rel_gens) {
        AffineElement y = w.mul(x, g);
        if (f.rel_len.emplace(y, level + 1).second) next.push_back(y);
        if (f.rel_len.size() > max_elements) throw error("relative window exceeded element cap");
      }
    shell = std::move(next);
  }
  f.table_bound = bound;
}

inline FixedSubgroupData build_fixed_subgroup(const AffineWeyl& w, const Twist& sigma,
                                              long long window_bound) {
  FixedSubgroupData f;
  f.sigma = sigma;
  f.action = sigma_affine_action(w, sigma);
  f.apartment = fixed_apartment(w, f.action);

  // sigma-orbits on the affine simple reflections.
  std::vector<bool> seen(w.simple_reflections().size(), false);
  for (int i = 0; i < (int)seen.size(); ++i) {
    if (seen[i]) continue;
    std::vector<int> orbit;
    int cur = i;
    while (!seen[cur]) {
      seen[cur] = true;
      orbit.push_back(cur);
      cur = sigma.simple_perm[cur];
    }
    std::sort(orbit.begin(), orbit.end());
    f.orbits.push_back(orbit);
  }

  for (const auto& orbit : f.orbits) {
    if (!detail::parabolic_is_finite(w, orbit))
      throw error("sigma-orbit generates an infinite parabolic subgroup");
    auto elems = detail::parabolic_elements(w, orbit);
    AffineElement longest = elems.front();
    long long best = 0;
    int max_count = 0;
    for (const auto& x : elems) {
      long long l = w.length(x);
      if (l > best) { best = l; longest = x; max_count = 1; }
      else if (l == best) ++max_count;
    }
    if (max_count != 1) throw error("longest element of an orbit parabolic is not unique");
    if (apply(w, sigma, longest) != longest)
      throw error("longest orbit element is not sigma-fixed");
    f.rel_gens.push_back(longest);
  }

  for (const auto& om : w.omega().rep)
    if (apply(w, sigma, om) == om) f.rel_omega.push_back(om);

  extend_relative_window(w, f, window_bound);
  for (const auto& [x, l] : f.rel_len)
    if (apply(w, sigma, x) != x) throw error("relative window contains a non-fixed element");
  return f;
}

// kappa for the relative group: the sigma-fixed length-zero element carrying
// the same absolute kappa.
inline AffineElement relative_kappa(const AffineWeyl& w, const FixedSubgroupData& f,
                                    const AffineElement& x) {
  for (const auto& om : f.rel_omega)
    if (w.kappa(om) == w.kappa(x)) return om;
  throw error("element has no relative length-zero part");
}

inline bool twists_commute(const AffineWeyl& w, const Twist& a, const Twist& b) {
  std::vector<AffineElement> gens = w.simple_reflections();
  for (const auto& om : w.omega().rep) gens.push_back(om);
  for (int i = 0; i < w.rank(); ++i) {
    IVec e(w.rank(), 0);
    e[i] = 1;
    gens.push_back(w.translation(w.datum().lattice.row(i)));
  }
  for (const auto& g : gens)
    if (apply(w, a, apply(w, b, g)) != apply(w, b, apply(w, a, g))) return false;
  return true;
}

// Relative Newton vector of a sigma-fixed element: the translation velocity of
// the iterated twisted product on the fixed subspace. Computed through the
// absolute translation power and cross-checked against the intrinsic route.
inline QVec relative_newton(const AffineWeyl& w, const FixedSubgroupData& f, const Twist& theta,
                            const AffineElement& x) {
  if (apply(w, f.sigma, x) != x) throw error("relative newton point needs a sigma-fixed element");
  if (!twists_commute(w, theta, f.sigma)) throw error("twists do not commute");

  TwistedPowers p = twisted_translation_power(w, theta, x);
  QVec nu(w.rank());
  for (int i = 0; i < w.rank(); ++i) nu[i] = Rat(p.lambda[i], p.n);

  // The n-fold product moves e by n*nu.
  const QVec& e = f.apartment.base_point;
  QVec moved = w.act_point(p.products[p.n - 1], e);
  if (moved != e + Rat(p.n) * nu) throw error("translation power does not shift e by n*nu");

  // Intrinsic route: the first power that acts on the fixed subspace as a pure
  // translation already has velocity nu.
  AffineElement prod = x, cur = x;
  for (int k = 1; k <= p.n; ++k) {
    if (k > 1) {
      cur = apply(w, theta, cur);
      prod = w.mul(prod, cur);
    }
    if (k % theta.order != 0) continue;
    bool translation_on_fix = true;
    QVec at_e = w.act_point(prod, e);
    QVec shift = at_e - e;
    for (const auto& d : f.apartment.directions)
      if (w.datum().w0.act(prod.w, d) != d) translation_on_fix = false;
    if (!f.apartment.contains(at_e)) translation_on_fix = false;
    if (translation_on_fix) {
      QVec intrinsic = Rat(1, k) * shift;
      if (intrinsic != nu) throw error("intrinsic relative newton point disagrees");
      break;
    }
  }
  return nu;
}

// Relative straightness over the relative length table.
inline bool relative_is_straight(const AffineWeyl& w, FixedSubgroupData& f, const Twist& theta,
                                 const AffineElement& x, size_t max_elements = 2000000) {
  TwistedPowers p = twisted_translation_power(w, theta, x);
  long long lx = f.rel_length(x);
  for (int k = 1; k <= p.n; ++k) {
    const AffineElement& prod = p.products[k - 1];
    while (!f.in_window(prod)) extend_relative_window(w, f, f.table_bound + 4, max_elements);
    if (f.rel_length(prod) != k * lx) return false;
  }
  return true;
}

namespace detail {

// Connectivity inside one relative length level by relative twisted conjugation
// with the relative generators and relative length-zero elements.
inline bool relative_connected(const AffineWeyl& w, FixedSubgroupData& f, const Twist& theta,
                               const AffineElement& x, const AffineElement& y) {
  if (f.rel_length(x) != f.rel_length(y)) return false;
  if (x == y) return true;
  long long level = f.rel_length(x);
  std::deque<AffineElement> queue{x};
  std::unordered_set<AffineElement, AffineElementHash> seen{x};
  std::vector<AffineElement> movers = f.rel_gens;
  for (const auto& om : f.rel_omega) movers.push_back(om);
  while (!queue.empty()) {
    AffineElement cur = queue.front();
    queue.pop_front();
    if (cur == y) return true;
    for (const auto& g : movers) {
      AffineElement z = twisted_conjugate(w, theta, g, cur);
      while (!f.in_window(z)) extend_relative_window(w, f, f.table_bound + 4);
      if (f.rel_length(z) == level && seen.insert(z).second) queue.push_back(z);
    }
  }
  return false;
}

}  // namespace detail

// Relative finite Weyl group: the stabilizer of e inside the relative window.
inline std::vector<AffineElement> relative_point_stabilizer(const AffineWeyl& w,
                                                            const FixedSubgroupData& f) {
  std::vector<AffineElement> stab;
  for (const auto& [x, l] : f.rel_len)
    if (w.act_point(x, f.apartment.base_point) == f.apartment.base_point) stab.push_back(x);
  std::sort(stab.begin(), stab.end(),
            [](const AffineElement& a, const AffineElement& b) { return lex_less(a, b); });
  for (const auto& a : stab)
    for (const auto& b : stab)
      if (std::find(stab.begin(), stab.end(), w.mul(a, b)) == stab.end())
        throw error("relative point stabilizer is not closed in the window");
  return stab;
}

// The representative of the W0rel-orbit of nu lying in the chamber of the
// inward direction at e: it maximizes the invariant pairing with that direction.
inline QVec relative_dominant(const AffineWeyl& w, const FixedSubgroupData& f,
                              const std::vector<AffineElement>& stabilizer, const QVec& nu) {
  IMat gram = detail::invariant_gram(w.datum());
  QVec inward = detail::alcove_barycenter(w) - f.apartment.base_point;
  QVec best = nu;
  bool have = false;
  Rat best_score;
  for (const auto& z : stabilizer) {
    QVec img = w.datum().w0.act(z.w, nu);
    Rat score = detail::quad_form(gram, img, inward);
    if (!have || best_score < score || (score == best_score && lex_less(img, best))) {
      best = img;
      best_score = score;
      have = true;
    }
  }
  return best;
}

// Prop-style window checks for the fixed subgroup: the relative window is
// exactly the sigma-fixed part of the absolute window, the relative length-zero
// group is the sigma-fixed part of Omega, and length additivity transfers.
inline VerificationReport verify_fixed_subgroup(const AffineWeyl& w, FixedSubgroupData& f,
                                                long long absolute_bound,
                                                size_t max_elements = 2000000) {
  VerificationReport rep;
  rep.check = "length-add";
  rep.bound = absolute_bound;

  extend_relative_window(w, f, absolute_bound, max_elements);

  // sigma-fixed absolute window elements all appear relatively ...
  long long fixed_count = 0;
  for (const auto& x : w.enumerate_by_length(absolute_bound, max_elements)) {
    if (apply(w, f.sigma, x) != x) continue;
    ++fixed_count;
    if (!f.in_window(x))
      rep.fail("sigma-fixed element missing from the relative window: " + w.normal_form(x));
    else if (w.kappa(x) == w.omega().ab.zero()) {
      // ... and affine ones through the generator subgroup alone
      AffineElement rel_zero = relative_kappa(w, f, x);
      if (rel_zero != w.identity())
        rep.fail("affine sigma-fixed element with nontrivial relative length-zero part: " +
                 w.normal_form(x));
    }
  }
  rep.elements = fixed_count;

  // ... and every relative window element is sigma-fixed with consistent absolute data.
  long long omega_fixed = 0;
  for (const auto& om : w.omega().rep)
    if (apply(w, f.sigma, om) == om) ++omega_fixed;
  if (omega_fixed != (long long)f.rel_omega.size())
    rep.fail("relative length-zero count mismatch");

  // Length additivity transfer on relative pairs.
  std::vector<AffineElement> window;
  for (const auto& [x, l] : f.rel_len)
    if (l * 2 <= f.table_bound) window.push_back(x);
  std::sort(window.begin(), window.end(),
            [](const AffineElement& a, const AffineElement& b) { return lex_less(a, b); });
  long long pairs = 0;
  for (const auto& x : window)
    for (const auto& y : window) {
      AffineElement xy = w.mul(x, y);
      if (!f.in_window(xy)) continue;
      if (f.rel_length(xy) == f.rel_length(x) + f.rel_length(y)) {
        ++pairs;
        if (w.length(xy) != w.length(x) + w.length(y))
          rep.fail("length additivity fails to transfer for " + w.normal_form(x) + " * " +
                   w.normal_form(y));
      }
    }
  rep.counts.push_back({"additive_pairs", pairs});
  rep.counts.push_back({"relative_window", (long long)f.rel_len.size()});
  return rep;
}

// Injectivity of the comparison map on straight classes: relatively straight
// elements are absolutely straight, and distinct relative classes keep distinct
// absolute invariants.
inline VerificationReport map_i_and_verify(const AffineWeyl& w, FixedSubgroupData& f,
                                           const Twist& theta, const GammaSubgroup& gamma,
                                           long long rel_bound, size_t max_elements = 2000000) {
  VerificationReport rep;
  rep.check = "inject";
  rep.bound = rel_bound;
  if (!twists_commute(w, theta, f.sigma)) throw error("twists do not commute");
  for (int gpos : gamma.members) {
    AffineElement tau = w.omega().rep[gpos];
    if (apply(w, f.sigma, tau) != tau)
      throw error("gamma is not contained in the relative length-zero subgroup");
  }

  extend_relative_window(w, f, rel_bound, max_elements);
  std::vector<std::pair<AffineElement, long long>> snapshot(f.rel_len.begin(), f.rel_len.end());
  std::vector<AffineElement> rel_straight;
  for (const auto& [x, l] : snapshot) {
    if (l > rel_bound) continue;
    if (relative_is_straight(w, f, theta, x, max_elements)) rel_straight.push_back(x);
  }
  std::sort(rel_straight.begin(), rel_straight.end(),
            [](const AffineElement& a, const AffineElement& b) { return lex_less(a, b); });
  rep.elements = (long long)rel_straight.size();

  // (a) relative straight implies absolutely straight
  for (const auto& x : rel_straight)
    if (!is_straight(w, theta, x))
      rep.fail("relatively straight but not absolutely straight: " + w.normal_form(x));

  // Group into relative classes by (relative kappa modulo (1-theta)Gamma,
  // relative dominant newton vector).
  auto stab = relative_point_stabilizer(w, f);
  std::map<int, int> gamma_coset;  // relative omega position -> canonical coset position
  {
    std::vector<int> rel_pos;
    for (const auto& om : f.rel_omega) rel_pos.push_back(w.omega().pos_of(w.kappa(om)));
    std::set<int> sub;  // (1 - theta) gamma inside the relative omega
    sub.insert(w.omega().pos_of(w.omega().ab.zero()));
    for (int gpos : gamma.members) {
      IVec diff = w.omega().ab.add(w.omega().coords[gpos],
                                   w.omega().ab.neg(w.omega().coords[theta.omega_perm[gpos]]));
      sub.insert(w.omega().pos_of(diff));
    }
    for (bool changed = true; changed;) {
      changed = false;
      std::vector<int> cur(sub.begin(), sub.end());
      for (int a : cur)
        for (int b : cur)
          if (sub.insert(w.omega().pos_of(w.omega().ab.add(w.omega().coords[a],
                                                           w.omega().coords[b]))).second)
            changed = true;
    }
    for (int p : rel_pos) {
      int canon = p;
      for (int s : sub) {
        int shifted = w.omega().pos_of(w.omega().ab.add(w.omega().coords[p], w.omega().coords[s]));
        canon = std::min(canon, shifted);
      }
      gamma_coset[p] = canon;
    }
  }

  struct RelKey {
    int kappa_coset;
    QVec nu;
    bool operator<(const RelKey& o) const {
      if (kappa_coset != o.kappa_coset) return kappa_coset < o.kappa_coset;
      return lex_less(nu, o.nu);
    }
  };
  std::map<RelKey, std::vector<AffineElement>> rel_classes;
  for (const auto& x : rel_straight) {
    QVec nu = relative_newton(w, f, theta, x);
    RelKey key{gamma_coset.at(w.omega().pos_of(w.kappa(x))),
               relative_dominant(w, f, stab, nu)};
    rel_classes[key].push_back(x);
  }
  rep.classes = (long long)rel_classes.size();

  // Cross-check the relative grouping by translated relative connectivity.
  for (auto& [key, members] : rel_classes) {
    const AffineElement& repm = members.front();
    for (size_t i = 1; i < members.size(); ++i) {
      bool connected = false;
      for (int gpos : gamma.members) {
        AffineElement tau = w.omega().rep[gpos];
        AffineElement shifted = twisted_conjugate(w, theta, tau, members[i]);
        if (f.rel_length(shifted) == f.rel_length(repm) &&
            detail::relative_connected(w, f, theta, repm, shifted)) {
          connected = true;
          break;
        }
      }
      if (!connected)
        rep.fail("relative class grouping not confirmed by connectivity: " +
                 w.normal_form(repm) + " vs " + w.normal_form(members[i]));
    }
  }

  // (b) distinct relative classes map to distinct absolute invariants.
  CoinvariantGroup cg = make_coinvariants(w, theta, gamma);
  std::map<std::pair<IVec, QVec>, RelKey> images;
  for (const auto& [key, members] : rel_classes) {
    ClassInvariant inv = pi(w, theta, cg, members.front());
    auto img = std::make_pair(inv.kottwitz, inv.newton);
    auto [it, fresh] = images.emplace(img, key);
    if (!fresh)
      rep.fail("two relative classes collide in the absolute invariants: " +
               w.normal_form(members.front()) + " vs " +
               w.normal_form(rel_classes.at(it->second).front()));
  }
  rep.counts.push_back({"relative_straight", (long long)rel_straight.size()});
  return rep;
}

}  // namespace affweyl
