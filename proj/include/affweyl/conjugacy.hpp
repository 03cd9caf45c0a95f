#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "affweyl/invariants.hpp"

namespace affweyl {

// theta-straightness: with n minimal such that theta^n = 1 and the n-fold twisted
// product is a translation, equality l(prod_k) = k*l(x) at k <= n forces it for
// all k (the mn-fold product is t^{m lambda}, and mixed mn+r cases are squeezed
// between the subadditive bounds).
inline bool is_straight(const AffineWeyl& w, const Twist& t, const AffineElement& x) {
  TwistedPowers p = twisted_translation_power(w, t, x);
  long long lx = w.length(x);
  for (int k = 1; k <= p.n; ++k)
    if (w.length(p.products[k - 1]) != k * lx) return false;
  return true;
}

struct ReductionStep {
  AffineElement source;
  int s = -1;  // index into the affine simple reflections
  AffineElement target;
  long long length_delta = 0;  // -2 or 0
};

// All steps x -> s x theta(s) that do not increase length.
inline std::vector<ReductionStep> reduction_neighbors(const AffineWeyl& w, const Twist& t,
                                                      const AffineElement& x) {
  std::vector<ReductionStep> out;
  const auto& simples = w.simple_reflections();
  long long lx = w.length(x);
  for (int i = 0; i < (int)simples.size(); ++i) {
    AffineElement y = w.mul(w.mul(simples[i], x), simples[t.simple_perm[i]]);
    long long ly = w.length(y);
    if (ly <= lx) out.push_back({x, i, y, ly - lx});
  }
  return out;
}

namespace detail {

// Breadth-first closure of one length level under length-preserving steps,
// with parent links and all strictly decreasing exits.
struct LevelScan {
  std::vector<AffineElement> component;  // in BFS order
  std::unordered_map<AffineElement, std::pair<AffineElement, int>, AffineElementHash> parent;
  std::vector<ReductionStep> down;
};

inline LevelScan scan_level(const AffineWeyl& w, const Twist& t, const AffineElement& start) {
  LevelScan scan;
  long long level = w.length(start);
  std::deque<AffineElement> queue{start};
  std::unordered_set<AffineElement, AffineElementHash> seen{start};
  const auto& simples = w.simple_reflections();
  while (!queue.empty()) {
    AffineElement x = queue.front();
    queue.pop_front();
    scan.component.push_back(x);
    for (int i = 0; i < (int)simples.size(); ++i) {
      AffineElement y = w.mul(w.mul(simples[i], x), simples[t.simple_perm[i]]);
      long long ly = w.length(y);
      if (ly == level) {
        if (seen.insert(y).second) {
          scan.parent.emplace(y, std::make_pair(x, i));
          queue.push_back(y);
        }
      } else if (ly < level) {
        scan.down.push_back({x, i, y, ly - level});
      }
    }
  }
  return scan;
}

inline std::vector<ReductionStep> chain_to(const AffineWeyl& w, const Twist& t,
                                           const LevelScan& scan, const AffineElement& dst) {
  (void)w;
  (void)t;
  std::vector<ReductionStep> chain;
  AffineElement cur = dst;
  while (scan.parent.count(cur)) {
    auto [pred, s] = scan.parent.at(cur);
    chain.push_back({pred, s, cur, 0});
    cur = pred;
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

}  // namespace detail

struct DescentResult {
  AffineElement minimal;
  std::vector<ReductionStep> chain;  // witness from the input to the minimal element
};

// Walks down until no strictly decreasing step is reachable through
// length-preserving steps; among the minimal elements reached, returns the
// lexicographically smallest normal form.
inline DescentResult descend_to_min(const AffineWeyl& w, const Twist& t, const AffineElement& x0) {
  DescentResult res;
  AffineElement cur = x0;
  for (;;) {
    detail::LevelScan scan = detail::scan_level(w, t, cur);
    if (scan.down.empty()) {
      AffineElement best = scan.component.front();
      for (const auto& z : scan.component)
        if (lex_less(z, best)) best = z;
      auto tail = detail::chain_to(w, t, scan, best);
      res.chain.insert(res.chain.end(), tail.begin(), tail.end());
      res.minimal = best;
      return res;
    }
    const ReductionStep* pick = &scan.down.front();
    for (const auto& st : scan.down)
      if (lex_less(st.target, pick->target)) pick = &st;
    auto tail = detail::chain_to(w, t, scan, pick->source);
    res.chain.insert(res.chain.end(), tail.begin(), tail.end());
    res.chain.push_back(*pick);
    cur = pick->target;
  }
}

// Connectivity by length-preserving steps; both lengths must agree.
inline bool approx_connected(const AffineWeyl& w, const Twist& t, const AffineElement& x,
                             const AffineElement& y) {
  if (w.length(x) != w.length(y)) throw error("approx_connected requires equal lengths");
  if (x == y) return true;
  detail::LevelScan scan = detail::scan_level(w, t, x);
  return std::find(scan.component.begin(), scan.component.end(), y) != scan.component.end();
}

namespace detail {

// W_J is finite iff J misses at least one node of each irreducible affine factor.
inline bool parabolic_is_finite(const AffineWeyl& w, const std::vector<int>& j_set) {
  const auto& factors = w.datum().factors;
  for (size_t f = 0; f < factors.size(); ++f) {
    int total = factors[f].second - factors[f].first + 1;  // finite nodes + affine node
    int have = 0;
    for (int s : j_set) {
      bool in_factor = s < w.rank() ? (s >= factors[f].first && s < factors[f].second)
                                    : (s - w.rank() == (int)f);
      if (in_factor) ++have;
    }
    if (have == total) return false;
  }
  return true;
}

inline std::vector<AffineElement> parabolic_elements(const AffineWeyl& w,
                                                     const std::vector<int>& j_set,
                                                     size_t cap = 200000) {
  std::vector<AffineElement> elems{w.identity()};
  std::unordered_set<AffineElement, AffineElementHash> seen{w.identity()};
  const auto& simples = w.simple_reflections();
  for (size_t head = 0; head < elems.size(); ++head)
    for (int s : j_set) {
      AffineElement y = w.mul(elems[head], simples[s]);
      if (seen.insert(y).second) {
        elems.push_back(y);
        if (elems.size() > cap) throw error("parabolic subgroup closure overflow");
      }
    }
  return elems;
}

}  // namespace detail

struct MinDecomposition {
  std::vector<int> j_set;  // subset of the affine simple reflections, sorted
  AffineElement x;         // straight, minimal in its double coset, x theta(J) x^{-1} = J
  AffineElement u;         // element of W_J with u*x of minimal length, w ->_theta u*x
  std::vector<ReductionStep> chain;
};

inline MinDecomposition min_decomposition(const AffineWeyl& w, const Twist& t,
                                          const AffineElement& w_in) {
  DescentResult desc = descend_to_min(w, t, w_in);
  detail::LevelScan scan = detail::scan_level(w, t, desc.minimal);
  std::vector<AffineElement> candidates = scan.component;
  std::sort(candidates.begin(), candidates.end(),
            [](const AffineElement& a, const AffineElement& b) { return lex_less(a, b); });

  const auto& simples = w.simple_reflections();
  const int num_s = (int)simples.size();
  std::vector<std::vector<int>> subsets;
  for (int mask = 0; mask < (1 << num_s); ++mask) {
    std::vector<int> j;
    for (int i = 0; i < num_s; ++i)
      if (mask >> i & 1) j.push_back(i);
    if (detail::parabolic_is_finite(w, j)) subsets.push_back(j);
  }
  std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });

  std::map<std::vector<int>, std::vector<AffineElement>> parabolic_cache;
  for (const auto& z : candidates) {
    for (const auto& j : subsets) {
      std::vector<int> tj;
      for (int s : j) tj.push_back(t.simple_perm[s]);
      std::sort(tj.begin(), tj.end());

      // Minimal representative of W_J z W_{theta(J)} by greedy one-sided descents.
      AffineElement x = z;
      for (bool moved = true; moved;) {
        moved = false;
        for (int s : j)
          if (w.length(w.mul(simples[s], x)) < w.length(x)) {
            x = w.mul(simples[s], x);
            moved = true;
          }
        for (int s : tj)
          if (w.length(w.mul(x, simples[s])) < w.length(x)) {
            x = w.mul(x, simples[s]);
            moved = true;
          }
      }

      AffineElement u = w.mul(z, w.inv(x));
      auto& wj = parabolic_cache[j];
      if (wj.empty()) wj = detail::parabolic_elements(w, j);
      if (std::find(wj.begin(), wj.end(), u) == wj.end()) continue;

      bool stable = true;
      for (int s : j) {
        AffineElement img = w.mul(w.mul(x, simples[t.simple_perm[s]]), w.inv(x));
        bool found = false;
        for (int s2 : j)
          if (img == simples[s2]) { found = true; break; }
        if (!found) { stable = false; break; }
      }
      if (!stable) continue;
      if (!is_straight(w, t, x)) continue;

      MinDecomposition out;
      out.j_set = j;
      out.x = x;
      out.u = u;
      out.chain = desc.chain;
      auto tail = detail::chain_to(w, t, scan, z);
      out.chain.insert(out.chain.end(), tail.begin(), tail.end());
      return out;
    }
  }
  throw error("no minimal decomposition found for " + w.normal_form(w_in) +
              " (this contradicts the minimal-length structure theorem)");
}

struct StraightClassRecord {
  AffineElement representative;  // lex-smallest minimal-length member in window
  ClassInvariant invariant;
  std::vector<AffineElement> straight_members;  // window members, lex sorted
  int component_id = -1;
};

struct StraightClasses {
  std::vector<StraightClassRecord> records;       // sorted by invariant
  std::vector<std::string> violations;            // connectivity cross-check failures
  long long window_elements = 0;
  long long straight_elements = 0;
};

// Partitions the straight window elements into W(Gamma)-twisted classes, keyed by
// the class invariant and cross-checked by Gamma-translated connectivity.
inline StraightClasses straight_classes_in_window(const AffineWeyl& w, const Twist& t,
                                                  const GammaSubgroup& gamma, long long bound,
                                                  size_t max_elements = 2000000) {
  CoinvariantGroup cg = make_coinvariants(w, t, gamma);
  StraightClasses out;
  std::map<ClassInvariant, std::vector<AffineElement>> groups;
  auto window = w.enumerate_by_length(bound, max_elements);
  out.window_elements = (long long)window.size();
  for (const auto& x : window) {
    if (!is_straight(w, t, x)) continue;
    ++out.straight_elements;
    groups[pi(w, t, cg, x)].push_back(x);
  }
  int id = 0;
  for (auto& [inv, members] : groups) {
    std::sort(members.begin(), members.end(),
              [](const AffineElement& a, const AffineElement& b) { return lex_less(a, b); });
    StraightClassRecord rec;
    rec.invariant = inv;
    rec.representative = members.front();
    rec.straight_members = members;
    rec.component_id = id++;
    for (const auto& y : members) {
      if (y == rec.representative) continue;
      bool connected = false;
      for (int gpos : gamma.members) {
        AffineElement tau = w.omega().rep[gpos];
        AffineElement y2 = twisted_conjugate(w, t, tau, y);
        if (w.length(y2) == w.length(rec.representative) &&
            approx_connected(w, t, rec.representative, y2)) {
          connected = true;
          break;
        }
      }
      if (!connected)
        out.violations.push_back("equal invariant but no Gamma-translated connection: " +
                                 w.normal_form(rec.representative) + " vs " + w.normal_form(y));
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

}  // namespace affweyl
