#pragma once

#include <vector>

#include "affweyl/intlinalg.hpp"

namespace affweyl {

// A finite abelian group presented as Z^n / rowspan(relations), with canonical
// coordinates read off the Smith normal form. Two classes are equal iff their
// canonical coordinate vectors are equal.
struct FinAbGroup {
  int n = 0;
  IVec moduli;  // invariant factors, length n, each >= 1
  IMat v;       // column transform from the Smith normal form

  static FinAbGroup quotient(int n, const IMat& relations) {
    if (relations.cols != n) throw error("relation matrix has wrong width");
    Smith s = smith_normal_form(relations);
    FinAbGroup g;
    g.n = n;
    g.v = s.v;
    g.moduli.assign(n, 0);
    for (int i = 0; i < n; ++i) g.moduli[i] = i < relations.rows ? s.d(i, i) : 0;
    for (long long m : g.moduli)
      if (m <= 0) throw error("quotient is not finite");
    return g;
  }

  IVec coords(const IVec& x) const { return reduce(vec_mat(x, v)); }

  // Normalizes a vector already expressed in canonical coordinates.
  IVec reduce(const IVec& c) const {
    IVec w = c;
    for (int i = 0; i < n; ++i) {
      w[i] %= moduli[i];
      if (w[i] < 0) w[i] += moduli[i];
    }
    return w;
  }

  IVec add(const IVec& a, const IVec& b) const {
    IVec r(n);
    for (int i = 0; i < n; ++i) r[i] = (a[i] + b[i]) % moduli[i];
    return r;
  }
  IVec neg(const IVec& a) const {
    IVec r(n);
    for (int i = 0; i < n; ++i) r[i] = (moduli[i] - a[i]) % moduli[i];
    return r;
  }
  IVec zero() const { return IVec(n, 0); }

  long long order() const {
    long long o = 1;
    for (long long m : moduli) o = detail::checked_narrow((__int128)o * m);
    return o;
  }

  // All canonical coordinate vectors, lexicographically sorted.
  std::vector<IVec> elements() const {
    std::vector<IVec> out;
    IVec cur(n, 0);
    for (;;) {
      out.push_back(cur);
      int i = n - 1;
      while (i >= 0) {
        if (++cur[i] < moduli[i]) break;
        cur[i] = 0;
        --i;
      }
      if (i < 0) break;
    }
    return out;
  }

  // Invariant factors > 1, i.e. the visible part of the presentation.
  IVec nontrivial_factors() const {
    IVec out;
    for (long long m : moduli)
      if (m > 1) out.push_back(m);
    return out;
  }
};

}  // namespace affweyl
