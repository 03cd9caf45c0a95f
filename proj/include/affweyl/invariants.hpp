#pragma once

#include <string>
#include <vector>

#include "affweyl/twist.hpp"

namespace affweyl {

// Iterated twisted products x theta(x) ... theta^{k-1}(x) up to the first k at
// which the twist power is the identity and the product is a translation.
struct TwistedPowers {
  int n = 0;
  IVec lambda;                          // n-fold product is t^lambda
  std::vector<AffineElement> products;  // k-fold products, k = 1..n
};

inline TwistedPowers twisted_translation_power(const AffineWeyl& w, const Twist& t,
                                               const AffineElement& x) {
  TwistedPowers out;
  AffineElement prod = x, cur = x;
  const long long cap = (long long)t.order * w.datum().w0.size();
  for (int k = 1; k <= cap; ++k) {
    out.products.push_back(prod);
    if (k % t.order == 0 && w.is_translation(prod)) {
      out.n = k;
      out.lambda = w.lam_vec(prod);
      return out;
    }
    cur = apply(w, t, cur);
    prod = w.mul(prod, cur);
  }
  throw error("no translation power found within order * |W0| steps");
}

// nu_{x,theta} = lambda / n.
inline QVec newton_point(const AffineWeyl& w, const Twist& t, const AffineElement& x) {
  TwistedPowers p = twisted_translation_power(w, t, x);
  QVec nu(w.rank());
  for (int i = 0; i < w.rank(); ++i) nu[i] = Rat(p.lambda[i], p.n);
  return nu;
}

inline QVec dominant_newton(const AffineWeyl& w, const Twist& t, const AffineElement& x) {
  return dominant_representative(w.datum(), newton_point(w, t, x)).first;
}

// Omega_{theta,Gamma} = Omega / (1 - theta) Gamma with Smith-canonical coordinates.
struct CoinvariantGroup {
  FinAbGroup ab;  // quotient of the Omega coordinate space
};

inline CoinvariantGroup make_coinvariants(const AffineWeyl& w, const Twist& t,
                                          const GammaSubgroup& gamma) {
  const OmegaGroup& om = w.omega();
  const int n = om.ab.n;
  IMat rel(n + gamma.size(), n);
  for (int i = 0; i < n; ++i) rel(i, i) = om.ab.moduli[i];
  for (int k = 0; k < gamma.size(); ++k) {
    int pos = gamma.members[k];
    IVec diff = om.ab.add(om.coords[pos], om.ab.neg(om.coords[t.omega_perm[pos]]));
    for (int j = 0; j < n; ++j) rel(n + k, j) = diff[j];
  }
  CoinvariantGroup cg;
  cg.ab = FinAbGroup::quotient(n, rel);
  return cg;
}

inline IVec kottwitz(const AffineWeyl& w, const Twist& t, const CoinvariantGroup& cg,
                     const AffineElement& x) {
  (void)t;
  return cg.ab.coords(w.kappa(x));
}

struct ClassInvariant {
  IVec kottwitz;
  QVec newton;  // dominant

  friend bool operator==(const ClassInvariant& a, const ClassInvariant& b) {
    return a.kottwitz == b.kottwitz && a.newton == b.newton;
  }
  friend bool operator!=(const ClassInvariant& a, const ClassInvariant& b) { return !(a == b); }
  friend bool operator<(const ClassInvariant& a, const ClassInvariant& b) {
    if (a.newton != b.newton) return lex_less(a.newton, b.newton);
    return a.kottwitz < b.kottwitz;
  }
  std::string str() const {
    std::string s = "kappa=(";
    for (size_t i = 0; i < kottwitz.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(kottwitz[i]);
    }
    s += ") nu=" + affweyl::str(newton);
    return s;
  }
};

inline ClassInvariant pi(const AffineWeyl& w, const Twist& t, const CoinvariantGroup& cg,
                         const AffineElement& x) {
  return {kottwitz(w, t, cg, x), dominant_newton(w, t, x)};
}

}  // namespace affweyl
