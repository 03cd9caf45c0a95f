#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "affweyl/fin_ab_group.hpp"
#include "affweyl/root_datum.hpp"

namespace affweyl {

// An element t^lambda * w in normal form: lambda in cocharacter (coweight-basis)
// coordinates, w an index into the finite Weyl table.
struct AffineElement {
  std::array<long long, kMaxRank> lam{};
  int32_t w = 0;

  friend bool operator==(const AffineElement& a, const AffineElement& b) {
    return a.w == b.w && a.lam == b.lam;
  }
  friend bool operator!=(const AffineElement& a, const AffineElement& b) { return !(a == b); }
};

struct AffineElementHash {
  size_t operator()(const AffineElement& x) const {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&](uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    for (auto c : x.lam) mix((uint64_t)c);
    mix((uint64_t)x.w);
    return (size_t)h;
  }
};

// Normal-form order: translation coordinates lexicographically, then table index.
inline bool lex_less(const AffineElement& a, const AffineElement& b) {
  if (a.lam != b.lam) return a.lam < b.lam;
  return a.w < b.w;
}

struct OmegaGroup {
  FinAbGroup ab;                    // Y / Z*Phi^vee in lattice-basis coordinates
  std::vector<IVec> coords;         // canonical coordinates, lex sorted
  std::vector<AffineElement> rep;   // length-zero representative, same order
  std::map<IVec, int> position;

  int size() const { return (int)coords.size(); }
  int pos_of(const IVec& c) const {
    auto it = position.find(c);
    if (it == position.end()) throw error("not a valid Omega coordinate vector");
    return it->second;
  }
};

class AffineWeyl {
 public:
  explicit AffineWeyl(RootDatum datum) : d_(std::move(datum)) {
    if (d_.rank > kMaxRank) throw error("rank too large");
    build_simple_reflections();
    build_omega();
  }

  const RootDatum& datum() const { return d_; }
  int rank() const { return d_.rank; }

  AffineElement identity() const { return AffineElement{}; }

  AffineElement make(const IVec& lam, int w) const {
    if (!d_.in_lattice(lam)) throw error("translation part not in lattice");
    AffineElement x;
    for (int i = 0; i < d_.rank; ++i) x.lam[i] = lam[i];
    x.w = w;
    return x;
  }
  AffineElement translation(const IVec& lam) const { return make(lam, 0); }

  IVec lam_vec(const AffineElement& x) const {
    return IVec(x.lam.begin(), x.lam.begin() + d_.rank);
  }

  // (t^l w)(t^m u) = t^{l + w(m)} (wu)
  AffineElement mul(const AffineElement& x, const AffineElement& y) const {
    AffineElement z;
    IVec wm = d_.w0.act(x.w, lam_vec(y));
    for (int i = 0; i < d_.rank; ++i) z.lam[i] = x.lam[i] + wm[i];
    z.w = d_.w0.mul(x.w, y.w);
    return z;
  }
  AffineElement mul(const AffineElement& x, const AffineElement& y, const AffineElement& z) const {
    return mul(mul(x, y), z);
  }
  AffineElement inv(const AffineElement& x) const {
    AffineElement z;
    int wi = d_.w0.inv[x.w];
    IVec m = d_.w0.act(wi, lam_vec(x));
    for (int i = 0; i < d_.rank; ++i) z.lam[i] = -m[i];
    z.w = wi;
    return z;
  }

  bool is_translation(const AffineElement& x) const { return x.w == 0; }

  // Iwahori-Matsumoto length.
  long long length(const AffineElement& x) const {
    long long total = 0;
    uint64_t mask = d_.w0.neg_mask[x.w];
    for (int k = 0; k < d_.num_positive(); ++k) {
      __int128 p = 0;
      const IVec& root = d_.pos_roots[k].root;
      for (int i = 0; i < d_.rank; ++i) p += (__int128)root[i] * x.lam[i];
      long long pv = detail::checked_narrow(p);
      if (mask >> k & 1) pv -= 1;
      total += pv < 0 ? -pv : pv;
    }
    return total;
  }

  // Affine action on the apartment: v -> w(v) + lambda.
  QVec act_point(const AffineElement& x, const QVec& v) const {
    QVec r = d_.w0.act(x.w, v);
    for (int i = 0; i < d_.rank; ++i) r[i] += Rat(x.lam[i]);
    return r;
  }

  const std::vector<AffineElement>& simple_reflections() const { return simples_; }
  const std::vector<std::string>& simple_names() const { return simple_names_; }
  int num_finite_simples() const { return d_.rank; }

  const OmegaGroup& omega() const { return omega_; }

  // kappa: class of the translation part in Y / Z*Phi^vee, canonical coordinates.
  IVec kappa(const AffineElement& x) const {
    return omega_.ab.coords(d_.lattice_coords(lam_vec(x)));
  }

  // All elements of length <= bound, ordered by (length, normal form).
  std::vector<AffineElement> enumerate_by_length(long long bound, size_t max_elements = 2000000) const {
    std::vector<AffineElement> out;
    std::unordered_set<AffineElement, AffineElementHash> seen;
    std::vector<AffineElement> shell = omega_.rep;
    std::sort(shell.begin(), shell.end(), [](const AffineElement& a, const AffineElement& b) { return lex_less(a, b); });
    for (auto& x : shell) seen.insert(x);
    for (long long level = 0; level <= bound; ++level) {
      out.insert(out.end(), shell.begin(), shell.end());
      if (out.size() > max_elements) throw error("enumeration exceeded element cap");
      if (level == bound) break;
      std::vector<AffineElement> next;
      for (const auto& x : shell)
        for (const auto& s : simples_) {
          AffineElement y = mul(x, s);
          if (seen.count(y)) continue;
          if (length(y) == level + 1) {
            seen.insert(y);
            next.push_back(y);
          }
        }
      std::sort(next.begin(), next.end(), [](const AffineElement& a, const AffineElement& b) { return lex_less(a, b); });
      shell = std::move(next);
    }
    return out;
  }

  std::string normal_form(const AffineElement& x) const {
    std::string s;
    IVec l = lam_vec(x);
    if (!affweyl::is_zero(l)) {
      s = "t^(";
      for (int i = 0; i < d_.rank; ++i) {
        if (i) s += ",";
        s += std::to_string(l[i]);
      }
      s += ")";
    }
    if (x.w != 0) {
      for (int g : d_.w0.word[x.w]) {
        if (!s.empty()) s += " ";
        s += "s" + std::to_string(g + 1);
      }
    }
    return s.empty() ? "1" : s;
  }

 private:
  RootDatum d_;
  std::vector<AffineElement> simples_;      // finite s_1..s_r, then one affine node per factor
  std::vector<std::string> simple_names_;
  OmegaGroup omega_;

  void build_simple_reflections() {
    for (int i = 0; i < d_.rank; ++i) {
      AffineElement s;
      s.w = d_.w0.simple[i];
      simples_.push_back(s);
      simple_names_.push_back("s" + std::to_string(i + 1));
    }
    for (size_t f = 0; f < d_.factors.size(); ++f) {
      const PosRoot& theta = d_.pos_roots[d_.highest[f]];
      IMat m = IMat::identity(d_.rank);
      for (int a = 0; a < d_.rank; ++a)
        for (int b = 0; b < d_.rank; ++b)
          m(a, b) -= theta.coroot[a] * theta.root[b];
      AffineElement s0;
      s0.w = d_.w0.index_of(m);
      for (int i = 0; i < d_.rank; ++i) s0.lam[i] = theta.coroot[i];
      simples_.push_back(s0);
      simple_names_.push_back(d_.factors.size() == 1 ? "s0" : "s0_" + std::to_string(f + 1));
    }
  }

  void build_omega() {
    IMat rel(d_.rank, d_.rank);
    for (int i = 0; i < d_.rank; ++i) {
      IVec c = d_.lattice_coords(d_.cartan.row(i));
      for (int j = 0; j < d_.rank; ++j) rel(i, j) = c[j];
    }
    omega_.ab = FinAbGroup::quotient(d_.rank, rel);

    // Length-zero elements: for each w, the translation part is pinned on the
    // simple-root pairings; keep those that land in Y with total length zero.
    std::map<IVec, AffineElement> found;
    for (int w = 0; w < d_.w0.size(); ++w) {
      AffineElement x;
      x.w = w;
      for (int i = 0; i < d_.rank; ++i) {
        IVec e(d_.rank, 0);
        e[i] = 1;
        int k = d_.pos_index.at(e);
        x.lam[i] = d_.w0.neg_mask[w] >> k & 1;
      }
      if (!d_.in_lattice(lam_vec(x))) continue;
      if (length(x) != 0) continue;
      found[kappa_raw(x)] = x;
    }
    if ((long long)found.size() != omega_.ab.order())
      throw error("length-zero element count does not match |Y / coroot lattice|");
    for (auto& [c, x] : found) {
      omega_.position[c] = (int)omega_.coords.size();
      omega_.coords.push_back(c);
      omega_.rep.push_back(x);
    }
  }

  IVec kappa_raw(const AffineElement& x) const {
    return omega_.ab.coords(d_.lattice_coords(lam_vec(x)));
  }
};

}  // namespace affweyl
