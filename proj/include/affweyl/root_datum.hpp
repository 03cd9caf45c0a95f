#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "affweyl/intlinalg.hpp"
#include "affweyl/rational.hpp"

namespace affweyl {

// Realization: the cocharacter space carries coordinates in the basis of fundamental
// coweights, the character space in the basis of simple roots. The pairing of a
// character c against a cocharacter v is then the plain dot product, the simple root
// alpha_i is the i-th unit vector, and the simple coroot alpha_i^vee is the i-th row
// of the Cartan matrix. Every lattice between Z*Phi^vee and the full coweight lattice
// consists of integer vectors.

constexpr int kMaxRank = 4;

struct PosRoot {
  IVec root;    // character coordinates
  IVec coroot;  // cocharacter coordinates
  int factor = 0;
};

// The finite Weyl group, tabulated: matrices of the cocharacter action, canonical
// reduced words, lengths, inverses, inversion masks and a multiplication table.
struct FiniteWeylGroup {
  int rank = 0;
  std::vector<IMat> mat;
  std::vector<std::vector<int>> word;  // lex-smallest reduced word
  std::vector<int> len;
  std::vector<int> inv;
  std::vector<uint64_t> neg_mask;  // bit k: w^{-1}(alpha_k) < 0, over positive roots
  std::vector<int> simple;         // index of s_i in the table
  std::vector<int32_t> mult_tab;
  std::map<std::vector<long long>, int> index;  // matrix data -> table position

  int size() const { return (int)mat.size(); }
  int index_of(const IMat& m) const {
    auto it = index.find(m.a);
    if (it == index.end()) throw error("matrix does not normalize the finite Weyl group");
    return it->second;
  }
  int mul(int x, int y) const { return mult_tab[(size_t)x * size() + y]; }
  IVec act(int w, const IVec& v) const { return mat_vec(mat[w], v); }
  QVec act(int w, const QVec& v) const {
    QVec r(rank);
    const IMat& m = mat[w];
    for (int i = 0; i < rank; ++i) {
      Rat s;
      for (int j = 0; j < rank; ++j) s += Rat(m(i, j)) * v[j];
      r[i] = s;
    }
    return r;
  }
  // Character-side action: <w(c), w(v)> = <c, v>.
  IVec act_char(int w, const IVec& c) const { return mat_vec(transpose(mat[inv[w]]), c); }
};

struct RootDatum {
  std::string type_label;
  std::string lattice_label;
  int rank = 0;
  IMat cartan;                             // C(i,j) = <alpha_i^vee, alpha_j>
  std::vector<std::pair<int, int>> factors;  // node ranges [begin,end) per irreducible factor
  std::vector<PosRoot> pos_roots;
  std::vector<int> highest;  // index into pos_roots, per factor
  IMat lattice;              // rows = basis of Y in cocharacter coordinates
  FiniteWeylGroup w0;

  std::map<IVec, int> pos_index;

  int num_positive() const { return (int)pos_roots.size(); }

  bool in_lattice(const IVec& v) const { return solve_row(lattice, v).has_value(); }

  // Lattice-basis coordinates of v; caller guarantees membership.
  IVec lattice_coords(const IVec& v) const {
    auto x = solve_row(lattice, v);
    if (!x) throw error("vector not in translation lattice");
    return *x;
  }

  // Sign of a root given by character coordinates: +1 positive, -1 negative.
  int root_sign(const IVec& c) const {
    if (pos_index.count(c)) return 1;
    if (pos_index.count(negate(c))) return -1;
    throw error("not a root");
  }

  long long pairing(const IVec& character, const IVec& cocharacter) const {
    return dot(character, cocharacter);
  }
  Rat pairing(const IVec& character, const QVec& cocharacter) const {
    Rat s;
    for (size_t i = 0; i < character.size(); ++i) s += Rat(character[i]) * cocharacter[i];
    return s;
  }
};

namespace detail {

struct Family {
  char family;
  int rank;
};

inline std::vector<Family> parse_type_label(const std::string& label) {
  std::vector<Family> out;
  size_t i = 0;
  while (i < label.size()) {
    char f = label[i++];
    if (f < 'A' || f > 'G') throw error("unsupported type label: " + label);
    if (i >= label.size() || !isdigit(label[i])) throw error("missing rank in type label: " + label);
    int r = label[i++] - '0';
    out.push_back({f, r});
    if (i < label.size()) {
      if (label[i] != 'x') throw error("bad type label separator in: " + label);
      ++i;
    }
  }
  if (out.empty()) throw error("empty type label");
  return out;
}

inline IMat cartan_block(char family, int r) {
  auto chain = [&](IMat& c) {
    for (int i = 0; i + 1 < r; ++i) c(i, i + 1) = c(i + 1, i) = -1;
  };
  IMat c(r, r);
  for (int i = 0; i < r; ++i) c(i, i) = 2;
  switch (family) {
    case 'A':
      if (r < 1 || r > 4) throw error("type A rank out of range");
      chain(c);
      return c;
    case 'B':
      if (r < 2 || r > 4) throw error("type B rank out of range");
      chain(c);
      c(r - 1, r - 2) = -2;  // last node short
      return c;
    case 'C':
      if (r < 2 || r > 4) throw error("type C rank out of range");
      chain(c);
      c(r - 2, r - 1) = -2;  // last node long
      return c;
    case 'D':
      if (r != 4) throw error("type D supported only at rank 4");
      c(0, 1) = c(1, 0) = -1;
      c(1, 2) = c(2, 1) = -1;
      c(1, 3) = c(3, 1) = -1;
      return c;
    case 'G':
      if (r != 2) throw error("type G has rank 2");
      c(0, 1) = -3;  // node 0 short, node 1 long
      c(1, 0) = -1;
      return c;
    case 'F':
      if (r != 4) throw error("type F has rank 4");
      chain(c);
      c(2, 1) = -2;  // nodes 0,1 long; 2,3 short
      return c;
    default:
      throw error("unsupported family");
  }
}

inline long long classified_w0_order(char family, int r) {
  auto fact = [](int n) { long long f = 1; for (int i = 2; i <= n; ++i) f *= i; return f; };
  switch (family) {
    case 'A': return fact(r + 1);
    case 'B':
    case 'C': return fact(r) << r;
    case 'D': return fact(r) << (r - 1);
    case 'G': return 12;
    case 'F': return 1152;
    default: throw error("unsupported family");
  }
}

inline long long classified_num_positive(char family, int r) {
  switch (family) {
    case 'A': return (long long)r * (r + 1) / 2;
    case 'B':
    case 'C': return (long long)r * r;
    case 'D': return (long long)r * (r - 1);
    case 'G': return 6;
    case 'F': return 24;
    default: throw error("unsupported family");
  }
}

}  // namespace detail

inline RootDatum build_root_datum(const std::string& type_label, const std::string& lattice_choice,
                                  const IMat* explicit_basis = nullptr) {
  RootDatum d;
  d.type_label = type_label;
  auto fams = detail::parse_type_label(type_label);

  int r = 0;
  for (auto& f : fams) r += f.rank;
  if (r > kMaxRank) throw error("total rank exceeds " + std::to_string(kMaxRank));
  d.rank = r;
  d.cartan = IMat(r, r);
  long long expect_w0 = 1, expect_pos = 0;
  int at = 0;
  for (auto& f : fams) {
    IMat blk = detail::cartan_block(f.family, f.rank);
    for (int i = 0; i < f.rank; ++i)
      for (int j = 0; j < f.rank; ++j) d.cartan(at + i, at + j) = blk(i, j);
    d.factors.push_back({at, at + f.rank});
    expect_w0 *= detail::classified_w0_order(f.family, f.rank);
    expect_pos += detail::classified_num_positive(f.family, f.rank);
    at += f.rank;
  }

  // Translation lattice.
  if (lattice_choice == "simply_connected") {
    d.lattice = d.cartan;  // rows are the simple coroots
  } else if (lattice_choice == "adjoint") {
    d.lattice = IMat::identity(r);  // full coweight lattice
  } else if (lattice_choice == "explicit") {
    if (!explicit_basis || explicit_basis->rows != r || explicit_basis->cols != r)
      throw error("explicit lattice basis must be a full-rank " + std::to_string(r) + "x" +
                  std::to_string(r) + " integer matrix");
    d.lattice = *explicit_basis;
    if (det(QMat::from(d.lattice)).is_zero()) throw error("lattice basis is singular");
  } else {
    throw error("unknown lattice choice: " + lattice_choice);
  }
  d.lattice_label = lattice_choice;
  for (int i = 0; i < r; ++i)
    if (!d.in_lattice(d.cartan.row(i)))
      throw error("lattice does not contain the coroot lattice");

  // Enumerate roots by closing the simple roots under simple reflections.
  std::map<IVec, IVec> coroot_of;
  std::vector<IVec> queue;
  for (int i = 0; i < r; ++i) {
    IVec e(r, 0);
    e[i] = 1;
    coroot_of[e] = d.cartan.row(i);
    queue.push_back(e);
  }
  auto simple_char_reflect = [&](int i, const IVec& c) {
    long long k = dot(d.cartan.row(i), c);  // <alpha_i^vee, c>
    IVec out = c;
    out[i] -= k;
    return out;
  };
  auto simple_cochar_reflect = [&](int i, const IVec& v) {
    long long k = v[i];  // <v, alpha_i>
    IVec out = v;
    IVec co = d.cartan.row(i);
    for (int a = 0; a < r; ++a) out[a] -= k * co[a];
    return out;
  };
  while (!queue.empty()) {
    IVec c = queue.back();
    queue.pop_back();
    IVec cv = coroot_of[c];
    for (int i = 0; i < r; ++i) {
      IVec c2 = simple_char_reflect(i, c);
      if (!coroot_of.count(c2)) {
        coroot_of[c2] = simple_cochar_reflect(i, cv);
        queue.push_back(c2);
      }
    }
  }
  for (auto& [c, cv] : coroot_of) {
    bool pos = true;
    for (long long x : c)
      if (x < 0) { pos = false; break; }
    if (!pos) continue;
    int factor = 0;
    for (size_t f = 0; f < d.factors.size(); ++f) {
      for (int i = d.factors[f].first; i < d.factors[f].second; ++i)
        if (c[i] != 0) factor = (int)f;
    }
    d.pos_index[c] = (int)d.pos_roots.size();
    d.pos_roots.push_back({c, cv, factor});
  }
  if ((long long)d.pos_roots.size() != expect_pos)
    throw error("positive root count mismatch for " + type_label);

  // Highest root per factor = unique maximal height.
  d.highest.assign(d.factors.size(), -1);
  std::vector<long long> best_h(d.factors.size(), -1);
  for (int k = 0; k < (int)d.pos_roots.size(); ++k) {
    long long h = 0;
    for (long long x : d.pos_roots[k].root) h += x;
    int f = d.pos_roots[k].factor;
    if (h > best_h[f]) { best_h[f] = h; d.highest[f] = k; }
  }

  // Tabulate W0 by breadth-first closure over right multiplication.
  FiniteWeylGroup& w = d.w0;
  w.rank = r;
  std::vector<IMat> gens(r);
  for (int i = 0; i < r; ++i) {
    IMat m = IMat::identity(r);
    IVec co = d.cartan.row(i);
    for (int a = 0; a < r; ++a) m(a, i) -= co[a];
    gens[i] = m;
  }
  std::map<std::vector<long long>, int> seen;
  w.mat.push_back(IMat::identity(r));
  w.word.push_back({});
  w.len.push_back(0);
  seen[w.mat[0].a] = 0;
  for (size_t head = 0; head < w.mat.size(); ++head) {
    IMat cur = w.mat[head];
    for (int i = 0; i < r; ++i) {
      IMat nx = mat_mul(cur, gens[i]);
      if (seen.count(nx.a)) continue;
      seen[nx.a] = (int)w.mat.size();
      w.mat.push_back(nx);
      auto ww = w.word[head];
      ww.push_back(i);
      w.word.push_back(ww);
      w.len.push_back(w.len[head] + 1);
      if ((long long)w.mat.size() > expect_w0) throw error("finite Weyl group closure overflow");
    }
  }
  if ((long long)w.mat.size() != expect_w0)
    throw error("finite Weyl group order mismatch for " + type_label);
  w.index = seen;
  int n = w.size();
  w.simple.resize(r);
  for (int i = 0; i < r; ++i) w.simple[i] = seen.at(gens[i].a);
  w.inv.resize(n);
  w.mult_tab.assign((size_t)n * n, -1);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      w.mult_tab[(size_t)x * n + y] = seen.at(mat_mul(w.mat[x], w.mat[y]).a);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (w.mul(x, y) == 0) w.inv[x] = y;
  w.neg_mask.assign(n, 0);
  for (int x = 0; x < n; ++x) {
    for (int k = 0; k < d.num_positive(); ++k) {
      IVec img = w.act_char(w.inv[x], d.pos_roots[k].root);  // (x^{-1})(alpha_k)
      if (d.root_sign(img) < 0) w.neg_mask[x] |= (uint64_t)1 << k;
    }
  }
  return d;
}

// Dominance test in cocharacter coordinates: all <v, alpha_i> = v_i >= 0.
inline bool is_dominant(const QVec& v) {
  for (const auto& x : v)
    if (x.sign() < 0) return false;
  return true;
}
inline bool is_dominant(const IVec& v) {
  for (long long x : v)
    if (x < 0) return false;
  return true;
}

// Returns (dominant representative, w) with w(v) dominant; deterministic.
inline std::pair<QVec, int> dominant_representative(const RootDatum& d, const QVec& v0) {
  QVec v = v0;
  int w = 0;
  for (;;) {
    int j = -1;
    for (int i = 0; i < d.rank; ++i)
      if (v[i].sign() < 0) { j = i; break; }
    if (j < 0) return {v, w};
    // v <- s_j(v)
    Rat k = v[j];
    IVec co = d.cartan.row(j);
    for (int a = 0; a < d.rank; ++a) v[a] -= k * Rat(co[a]);
    w = d.w0.mul(d.w0.simple[j], w);
  }
}

}  // namespace affweyl
