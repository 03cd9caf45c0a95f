#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <vector>

#include "affweyl/rational.hpp"

namespace affweyl {

using IVec = std::vector<long long>;

// Dense integer matrix. Row-major; lattice bases store basis vectors as rows.
struct IMat {
  int rows = 0, cols = 0;
  std::vector<long long> a;

  IMat() = default;
  IMat(int r, int c) : rows(r), cols(c), a((size_t)r * c, 0) {}

  long long& operator()(int i, int j) { return a[(size_t)i * cols + j]; }
  long long operator()(int i, int j) const { return a[(size_t)i * cols + j]; }

  static IMat identity(int n) {
    IMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  IVec row(int i) const { return IVec(a.begin() + (size_t)i * cols, a.begin() + (size_t)(i + 1) * cols); }

  friend bool operator==(const IMat& x, const IMat& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

inline long long dot(const IVec& x, const IVec& y) {
  __int128 s = 0;
  for (size_t i = 0; i < x.size(); ++i) s += (__int128)x[i] * y[i];
  return detail::checked_narrow(s);
}

inline IVec operator+(const IVec& x, const IVec& y) {
  IVec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
  return r;
}
inline IVec operator-(const IVec& x, const IVec& y) {
  IVec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}
inline IVec negate(const IVec& x) {
  IVec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = -x[i];
  return r;
}
inline bool is_zero(const IVec& x) {
  return std::all_of(x.begin(), x.end(), [](long long v) { return v == 0; });
}

// y = M x (column-vector action).
inline IVec mat_vec(const IMat& m, const IVec& x) {
  IVec y(m.rows, 0);
  for (int i = 0; i < m.rows; ++i) {
    __int128 s = 0;
    for (int j = 0; j < m.cols; ++j) s += (__int128)m(i, j) * x[j];
    y[i] = detail::checked_narrow(s);
  }
  return y;
}

// y = x M (row-vector action).
inline IVec vec_mat(const IVec& x, const IMat& m) {
  IVec y(m.cols, 0);
  for (int j = 0; j < m.cols; ++j) {
    __int128 s = 0;
    for (int i = 0; i < m.rows; ++i) s += (__int128)x[i] * m(i, j);
    y[j] = detail::checked_narrow(s);
  }
  return y;
}

inline IMat mat_mul(const IMat& x, const IMat& y) {
  IMat z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      long long v = x(i, k);
      if (!v) continue;
      for (int j = 0; j < y.cols; ++j)
        z(i, j) = detail::checked_narrow((__int128)z(i, j) + (__int128)v * y(k, j));
    }
  return z;
}

inline IMat transpose(const IMat& m) {
  IMat t(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
  return t;
}

// Smith normal form: U*A*V = D with U, V unimodular and d1 | d2 | ... , d_i >= 0.
struct Smith {
  IMat d, u, v;
};

inline Smith smith_normal_form(const IMat& in) {
  Smith s{in, IMat::identity(in.rows), IMat::identity(in.cols)};
  IMat& d = s.d;
  const int m = d.rows, n = d.cols;

  auto swap_rows = [&](int i, int j) {
    for (int k = 0; k < n; ++k) std::swap(d(i, k), d(j, k));
    for (int k = 0; k < s.u.cols; ++k) std::swap(s.u(i, k), s.u(j, k));
  };
  auto swap_cols = [&](int i, int j) {
    for (int k = 0; k < m; ++k) std::swap(d(k, i), d(k, j));
    for (int k = 0; k < s.v.rows; ++k) std::swap(s.v(k, i), s.v(k, j));
  };
  auto add_row = [&](int dst, int src, long long c) {  // row_dst += c*row_src
    for (int k = 0; k < n; ++k) d(dst, k) = detail::checked_narrow((__int128)d(dst, k) + (__int128)c * d(src, k));
    for (int k = 0; k < s.u.cols; ++k)
      s.u(dst, k) = detail::checked_narrow((__int128)s.u(dst, k) + (__int128)c * s.u(src, k));
  };
  auto add_col = [&](int dst, int src, long long c) {
    for (int k = 0; k < m; ++k) d(k, dst) = detail::checked_narrow((__int128)d(k, dst) + (__int128)c * d(k, src));
    for (int k = 0; k < s.v.rows; ++k)
      s.v(k, dst) = detail::checked_narrow((__int128)s.v(k, dst) + (__int128)c * s.v(k, src));
  };
  auto negate_row = [&](int i) {
    for (int k = 0; k < n; ++k) d(i, k) = -d(i, k);
    for (int k = 0; k < s.u.cols; ++k) s.u(i, k) = -s.u(i, k);
  };

  for (int t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // Pick the nonzero entry of smallest absolute value in the trailing block.
      int pi = -1, pj = -1;
      long long best = 0;
      for (int i = t; i < m; ++i)
        for (int j = t; j < n; ++j)
          if (d(i, j) != 0 && (pi < 0 || std::llabs(d(i, j)) < best)) {
            pi = i; pj = j; best = std::llabs(d(i, j));
          }
      if (pi < 0) goto done_pivot;
      if (pi != t) swap_rows(pi, t);
      if (pj != t) swap_cols(pj, t);

      bool again = false;
      for (int i = t + 1; i < m; ++i)
        if (d(i, t) != 0) {
          add_row(i, t, -(d(i, t) / d(t, t)));
          if (d(i, t) != 0) again = true;
        }
      for (int j = t + 1; j < n; ++j)
        if (d(t, j) != 0) {
          add_col(j, t, -(d(t, j) / d(t, t)));
          if (d(t, j) != 0) again = true;
        }
      if (again) continue;

      // Enforce divisibility of the trailing block by the pivot.
      bool fixed = false;
      for (int i = t + 1; i < m && !fixed; ++i)
        for (int j = t + 1; j < n && !fixed; ++j)
          if (d(i, j) % d(t, t) != 0) {
            add_row(t, i, 1);
            fixed = true;
          }
      if (!fixed) break;
    }
    if (d(t, t) < 0) negate_row(t);
  }
done_pivot:;
  for (int t = 0; t < std::min(m, n); ++t)
    if (d(t, t) < 0) negate_row(t);
  return s;
}

// Solves x*A = b over the integers (row convention); nullopt when no integral solution.
inline std::optional<IVec> solve_row(const IMat& a, const IVec& b) {
  Smith s = smith_normal_form(a);
  const int m = a.rows, n = a.cols, k = std::min(m, n);
  IVec bv = vec_mat(b, s.v);
  IVec y(m, 0);
  for (int j = 0; j < n; ++j) {
    long long dj = j < k ? s.d(j, j) : 0;
    if (dj == 0) {
      if (bv[j] != 0) return std::nullopt;
    } else {
      if (bv[j] % dj != 0) return std::nullopt;
      y[j] = bv[j] / dj;
    }
  }
  return vec_mat(y, s.u);
}

// ---- Exact rational dense linear algebra (small systems only) ----

struct QMat {
  int rows = 0, cols = 0;
  std::vector<Rat> a;
  QMat() = default;
  QMat(int r, int c) : rows(r), cols(c), a((size_t)r * c) {}
  Rat& operator()(int i, int j) { return a[(size_t)i * cols + j]; }
  const Rat& operator()(int i, int j) const { return a[(size_t)i * cols + j]; }
  static QMat from(const IMat& m) {
    QMat q(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j) q(i, j) = Rat(m(i, j));
    return q;
  }
};

inline QVec mat_vec(const QMat& m, const QVec& x) {
  QVec y(m.rows);
  for (int i = 0; i < m.rows; ++i) {
    Rat s;
    for (int j = 0; j < m.cols; ++j) s += m(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

// Row-reduces [A | b...]; returns rank. Augmented columns are carried along.
inline int rref(QMat& m, int main_cols) {
  int r = 0;
  for (int c = 0; c < main_cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (!m(i, c).is_zero()) { p = i; break; }
    if (p < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
    Rat inv = Rat(1) / m(r, c);
    for (int j = 0; j < m.cols; ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Rat f = m(i, c);
      for (int j = 0; j < m.cols; ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

// Solves M x = b exactly; nullopt if inconsistent. Free variables are set to zero.
inline std::optional<QVec> solve(const QMat& m0, const QVec& b) {
  QMat m(m0.rows, m0.cols + 1);
  for (int i = 0; i < m0.rows; ++i) {
    for (int j = 0; j < m0.cols; ++j) m(i, j) = m0(i, j);
    m(i, m0.cols) = b[i];
  }
  rref(m, m0.cols);
  QVec x(m0.cols, Rat(0));
  for (int i = 0; i < m.rows; ++i) {
    int lead = -1;
    for (int j = 0; j < m0.cols; ++j)
      if (!m(i, j).is_zero()) { lead = j; break; }
    if (lead < 0) {
      if (!m(i, m0.cols).is_zero()) return std::nullopt;
      continue;
    }
    // In RREF, row i reads x_lead + sum over free columns = b_i; free vars are zero.
    x[lead] = m(i, m0.cols);
  }
  QVec check = mat_vec(m0, x);
  for (int i = 0; i < m0.rows; ++i)
    if (check[i] != b[i]) return std::nullopt;
  return x;
}

// Basis of the right nullspace of M.
inline std::vector<QVec> nullspace(const QMat& m0) {
  QMat m = m0;
  rref(m, m.cols);
  std::vector<int> lead_of_row(m.rows, -1);
  std::vector<bool> is_pivot(m.cols, false);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (!m(i, j).is_zero()) {
        lead_of_row[i] = j;
        is_pivot[j] = true;
        break;
      }
  std::vector<QVec> basis;
  for (int f = 0; f < m.cols; ++f) {
    if (is_pivot[f]) continue;
    QVec v(m.cols, Rat(0));
    v[f] = Rat(1);
    for (int i = 0; i < m.rows; ++i)
      if (lead_of_row[i] >= 0) v[lead_of_row[i]] = -m(i, f);
    basis.push_back(v);
  }
  return basis;
}

inline Rat det(const QMat& m0) {
  if (m0.rows != m0.cols) throw error("det of non-square matrix");
  QMat m = m0;
  Rat result(1);
  for (int c = 0; c < m.cols; ++c) {
    int p = -1;
    for (int i = c; i < m.rows; ++i)
      if (!m(i, c).is_zero()) { p = i; break; }
    if (p < 0) return Rat(0);
    if (p != c) {
      for (int j = 0; j < m.cols; ++j) std::swap(m(p, j), m(c, j));
      result = -result;
    }
    result *= m(c, c);
    Rat inv = Rat(1) / m(c, c);
    for (int i = c + 1; i < m.rows; ++i) {
      if (m(i, c).is_zero()) continue;
      Rat f = m(i, c) * inv;
      for (int j = c; j < m.cols; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return result;
}

}  // namespace affweyl
