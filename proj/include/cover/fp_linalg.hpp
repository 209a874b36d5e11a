#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cover/error.hpp"

namespace cover::fp {

using Vec = std::vector<int>;
using Mat = std::vector<Vec>;  // row-major, entries in [0, p)

inline int mod(long long a, int p) {
  long long r = a % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

inline int inv_mod(int a, int p) {
  // p is prime; Fermat
  long long r = 1, b = a, e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<int>(r);
}

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline Mat identity(int d) {
  Mat m(d, Vec(d, 0));
  for (int i = 0; i < d; ++i) m[i][i] = 1;
  return m;
}

inline Mat mul(const Mat& a, const Mat& b, int p) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Mat r(n, Vec(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      const int x = a[i][l];
      if (!x) continue;
      for (std::size_t j = 0; j < m; ++j) r[i][j] = (r[i][j] + x * b[l][j]) % p;
    }
  return r;
}

inline Vec apply(const Mat& a, const Vec& v, int p) {
  Vec r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    long long s = 0;
    for (std::size_t j = 0; j < v.size(); ++j) s += static_cast<long long>(a[i][j]) * v[j];
    r[i] = static_cast<int>(s % p);
  }
  return r;
}

inline void axpy(Vec& y, int a, const Vec& x, int p) {
  if (!a) return;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = (y[i] + a * x[i]) % p;
}

inline bool is_zero(const Vec& v) {
  for (int x : v)
    if (x) return false;
  return true;
}

/// Incremental row-echelon basis of a subspace of F_p^n (rows kept fully reduced).
class Subspace {
 public:
  Subspace(int p, int n) : p_(p), n_(n) {}

  int prime() const { return p_; }
  int ambient() const { return n_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<Vec>& rows() const { return rows_; }

  Vec reduce(Vec v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const int c = v[pivots_[r]];
      if (c) axpy(v, p_ - c, rows_[r], p_);
    }
    return v;
  }
  bool contains(const Vec& v) const { return is_zero(reduce(v)); }

  // Adds v; returns false if it was already in the span.
  bool add(const Vec& v) {
    Vec w = reduce(v);
    int piv = -1;
    for (int i = 0; i < n_; ++i)
      if (w[i]) {
        piv = i;
        break;
      }
    if (piv < 0) return false;
    const int s = inv_mod(w[piv], p_);
    for (int& x : w) x = x * s % p_;
    for (auto& row : rows_) {
      const int c = row[piv];
      if (c) axpy(row, p_ - c, w, p_);
    }
    rows_.push_back(std::move(w));
    pivots_.push_back(piv);
    return true;
  }

  bool is_subspace_of(const Subspace& o) const {
    for (const auto& r : rows_)
      if (!o.contains(r)) return false;
    return true;
  }

 private:
  int p_, n_;
  std::vector<Vec> rows_;
  std::vector<int> pivots_;
};

inline int rank(const std::vector<Vec>& rows, int p, int n) {
  Subspace s(p, n);
  for (const auto& r : rows) s.add(r);
  return s.dim();
}

/// Basis of {x : A x = 0} for A with `cols` columns.
inline std::vector<Vec> nullspace(const std::vector<Vec>& a, int cols, int p) {
  // reduced row echelon form
  std::vector<Vec> m = a;
  std::vector<int> pivot_col;
  std::size_t row = 0;
  for (int c = 0; c < cols && row < m.size(); ++c) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][c] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[row]);
    const int s = inv_mod(m[row][c], p);
    for (int& x : m[row]) x = x * s % p;
    for (std::size_t r = 0; r < m.size(); ++r)
      if (r != row && m[r][c]) axpy(m[r], p - m[r][c], m[row], p);
    pivot_col.push_back(c);
    ++row;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec x(cols, 0);
    x[f] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = mod(-m[r][f], p);
    basis.push_back(std::move(x));
  }
  return basis;
}

inline int mat_rank(const Mat& a, int p) { return a.empty() ? 0 : rank(a, p, static_cast<int>(a[0].size())); }

inline bool invertible(const Mat& a, int p) { return mat_rank(a, p) == static_cast<int>(a.size()); }

inline Mat inverse(const Mat& a, int p) {
  const int d = static_cast<int>(a.size());
  Mat m(d, Vec(2 * d, 0));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m[i][j] = a[i][j];
    m[i][d + i] = 1;
  }
  for (int c = 0; c < d; ++c) {
    int sel = c;
    while (sel < d && m[sel][c] == 0) ++sel;
    if (sel == d) fail(ErrorKind::InvalidArgument, "singular matrix");
    std::swap(m[sel], m[c]);
    const int s = inv_mod(m[c][c], p);
    for (int& x : m[c]) x = x * s % p;
    for (int r = 0; r < d; ++r)
      if (r != c && m[r][c]) axpy(m[r], p - m[r][c], m[c], p);
  }
  Mat inv(d, Vec(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) inv[i][j] = m[i][d + j];
  return inv;
}

// Flattened d×d matrix <-> vector of length d².
inline Vec flatten(const Mat& a) {
  Vec v;
  for (const auto& r : a) v.insert(v.end(), r.begin(), r.end());
  return v;
}
inline Mat unflatten(const Vec& v, int d) {
  Mat a(d, Vec(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a[i][j] = v[static_cast<std::size_t>(i) * d + j];
  return a;
}

}  // namespace cover::fp
