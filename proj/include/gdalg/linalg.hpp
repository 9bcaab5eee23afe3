/**
 * @file linalg.hpp
 * @brief Dense linear algebra over a finite field.
 *
 * Prime fields are reduced with plain modular integers; extension fields go
 * through the Zech tables.
 */
#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "gf.hpp"

namespace gdalg {

using Vec = std::vector<Log>;

struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<Log> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, kZero) {}

  Log& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  Log operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 0;
    return m;
  }
  Vec column(int c) const {
    Vec v(rows);
    for (int r = 0; r < rows; ++r) v[r] = (*this)(r, c);
    return v;
  }
  void set_column(int c, const Vec& v) {
    for (int r = 0; r < rows; ++r) (*this)(r, c) = v[r];
  }
  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

namespace la {

inline Vec zeros(int n) { return Vec(n, kZero); }

inline Vec unit_vec(int n, int i) {
  Vec v(n, kZero);
  v[i] = 0;
  return v;
}

inline bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Log x) { return x < 0; });
}

inline Vec add(const Field& F, const Vec& x, const Vec& y) {
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = F.add(x[i], y[i]);
  return r;
}

inline Vec sub(const Field& F, const Vec& x, const Vec& y) {
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = F.sub(x[i], y[i]);
  return r;
}

inline Vec scale(const Field& F, Log c, const Vec& x) {
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = F.mul(c, x[i]);
  return r;
}

// y += c * x
inline void axpy(const Field& F, Log c, const Vec& x, Vec& y) {
  if (c < 0) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] >= 0) y[i] = F.add(y[i], F.mul(c, x[i]));
}

inline Vec apply(const Field& F, const Matrix& A, const Vec& v) {
  Vec r(A.rows, kZero);
  for (int i = 0; i < A.rows; ++i) {
    Log acc = kZero;
    for (int j = 0; j < A.cols; ++j)
      if (v[j] >= 0 && A(i, j) >= 0) acc = F.add(acc, F.mul(A(i, j), v[j]));
    r[i] = acc;
  }
  return r;
}

inline Matrix mul(const Field& F, const Matrix& A, const Matrix& B) {
  require(A.cols == B.rows, "shape_mismatch", "matrix product shape mismatch");
  Matrix C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      const Log a = A(i, k);
      if (a < 0) continue;
      for (int j = 0; j < B.cols; ++j)
        if (B(k, j) >= 0) C(i, j) = F.add(C(i, j), F.mul(a, B(k, j)));
    }
  return C;
}

inline Matrix transpose(const Matrix& A) {
  Matrix T(A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
  return T;
}

namespace detail {

inline int modinv(int a, int p) {
  int r = 1, b = a, e = p - 2;
  while (e > 0) {
    if (e & 1) r = static_cast<int>(static_cast<long long>(r) * b % p);
    b = static_cast<int>(static_cast<long long>(b) * b % p);
    e >>= 1;
  }
  return r;
}

// Reduces A (prime field values) in place. With full=false only the forward
// pass is done. Returns the pivot columns among the first ncols columns.
inline std::vector<int> rref_prime(std::vector<std::uint32_t>& a, int rows, int cols, int ncols,
                                   std::uint32_t p, bool full) {
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < ncols && r < rows; ++c) {
    int s = -1;
    for (int i = r; i < rows; ++i)
      if (a[static_cast<std::size_t>(i) * cols + c] != 0) {
        s = i;
        break;
      }
    if (s < 0) continue;
    std::uint32_t* pr = &a[static_cast<std::size_t>(s) * cols];
    if (s != r) std::swap_ranges(pr, pr + cols, &a[static_cast<std::size_t>(r) * cols]);
    pr = &a[static_cast<std::size_t>(r) * cols];
    const std::uint32_t iv = static_cast<std::uint32_t>(modinv(static_cast<int>(pr[c]), static_cast<int>(p)));
    for (int k = c; k < cols; ++k) pr[k] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(pr[k]) * iv % p);
    for (int i = full ? 0 : r + 1; i < rows; ++i) {
      if (i == r) continue;
      std::uint32_t* pi = &a[static_cast<std::size_t>(i) * cols];
      const std::uint32_t f = pi[c];
      if (f == 0) continue;
      const std::uint32_t nf = p - f;
      for (int k = c; k < cols; ++k) pi[k] = (pi[k] + nf * pr[k]) % p;
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

inline std::vector<int> rref_zech(const Field& F, Matrix& A, int ncols, bool full) {
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < ncols && r < A.rows; ++c) {
    int s = -1;
    for (int i = r; i < A.rows; ++i)
      if (A(i, c) >= 0) {
        s = i;
        break;
      }
    if (s < 0) continue;
    if (s != r)
      for (int k = 0; k < A.cols; ++k) std::swap(A(s, k), A(r, k));
    const Log iv = F.inv(A(r, c));
    for (int k = c; k < A.cols; ++k) A(r, k) = F.mul(A(r, k), iv);
    for (int i = full ? 0 : r + 1; i < A.rows; ++i) {
      if (i == r || A(i, c) < 0) continue;
      const Log nf = F.neg(A(i, c));
      for (int k = c; k < A.cols; ++k)
        if (A(r, k) >= 0) A(i, k) = F.add(A(i, k), F.mul(nf, A(r, k)));
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

inline std::vector<int> reduce(const Field& F, Matrix& A, int ncols, bool full) {
  if (F.m() != 1) return rref_zech(F, A, ncols, full);
  std::vector<std::uint32_t> v(A.a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<std::uint32_t>(F.code(A.a[i]));
  auto piv = rref_prime(v, A.rows, A.cols, ncols, static_cast<std::uint32_t>(F.p()), full);
  for (std::size_t i = 0; i < v.size(); ++i) A.a[i] = F.from_code(static_cast<int>(v[i]));
  return piv;
}

}  // namespace detail

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<int> rref(const Field& F, Matrix& A) { return detail::reduce(F, A, A.cols, true); }

inline int rank(const Field& F, Matrix A) {
  return static_cast<int>(detail::reduce(F, A, A.cols, false).size());
}

// Basis of {x : A x = 0}.
inline std::vector<Vec> kernel(const Field& F, Matrix A) {
  auto piv = rref(F, A);
  std::vector<char> is_piv(A.cols, 0);
  for (int c : piv) is_piv[c] = 1;
  std::vector<Vec> out;
  for (int f = 0; f < A.cols; ++f) {
    if (is_piv[f]) continue;
    Vec x(A.cols, kZero);
    x[f] = 0;
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = F.neg(A(static_cast<int>(r), f));
    out.push_back(std::move(x));
  }
  return out;
}

inline std::optional<Matrix> inverse(const Field& F, const Matrix& A) {
  require(A.rows == A.cols, "shape_mismatch", "inverse of a non-square matrix");
  const int n = A.rows;
  Matrix M(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) M(i, j) = A(i, j);
    M(i, n + i) = 0;
  }
  auto piv = detail::reduce(F, M, n, true);
  if (static_cast<int>(piv.size()) < n) return std::nullopt;
  Matrix R(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) R(i, j) = M(i, n + j);
  return R;
}

// Some x with A x = b, or nullopt.
inline std::optional<Vec> solve(const Field& F, const Matrix& A, const Vec& b) {
  Matrix M(A.rows, A.cols + 1);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) M(i, j) = A(i, j);
    M(i, A.cols) = b[i];
  }
  auto piv = detail::reduce(F, M, A.cols + 1, true);
  if (!piv.empty() && piv.back() == A.cols) return std::nullopt;
  Vec x(A.cols, kZero);
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = M(static_cast<int>(r), A.cols);
  return x;
}

// Matrix with the given vectors as columns.
inline Matrix from_columns(int rows, const std::vector<Vec>& cols) {
  Matrix M(rows, static_cast<int>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) M.set_column(static_cast<int>(j), cols[j]);
  return M;
}

// Echelon basis of the span of the given vectors.
inline std::vector<Vec> span_basis(const Field& F, int dim, const std::vector<Vec>& vs) {
  Matrix M(static_cast<int>(vs.size()), dim);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (int j = 0; j < dim; ++j) M(static_cast<int>(i), j) = vs[i][j];
  auto piv = rref(F, M);
  std::vector<Vec> out;
  for (std::size_t r = 0; r < piv.size(); ++r) {
    Vec v(dim);
    for (int j = 0; j < dim; ++j) v[j] = M(static_cast<int>(r), j);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace la

// Coordinates with respect to a fixed linearly independent family.
class SpanCoords {
 public:
  SpanCoords() = default;
  SpanCoords(const Field& F, int dim, std::vector<Vec> basis) : F_(F), dim_(dim), basis_(std::move(basis)) {
    const int r = static_cast<int>(basis_.size());
    Matrix T(r, dim);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < dim; ++j) T(i, j) = basis_[i][j];
    auto piv = la::rref(F, T);
    require(static_cast<int>(piv.size()) == r, "dependent_family", "family is linearly dependent");
    rows_ = piv;
    Matrix S(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) S(i, j) = basis_[j][rows_[i]];
    auto inv = la::inverse(F, S);
    ensure(inv.has_value(), "pivot submatrix not invertible");
    inv_ = *inv;
  }

  int size() const { return static_cast<int>(basis_.size()); }
  const std::vector<Vec>& basis() const { return basis_; }

  std::optional<Vec> coords(const Vec& v) const {
    const int r = size();
    Vec c(r, kZero);
    for (int i = 0; i < r; ++i) {
      Log acc = kZero;
      for (int j = 0; j < r; ++j)
        if (inv_(i, j) >= 0 && v[rows_[j]] >= 0) acc = F_.add(acc, F_.mul(inv_(i, j), v[rows_[j]]));
      c[i] = acc;
    }
    Vec back(dim_, kZero);
    for (int i = 0; i < r; ++i) la::axpy(F_, c[i], basis_[i], back);
    if (back != v) return std::nullopt;
    return c;
  }

  Vec coords_or_throw(const Vec& v) const {
    auto c = coords(v);
    require(c.has_value(), "not_in_span", "vector outside the expected subspace");
    return *c;
  }

 private:
  Field F_;
  int dim_ = 0;
  std::vector<Vec> basis_;
  std::vector<int> rows_;
  Matrix inv_;
};

}  // namespace gdalg
