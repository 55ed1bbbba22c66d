#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "specsub/errors.hpp"

namespace specsub {

// Dense row-major matrix. Everything in this project is desk scale, so there
// is no sparsity or blocking; clarity wins.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, fill) {}

  double& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

inline Matrix operator*(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int l = 0; l < a.cols(); ++l) {
      const double ail = a(i, l);
      if (ail == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += ail * b(l, j);
    }
  return c;
}

inline std::vector<double> mat_vec(const Matrix& a, const std::vector<double>& x) {
  std::vector<double> y(a.rows(), 0.0);
  for (int i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

// Gaussian elimination with partial pivoting.
inline std::vector<double> solve(Matrix a, std::vector<double> b) {
  const int n = a.rows();
  if (n != a.cols() || static_cast<int>(b.size()) != n)
    fail(errc::invalid_params, "solve expects a square system");
  const double scale = std::max(a.max_abs(), 1e-300);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (std::abs(a(piv, k)) < 1e-14 * scale)
      fail(errc::singular_system, "pivot underflow in linear solve");
    if (piv != k) {
      for (int j = k; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(b[k], b[piv]);
    }
    for (int i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      if (f == 0.0) continue;
      for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

// Numeric rank by row echelon elimination. The pivot threshold is relative to
// the largest initial entry, which is adequate for the 0/1 incidence matrices
// this is used on.
inline int numeric_rank(Matrix a, double rel_tol = 1e-9) {
  const int rows = a.rows(), cols = a.cols();
  const double thresh = rel_tol * std::max(a.max_abs(), 1e-300);
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = rank;
    for (int i = rank + 1; i < rows; ++i)
      if (std::abs(a(i, col)) > std::abs(a(piv, col))) piv = i;
    if (std::abs(a(piv, col)) <= thresh) continue;
    if (piv != rank)
      for (int j = col; j < cols; ++j) std::swap(a(rank, j), a(piv, j));
    for (int i = rank + 1; i < rows; ++i) {
      const double f = a(i, col) / a(rank, col);
      if (f == 0.0) continue;
      for (int j = col; j < cols; ++j) a(i, j) -= f * a(rank, j);
    }
    ++rank;
  }
  return rank;
}

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column i pairs with values[i]
};

// Cyclic Jacobi for dense symmetric matrices. Chosen over tridiagonalization
// for its orthogonality behaviour; at the sizes handled here the extra sweeps
// are cheap.
inline SymmetricEigen jacobi_eigen(Matrix a, int max_sweeps = 64) {
  const int n = a.rows();
  if (n != a.cols()) fail(errc::invalid_params, "jacobi_eigen expects a square matrix");
  Matrix v = Matrix::identity(n);
  if (n == 1) return {{a(0, 0)}, v};

  double norm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) norm += a(i, j) * a(i, j);
  norm = std::sqrt(norm);
  const double stop = std::max(1e-300, 1e-14 * norm);

  auto off_norm = [&] {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_norm() > stop) {
    if (++sweep > max_sweeps)
      fail(errc::convergence_failure, "Jacobi sweeps exhausted");
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int i = 0; i < n; ++i) {
          const double aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(i, q) = s * aip + c * aiq;
        }
        for (int j = 0; j < n; ++j) {
          const double apj = a(p, j), aqj = a(q, j);
          a(p, j) = c * apj - s * aqj;
          a(q, j) = s * apj + c * aqj;
        }
        for (int i = 0; i < n; ++i) {
          const double vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) < a(y, y); });

  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (int c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]);
    // canonical sign: the largest-magnitude component is positive
    int arg = 0;
    for (int i = 1; i < n; ++i)
      if (std::abs(v(i, order[c])) > std::abs(v(arg, order[c]))) arg = i;
    const double sgn = v(arg, order[c]) < 0.0 ? -1.0 : 1.0;
    for (int i = 0; i < n; ++i) out.vectors(i, c) = sgn * v(i, order[c]);
  }
  return out;
}

}  // namespace specsub
