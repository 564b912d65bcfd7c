// Dense exact-rational matrices with partition-valued row and column labels,
// plus the handful of linear-algebra operations the transition matrices need.
#pragma once

#include "zs/numbers.hpp"
#include "zs/partition.hpp"

#include <utility>
#include <vector>

namespace zs {

struct RationalMatrix {
  std::vector<Partition> row_labels;
  std::vector<Partition> col_labels;
  std::vector<std::vector<Rat>> entries;

  RationalMatrix() = default;

  RationalMatrix(std::vector<Partition> rows, std::vector<Partition> cols)
      : row_labels(std::move(rows)), col_labels(std::move(cols)),
        entries(row_labels.size(), std::vector<Rat>(col_labels.size(), Rat(0))) {}

  int rows() const { return static_cast<int>(row_labels.size()); }
  int cols() const { return static_cast<int>(col_labels.size()); }

  Rat& at(int r, int c) { return entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
  const Rat& at(int r, int c) const {
    return entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  }

  int row_index(const Partition& p) const { return index_of(row_labels, p); }
  int col_index(const Partition& p) const { return index_of(col_labels, p); }

  const Rat& at(const Partition& r, const Partition& c) const {
    return at(row_index(r), col_index(c));
  }

  bool operator==(const RationalMatrix& o) const {
    return row_labels == o.row_labels && col_labels == o.col_labels && entries == o.entries;
  }
};

inline RationalMatrix identity_matrix(const std::vector<Partition>& labels) {
  RationalMatrix m(labels, labels);
  for (int i = 0; i < m.rows(); ++i) m.at(i, i) = 1;
  return m;
}

inline RationalMatrix matmul(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.col_labels != b.row_labels)
    throw domain_error("matmul: inner labels disagree");
  RationalMatrix c(a.row_labels, b.col_labels);
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Rat& aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols(); ++j) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

// Gauss-Jordan with first-nonzero pivoting; exact arithmetic needs no
// magnitude pivoting and this keeps runs deterministic.
inline RationalMatrix inverse(const RationalMatrix& m) {
  if (m.row_labels != m.col_labels) throw domain_error("inverse: matrix not square-labeled");
  const int n = m.rows();
  std::vector<std::vector<Rat>> a = m.entries;
  RationalMatrix inv = identity_matrix(m.row_labels);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw internal_error("inverse: singular matrix");
    std::swap(a[static_cast<std::size_t>(col)], a[static_cast<std::size_t>(piv)]);
    std::swap(inv.entries[static_cast<std::size_t>(col)], inv.entries[static_cast<std::size_t>(piv)]);
    const Rat d = a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
    for (int j = 0; j < n; ++j) {
      a[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)] /= d;
      inv.at(col, j) /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const Rat f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
      if (f == 0) continue;
      for (int j = 0; j < n; ++j) {
        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -=
            f * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
        inv.at(r, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}

inline Rat determinant(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw domain_error("determinant: matrix not square");
  const int n = m.rows();
  std::vector<std::vector<Rat>> a = m.entries;
  Rat det = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      std::swap(a[static_cast<std::size_t>(col)], a[static_cast<std::size_t>(piv)]);
      det = -det;
    }
    const Rat d = a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
    det *= d;
    for (int r = col + 1; r < n; ++r) {
      const Rat f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] / d;
      if (f == 0) continue;
      for (int j = col; j < n; ++j)
        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -=
            f * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
    }
  }
  return det;
}

// Solve M x = b exactly; throws internal_error when M is singular.
inline std::vector<Rat> solve_linear(const RationalMatrix& m, std::vector<Rat> b) {
  if (m.rows() != m.cols()) throw domain_error("solve_linear: matrix not square");
  if (static_cast<int>(b.size()) != m.rows()) throw domain_error("solve_linear: size mismatch");
  const int n = m.rows();
  std::vector<std::vector<Rat>> a = m.entries;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw internal_error("solve_linear: singular system");
    std::swap(a[static_cast<std::size_t>(col)], a[static_cast<std::size_t>(piv)]);
    std::swap(b[static_cast<std::size_t>(col)], b[static_cast<std::size_t>(piv)]);
    for (int r = col + 1; r < n; ++r) {
      const Rat f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] /
                    a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
      if (f == 0) continue;
      for (int j = col; j < n; ++j)
        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -=
            f * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
      b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(col)];
    }
  }
  std::vector<Rat> x(static_cast<std::size_t>(n));
  for (int r = n - 1; r >= 0; --r) {
    Rat s = b[static_cast<std::size_t>(r)];
    for (int j = r + 1; j < n; ++j)
      s -= a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(r)] = s / a[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)];
  }
  return x;
}

// Top-left f x f block with its labels.
inline RationalMatrix leading_block(const RationalMatrix& m, int f) {
  if (f < 0 || f > m.rows() || f > m.cols())
    throw domain_error("leading_block: block size out of range");
  RationalMatrix out(std::vector<Partition>(m.row_labels.begin(), m.row_labels.begin() + f),
                     std::vector<Partition>(m.col_labels.begin(), m.col_labels.begin() + f));
  for (int i = 0; i < f; ++i)
    for (int j = 0; j < f; ++j) out.at(i, j) = m.at(i, j);
  return out;
}

}  // namespace zs
