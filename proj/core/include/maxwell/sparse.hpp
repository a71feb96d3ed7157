#pragma once

#include <algorithm>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "maxwell/types.hpp"

namespace maxwell {

/// Compressed-sparse-row matrix with sorted column indices in each row.
template <class T>
struct CsrMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> row_ptr;
  std::vector<int> col_idx;
  std::vector<T> values;

  [[nodiscard]] std::size_t nnz() const { return col_idx.size(); }

  /// Position of (r, c) in col_idx/values, or -1 if not stored.
  [[nodiscard]] std::ptrdiff_t find(int r, int c) const {
    const auto first = col_idx.begin() + row_ptr[r];
    const auto last = col_idx.begin() + row_ptr[r + 1];
    const auto it = std::lower_bound(first, last, c);
    return (it != last && *it == c) ? it - col_idx.begin() : -1;
  }

  [[nodiscard]] T at(int r, int c) const {
    const auto pos = find(r, c);
    return pos < 0 ? T{0} : values[pos];
  }

  /// Same pattern, all values zero.
  template <class U>
  [[nodiscard]] CsrMatrix<U> with_pattern() const {
    CsrMatrix<U> out;
    out.rows = rows;
    out.cols = cols;
    out.row_ptr = row_ptr;
    out.col_idx = col_idx;
    out.values.assign(col_idx.size(), U{0});
    return out;
  }
};

using ComplexSparseMatrix = CsrMatrix<Complex>;
using RealSparseMatrix = CsrMatrix<double>;

/// y = A x
template <class T, class U>
std::vector<Complex> multiply(const CsrMatrix<T>& a, std::span<const U> x) {
  if (static_cast<int>(x.size()) != a.cols) {
    throw std::invalid_argument("dimension mismatch in sparse matrix-vector product");
  }
  std::vector<Complex> y(a.rows, Complex(0.0));
  for (int r = 0; r < a.rows; ++r) {
    Complex sum(0.0);
    for (int k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
      sum += a.values[k] * x[a.col_idx[k]];
    }
    y[r] = sum;
  }
  return y;
}

/// Builds a CSR matrix from (row, col, value) triplets, summing duplicates.
template <class T>
CsrMatrix<T> from_triplets(int rows, int cols, std::vector<std::tuple<int, int, T>> triplets) {
  std::sort(triplets.begin(), triplets.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });
  CsrMatrix<T> m;
  m.rows = rows;
  m.cols = cols;
  m.row_ptr.assign(rows + 1, 0);
  int last_r = -1;
  int last_c = -1;
  for (const auto& [r, c, v] : triplets) {
    if (r < 0 || r >= rows || c < 0 || c >= cols) {
      throw std::out_of_range("triplet index outside matrix");
    }
    if (r == last_r && c == last_c) {
      m.values.back() += v;
      continue;
    }
    m.col_idx.push_back(c);
    m.values.push_back(v);
    ++m.row_ptr[r + 1];
    last_r = r;
    last_c = c;
  }
  for (int r = 0; r < rows; ++r) {
    m.row_ptr[r + 1] += m.row_ptr[r];
  }
  return m;
}

/// Matrix Market coordinate format, complex general, 1-based indices.
void write_matrix_market(std::ostream& os, const ComplexSparseMatrix& a);

}  // namespace maxwell
