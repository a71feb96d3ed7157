#include "maxwell/sparse.hpp"

#include <charconv>
#include <ostream>
#include <string>

namespace maxwell {

namespace {

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

void write_matrix_market(std::ostream& os, const ComplexSparseMatrix& a) {
  os << "%%MatrixMarket matrix coordinate complex general\n";
  os << a.rows << ' ' << a.cols << ' ' << a.nnz() << '\n';
  for (int r = 0; r < a.rows; ++r) {
    for (int k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
      os << r + 1 << ' ' << a.col_idx[k] + 1 << ' ' << shortest(a.values[k].real()) << ' '
         << shortest(a.values[k].imag()) << '\n';
    }
  }
}

}  // namespace maxwell
