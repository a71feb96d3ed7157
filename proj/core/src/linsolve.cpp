#include "maxwell/linsolve.hpp"

#include <chrono>
#include <cmath>
#include <memory>

#include <umfpack.h>

namespace maxwell {

namespace {

double norm2(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) {
    s += std::norm(z);
  }
  return std::sqrt(s);
}

void check_square(const ComplexSparseMatrix& a, std::span<const Complex> b) {
  if (a.rows != a.cols) {
    throw std::invalid_argument("solve needs a square matrix");
  }
  if (static_cast<int>(b.size()) != a.rows) {
    throw std::invalid_argument("right-hand side length does not match the matrix");
  }
}

struct UmfpackFactor {
  void* symbolic = nullptr;
  void* numeric = nullptr;
  ~UmfpackFactor() {
    if (numeric != nullptr) {
      umfpack_zi_free_numeric(&numeric);
    }
    if (symbolic != nullptr) {
      umfpack_zi_free_symbolic(&symbolic);
    }
  }
};

// Index of the first zero diagonal entry of U mapped back to an original
// column, if UMFPACK can report it.
std::optional<int> zero_pivot_column(void* numeric, int n) {
  int lnz = 0, unz = 0, rows = 0, cols = 0, nz_udiag = 0, recip = 0;
  if (umfpack_zi_get_lunz(&lnz, &unz, &rows, &cols, &nz_udiag, numeric) != UMFPACK_OK) {
    return std::nullopt;
  }
  std::vector<double> d(2 * static_cast<std::size_t>(n));
  std::vector<int> q(n);
  if (umfpack_zi_get_numeric(nullptr, nullptr, nullptr, nullptr, nullptr, nullptr, nullptr,
                             nullptr, nullptr, q.data(), d.data(), nullptr, &recip, nullptr,
                             numeric) != UMFPACK_OK) {
    return std::nullopt;
  }
  for (int k = 0; k < n; ++k) {
    if (d[2 * k] == 0.0 && d[2 * k + 1] == 0.0) {
      return q[k];
    }
  }
  return std::nullopt;
}

SolveReport solve_lu(const ComplexSparseMatrix& a, std::span<const Complex> b) {
  const int n = a.rows;
  double control[UMFPACK_CONTROL];
  double info[UMFPACK_INFO];
  umfpack_zi_defaults(control);
  control[UMFPACK_PIVOT_TOLERANCE] = 0.1;
  control[UMFPACK_SYM_PIVOT_TOLERANCE] = 0.1;

  // CSR arrays of A are the CSC arrays of A^T; UMFPACK_Aat then solves A x = b.
  const int* ap = a.row_ptr.data();
  const int* ai = a.col_idx.data();
  const auto* ax = reinterpret_cast<const double*>(a.values.data());

  UmfpackFactor factor;
  int status = umfpack_zi_symbolic(n, n, ap, ai, ax, nullptr, &factor.symbolic, control, info);
  if (status != UMFPACK_OK) {
    throw SolverError("sparse LU symbolic analysis failed (UMFPACK status " +
                          std::to_string(status) + ")",
                      std::nullopt);
  }
  status = umfpack_zi_numeric(ap, ai, ax, nullptr, factor.symbolic, &factor.numeric, control, info);
  if (status == UMFPACK_WARNING_singular_matrix) {
    const auto pivot = zero_pivot_column(factor.numeric, n);
    throw SolverError("matrix is singular" +
                          (pivot ? " (zero pivot in column " + std::to_string(*pivot) + ")"
                                 : std::string()),
                      pivot);
  }
  if (status != UMFPACK_OK) {
    throw SolverError("sparse LU factorization failed (UMFPACK status " +
                          std::to_string(status) +
                          (status == UMFPACK_ERROR_out_of_memory ? ", out of memory; try --solver gmres" : "") +
                          ")",
                      std::nullopt);
  }

  SolveReport report;
  report.kind = SolverKind::Lu;
  report.factor_nonzeros = info[UMFPACK_LNZ] + info[UMFPACK_UNZ];
  report.x.assign(n, Complex(0.0));
  status = umfpack_zi_solve(UMFPACK_Aat, ap, ai, ax, nullptr,
                            reinterpret_cast<double*>(report.x.data()), nullptr,
                            reinterpret_cast<const double*>(b.data()), nullptr, factor.numeric,
                            control, info);
  if (status != UMFPACK_OK) {
    throw SolverError("sparse LU solve failed (UMFPACK status " + std::to_string(status) + ")",
                      std::nullopt);
  }
  return report;
}

// Incomplete LU with the sparsity of A, stored in CSR (unit lower part).
struct Ilu0 {
  const ComplexSparseMatrix* pattern;
  std::vector<Complex> values;
  std::vector<int> diag;

  explicit Ilu0(const ComplexSparseMatrix& a) : pattern(&a), values(a.values), diag(a.rows, -1) {
    const int n = a.rows;
    for (int i = 0; i < n; ++i) {
      const auto pos = a.find(i, i);
      if (pos < 0) {
        throw SolverError("ILU(0) needs a stored diagonal (row " + std::to_string(i) + ")", i);
      }
      diag[i] = static_cast<int>(pos);
    }
    for (int i = 0; i < n; ++i) {
      for (int kk = a.row_ptr[i]; kk < diag[i]; ++kk) {
        const int k = a.col_idx[kk];
        const Complex pivot = values[diag[k]];
        if (pivot == Complex(0.0)) {
          throw SolverError("zero pivot in ILU(0) at row " + std::to_string(k), k);
        }
        values[kk] /= pivot;
        const Complex lik = values[kk];
        // a_ij -= l_ik u_kj over the pattern of row i.
        int jj = kk + 1;
        for (int kj = diag[k] + 1; kj < a.row_ptr[k + 1]; ++kj) {
          const int j = a.col_idx[kj];
          while (jj < a.row_ptr[i + 1] && a.col_idx[jj] < j) {
            ++jj;
          }
          if (jj < a.row_ptr[i + 1] && a.col_idx[jj] == j) {
            values[jj] -= lik * values[kj];
          }
        }
      }
      if (values[diag[i]] == Complex(0.0)) {
        throw SolverError("zero pivot in ILU(0) at row " + std::to_string(i), i);
      }
    }
  }

  void apply(std::span<const Complex> r, std::span<Complex> z) const {
    const auto& a = *pattern;
    const int n = a.rows;
    for (int i = 0; i < n; ++i) {
      Complex s = r[i];
      for (int k = a.row_ptr[i]; k < diag[i]; ++k) {
        s -= values[k] * z[a.col_idx[k]];
      }
      z[i] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
      Complex s = z[i];
      for (int k = diag[i] + 1; k < a.row_ptr[i + 1]; ++k) {
        s -= values[k] * z[a.col_idx[k]];
      }
      z[i] = s / values[diag[i]];
    }
  }
};

Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
  Complex s(0.0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    s += std::conj(u[i]) * v[i];
  }
  return s;
}

// Right-preconditioned restarted GMRES with Givens rotations.
SolveReport solve_gmres(const ComplexSparseMatrix& a, std::span<const Complex> b,
                        const SolverOptions& options) {
  const int n = a.rows;
  const int m = std::max(1, options.restart);
  const Ilu0 ilu(a);
  SolveReport report;
  report.kind = SolverKind::Gmres;
  report.x.assign(n, Complex(0.0));

  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    report.relative_residual = 0.0;
    return report;
  }

  std::vector<std::vector<Complex>> basis(m + 1, std::vector<Complex>(n));
  std::vector<Complex> h(static_cast<std::size_t>(m + 1) * m);
  std::vector<Complex> cs(m), sn(m), g(m + 1);
  std::vector<Complex> z(n), w(n);
  auto H = [&](int i, int j) -> Complex& { return h[static_cast<std::size_t>(j) * (m + 1) + i]; };

  int total = 0;
  while (true) {
    auto ax = multiply<Complex, Complex>(a, report.x);
    for (int i = 0; i < n; ++i) {
      basis[0][i] = b[i] - ax[i];
    }
    const double beta = norm2(basis[0]);
    const double rel = beta / bnorm;
    report.residual_history.push_back(rel);
    if (rel <= options.tolerance) {
      break;
    }
    if (total >= options.max_iterations) {
      throw SolverError("GMRES did not converge in " + std::to_string(total) +
                            " iterations (relative residual " + std::to_string(rel) + ")",
                        std::nullopt, report.residual_history);
    }
    for (auto& v : basis[0]) {
      v /= beta;
    }
    std::fill(g.begin(), g.end(), Complex(0.0));
    g[0] = beta;
    int j = 0;
    for (; j < m && total < options.max_iterations; ++j, ++total) {
      ilu.apply(basis[j], z);
      w = multiply<Complex, Complex>(a, z);
      for (int i = 0; i <= j; ++i) {
        H(i, j) = inner(basis[i], w);
        for (int r = 0; r < n; ++r) {
          w[r] -= H(i, j) * basis[i][r];
        }
      }
      const double hn = norm2(w);
      H(j + 1, j) = hn;
      if (hn > 0.0) {
        for (int r = 0; r < n; ++r) {
          basis[j + 1][r] = w[r] / hn;
        }
      }
      for (int i = 0; i < j; ++i) {
        const Complex t = std::conj(cs[i]) * H(i, j) + std::conj(sn[i]) * H(i + 1, j);
        H(i + 1, j) = -sn[i] * H(i, j) + cs[i] * H(i + 1, j);
        H(i, j) = t;
      }
      const double denom = std::sqrt(std::norm(H(j, j)) + std::norm(H(j + 1, j)));
      if (denom == 0.0) {
        cs[j] = 1.0;
        sn[j] = 0.0;
      } else {
        cs[j] = H(j, j) / denom;
        sn[j] = H(j + 1, j) / denom;
      }
      H(j, j) = denom;
      H(j + 1, j) = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = std::conj(cs[j]) * g[j];
      report.residual_history.push_back(std::abs(g[j + 1]) / bnorm);
      if (std::abs(g[j + 1]) / bnorm <= options.tolerance || hn == 0.0) {
        ++j;
        ++total;
        break;
      }
    }
    // Back substitution for the Krylov coefficients, then x += M^{-1} V y.
    std::vector<Complex> y(j);
    for (int i = j - 1; i >= 0; --i) {
      Complex s = g[i];
      for (int k = i + 1; k < j; ++k) {
        s -= H(i, k) * y[k];
      }
      y[i] = s / H(i, i);
    }
    std::fill(w.begin(), w.end(), Complex(0.0));
    for (int k = 0; k < j; ++k) {
      for (int r = 0; r < n; ++r) {
        w[r] += y[k] * basis[k][r];
      }
    }
    ilu.apply(w, z);
    for (int r = 0; r < n; ++r) {
      report.x[r] += z[r];
    }
  }
  report.iterations = total;
  return report;
}

}  // namespace

double relative_residual(const ComplexSparseMatrix& a, std::span<const Complex> x,
                         std::span<const Complex> b) {
  auto r = multiply<Complex, Complex>(a, x);
  const double bn = norm2(b);
  if (bn == 0.0) {
    return norm2(r);
  }
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] -= b[i];
  }
  return norm2(r) / bn;
}

SolveReport solve(const ComplexSparseMatrix& a, std::span<const Complex> b,
                  const SolverOptions& options) {
  check_square(a, b);
  const auto start = std::chrono::steady_clock::now();
  SolveReport report =
      options.kind == SolverKind::Lu ? solve_lu(a, b) : solve_gmres(a, b, options);
  report.relative_residual = relative_residual(a, report.x, b);
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

SolverKind parse_solver_kind(const std::string& name) {
  if (name == "lu") {
    return SolverKind::Lu;
  }
  if (name == "gmres") {
    return SolverKind::Gmres;
  }
  throw std::invalid_argument("unknown solver '" + name + "' (expected lu or gmres)");
}

}  // namespace maxwell
