#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxwell/sparse.hpp"

namespace maxwell {

enum class SolverKind { Lu, Gmres };

struct SolverOptions {
  SolverKind kind = SolverKind::Lu;
  double tolerance = 1e-10;  // GMRES relative residual target
  int restart = 100;
  int max_iterations = 5000;
};

struct SolveReport {
  std::vector<Complex> x;
  double relative_residual = 0.0;
  SolverKind kind = SolverKind::Lu;
  int iterations = 0;                  // GMRES only
  std::vector<double> residual_history;  // GMRES only
  double factor_nonzeros = 0.0;        // LU only: nnz(L) + nnz(U)
  double seconds = 0.0;
};

/// Singular matrix (with the offending pivot column when known) or GMRES
/// non-convergence (with its residual history).
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::optional<int> pivot, std::vector<double> history = {})
      : std::runtime_error(what), pivot_(pivot), history_(std::move(history)) {}

  [[nodiscard]] std::optional<int> pivot() const { return pivot_; }
  [[nodiscard]] const std::vector<double>& residual_history() const { return history_; }

 private:
  std::optional<int> pivot_;
  std::vector<double> history_;
};

SolveReport solve(const ComplexSparseMatrix& a, std::span<const Complex> b,
                  const SolverOptions& options = {});

/// ||A x - b|| / ||b|| (||A x|| when b = 0).
double relative_residual(const ComplexSparseMatrix& a, std::span<const Complex> x,
                         std::span<const Complex> b);

SolverKind parse_solver_kind(const std::string& name);

}  // namespace maxwell
