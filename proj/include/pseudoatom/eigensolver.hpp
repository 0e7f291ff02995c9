#pragma once

#include <cstddef>
#include <vector>

#include "pseudoatom/band_matrix.hpp"

namespace pseudoatom::radial {
  struct OperatorPair;
}

namespace pseudoatom::eigen {

  struct SolverSettings {
    double bisection_rel_tol = 1e-14;
    int inverse_iteration_max = 50;
    /// Relative spacing below which two eigenvalues count as degenerate.
    double degeneracy_tol = 1e-12;
  };

  /// Lowest eigenpairs of H c = e S c.
  struct EigenSolution {
    std::vector<double> eigenvalues;          // ascending, hartree
    std::vector<std::vector<double>> vectors; // S-normalized
    std::vector<double> residual_norms;       // ||H c - e S c||_2 / ||H||_inf
    std::size_t count = 0;
  };

  struct Tridiagonal {
    std::vector<double> diagonal;
    std::vector<double> offdiagonal; // offdiagonal[i] couples i-1 and i; offdiagonal[0] = 0
  };

  /// Householder reduction of a dense symmetric matrix (row-major, n x n) to
  /// tridiagonal form. Eigenvalues only; the transformations are discarded.
  Tridiagonal householder_tridiagonalize(std::vector<double> a, std::size_t n);

  /// Number of eigenvalues of `t` strictly below x.
  std::size_t sturm_count(const Tridiagonal& t, double x);

  /// The k smallest eigenvalues of `t` by bisection on Sturm counts.
  std::vector<double> bisect_lowest(const Tridiagonal& t, std::size_t k, double rel_tol);

  /// Cholesky-reduced standard form L^{-1} H L^{-T}, dense row-major.
  std::vector<double> reduce_to_standard(const linalg::SymmetricBandMatrix& h,
                                         const linalg::SymmetricBandMatrix& s);

  /// The `k_states` algebraically smallest eigenpairs of the symmetric-definite pencil (h, s).
  ///
  /// Eigenvalue estimates come from the Cholesky-reduced tridiagonal form;
  /// each pair is then refined by inverse iteration directly on the band
  /// pencil and reported as its Rayleigh quotient.
  ///
  /// Throws FactorizationError if s is not positive definite, ConvergenceError
  /// on a degenerate spectrum or when inverse iteration stalls.
  EigenSolution solve_lowest(const linalg::SymmetricBandMatrix& h, const linalg::SymmetricBandMatrix& s,
                             std::size_t k_states, const SolverSettings& settings = {});

  EigenSolution solve_lowest(const radial::OperatorPair& pair, std::size_t k_states,
                             const SolverSettings& settings = {});

  /// c^T H c / c^T S c for one converged state.
  double radial_expectation(const EigenSolution& solution, const radial::OperatorPair& pair, std::size_t state);

} // namespace pseudoatom::eigen
