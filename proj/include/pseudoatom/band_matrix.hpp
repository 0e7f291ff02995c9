#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace pseudoatom::linalg {

  /// Symmetric matrix with `bandwidth` sub-diagonals, stored one diagonal per row:
  /// diagonal d holds A(i+d, i) for i = 0 .. n-d-1.
  class SymmetricBandMatrix {
  public:
    SymmetricBandMatrix() = default;
    SymmetricBandMatrix(std::size_t n, std::size_t bandwidth);

    std::size_t size() const { return n_; }
    std::size_t bandwidth() const { return bw_; }

    /// Element (i, j); zero outside the band.
    double operator()(std::size_t i, std::size_t j) const;

    /// Writable element, i and j in either order; |i - j| must be within the band.
    double& at(std::size_t i, std::size_t j);

    std::span<const double> diagonal(std::size_t d) const;

    /// y = A x
    void multiply(std::span<const double> x, std::span<double> y) const;

    /// x^T A y
    double bilinear(std::span<const double> x, std::span<const double> y) const;

    double max_abs() const;
    /// Maximum absolute row sum.
    double norm_inf() const;

    /// Row-major dense copy.
    std::vector<double> dense() const;

    /// A + sigma B over the common band; both operands must share size and bandwidth.
    SymmetricBandMatrix shifted(double sigma, const SymmetricBandMatrix& b) const;

    /// Plain-text dump: "# symmetric-band <n> <bandwidth>" followed by one
    /// line per stored diagonal, %.17g separated by spaces.
    void write(std::ostream& os) const;
    static SymmetricBandMatrix read(std::istream& is);

  private:
    std::size_t n_ = 0;
    std::size_t bw_ = 0;
    std::vector<double> data_;
  };

  /// Banded Cholesky factor S = L L^T; L keeps the bandwidth of S.
  class BandCholesky {
  public:
    /// Throws FactorizationError on a non-positive pivot.
    explicit BandCholesky(const SymmetricBandMatrix& s);

    std::size_t size() const { return n_; }

    /// Solves L y = b in place.
    void solve_lower(std::span<double> b) const;
    /// Solves L^T x = y in place.
    void solve_upper(std::span<double> y) const;

  private:
    double l(std::size_t i, std::size_t j) const { return data_[(i - j) * n_ + j]; }

    std::size_t n_;
    std::size_t bw_;
    std::vector<double> data_; // same layout as SymmetricBandMatrix
  };

  /// LU factorization with partial pivoting of a (possibly indefinite) symmetric band matrix.
  class BandLU {
  public:
    explicit BandLU(const SymmetricBandMatrix& a);

    /// Solves A x = b in place. Exactly singular pivots are replaced by a tiny
    /// multiple of the matrix norm, which is what inverse iteration wants.
    void solve(std::span<double> b) const;

  private:
    // Column-major band storage: element (i, j) at (ku + i - j) + j * ld.
    // ku = 2 * bandwidth leaves room for the fill-in from row interchanges.
    std::size_t n_, kl_, ku_, ld_;
    std::vector<double> ab_;
    std::vector<std::size_t> pivots_;

    double& a(std::size_t i, std::size_t j) { return ab_[ku_ + i - j + j * ld_]; }
    double a(std::size_t i, std::size_t j) const { return ab_[ku_ + i - j + j * ld_]; }
  };

} // namespace pseudoatom::linalg
