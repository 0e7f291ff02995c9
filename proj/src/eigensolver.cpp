#include "pseudoatom/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "pseudoatom/errors.hpp"
#include "pseudoatom/radial_operators.hpp"

namespace pseudoatom::eigen {

  namespace {

    constexpr double eps = std::numeric_limits<double>::epsilon();

    double dot(std::span<const double> x, std::span<const double> y) {
      double sum = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
      return sum;
    }

    double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

  } // namespace

  Tridiagonal householder_tridiagonalize(std::vector<double> a, std::size_t n) {
    if (a.size() != n * n) throw std::invalid_argument("dense matrix size mismatch");
    Tridiagonal t{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    auto A = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
    auto& d = t.diagonal;
    auto& e = t.offdiagonal;

    // Reduces from the last row upwards, working on the lower triangle.
    for (std::size_t i = n; i-- > 1;) {
      const std::size_t l = i - 1;
      double h = 0.0;
      if (l > 0) {
        double scale = 0.0;
        for (std::size_t k = 0; k <= l; ++k) scale += std::abs(A(i, k));
        if (scale == 0.0) {
          e[i] = A(i, l);
        } else {
          for (std::size_t k = 0; k <= l; ++k) {
            A(i, k) /= scale;
            h += A(i, k) * A(i, k);
          }
          double f = A(i, l);
          double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
          e[i] = scale * g;
          h -= f * g;
          A(i, l) = f - g;
          f = 0.0;
          for (std::size_t j = 0; j <= l; ++j) {
            g = 0.0;
            for (std::size_t k = 0; k <= j; ++k) g += A(j, k) * A(i, k);
            for (std::size_t k = j + 1; k <= l; ++k) g += A(k, j) * A(i, k);
            e[j] = g / h;
            f += e[j] * A(i, j);
          }
          const double hh = f / (h + h);
          for (std::size_t j = 0; j <= l; ++j) {
            f = A(i, j);
            e[j] = g = e[j] - hh * f;
            for (std::size_t k = 0; k <= j; ++k) A(j, k) -= f * e[k] + g * A(i, k);
          }
        }
      } else {
        e[i] = A(i, l);
      }
    }
    for (std::size_t i = 0; i < n; ++i) d[i] = A(i, i);
    if (n > 0) e[0] = 0.0;
    return t;
  }

  std::size_t sturm_count(const Tridiagonal& t, double x) {
    const auto& d = t.diagonal;
    const auto& e = t.offdiagonal;
    const double pivmin = std::numeric_limits<double>::min() / eps;
    std::size_t count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      q = (i == 0 ? d[0] - x : d[i] - x - e[i] * e[i] / q);
      if (std::abs(q) < pivmin) q = -pivmin;
      if (q < 0.0) ++count;
    }
    return count;
  }

  std::vector<double> bisect_lowest(const Tridiagonal& t, std::size_t k, double rel_tol) {
    const std::size_t n = t.diagonal.size();
    if (k > n) throw std::invalid_argument("more eigenvalues requested than the matrix dimension");

    // Gershgorin enclosure
    double lo = std::numeric_limits<double>::max(), hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
      const double radius = std::abs(t.offdiagonal[i]) + (i + 1 < n ? std::abs(t.offdiagonal[i + 1]) : 0.0);
      lo = std::min(lo, t.diagonal[i] - radius);
      hi = std::max(hi, t.diagonal[i] + radius);
    }
    const double spread = std::max(std::abs(lo), std::abs(hi));
    lo -= 2.0 * eps * spread + std::numeric_limits<double>::min();
    hi += 2.0 * eps * spread + std::numeric_limits<double>::min();

    std::vector<double> values(k);
    double floor = lo;
    for (std::size_t index = 0; index < k; ++index) {
      double a = floor, b = hi;
      // invariant: count(a) <= index < count(b)
      for (int it = 0; it < 400; ++it) {
        const double width = b - a;
        if (width <= rel_tol * std::max(std::abs(a), std::abs(b)) + 4.0 * std::numeric_limits<double>::min())
          break;
        const double mid = a + 0.5 * width;
        if (mid <= a || mid >= b) break;
        (sturm_count(t, mid) > index ? b : a) = mid;
      }
      values[index] = 0.5 * (a + b);
      floor = a;
    }
    return values;
  }

  std::vector<double> reduce_to_standard(const linalg::SymmetricBandMatrix& h,
                                         const linalg::SymmetricBandMatrix& s) {
    const std::size_t n = h.size();
    if (s.size() != n) throw std::invalid_argument("H and S dimensions differ");
    const linalg::BandCholesky chol(s);

    // X = L^{-1} H column by column, stored transposed (row j = column j of X)
    std::vector<double> xt(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      std::span<double> col(xt.data() + j * n, n);
      const std::size_t lo = j > h.bandwidth() ? j - h.bandwidth() : 0;
      const std::size_t hi = std::min(n - 1, j + h.bandwidth());
      for (std::size_t i = lo; i <= hi; ++i) col[i] = h(i, j);
      chol.solve_lower(col);
    }
    // C = L^{-1} X^T: columns of X^T are the rows of X, i.e. row i of X = entries xt[j*n + i]
    std::vector<double> c(n * n, 0.0);
    std::vector<double> work(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) work[j] = xt[j * n + i];
      chol.solve_lower(work);
      for (std::size_t j = 0; j < n; ++j) c[j * n + i] = work[j];
    }
    // symmetrize away rounding
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) {
        const double v = 0.5 * (c[i * n + j] + c[j * n + i]);
        c[i * n + j] = c[j * n + i] = v;
      }
    return c;
  }

  EigenSolution solve_lowest(const linalg::SymmetricBandMatrix& h, const linalg::SymmetricBandMatrix& s,
                             std::size_t k_states, const SolverSettings& settings) {
    const std::size_t n = h.size();
    if (k_states < 1 || k_states > n) {
      std::ostringstream oss;
      oss << "requested " << k_states << " states from a problem of dimension " << n;
      throw std::invalid_argument(oss.str());
    }
    if (s.size() != n || s.bandwidth() != h.bandwidth())
      throw std::invalid_argument("H and S must share dimension and bandwidth");

    // Estimates from the dense standard form. Reversing the index order puts the
    // large near-origin entries where the reduction meets them last.
    std::vector<double> c = reduce_to_standard(h, s);
    std::vector<double> reversed(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) reversed[(n - 1 - i) * n + (n - 1 - j)] = c[i * n + j];
    c.clear();
    c.shrink_to_fit();
    const auto tri = householder_tridiagonalize(std::move(reversed), n);
    const auto estimates = bisect_lowest(tri, k_states, settings.bisection_rel_tol);

    auto degenerate = [&](double a, double b) {
      return std::abs(b - a) <= settings.degeneracy_tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
    };
    for (std::size_t i = 1; i < k_states; ++i)
      if (degenerate(estimates[i - 1], estimates[i])) {
        std::ostringstream oss;
        oss.precision(17);
        oss << "degenerate eigenvalues " << estimates[i - 1] << " and " << estimates[i] << " (states " << i - 1
            << ", " << i << ")";
        throw ConvergenceError(oss.str());
      }

    const double h_norm = h.norm_inf();
    EigenSolution sol;
    sol.eigenvalues.reserve(k_states);
    sol.vectors.reserve(k_states);
    sol.residual_norms.reserve(k_states);

    std::vector<double> x(n), y(n), sx(n), hx(n);
    for (std::size_t state = 0; state < k_states; ++state) {
      double shift = estimates[state];
      auto lu = std::make_unique<linalg::BandLU>(h.shifted(-shift, s));

      // deterministic start vector
      for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.5 * std::sin(0.37 * static_cast<double>(i + state));
      double rho = shift;
      bool converged = false;
      bool reshifted = false;
      for (int sweep = 0; sweep < settings.inverse_iteration_max; ++sweep) {
        s.multiply(x, y);
        lu->solve(y);
        // S-orthogonalize against the states already found
        s.multiply(y, sx);
        for (const auto& prev : sol.vectors) {
          const double overlap = dot(prev, sx);
          for (std::size_t i = 0; i < n; ++i) y[i] -= overlap * prev[i];
        }
        s.multiply(y, sx);
        const double ynorm = std::sqrt(dot(y, sx));
        if (!(ynorm > 0.0) || !std::isfinite(ynorm)) throw ConvergenceError("inverse iteration broke down");
        for (double& v : y) v /= ynorm;
        // align the sign with the previous iterate before measuring the change
        s.multiply(y, sx);
        if (dot(x, sx) < 0.0)
          for (double& v : y) v = -v;

        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) change = std::max(change, std::abs(y[i] - x[i]));
        const double xmax = std::abs(*std::max_element(y.begin(), y.end(), [](double a, double b) {
          return std::abs(a) < std::abs(b);
        }));
        x.swap(y);

        const double rho_prev = rho;
        h.multiply(x, hx);
        s.multiply(x, sx);
        rho = dot(x, hx) / dot(x, sx);

        if (sweep >= 1 && change <= 1e-12 * xmax && std::abs(rho - rho_prev) <= 8.0 * eps * std::max(1.0, std::abs(rho))) {
          converged = true;
          break;
        }
        if (sweep == 4 && !reshifted) {
          shift = rho;
          lu = std::make_unique<linalg::BandLU>(h.shifted(-shift, s));
          reshifted = true;
        }
      }
      if (!converged) {
        std::ostringstream oss;
        oss << "inverse iteration did not converge for state " << state << " within "
            << settings.inverse_iteration_max << " sweeps";
        throw ConvergenceError(oss.str());
      }

      // sign convention: largest-magnitude coefficient positive
      const auto big = std::max_element(x.begin(), x.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
      if (*big < 0.0)
        for (double& v : x) v = -v;

      h.multiply(x, hx);
      s.multiply(x, sx);
      const double norm = dot(x, sx);
      rho = dot(x, hx) / norm;
      for (std::size_t i = 0; i < n; ++i) hx[i] -= rho * sx[i];

      sol.eigenvalues.push_back(rho);
      sol.residual_norms.push_back(norm2(hx) / (std::sqrt(norm) * h_norm));
      sol.vectors.push_back(x);
    }

    for (std::size_t i = 1; i < k_states; ++i)
      if (!(sol.eigenvalues[i] > sol.eigenvalues[i - 1]) || degenerate(sol.eigenvalues[i - 1], sol.eigenvalues[i]))
        throw ConvergenceError("refined eigenvalues are not strictly ascending; the estimates were too coarse");
    sol.count = k_states;
    return sol;
  }

  EigenSolution solve_lowest(const radial::OperatorPair& pair, std::size_t k_states, const SolverSettings& settings) {
    return solve_lowest(pair.h_matrix, pair.s_matrix, k_states, settings);
  }

  double radial_expectation(const EigenSolution& solution, const radial::OperatorPair& pair, std::size_t state) {
    if (state >= solution.count)
      throw std::out_of_range("state " + std::to_string(state) + " not among the converged pairs");
    const auto& c = solution.vectors[state];
    return pair.h_matrix.bilinear(c, c) / pair.s_matrix.bilinear(c, c);
  }

} // namespace pseudoatom::eigen
