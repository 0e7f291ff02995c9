#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "pseudoatom/eigensolver.hpp"
#include "pseudoatom/errors.hpp"
#include "pseudoatom/radial_operators.hpp"

using namespace pseudoatom;
using linalg::SymmetricBandMatrix;

namespace {

  Eigen::MatrixXd to_eigen(const SymmetricBandMatrix& m) {
    const auto d = m.dense();
    const auto n = static_cast<Eigen::Index>(m.size());
    return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(d.data(), n, n);
  }

  Eigen::VectorXd dense_pencil_eigenvalues(const SymmetricBandMatrix& h, const SymmetricBandMatrix& s) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(to_eigen(h), to_eigen(s), Eigen::EigenvaluesOnly);
    return ges.eigenvalues();
  }

  // Random symmetric H and a diagonally dominant (hence positive definite) S.
  std::pair<SymmetricBandMatrix, SymmetricBandMatrix> random_pencil(std::size_t n, std::size_t bw, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SymmetricBandMatrix h(n, bw), s(n, bw);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < std::min(n, i + bw + 1); ++j) {
        h.at(j, i) = u(rng);
        s.at(j, i) = 0.5 * u(rng);
      }
    for (std::size_t i = 0; i < n; ++i) s.at(i, i) = 1.0 * (bw + 1) + std::abs(u(rng));
    return {h, s};
  }

  struct HydrogenPair {
    bspline::KnotBasis basis = bspline::make_knots(200.0, 600, 10, bspline::KnotKind::ExpLinear, 1e-4);
    bspline::QuadratureRule quad{basis, 20};
    radial::OperatorPair pair = radial::assemble(basis, quad, hydrogenic_ion(1), 0, PotentialModel::BareCoulomb);
  };

  const HydrogenPair& hydrogen() {
    static const HydrogenPair h;
    return h;
  }

} // namespace

TEST(Tridiagonal, SturmCountAndBisection) {
  // Path-graph Laplacian: eigenvalues 2 - 2 cos(k pi / (n + 1)).
  const std::size_t n = 12;
  eigen::Tridiagonal t{std::vector<double>(n, 2.0), std::vector<double>(n, -1.0)};
  t.offdiagonal[0] = 0.0;
  std::vector<double> exact(n);
  for (std::size_t k = 0; k < n; ++k) exact[k] = 2.0 - 2.0 * std::cos((k + 1) * M_PI / (n + 1));
  EXPECT_EQ(eigen::sturm_count(t, -0.1), 0u);
  EXPECT_EQ(eigen::sturm_count(t, 4.1), n);
  EXPECT_EQ(eigen::sturm_count(t, 0.5 * (exact[3] + exact[4])), 4u);
  const auto ev = eigen::bisect_lowest(t, n, 1e-15);
  for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(ev[k], exact[k], 1e-14);
}

TEST(Tridiagonal, HouseholderPreservesSpectrum) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t n = 15;
  Eigen::MatrixXd a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) a(i, j) = a(j, i) = u(rng);
  std::vector<double> rowmajor(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rowmajor[i * n + j] = a(i, j);
  const auto t = eigen::householder_tridiagonalize(rowmajor, n);
  const auto ev = eigen::bisect_lowest(t, n, 1e-15);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(ev[k], es.eigenvalues()[k], 1e-13);
}

TEST(Solver, RandomBandedPencilsMatchDenseReference) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 29;
    const std::size_t bw = std::min<std::size_t>(n - 1, 1 + trial % 6);
    const auto [h, s] = random_pencil(n, bw, rng);
    const auto ref = dense_pencil_eigenvalues(h, s);
    const auto sol = eigen::solve_lowest(h, s, n);
    ASSERT_EQ(sol.count, n);
    const double scale = ref.cwiseAbs().maxCoeff();
    for (std::size_t k = 0; k < n; ++k)
      EXPECT_NEAR(sol.eigenvalues[k], ref[k], 1e-11 * scale) << "trial " << trial << " n " << n << " k " << k;
  }
}

TEST(Solver, ToyPairFullSpectrum) {
  const auto b = bspline::make_knots(30.0, 12, 4, bspline::KnotKind::ExpLinear, 1e-2);
  const bspline::QuadratureRule q(b, 8);
  const auto pair = radial::assemble(b, q, hydrogenic_ion(1), 0, PotentialModel::BareCoulomb);
  ASSERT_EQ(pair.dimension(), 10u);
  const auto ref = dense_pencil_eigenvalues(pair.h_matrix, pair.s_matrix);
  const auto sol = eigen::solve_lowest(pair, 10);
  const double scale = ref.cwiseAbs().maxCoeff();
  for (int k = 0; k < 10; ++k) EXPECT_NEAR(sol.eigenvalues[k], ref[k], 1e-12 * scale);
}

TEST(Solver, HydrogenSeries) {
  const auto sol = eigen::solve_lowest(hydrogen().pair, 6);
  for (int i = 0; i < 6; ++i) {
    const double nu = i + 1;
    EXPECT_NEAR(sol.eigenvalues[i], -0.5 / (nu * nu), i < 4 ? 1e-9 : 1e-8);
  }
  EXPECT_NEAR(sol.eigenvalues[2], -0.0555556, 1e-7);
}

TEST(Solver, SolutionInvariants) {
  const auto& pair = hydrogen().pair;
  const auto sol = eigen::solve_lowest(pair, 8);
  ASSERT_EQ(sol.count, 8u);
  for (std::size_t i = 0; i < 8; ++i) {
    if (i) {
      EXPECT_LT(sol.eigenvalues[i - 1], sol.eigenvalues[i]);
    }
    EXPECT_LE(sol.residual_norms[i], 1e-10);
    for (std::size_t j = 0; j <= i; ++j)
      EXPECT_NEAR(pair.s_matrix.bilinear(sol.vectors[i], sol.vectors[j]), i == j ? 1.0 : 0.0, 1e-10);
    EXPECT_NEAR(eigen::radial_expectation(sol, pair, i), sol.eigenvalues[i], 1e-10);

    // Residual recomputed independently.
    const std::size_t n = pair.dimension();
    std::vector<double> hc(n), sc(n);
    pair.h_matrix.multiply(sol.vectors[i], hc);
    pair.s_matrix.multiply(sol.vectors[i], sc);
    double r2 = 0.0;
    for (std::size_t m = 0; m < n; ++m) r2 += std::pow(hc[m] - sol.eigenvalues[i] * sc[m], 2);
    EXPECT_LE(std::sqrt(r2), 1e-10 * pair.h_matrix.norm_inf());
  }
  EXPECT_THROW(eigen::radial_expectation(sol, pair, 8), std::out_of_range);
}

TEST(Solver, ShiftInvariance) {
  const auto& pair = hydrogen().pair;
  const auto base = eigen::solve_lowest(pair, 5);
  for (double sigma : {0.75, -3.0, 12.5}) {
    const auto shifted = eigen::solve_lowest(pair.h_matrix.shifted(sigma, pair.s_matrix), pair.s_matrix, 5);
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(shifted.eigenvalues[i], base.eigenvalues[i] + sigma, 1e-12);
  }
  std::mt19937_64 rng(9);
  const auto [h, s] = random_pencil(25, 4, rng);
  const auto a = eigen::solve_lowest(h, s, 25);
  const auto b = eigen::solve_lowest(h.shifted(-1.25, s), s, 25);
  for (int i = 0; i < 25; ++i) EXPECT_NEAR(b.eigenvalues[i], a.eigenvalues[i] - 1.25, 1e-12);
}

TEST(Solver, Deterministic) {
  const auto a = eigen::solve_lowest(hydrogen().pair, 3);
  const auto b = eigen::solve_lowest(hydrogen().pair, 3);
  EXPECT_EQ(a.eigenvalues, b.eigenvalues);
  EXPECT_EQ(a.vectors, b.vectors);
}

TEST(Solver, SignConvention) {
  const auto sol = eigen::solve_lowest(hydrogen().pair, 4);
  for (const auto& v : sol.vectors) {
    const auto it = std::max_element(v.begin(), v.end(), [](double x, double y) { return std::abs(x) < std::abs(y); });
    EXPECT_GT(*it, 0.0);
  }
}

TEST(Solver, ErrorPaths) {
  SymmetricBandMatrix h(4, 1), s(4, 1);
  for (std::size_t i = 0; i < 4; ++i) {
    h.at(i, i) = static_cast<double>(i);
    s.at(i, i) = 1.0;
  }
  EXPECT_THROW(eigen::solve_lowest(h, s, 0), std::invalid_argument);
  EXPECT_THROW(eigen::solve_lowest(h, s, 5), std::invalid_argument);

  auto indefinite = s;
  indefinite.at(2, 2) = -1.0;
  EXPECT_THROW(eigen::solve_lowest(h, indefinite, 2), FactorizationError);

  auto degenerate = h;
  degenerate.at(1, 1) = 0.0;
  EXPECT_THROW(eigen::solve_lowest(degenerate, s, 3), ConvergenceError);
}

TEST(BandLinearAlgebra, CholeskyAndLUSolve) {
  std::mt19937_64 rng(77);
  const auto [h, s] = random_pencil(20, 3, rng);
  std::vector<double> b(20);
  for (std::size_t i = 0; i < 20; ++i) b[i] = std::sin(1.0 + i);

  const Eigen::VectorXd rhs = Eigen::Map<Eigen::VectorXd>(b.data(), 20);
  const Eigen::VectorXd xs = to_eigen(s).ldlt().solve(rhs);
  const Eigen::VectorXd xh = to_eigen(h).fullPivLu().solve(rhs);

  auto y = b;
  const linalg::BandCholesky chol(s);
  chol.solve_lower(y);
  chol.solve_upper(y);
  for (std::size_t i = 0; i < 20; ++i) EXPECT_NEAR(y[i], xs[i], 1e-12 * xs.cwiseAbs().maxCoeff());

  auto z = b;
  linalg::BandLU(h).solve(z);
  for (std::size_t i = 0; i < 20; ++i) EXPECT_NEAR(z[i], xh[i], 1e-10 * xh.cwiseAbs().maxCoeff());
}

TEST(BandLinearAlgebra, MatrixHelpers) {
  SymmetricBandMatrix m(5, 2);
  m.at(0, 0) = 2.0;
  m.at(2, 0) = -1.0;
  m.at(3, 4) = 3.0;
  EXPECT_EQ(m(0, 2), -1.0);
  EXPECT_EQ(m(4, 3), 3.0);
  EXPECT_EQ(m(0, 4), 0.0);
  EXPECT_THROW(m.at(0, 4), std::out_of_range);
  EXPECT_EQ(m.max_abs(), 3.0);
  EXPECT_EQ(m.norm_inf(), 3.0);
  const std::vector<double> x{1, 2, 3, 4, 5};
  std::vector<double> y(5);
  m.multiply(x, y);
  EXPECT_EQ(y, (std::vector<double>{-1.0, 0.0, -1.0, 15.0, 12.0}));
  EXPECT_EQ(m.bilinear(x, x), -6.0 + 2.0 + 120.0);
}
