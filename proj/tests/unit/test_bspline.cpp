#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "pseudoatom/bspline.hpp"
#include "pseudoatom/errors.hpp"

using namespace pseudoatom::bspline;

namespace {

  std::vector<double> random_radii(double r_max, int count, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> r(count);
    // Log-uniform over [1e-5, r_max] so the dense inner grid is sampled too.
    for (auto& x : r) x = 1e-5 * std::pow(r_max / 1e-5, u(rng));
    return r;
  }

} // namespace

TEST(Knots, PaperGridCounts) {
  const auto b = make_knots(200.0, 600, 10, KnotKind::ExpLinear, 1e-4);
  EXPECT_EQ(b.n_splines(), 600);
  EXPECT_EQ(b.n_active(), 598);
  // splines = breakpoints + order - 2
  ASSERT_EQ(b.breakpoints().size(), 592u);
  EXPECT_EQ(b.n_intervals(), 591);
  EXPECT_EQ(b.breakpoints().front(), 0.0);
  EXPECT_DOUBLE_EQ(b.breakpoints()[1], 1e-4);
  EXPECT_DOUBLE_EQ(b.breakpoints().back(), 200.0);
  EXPECT_EQ(b.knots().size(), 610u);
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(b.knots()[i], 0.0);
    EXPECT_EQ(b.knots()[609 - i], 200.0);
  }
  const auto bp = b.breakpoints();
  for (std::size_t i = 1; i < bp.size(); ++i) EXPECT_LT(bp[i - 1], bp[i]);
}

TEST(Knots, ExpLinearShape) {
  const auto b = make_knots(200.0, 600, 10, KnotKind::ExpLinear, 1e-4);
  const auto bp = b.breakpoints();
  // Geometric head: constant ratio between successive steps.
  const double q = (bp[3] - bp[2]) / (bp[2] - bp[1]);
  EXPECT_GT(q, 1.0);
  EXPECT_NEAR((bp[10] - bp[9]) / (bp[9] - bp[8]), q, 1e-10 * q);
  // Uniform tail.
  const double h = bp[590] - bp[589];
  for (std::size_t i = 400; i < 590; ++i) EXPECT_NEAR(bp[i + 1] - bp[i], h, 1e-9 * h);
  // Past the first breakpoint, steps never shrink.
  for (std::size_t i = 3; i < bp.size(); ++i) EXPECT_GE(bp[i] - bp[i - 1], (bp[i - 1] - bp[i - 2]) * (1 - 1e-9));
}

TEST(Knots, LinearSpacing) {
  const auto b = make_knots(10.0, 23, 3, KnotKind::Linear);
  ASSERT_EQ(b.n_intervals(), 21);
  for (int i = 0; i < b.n_intervals(); ++i)
    EXPECT_NEAR(b.breakpoints()[i + 1] - b.breakpoints()[i], 10.0 / 21.0, 1e-14);
}

TEST(Knots, InvalidArguments) {
  EXPECT_THROW(make_knots(10.0, 20, 10, KnotKind::Linear), std::invalid_argument);
  EXPECT_THROW(make_knots(10.0, 40, 1, KnotKind::Linear), std::invalid_argument);
  EXPECT_THROW(make_knots(10.0, 40, 16, KnotKind::Linear), std::invalid_argument);
  EXPECT_THROW(make_knots(-1.0, 40, 4, KnotKind::Linear), std::invalid_argument);
  EXPECT_THROW(make_knots(10.0, 40, 4, KnotKind::ExpLinear, 20.0), std::invalid_argument);
  EXPECT_THROW(KnotBasis(4, {0.0, 1.0, 1.0, 2.0}), std::invalid_argument);
  EXPECT_THROW(KnotBasis(4, {0.5, 1.0, 2.0}), std::invalid_argument);
  EXPECT_EQ(parse_knot_kind("linear"), KnotKind::Linear);
  EXPECT_EQ(parse_knot_kind(to_string(KnotKind::ExpLinear)), KnotKind::ExpLinear);
  EXPECT_THROW(parse_knot_kind("chebyshev"), pseudoatom::ConfigError);
}

TEST(Knots, FindInterval) {
  const auto b = make_knots(10.0, 23, 3, KnotKind::Linear);
  EXPECT_EQ(b.find_interval(0.0), 0);
  EXPECT_EQ(b.find_interval(10.0), 20);
  EXPECT_EQ(b.find_interval(10.0 / 21.0 * 5.5), 5);
  EXPECT_THROW(b.find_interval(-1e-9), std::out_of_range);
  EXPECT_THROW(b.find_interval(10.000001), std::out_of_range);
}

TEST(Basis, PartitionOfUnity) {
  const auto b = make_knots(200.0, 600, 10, KnotKind::ExpLinear, 1e-4);
  double worst = 0.0;
  for (double r : random_radii(200.0, 1000, 7)) {
    double sum = 0.0;
    for (int i = 0; i < b.n_splines(); ++i) sum += b.eval(i, r);
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(Basis, PartitionOfUnityLowOrder) {
  for (int k : {2, 3, 4, 7, 15}) {
    const auto b = make_knots(5.0, 4 * k, k, KnotKind::ExpLinear, 1e-3);
    for (double r : random_radii(5.0, 200, 11 + k)) {
      double sum = 0.0;
      for (int i = 0; i < b.n_splines(); ++i) sum += b.eval(i, r);
      EXPECT_NEAR(sum, 1.0, 1e-12) << "order " << k << " r " << r;
    }
  }
}

TEST(Basis, DerivativeMatchesFiniteDifference) {
  const auto b = make_knots(200.0, 600, 10, KnotKind::ExpLinear, 1e-4);
  const double h = 1e-6;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  while (checked < 300) {
    const int j = static_cast<int>(u(rng) * b.n_intervals());
    const double a = b.breakpoints()[j], c = b.breakpoints()[j + 1];
    // With h = 1e-6 the difference quotient itself is only good to ~1e-6 on
    // intervals wider than ~1e-2; finer intervals are covered below.
    if (c - a < 1e-2) continue;
    const double r = a + (0.1 + 0.8 * u(rng)) * (c - a);
    for (int i = j; i < j + b.order(); ++i) {
      const double fd = (b.eval(i, r + h) - b.eval(i, r - h)) / (2 * h);
      EXPECT_NEAR(b.eval(i, r, 1), fd, 1e-6) << "spline " << i << " r " << r;
    }
    ++checked;
  }
}

TEST(Basis, DerivativeOnFineInnerIntervals) {
  // Step scaled to the interval; fourth-order difference so truncation stays below roundoff.
  const auto b = make_knots(200.0, 600, 10, KnotKind::ExpLinear, 1e-4);
  for (int j = 0; j < 150; j += 3) {
    const double a = b.breakpoints()[j], c = b.breakpoints()[j + 1];
    const double r = a + 0.37 * (c - a), h = 1e-3 * (c - a);
    for (int i = j; i < j + b.order(); ++i) {
      const double fd = (8.0 * (b.eval(i, r + h) - b.eval(i, r - h)) - (b.eval(i, r + 2 * h) - b.eval(i, r - 2 * h))) /
                        (12.0 * h);
      const double exact = b.eval(i, r, 1);
      EXPECT_NEAR(exact, fd, 1e-7 * (std::abs(exact) + 1.0 / (c - a))) << "spline " << i << " interval " << j;
    }
  }
}

TEST(Basis, EvaluateMatchesEval) {
  const auto b = make_knots(20.0, 40, 6, KnotKind::ExpLinear, 1e-2);
  std::vector<double> v(6), d(6);
  for (double r : random_radii(20.0, 50, 5)) {
    const int j = b.find_interval(r);
    b.evaluate(j, r, v, d);
    for (int m = 0; m < 6; ++m) {
      EXPECT_NEAR(v[m], b.eval(j + m, r), 1e-15);
      EXPECT_NEAR(d[m], b.eval(j + m, r, 1), 1e-12 * (1 + std::abs(d[m])));
    }
  }
}

TEST(Basis, CompactSupport) {
  const auto b = make_knots(30.0, 60, 5, KnotKind::ExpLinear, 1e-3);
  for (double r : random_radii(30.0, 300, 13)) {
    int nonzero = 0, first = -1;
    for (int i = 0; i < b.n_splines(); ++i)
      if (b.eval(i, r) != 0.0) {
        if (first < 0) first = i;
        ++nonzero;
        EXPECT_LT(i - first, b.order());
      }
    EXPECT_LE(nonzero, b.order());
  }
}

TEST(Basis, HatFunctionsAtOwnNode) {
  const auto b = make_knots(4.0, 9, 2, KnotKind::Linear);
  for (int i = 1; i + 1 < b.n_splines(); ++i) {
    EXPECT_NEAR(b.eval(i, b.breakpoints()[i]), 1.0, 1e-15);
    EXPECT_NEAR(b.eval(i, b.breakpoints()[i - 1]), 0.0, 1e-15);
  }
}

TEST(Basis, TrimmedFunctionsVanishAtBoundaries) {
  const auto b = make_knots(200.0, 600, 10, KnotKind::ExpLinear, 1e-4);
  for (int i = b.first_active(); i < b.first_active() + b.n_active(); ++i) {
    EXPECT_EQ(b.eval(i, 0.0), 0.0);
    EXPECT_EQ(b.eval(i, 200.0), 0.0);
  }
  EXPECT_NEAR(b.eval(0, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(b.eval(599, 200.0), 1.0, 1e-15);
}

TEST(GaussLegendre, Properties) {
  for (int n : {1, 2, 5, 10, 20, 30}) {
    const auto g = gauss_legendre(n);
    ASSERT_EQ(g.nodes.size(), static_cast<std::size_t>(n));
    EXPECT_NEAR(std::accumulate(g.weights.begin(), g.weights.end(), 0.0), 2.0, 1e-14);
    for (int i = 0; i < n; ++i) {
      EXPECT_GT(g.weights[i], 0.0);
      EXPECT_GT(g.nodes[i], -1.0);
      EXPECT_LT(g.nodes[i], 1.0);
      if (i) {
        EXPECT_LT(g.nodes[i - 1], g.nodes[i]);
      }
    }
    // Exact for x^p, p <= 2n - 1.
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += g.weights[i] * std::pow(g.nodes[i], p);
      const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
      EXPECT_NEAR(s, exact, 1e-14) << "n " << n << " p " << p;
    }
  }
}

TEST(Quadrature, NodesAndWeights) {
  const auto b = make_knots(200.0, 600, 10, KnotKind::ExpLinear, 1e-4);
  const QuadratureRule q(b, 20);
  EXPECT_EQ(q.n_intervals(), b.n_intervals());
  EXPECT_EQ(q.all_nodes().size(), static_cast<std::size_t>(20 * b.n_intervals()));
  for (int j = 0; j < q.n_intervals(); ++j) {
    const double a = b.breakpoints()[j], c = b.breakpoints()[j + 1];
    double w = 0.0;
    for (std::size_t i = 0; i < q.nodes(j).size(); ++i) {
      EXPECT_GT(q.nodes(j)[i], a);
      EXPECT_LT(q.nodes(j)[i], c);
      EXPECT_GT(q.weights(j)[i], 0.0);
      w += q.weights(j)[i];
    }
    EXPECT_NEAR(w, c - a, 1e-14 * (c - a) + 1e-16);
  }
  EXPECT_NEAR(q.integrate([](double) { return 1.0; }), 200.0, 1e-11);
}

TEST(Quadrature, PolynomialExactnessOnOneInterval) {
  const auto b = make_knots(10.0, 13, 3, KnotKind::Linear);
  const int n = 4;
  const QuadratureRule q(b, n);
  const int j = 3;
  const double a = b.breakpoints()[j], c = b.breakpoints()[j + 1];
  const auto poly = [](double x) { return 2.0 - x + 0.5 * x * x * x - 0.25 * std::pow(x, 7); };
  const auto prim = [](double x) { return 2.0 * x - 0.5 * x * x + 0.125 * std::pow(x, 4) - std::pow(x, 8) / 32.0; };
  double s = 0.0;
  for (std::size_t i = 0; i < q.nodes(j).size(); ++i) s += q.weights(j)[i] * poly(q.nodes(j)[i]);
  const double exact = prim(c) - prim(a);
  EXPECT_NEAR(s, exact, 1e-13 * std::abs(exact));
}

TEST(Quadrature, ExponentialIntegral) {
  for (int splines : {60, 200, 600}) {
    const auto b = make_knots(20.0, splines, 10, KnotKind::ExpLinear, 1e-4);
    const QuadratureRule q(b, 20);
    EXPECT_NEAR(q.integrate([](double r) { return std::exp(-2.0 * r); }), 0.5 * (1.0 - std::exp(-40.0)), 1e-12);
  }
}
