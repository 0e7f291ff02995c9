#pragma once

// B-spline radial basis on [0, r_max] with clamped end knots, and the
// interval-wise Gauss-Legendre rule used to integrate against it.

#include <span>
#include <string_view>
#include <vector>

namespace pseudoatom::bspline {

  enum class KnotKind {
    ExpLinear, ///< geometric near the origin, uniform in the tail
    Linear
  };

  std::string_view to_string(KnotKind kind);
  KnotKind parse_knot_kind(std::string_view name);

  class KnotBasis {
  public:
    static constexpr int min_order = 2;
    static constexpr int max_order = 15;

    /// `breakpoints` must start at 0 and be strictly increasing.
    KnotBasis(int order, std::vector<double> breakpoints);

    int order() const { return order_; }
    int n_splines() const { return static_cast<int>(knots_.size()) - order_; }
    int n_intervals() const { return static_cast<int>(breakpoints_.size()) - 1; }
    double r_max() const { return breakpoints_.back(); }

    std::span<const double> breakpoints() const { return breakpoints_; }
    std::span<const double> knots() const { return knots_; }

    // The first and last spline are dropped so that P(0) = P(r_max) = 0.
    int first_active() const { return 1; }
    int n_active() const { return n_splines() - 2; }

    /// Interval index j with breakpoints[j] <= r < breakpoints[j+1]; r_max maps to the last interval.
    int find_interval(double r) const;

    /// Values and first derivatives of the `order()` splines that are nonzero
    /// on `interval`, i.e. B_interval .. B_{interval+order-1}. Either output may be empty.
    void evaluate(int interval, double r, std::span<double> values, std::span<double> derivatives) const;

    /// B_index(r) for derivative_order 0, B'_index(r) for 1.
    double eval(int index, double r, int derivative_order = 0) const;

  private:
    int order_;
    std::vector<double> breakpoints_;
    std::vector<double> knots_;
  };

  /// Build the knot sequence of `n_splines` splines of order `order` on [0, r_max].
  ///
  /// ExpLinear: breakpoints 0, r_first, r_first q, r_first q^2, ... until the
  /// geometric part covers one fifth of the intervals, then uniform spacing
  /// equal to the last geometric step up to r_max. The ratio q is solved so
  /// the grid lands exactly on r_max. `r_first` is ignored for Linear.
  KnotBasis make_knots(double r_max, int n_splines, int order, KnotKind kind, double r_first = 1e-4);

  struct GaussLegendre {
    std::vector<double> nodes;   // ascending, in (-1, 1)
    std::vector<double> weights; // sum to 2
  };

  GaussLegendre gauss_legendre(int n);

  /// Gauss-Legendre nodes mapped onto every breakpoint interval of a basis.
  class QuadratureRule {
  public:
    QuadratureRule(const KnotBasis& basis, int nodes_per_interval);

    int nodes_per_interval() const { return nodes_per_interval_; }
    int n_intervals() const { return n_intervals_; }

    std::span<const double> nodes(int interval) const;
    std::span<const double> weights(int interval) const;

    /// All nodes, interval-major.
    std::span<const double> all_nodes() const { return nodes_; }
    std::span<const double> all_weights() const { return weights_; }

    template <typename F>
    double integrate(F&& f) const {
      double sum = 0.0;
      for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(nodes_[i]);
      return sum;
    }

  private:
    int nodes_per_interval_;
    int n_intervals_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
  };

  inline QuadratureRule make_quadrature(const KnotBasis& basis, int nodes_per_interval) {
    return QuadratureRule(basis, nodes_per_interval);
  }

} // namespace pseudoatom::bspline
