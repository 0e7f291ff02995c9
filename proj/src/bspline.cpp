#include "pseudoatom/bspline.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "pseudoatom/errors.hpp"

namespace pseudoatom::bspline {

  std::string_view to_string(KnotKind kind) {
    switch (kind) {
    case KnotKind::ExpLinear: return "exp-linear";
    case KnotKind::Linear: return "linear";
    }
    return "unknown";
  }

  KnotKind parse_knot_kind(std::string_view name) {
    if (name == "exp-linear" || name == "explinear") return KnotKind::ExpLinear;
    if (name == "linear") return KnotKind::Linear;
    throw ConfigError("unknown knot kind '" + std::string(name) + "' (expected exp-linear or linear)");
  }

  KnotBasis::KnotBasis(int order, std::vector<double> breakpoints)
      : order_(order), breakpoints_(std::move(breakpoints)) {
    if (order_ < min_order || order_ > max_order)
      throw std::invalid_argument("spline order " + std::to_string(order_) + " outside [2, 15]");
    if (breakpoints_.size() < 2) throw std::invalid_argument("need at least one breakpoint interval");
    if (breakpoints_.front() != 0.0) throw std::invalid_argument("first breakpoint must be 0");
    for (std::size_t i = 1; i < breakpoints_.size(); ++i)
      if (!(breakpoints_[i] > breakpoints_[i - 1]))
        throw std::invalid_argument("breakpoints must be strictly increasing");

    knots_.reserve(breakpoints_.size() + 2 * (order_ - 1));
    knots_.insert(knots_.end(), order_ - 1, breakpoints_.front());
    knots_.insert(knots_.end(), breakpoints_.begin(), breakpoints_.end());
    knots_.insert(knots_.end(), order_ - 1, breakpoints_.back());
  }

  int KnotBasis::find_interval(double r) const {
    if (!(r >= 0.0 && r <= r_max())) {
      std::ostringstream oss;
      oss << "radius " << r << " outside [0, " << r_max() << "]";
      throw std::out_of_range(oss.str());
    }
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), r);
    const int j = static_cast<int>(it - breakpoints_.begin()) - 1;
    return std::min(j, n_intervals() - 1);
  }

  void KnotBasis::evaluate(int interval, double r, std::span<double> values,
                           std::span<double> derivatives) const {
    const int k = order_;
    const int degree = k - 1;
    const int mu = interval + degree; // knots_[mu] = breakpoints_[interval]
    const double* t = knots_.data();

    // Cox-de Boor triangle; `lower` keeps the degree-1 row for derivatives.
    std::array<double, max_order> n{}, lower{}, left{}, right{};
    n[0] = 1.0;
    for (int p = 1; p <= degree; ++p) {
      if (p == degree) std::copy_n(n.begin(), degree, lower.begin());
      left[p] = r - t[mu + 1 - p];
      right[p] = t[mu + p] - r;
      double saved = 0.0;
      for (int q = 0; q < p; ++q) {
        const double temp = n[q] / (right[q + 1] + left[p - q]);
        n[q] = saved + right[q + 1] * temp;
        saved = left[p - q] * temp;
      }
      n[p] = saved;
    }
    if (degree == 0) lower[0] = 0.0;

    if (!values.empty()) std::copy_n(n.begin(), k, values.begin());
    if (!derivatives.empty()) {
      for (int a = 0; a <= degree; ++a) {
        const int i = mu - degree + a;
        double d = 0.0;
        if (a >= 1) d += lower[a - 1] / (t[i + degree] - t[i]);
        if (a <= degree - 1) d -= lower[a] / (t[i + degree + 1] - t[i + 1]);
        derivatives[a] = degree * d;
      }
    }
  }

  double KnotBasis::eval(int index, double r, int derivative_order) const {
    if (index < 0 || index >= n_splines())
      throw std::out_of_range("spline index " + std::to_string(index) + " out of range");
    if (derivative_order != 0 && derivative_order != 1)
      throw std::out_of_range("only derivative orders 0 and 1 are supported");
    const int j = find_interval(r);
    if (index < j || index >= j + order_) return 0.0;

    std::array<double, max_order> out{};
    if (derivative_order == 0)
      evaluate(j, r, std::span(out).first(order_), {});
    else
      evaluate(j, r, {}, std::span(out).first(order_));
    return out[index - j];
  }

  namespace {

    // r_first q^(J-1) + (M-J) r_first q^(J-2) (q-1) - r_max, sign only; increasing in q.
    bool overshoots(double q, double r_first, double r_max, int intervals, int geometric) {
      const double last = std::log(r_first) + (geometric - 1) * std::log(q);
      const double step = std::log(r_first) + (geometric - 2) * std::log(q) + std::log(q - 1.0);
      const double end = std::exp(last) + (intervals - geometric) * std::exp(step);
      return end > r_max;
    }

    std::vector<double> exp_linear_breakpoints(double r_max, int intervals, double r_first) {
      const int geometric = std::max(2, intervals / 5);
      if (geometric >= intervals)
        throw std::invalid_argument("exp-linear grid needs more intervals than its geometric part");

      double lo = 1.0, hi = 2.0;
      while (!overshoots(hi, r_first, r_max, intervals, geometric)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6) throw std::invalid_argument("exp-linear grid: cannot reach r_max");
      }
      for (int it = 0; it < 200 && hi - lo > 4 * std::numeric_limits<double>::epsilon() * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (overshoots(mid, r_first, r_max, intervals, geometric) ? hi : lo) = mid;
      }
      const double q = 0.5 * (lo + hi);

      std::vector<double> b(intervals + 1);
      b[0] = 0.0;
      for (int j = 1; j <= geometric; ++j) b[j] = r_first * std::pow(q, j - 1);
      const double h = b[geometric] - b[geometric - 1];
      for (int j = geometric + 1; j < intervals; ++j) b[j] = b[geometric] + (j - geometric) * h;
      b[intervals] = r_max;
      return b;
    }

  } // namespace

  KnotBasis make_knots(double r_max, int n_splines, int order, KnotKind kind, double r_first) {
    if (order < KnotBasis::min_order || order > KnotBasis::max_order)
      throw std::invalid_argument("spline order must lie in [2, 15]");
    if (n_splines <= 2 * order)
      throw std::invalid_argument("need more than 2*order splines (" + std::to_string(n_splines) + " given)");
    if (!(r_max > 0.0)) throw std::invalid_argument("r_max must be positive");

    const int intervals = n_splines - order + 1;
    std::vector<double> b;
    if (kind == KnotKind::Linear) {
      b.resize(intervals + 1);
      for (int j = 0; j <= intervals; ++j) b[j] = r_max * j / intervals;
    } else {
      if (!(r_first > 0.0 && r_first < r_max))
        throw std::invalid_argument("exp-linear grid needs 0 < r_first < r_max");
      b = exp_linear_breakpoints(r_max, intervals, r_first);
    }
    // the constructor rejects any non-monotone result
    return KnotBasis(order, std::move(b));
  }

  GaussLegendre gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
    GaussLegendre rule{std::vector<double>(n), std::vector<double>(n)};
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 1; j <= n; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
        }
        dp = n * (x * p0 - p1) / (x * x - 1.0);
        const double dx = p0 / dp;
        x -= dx;
        if (std::abs(dx) <= 1e-16) break;
      }
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      rule.nodes[i] = -x;
      rule.nodes[n - 1 - i] = x;
      rule.weights[i] = rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
  }

  QuadratureRule::QuadratureRule(const KnotBasis& basis, int nodes_per_interval)
      : nodes_per_interval_(nodes_per_interval), n_intervals_(basis.n_intervals()) {
    if (nodes_per_interval < 1) throw std::invalid_argument("nodes_per_interval must be >= 1");
    const auto gl = gauss_legendre(nodes_per_interval);
    const auto b = basis.breakpoints();
    nodes_.reserve(static_cast<std::size_t>(n_intervals_) * nodes_per_interval);
    weights_.reserve(nodes_.capacity());
    for (int j = 0; j < n_intervals_; ++j) {
      const double half = 0.5 * (b[j + 1] - b[j]);
      const double mid = 0.5 * (b[j + 1] + b[j]);
      for (int i = 0; i < nodes_per_interval; ++i) {
        nodes_.push_back(mid + half * gl.nodes[i]);
        weights_.push_back(half * gl.weights[i]);
      }
    }
  }

  std::span<const double> QuadratureRule::nodes(int interval) const {
    return std::span(nodes_).subspan(static_cast<std::size_t>(interval) * nodes_per_interval_,
                                     nodes_per_interval_);
  }

  std::span<const double> QuadratureRule::weights(int interval) const {
    return std::span(weights_).subspan(static_cast<std::size_t>(interval) * nodes_per_interval_,
                                       nodes_per_interval_);
  }

} // namespace pseudoatom::bspline
