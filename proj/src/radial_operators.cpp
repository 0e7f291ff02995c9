#include "pseudoatom/radial_operators.hpp"

#include <array>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace pseudoatom::radial {

  namespace {

    // Accumulates w * f(r) * B_a B_b and w * g(r) * B'_a B'_b over the quadrature,
    // restricted to the trimmed basis. `weight_fn(r)` returns {value-weight, derivative-weight}.
    template <typename WeightFn>
    linalg::SymmetricBandMatrix integrate_products(const bspline::KnotBasis& basis,
                                                   const bspline::QuadratureRule& quad,
                                                   WeightFn&& weight_fn) {
      if (quad.n_intervals() != basis.n_intervals())
        throw std::invalid_argument("quadrature rule does not match the basis intervals");

      const int k = basis.order();
      const int first = basis.first_active();
      const int n_active = basis.n_active();
      linalg::SymmetricBandMatrix m(static_cast<std::size_t>(n_active), static_cast<std::size_t>(k - 1));

      std::array<double, bspline::KnotBasis::max_order> b{}, db{};
      for (int interval = 0; interval < basis.n_intervals(); ++interval) {
        const auto nodes = quad.nodes(interval);
        const auto weights = quad.weights(interval);
        for (std::size_t q = 0; q < nodes.size(); ++q) {
          const double r = nodes[q];
          basis.evaluate(interval, r, std::span(b).first(k), std::span(db).first(k));
          const auto [fv, fd] = weight_fn(r);
          const double wv = weights[q] * fv;
          const double wd = weights[q] * fd;
          for (int a = 0; a < k; ++a) {
            const int i = interval + a - first;
            if (i < 0 || i >= n_active) continue;
            for (int c = 0; c <= a; ++c) {
              const int j = interval + c - first;
              if (j < 0) continue;
              m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) +=
                  wv * b[a] * b[c] + wd * db[a] * db[c];
            }
          }
        }
      }
      return m;
    }

  } // namespace

  OperatorPair assemble(const bspline::KnotBasis& basis, const bspline::QuadratureRule& quad,
                        const AtomSpec& atom, int l, PotentialModel model) {
    if (l < 0) throw std::invalid_argument("angular momentum must be non-negative");
    const RadialPotential potential(model, atom.Z, atom.n_electrons, l);
    const double barrier = 0.5 * l * (l + 1);

    OperatorPair pair;
    pair.h_matrix = integrate_products(basis, quad, [&](double r) {
      return std::pair{barrier / (r * r) + potential(r), 0.5};
    });
    pair.s_matrix = integrate_products(basis, quad, [](double) { return std::pair{1.0, 0.0}; });
    pair.channel_l = l;
    pair.model = model;
    pair.atom = atom;
    return pair;
  }

  linalg::SymmetricBandMatrix centrifugal_matrix(const bspline::KnotBasis& basis,
                                                 const bspline::QuadratureRule& quad, int l) {
    const double barrier = 0.5 * l * (l + 1);
    return integrate_products(basis, quad, [&](double r) { return std::pair{barrier / (r * r), 0.0}; });
  }

  BandProfile band_profile(const OperatorPair& pair) {
    return {pair.h_matrix.size(), pair.h_matrix.bandwidth()};
  }

  void write_pair(std::ostream& os, const OperatorPair& pair) {
    os << "# atom " << pair.atom.name << " l " << pair.channel_l << " model " << to_string(pair.model) << '\n';
    os << "# H\n";
    pair.h_matrix.write(os);
    os << "# S\n";
    pair.s_matrix.write(os);
  }

} // namespace pseudoatom::radial
