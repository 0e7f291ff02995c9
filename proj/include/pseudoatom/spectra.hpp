#pragma once

// Physical outputs built from single-channel solves: labeled states with the
// m/n permutation scaling, ionization potentials and the three reproduction
// tables (ionization potentials, helium binding energies, lithium spectrum).

#include <string>
#include <vector>

#include "pseudoatom/bspline.hpp"
#include "pseudoatom/catalog.hpp"
#include "pseudoatom/eigensolver.hpp"
#include "pseudoatom/model.hpp"
#include "pseudoatom/units.hpp"

namespace pseudoatom::spectra {

  /// Numerical basis configuration; defaults are the production settings.
  struct BasisSettings {
    int n_splines = 600;
    int order = 10;
    double r_max = 200.0;
    bspline::KnotKind knots = bspline::KnotKind::ExpLinear;
    double r_first = 1e-4;
    /// Gauss-Legendre nodes per breakpoint interval; 0 selects 2 * order.
    int nodes_per_interval = 0;
    eigen::SolverSettings solver;

    int quadrature_nodes() const { return nodes_per_interval > 0 ? nodes_per_interval : 2 * order; }
  };

  struct LabeledState {
    int nu = 1;
    int l = 0;
    double raw_energy = 0.0;    // eigenvalue, hartree
    double scaled_energy = 0.0; // (m/n) * raw_energy, hartree
    PotentialModel model = PotentialModel::BareCoulomb;
    /// Effective Coulomb charge when the model is purely Coulombic, 0 otherwise.
    double coulomb_charge = 0.0;
  };

  /// Basis and quadrature built once and reused for every channel.
  class RadialSolver {
  public:
    explicit RadialSolver(BasisSettings settings = {});

    const BasisSettings& settings() const { return settings_; }
    const bspline::KnotBasis& basis() const { return basis_; }
    const bspline::QuadratureRule& quadrature() const { return quad_; }

    /// Lowest `count` states of channel l, labeled nu = l+1, l+2, ...
    std::vector<LabeledState> solve_channel(const AtomSpec& atom, PotentialModel model, int l, int count) const;

  private:
    BasisSettings settings_;
    bspline::KnotBasis basis_;
    bspline::QuadratureRule quad_;
  };

  std::vector<LabeledState> solve_channel(const AtomSpec& atom, PotentialModel model, int l, int count,
                                          const BasisSettings& settings = {});

  /// One computed table entry and the states it was built from.
  struct TableRow {
    std::string label;
    double value_ev = 0.0;
    std::vector<LabeledState> sources;
  };

  /// Ionization potential in eV. n >= 3: minus the scaled valence eigenvalue.
  /// Two electrons: 4 |e_1s| - Z^2/2 (total binding minus the hydrogenic ion).
  TableRow ionization_potential(const RadialSolver& solver, const AtomSpec& atom, PotentialModel model,
                                const UnitSystem& units);

  /// Ionization potentials of every catalog atom, in catalog order.
  std::vector<TableRow> ionization_table(const RadialSolver& solver, PotentialModel model, const UnitSystem& units,
                                         int mg_permutations = 3);

  /// Helium binding energies for 1s, 2s, 2p, 3s, 3p, 3d (eV, positive).
  ///
  /// Ground row: 4 |e_1s|. Excited rows: frozen hydrogenic inner electron
  /// Z^2/2 plus |e| of the screened outer electron.
  std::vector<TableRow> helium_binding_table(const RadialSolver& solver, PotentialModel model,
                                             const UnitSystem& units);

  /// Scaled lithium eigenvalues (eV, negative) for 2s .. 4f with m/n = 2/3.
  std::vector<TableRow> lithium_spectrum(const RadialSolver& solver, PotentialModel model, const UnitSystem& units);

  inline constexpr double helium_ground_factor = 4.0;

} // namespace pseudoatom::spectra
