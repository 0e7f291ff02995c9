#pragma once

// Closed-form model mathematics: partition functions, effective charges,
// the two screening pseudopotentials and the hydrogenic oracle.
//
// All energies are in hartree and all radii in bohr.

#include <string_view>

namespace pseudoatom {

  struct AtomSpec;

  enum class PotentialModel {
    SymmetryDependent, ///< -Z_eff(l)/r, purely Coulombic with l-dependent screening
    CentralScreening,  ///< -Z/r plus a radial screening term, l-independent
    BareCoulomb        ///< -Z/r
  };

  std::string_view to_string(PotentialModel model);

  /// Accepts "symmetry", "central", "bare" (and the full enumerator names).
  PotentialModel parse_model(std::string_view name);

  /// Angular-momentum channel of one electron inside an n-electron atom.
  struct SymmetryChannel {
    int l = 0;
    int n_electrons = 1;
  };

  /// Symmetry-dependent share of the pair correlation energy,
  /// (2 li + 1) / (2 li + 2 lj + 2) with li = l/(n-1) and
  /// lj = 0 for l = 0, (l-1)/(n+2) otherwise. Requires n >= 2.
  double partition_alpha(SymmetryChannel channel);

  /// Radial share r_i^2 / (r_i^2 + r_j^2). Reference only, not used by the solvers.
  double classical_alpha(double r_i, double r_j);

  /// Single pair term -Z/r_i + alpha / sqrt(r_i^2 + r_j^2).
  double pair_potential(double r_i, double r_j, double Z, double alpha);

  /// Z - (n-1)^{2/3} alpha^{2/3} Z^{1/3}; exactly Z for a single electron.
  /// Throws ModelDomainError when the result is not positive.
  double effective_charge(double Z, int n_electrons, int l);

  /// -z_eff^2 / (2 nu^2).
  double hydrogenic_energy(double z_eff, int nu);

  /// Averaged screening factor <f^{3/5}>(r) of the central model,
  /// 1 - [27/25 + (3/5) Z r - 6/(125 Z r)] exp(-2 Z r).
  double fhat(double r, double Z);

  /// Radial potential of one model for a fixed atom and channel.
  ///
  /// The per-channel constants are evaluated once so that quadrature loops
  /// only pay for the r dependence.
  class RadialPotential {
  public:
    RadialPotential(PotentialModel model, double Z, int n_electrons, int l);

    double operator()(double r) const;

    PotentialModel model() const { return model_; }
    double nuclear_charge() const { return Z_; }
    /// Effective Coulomb charge for SymmetryDependent, Z otherwise.
    double coulomb_charge() const { return coulomb_charge_; }
    /// Prefactor (n-1)^{2/5} (Z/2)^{3/5} of the central screening term.
    double screening_prefactor() const { return screening_prefactor_; }

  private:
    PotentialModel model_;
    double Z_;
    double coulomb_charge_;
    double screening_prefactor_ = 0.0;
  };

  double potential_value(PotentialModel model, double r, const AtomSpec& atom, int l);

} // namespace pseudoatom
