#include "pseudoatom/model.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "pseudoatom/catalog.hpp"
#include "pseudoatom/errors.hpp"

namespace pseudoatom {

  std::string_view to_string(PotentialModel model) {
    switch (model) {
    case PotentialModel::SymmetryDependent: return "symmetry";
    case PotentialModel::CentralScreening: return "central";
    case PotentialModel::BareCoulomb: return "bare";
    }
    return "unknown";
  }

  PotentialModel parse_model(std::string_view name) {
    if (name == "symmetry" || name == "SymmetryDependent") return PotentialModel::SymmetryDependent;
    if (name == "central" || name == "CentralScreening") return PotentialModel::CentralScreening;
    if (name == "bare" || name == "BareCoulomb") return PotentialModel::BareCoulomb;
    throw ConfigError("unknown model '" + std::string(name) + "' (expected symmetry, central or bare)");
  }

  double partition_alpha(SymmetryChannel channel) {
    if (channel.n_electrons < 2)
      throw ModelDomainError("partition_alpha needs at least two electrons, got n = " +
                             std::to_string(channel.n_electrons));
    if (channel.l < 0)
      throw ModelDomainError("partition_alpha: negative angular momentum");

    const double n = channel.n_electrons;
    const double li = channel.l / (n - 1.0);
    const double lj = channel.l == 0 ? 0.0 : (channel.l - 1.0) / (n + 2.0);
    return (2.0 * li + 1.0) / (2.0 * li + 2.0 * lj + 2.0);
  }

  double classical_alpha(double r_i, double r_j) {
    if (r_i < 0.0 || r_j < 0.0) throw ModelDomainError("classical_alpha: negative radius");
    const double ri2 = r_i * r_i, rj2 = r_j * r_j;
    if (ri2 + rj2 == 0.0) throw ModelDomainError("classical_alpha: both radii are zero");
    return ri2 / (ri2 + rj2);
  }

  double pair_potential(double r_i, double r_j, double Z, double alpha) {
    if (!(r_i > 0.0)) throw ModelDomainError("pair_potential: r_i must be positive");
    return -Z / r_i + alpha / std::hypot(r_i, r_j);
  }

  double effective_charge(double Z, int n_electrons, int l) {
    if (!(Z >= 1.0)) throw ModelDomainError("effective_charge: Z must be >= 1");
    if (n_electrons < 1) throw ModelDomainError("effective_charge: need at least one electron");
    if (n_electrons == 1) return Z;

    // (n-1) alpha [Z / (alpha (n-1))]^{1/3} collapsed to a single power
    const double alpha = partition_alpha({l, n_electrons});
    const double screened = std::cbrt((n_electrons - 1.0) * alpha * (n_electrons - 1.0) * alpha * Z);
    const double z_eff = Z - screened;
    if (!(z_eff > 0.0)) {
      std::ostringstream oss;
      oss << "effective charge " << z_eff << " is not positive for Z = " << Z << ", n = " << n_electrons
          << ", l = " << l << "; the potential does not bind";
      throw ModelDomainError(oss.str());
    }
    return z_eff;
  }

  double hydrogenic_energy(double z_eff, int nu) {
    if (!(z_eff > 0.0)) throw ModelDomainError("hydrogenic_energy: z_eff must be positive");
    if (nu < 1) throw ModelDomainError("hydrogenic_energy: nu must be >= 1");
    return -z_eff * z_eff / (2.0 * nu * nu);
  }

  double fhat(double r, double Z) {
    if (!(r > 0.0)) throw ModelDomainError("fhat: r must be positive");
    if (!(Z >= 1.0)) throw ModelDomainError("fhat: Z must be >= 1");
    const double x = Z * r;
    return 1.0 - (27.0 / 25.0 + 0.6 * x - 6.0 / (125.0 * x)) * std::exp(-2.0 * x);
  }

  RadialPotential::RadialPotential(PotentialModel model, double Z, int n_electrons, int l)
      : model_(model), Z_(Z), coulomb_charge_(Z) {
    if (!(Z >= 1.0)) throw ModelDomainError("potential: Z must be >= 1");
    if (n_electrons < 1) throw ModelDomainError("potential: need at least one electron");
    if (l < 0) throw ModelDomainError("potential: negative angular momentum");

    switch (model) {
    case PotentialModel::SymmetryDependent:
      coulomb_charge_ = effective_charge(Z, n_electrons, l);
      break;
    case PotentialModel::CentralScreening:
      // (n-1) [Z f / (2 (n-1))]^{3/5} with <f^{3/5}> applied as a factor
      screening_prefactor_ = std::pow(n_electrons - 1.0, 0.4) * std::pow(Z / 2.0, 0.6);
      break;
    case PotentialModel::BareCoulomb:
      break;
    }
  }

  double RadialPotential::operator()(double r) const {
    if (!(r > 0.0)) throw ModelDomainError("potential evaluated at r <= 0");
    double v = -coulomb_charge_ / r;
    if (screening_prefactor_ != 0.0) v += screening_prefactor_ * fhat(r, Z_) / r;
    return v;
  }

  double potential_value(PotentialModel model, double r, const AtomSpec& atom, int l) {
    return RadialPotential(model, atom.Z, atom.n_electrons, l)(r);
  }

} // namespace pseudoatom
