#include "pseudoatom/spectra.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

#include "pseudoatom/radial_operators.hpp"

namespace pseudoatom::spectra {

  namespace {

    bspline::KnotBasis build_basis(const BasisSettings& s) {
      return bspline::make_knots(s.r_max, s.n_splines, s.order, s.knots, s.r_first);
    }

    struct ChannelRequest {
      AtomSpec atom;
      PotentialModel model;
      int l;
      int count;
    };

    // One task per channel; results come back in request order regardless of completion order.
    std::vector<std::vector<LabeledState>> solve_channels(const RadialSolver& solver,
                                                          const std::vector<ChannelRequest>& requests) {
      std::vector<std::future<std::vector<LabeledState>>> pending;
      pending.reserve(requests.size());
      for (const auto& req : requests)
        pending.push_back(std::async(std::launch::async, [&solver, &req] {
          return solver.solve_channel(req.atom, req.model, req.l, req.count);
        }));
      std::vector<std::vector<LabeledState>> out;
      out.reserve(pending.size());
      for (auto& f : pending) out.push_back(f.get());
      return out;
    }

    const LabeledState& state_with_nu(const std::vector<LabeledState>& channel, int nu) {
      for (const auto& s : channel)
        if (s.nu == nu) return s;
      throw std::logic_error("state nu = " + std::to_string(nu) + " was not solved");
    }

    AtomSpec require_atom(std::string_view name) {
      auto atom = find_atom(name);
      if (!atom) throw std::logic_error("catalog is missing " + std::string(name));
      return *atom;
    }

    TableRow ionization_row(const AtomSpec& atom, const std::vector<LabeledState>& channel, const UnitSystem& units) {
      const LabeledState& valence = state_with_nu(channel, atom.valence_nu);
      TableRow row{atom.name, 0.0, {valence}};
      if (atom.n_electrons == 2) {
        const double ion = 0.5 * atom.Z * atom.Z;
        row.value_ev = units.to_ev(helium_ground_factor * std::abs(valence.scaled_energy) - ion);
      } else {
        row.value_ev = units.to_ev(-valence.scaled_energy);
      }
      return row;
    }

  } // namespace

  RadialSolver::RadialSolver(BasisSettings settings)
      : settings_(settings), basis_(build_basis(settings_)), quad_(basis_, settings_.quadrature_nodes()) {}

  std::vector<LabeledState> RadialSolver::solve_channel(const AtomSpec& atom, PotentialModel model, int l,
                                                        int count) const {
    if (count < 1) throw std::invalid_argument("solve_channel: count must be >= 1");
    atom.validate();
    const auto pair = radial::assemble(basis_, quad_, atom, l, model);
    const auto solution = eigen::solve_lowest(pair, static_cast<std::size_t>(count), settings_.solver);

    const RadialPotential potential(model, atom.Z, atom.n_electrons, l);
    const double coulomb = model == PotentialModel::CentralScreening ? 0.0 : potential.coulomb_charge();
    const double mn = atom.mn_ratio();

    std::vector<LabeledState> states;
    states.reserve(solution.count);
    for (std::size_t i = 0; i < solution.count; ++i) {
      const double raw = solution.eigenvalues[i];
      states.push_back({l + 1 + static_cast<int>(i), l, raw, mn * raw, model, coulomb});
    }
    return states;
  }

  std::vector<LabeledState> solve_channel(const AtomSpec& atom, PotentialModel model, int l, int count,
                                          const BasisSettings& settings) {
    return RadialSolver(settings).solve_channel(atom, model, l, count);
  }

  TableRow ionization_potential(const RadialSolver& solver, const AtomSpec& atom, PotentialModel model,
                                const UnitSystem& units) {
    const auto channel = solver.solve_channel(atom, model, atom.valence_l, atom.valence_nu - atom.valence_l);
    return ionization_row(atom, channel, units);
  }

  std::vector<TableRow> ionization_table(const RadialSolver& solver, PotentialModel model, const UnitSystem& units,
                                         int mg_permutations) {
    const auto atoms = atom_catalog(mg_permutations);
    std::vector<ChannelRequest> requests;
    for (const auto& atom : atoms)
      requests.push_back({atom, model, atom.valence_l, atom.valence_nu - atom.valence_l});
    const auto channels = solve_channels(solver, requests);

    std::vector<TableRow> rows;
    for (std::size_t i = 0; i < atoms.size(); ++i) rows.push_back(ionization_row(atoms[i], channels[i], units));
    return rows;
  }

  std::vector<TableRow> helium_binding_table(const RadialSolver& solver, PotentialModel model,
                                             const UnitSystem& units) {
    if (model == PotentialModel::BareCoulomb)
      throw std::invalid_argument("helium table needs a screening model");
    const AtomSpec he = require_atom("He");
    const auto channels = solve_channels(solver, {{he, model, 0, 3}, {he, model, 1, 2}, {he, model, 2, 1}});
    const double frozen_core = 0.5 * he.Z * he.Z;

    std::vector<TableRow> rows;
    const auto& ground = state_with_nu(channels[0], 1);
    rows.push_back({"1s", units.to_ev(helium_ground_factor * std::abs(ground.scaled_energy)), {ground}});
    const std::pair<int, int> excited[] = {{2, 0}, {2, 1}, {3, 0}, {3, 1}, {3, 2}};
    for (const auto& [nu, l] : excited) {
      const auto& s = state_with_nu(channels[l], nu);
      rows.push_back({state_label(nu, l), units.to_ev(frozen_core + std::abs(s.scaled_energy)), {s}});
    }
    return rows;
  }

  std::vector<TableRow> lithium_spectrum(const RadialSolver& solver, PotentialModel model, const UnitSystem& units) {
    if (model == PotentialModel::BareCoulomb)
      throw std::invalid_argument("lithium table needs a screening model");
    const AtomSpec li = require_atom("Li");
    const auto channels =
        solve_channels(solver, {{li, model, 0, 4}, {li, model, 1, 3}, {li, model, 2, 2}, {li, model, 3, 1}});

    std::vector<TableRow> rows;
    const std::pair<int, int> states[] = {{2, 0}, {2, 1}, {3, 0}, {3, 1}, {3, 2}, {4, 0}, {4, 1}, {4, 2}, {4, 3}};
    for (const auto& [nu, l] : states) {
      const auto& s = state_with_nu(channels[l], nu);
      rows.push_back({state_label(nu, l), units.to_ev(s.scaled_energy), {s}});
    }
    return rows;
  }

} // namespace pseudoatom::spectra
