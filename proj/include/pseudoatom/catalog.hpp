#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pseudoatom {

  struct Orbital {
    int nu = 1;
    int l = 0;
    int occupancy = 1;
  };

  /// One neutral atom or ion as seen by the independent-particle model.
  struct AtomSpec {
    std::string name;
    int Z = 1;
    int n_electrons = 1;
    int valence_nu = 1;
    int valence_l = 0;
    /// Number of non-vanishing integrals among the n! permutations.
    int m_permutations = 1;
    std::vector<Orbital> ground_config;

    double mn_ratio() const { return static_cast<double>(m_permutations) / n_electrons; }

    /// Throws ConfigError if any structural invariant is violated.
    void validate() const;
  };

  /// Neutral atoms He..Mg (n = 2..12).
  ///
  /// Mg uses m = 3 by default; the printed m/n column lists 2/12, which
  /// cannot produce the printed ionization potential. `mg_permutations`
  /// restores the printed value.
  std::vector<AtomSpec> atom_catalog(int mg_permutations = 3);

  /// Case-sensitive element-symbol lookup in atom_catalog().
  std::optional<AtomSpec> find_atom(std::string_view name, int mg_permutations = 3);

  /// A hydrogen-like system with a single 1s electron (m/n = 1).
  AtomSpec hydrogenic_ion(int Z);

  /// Spectroscopic letter for l (s, p, d, f, g, ...).
  char orbital_letter(int l);

  /// "2s", "3d", ...
  std::string state_label(int nu, int l);

} // namespace pseudoatom
