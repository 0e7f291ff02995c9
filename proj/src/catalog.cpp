#include "pseudoatom/catalog.hpp"

#include <numeric>

#include "pseudoatom/errors.hpp"

namespace pseudoatom {

  namespace {

    const std::vector<Orbital> helium_core{{1, 0, 2}};
    const std::vector<Orbital> neon_core{{1, 0, 2}, {2, 0, 2}, {2, 1, 6}};

    std::vector<Orbital> with_core(const std::vector<Orbital>& core, std::vector<Orbital> outer) {
      std::vector<Orbital> config(core);
      config.insert(config.end(), outer.begin(), outer.end());
      return config;
    }

  } // namespace

  void AtomSpec::validate() const {
    const std::string who = name.empty() ? std::string("atom") : name;
    if (Z < 1) throw ConfigError(who + ": nuclear charge must be a positive integer");
    if (n_electrons < 1) throw ConfigError(who + ": electron count must be positive");
    if (m_permutations < 1 || m_permutations > n_electrons)
      throw ConfigError(who + ": m must satisfy 1 <= m <= n");
    if (valence_l < 0 || valence_nu < valence_l + 1)
      throw ConfigError(who + ": valence state needs nu >= l + 1");
    if (!ground_config.empty()) {
      const int total = std::accumulate(ground_config.begin(), ground_config.end(), 0,
                                        [](int sum, const Orbital& o) { return sum + o.occupancy; });
      if (total != n_electrons) throw ConfigError(who + ": ground configuration occupancies do not sum to n");
    }
  }

  std::vector<AtomSpec> atom_catalog(int mg_permutations) {
    std::vector<AtomSpec> atoms{
        {"He", 2, 2, 1, 0, 2, {{1, 0, 2}}},
        {"Li", 3, 3, 2, 0, 2, with_core(helium_core, {{2, 0, 1}})},
        {"Be", 4, 4, 2, 0, 3, with_core(helium_core, {{2, 0, 2}})},
        {"B", 5, 5, 2, 1, 3, with_core(helium_core, {{2, 0, 2}, {2, 1, 1}})},
        {"C", 6, 6, 2, 1, 4, with_core(helium_core, {{2, 0, 2}, {2, 1, 2}})},
        {"N", 7, 7, 2, 1, 4, with_core(helium_core, {{2, 0, 2}, {2, 1, 3}})},
        {"O", 8, 8, 2, 1, 4, with_core(helium_core, {{2, 0, 2}, {2, 1, 4}})},
        {"F", 9, 9, 2, 1, 5, with_core(helium_core, {{2, 0, 2}, {2, 1, 5}})},
        {"Ne", 10, 10, 2, 1, 5, with_core(helium_core, {{2, 0, 2}, {2, 1, 6}})},
        {"Na", 11, 11, 3, 0, 2, with_core(neon_core, {{3, 0, 1}})},
        {"Mg", 12, 12, 3, 0, mg_permutations, with_core(neon_core, {{3, 0, 2}})},
    };
    for (const auto& atom : atoms) atom.validate();
    return atoms;
  }

  std::optional<AtomSpec> find_atom(std::string_view name, int mg_permutations) {
    for (auto& atom : atom_catalog(mg_permutations))
      if (atom.name == name) return atom;
    return std::nullopt;
  }

  AtomSpec hydrogenic_ion(int Z) {
    AtomSpec ion{Z == 1 ? std::string("H") : "H-like Z=" + std::to_string(Z), Z, 1, 1, 0, 1, {{1, 0, 1}}};
    ion.validate();
    return ion;
  }

  char orbital_letter(int l) {
    static constexpr char letters[] = "spdfghiklmnoqrtuv";
    if (l < 0 || l >= static_cast<int>(sizeof(letters)) - 1) return '?';
    return letters[l];
  }

  std::string state_label(int nu, int l) { return std::to_string(nu) + orbital_letter(l); }

} // namespace pseudoatom
