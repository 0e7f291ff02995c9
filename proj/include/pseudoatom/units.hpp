#pragma once

#include <string>
#include <string_view>

namespace pseudoatom {

  enum class UnitLabel { PaperCompat, Codata };

  /// Energy conversion between hartree and electronvolt.
  ///
  /// The published tables are only mutually consistent with
  /// 1 hartree = 27.1996 eV, so that value is the default used for table
  /// reproduction. CODATA 2018 is available for physical comparisons.
  struct UnitSystem {
    double ev_per_hartree;
    UnitLabel label;

    static constexpr double paper_compat_ev_per_hartree = 27.1996;
    static constexpr double codata_ev_per_hartree = 27.211386245988;

    static constexpr UnitSystem paper_compat() { return {paper_compat_ev_per_hartree, UnitLabel::PaperCompat}; }
    static constexpr UnitSystem codata() { return {codata_ev_per_hartree, UnitLabel::Codata}; }

    constexpr double to_ev(double hartree) const { return hartree * ev_per_hartree; }
    constexpr double to_hartree(double ev) const { return ev / ev_per_hartree; }
  };

  std::string_view to_string(UnitLabel label);

  /// Accepts "paper", "paper-compat", and "codata".
  UnitSystem parse_unit_system(std::string_view name);

} // namespace pseudoatom
