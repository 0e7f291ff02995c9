#include "pseudoatom/units.hpp"

#include "pseudoatom/errors.hpp"

namespace pseudoatom {

  std::string_view to_string(UnitLabel label) {
    switch (label) {
    case UnitLabel::PaperCompat: return "paper-compat";
    case UnitLabel::Codata: return "codata";
    }
    return "unknown";
  }

  UnitSystem parse_unit_system(std::string_view name) {
    if (name == "paper" || name == "paper-compat") return UnitSystem::paper_compat();
    if (name == "codata") return UnitSystem::codata();
    throw ConfigError("unknown unit system '" + std::string(name) + "' (expected paper or codata)");
  }

} // namespace pseudoatom
