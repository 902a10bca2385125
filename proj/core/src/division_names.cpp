#include "spodual/division.hpp"

namespace spodual {

const char* algebra_name_str(AlgebraName n) {
  switch (n) {
    case AlgebraName::Cl0R: return "Cl0R";
    case AlgebraName::Cl1R: return "Cl1R";
    case AlgebraName::Cl2R: return "Cl2R";
    case AlgebraName::Cl3R: return "Cl3R";
    case AlgebraName::Cl4R: return "Cl4R";
    case AlgebraName::Cl5R: return "Cl5R";
    case AlgebraName::Cl6R: return "Cl6R";
    case AlgebraName::Cl7R: return "Cl7R";
    case AlgebraName::Cl0C: return "Cl0C";
    case AlgebraName::Cl1C: return "Cl1C";
  }
  return "?";
}

std::optional<AlgebraName> parse_algebra_name(const std::string& s) {
  static const std::pair<const char*, AlgebraName> names[] = {
      {"Cl0R", AlgebraName::Cl0R}, {"Cl1R", AlgebraName::Cl1R},
      {"Cl2R", AlgebraName::Cl2R}, {"Cl3R", AlgebraName::Cl3R},
      {"Cl4R", AlgebraName::Cl4R}, {"Cl5R", AlgebraName::Cl5R},
      {"Cl6R", AlgebraName::Cl6R}, {"Cl7R", AlgebraName::Cl7R},
      {"Cl0C", AlgebraName::Cl0C}, {"Cl1C", AlgebraName::Cl1C},
      {"R", AlgebraName::Cl0R},    {"C", AlgebraName::Cl0C},
      {"H", AlgebraName::Cl4R},
  };
  for (const auto& [k, v] : names)
    if (s == k) return v;
  return std::nullopt;
}

}  // namespace spodual
