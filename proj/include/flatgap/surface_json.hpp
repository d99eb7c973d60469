#pragma once

#include <optional>
#include <string>
#include <variant>

#include "flatgap/surface.hpp"

namespace flatgap {

enum class ArithmeticModel { Exact, Float };

// A built surface in whichever arithmetic model the input selected.
using AnySurface =
    std::variant<TranslationSurface<Rational>, TranslationSurface<double>>;

inline ArithmeticModel model_of(const AnySurface& s) {
  return std::holds_alternative<TranslationSurface<Rational>>(s)
             ? ArithmeticModel::Exact
             : ArithmeticModel::Float;
}

inline const std::string& fingerprint_of(const AnySurface& s) {
  return std::visit([](const auto& x) -> const std::string& {
    return x.fingerprint();
  }, s);
}

// Parses a surface definition document:
//   {"polygons": [[[x, y], ...], ...], "gluings": [[a, i, b, j], ...]}
// Coordinates are decimal strings, "p/q" rationals, or plain numbers.
// Model selection: exact when every coordinate is an integer or "p/q"
// rational; any decimal-point or exponent literal switches the whole
// surface to the float model (eps_exact comparisons). `force` overrides.
AnySurface parse_surface_json(
    const std::string& text,
    std::optional<ArithmeticModel> force = std::nullopt);

AnySurface load_surface_file(
    const std::string& path,
    std::optional<ArithmeticModel> force = std::nullopt);

std::string surface_to_json(const AnySurface& s);

// Summary block used by the CLI: stratum, genus, area, cone angles.
std::string surface_summary_json(const AnySurface& s);

}  // namespace flatgap
