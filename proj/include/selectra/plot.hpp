#pragma once

#include <optional>
#include <string>

#include "selectra/relations.hpp"

namespace selectra {

/// What gets drawn: the base complex, optionally an envelope ξ ≤ η on it and
/// a PL map on a refinement of it.
struct PlotData {
  ComplexPtr complex;
  std::optional<ScalarCellField> lower;
  std::optional<ScalarCellField> upper;
  std::optional<PLMap> curve;
};

/// Static SVG on a fixed 640×400 viewport; elements are emitted in cell
/// order, coordinates rounded to two decimals. Infinite envelope values are
/// clipped to the plot frame. Errors: UnsupportedDim (ambient dimension > 2).
std::string render_svg(const PlotData& data);

/// One row per cell of the curve's complex: its barycenter and the exact
/// value there. Errors: InvalidArgument (no curve).
std::string render_csv(const PlotData& data);

}  // namespace selectra
