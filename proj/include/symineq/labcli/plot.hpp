#pragma once

#include <string>

#include "symineq/geomcore/serialize.hpp"

namespace symineq
{
enum class PlotKind { Convergence, Body2d, RatioSweep };
PlotKind plot_kind_from_name(const std::string& s);
std::string plot_kind_name(PlotKind k);

// Deterministic SVG. Accepts a report (the payload is searched) or a bare payload:
//   convergence  a symmetrisation trace {"steps": [{"iter", "symdiff"}, ...]}
//   body-2d      {"bodies": [polytope, ...]} or a trace with a planar "final" polytope
//   ratio-sweep  {"sweep": [{"x", "y"}, ...]}
// Throws FormatError when the payload does not match the kind.
std::string emit_plot(const Json& input, PlotKind kind);

}  // namespace symineq
