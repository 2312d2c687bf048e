#pragma once

#include <string>

#include <json.hpp>

#include "symineq/rearrange/round_to_ball.hpp"
#include "symineq/rearrange/step_function.hpp"

namespace symineq
{
// Columns: iter, u0..u{n-1}, symdiff, hausdorff. The initial state has empty direction cells.
std::string trace_csv(const SymmetrisationTrace& tr);

nlohmann::json trace_to_json(const SymmetrisationTrace& tr, bool include_final = true);

// Overlay of the 2D snapshots with the target disk; deterministic output.
std::string snapshots_svg(const SymmetrisationTrace& tr, int size_px = 480);

nlohmann::json to_json(const StepFunction& f);
StepFunction step_function_from_json(const nlohmann::json& j);

}  // namespace symineq
