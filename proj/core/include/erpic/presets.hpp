#pragma once

#include <string_view>

#include "erpic/config.hpp"

namespace erpic {

enum class PresetScale { Paper, Desk };

/// Built-in experiment configurations:
///   example1           two-bump rectangle, fluid regime
///   example2-diocotron annular ring in a uniform strong field
///   example3-larmor    example1 setup under the Larmor rescaling
///   diffusion-rect     example1 setup under the diffusion rescaling
/// Paper scale carries the published grid/particle counts; desk scale
/// halves the grid per axis and divides the particle count by 10 (physics
/// parameters unchanged). Throws ConfigError for unknown names.
SimulationConfig preset(std::string_view name, PresetScale scale);

/// Config text for a preset, with a header documenting name and scale rule.
std::string render_preset(std::string_view name, PresetScale scale);

}  // namespace erpic
