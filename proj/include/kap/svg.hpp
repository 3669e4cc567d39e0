#pragma once

#include "kap/perturb.hpp"
#include "kap/pillowcase.hpp"
#include "kap/shear.hpp"

#include <optional>
#include <string>

namespace kap {

struct RenderOptions {
    int width = 720;
    int height = 720;
    double point_radius = 2.0;
    // optional overlays
    const PillowSet* second_set = nullptr;
    const ShearFn* shear_graph = nullptr;      // graph {(theta, g(theta))}
    std::optional<double> path_eta0;           // c1..c5 path for this eta0
    double corridor_halfwidth = 0.0;           // painted band around the path
};

// Deterministic standalone SVG of the [0,2pi)^2 torus square with grid lines
// at multiples of pi/2 and axis labels in multiples of pi.
std::string render_pillowcase(const PillowSet& s, const RenderOptions& opt = {});

} // namespace kap
