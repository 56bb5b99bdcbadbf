// optimize.hpp — Derivative-free bounded minimization: coarse grid scan
// followed by a Nelder–Mead refinement clamped to the box.

#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace pachain {

struct OptimizeOptions {
    int grid_points_per_axis = 21;
    int max_simplex_iterations = 500;
    double objective_tolerance = 1e-6;
};

struct OptimizeResult {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
};

// Minimizes f over the box. Deterministic for fixed options; the grid stage
// seeds the simplex at the best grid node.
OptimizeResult minimize_bounded(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<std::pair<double, double>>& bounds,
    const OptimizeOptions& options = {});

}  // namespace pachain
