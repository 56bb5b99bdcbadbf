#include "pachain/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pachain {

namespace {

std::vector<double> clamp_to_box(
    std::vector<double> x,
    const std::vector<std::pair<double, double>>& bounds) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = std::clamp(x[i], bounds[i].first, bounds[i].second);
    }
    return x;
}

}  // namespace

OptimizeResult minimize_bounded(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<std::pair<double, double>>& bounds,
    const OptimizeOptions& options) {
    const std::size_t dim = bounds.size();
    if (dim == 0) throw std::invalid_argument("minimize_bounded: empty bounds");
    for (const auto& [lo, hi] : bounds) {
        if (!(lo <= hi)) {
            throw std::invalid_argument("minimize_bounded: infeasible bounds");
        }
    }

    OptimizeResult res;
    auto eval = [&](const std::vector<double>& x) {
        ++res.evaluations;
        return f(x);
    };

    // Grid stage.
    const int g = std::max(2, options.grid_points_per_axis);
    std::vector<double> best(dim);
    double best_val = std::numeric_limits<double>::infinity();
    std::vector<int> node(dim, 0);
    std::vector<double> x(dim);
    while (true) {
        for (std::size_t i = 0; i < dim; ++i) {
            const auto [lo, hi] = bounds[i];
            x[i] = lo + (hi - lo) * static_cast<double>(node[i]) /
                            static_cast<double>(g - 1);
        }
        const double v = eval(x);
        if (v < best_val) {
            best_val = v;
            best = x;
        }
        std::size_t k = 0;
        while (k < dim && ++node[k] == g) node[k++] = 0;
        if (k == dim) break;
    }

    // Nelder–Mead refinement around the grid optimum, clamped to the box.
    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
    std::vector<std::vector<double>> simplex;
    std::vector<double> values;
    simplex.push_back(best);
    values.push_back(best_val);
    for (std::size_t i = 0; i < dim; ++i) {
        std::vector<double> v = best;
        const double span = bounds[i].second - bounds[i].first;
        double step = span / static_cast<double>(g - 1);
        if (step == 0.0) step = std::max(1e-8, 0.05 * std::abs(v[i]) + 1e-8);
        v[i] = (v[i] + step <= bounds[i].second) ? v[i] + step : v[i] - step;
        v = clamp_to_box(std::move(v), bounds);
        simplex.push_back(v);
        values.push_back(eval(simplex.back()));
    }

    auto order = [&]() {
        std::vector<std::size_t> idx(simplex.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        std::vector<std::vector<double>> s2;
        std::vector<double> v2;
        for (std::size_t i : idx) {
            s2.push_back(simplex[i]);
            v2.push_back(values[i]);
        }
        simplex = std::move(s2);
        values = std::move(v2);
    };

    for (int iter = 0; iter < options.max_simplex_iterations; ++iter) {
        order();
        if (values.back() - values.front() < options.objective_tolerance) {
            res.converged = true;
            break;
        }
        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i + 1 < simplex.size(); ++i) {
            for (std::size_t k = 0; k < dim; ++k) centroid[k] += simplex[i][k];
        }
        for (double& c : centroid) c /= static_cast<double>(dim);

        auto blend = [&](const std::vector<double>& from, double coeff) {
            std::vector<double> p(dim);
            for (std::size_t k = 0; k < dim; ++k) {
                p[k] = centroid[k] + coeff * (centroid[k] - from[k]);
            }
            return clamp_to_box(std::move(p), bounds);
        };

        const std::vector<double> reflected = blend(simplex.back(), alpha);
        const double fr = eval(reflected);
        if (fr < values.front()) {
            const std::vector<double> expanded = blend(simplex.back(), gamma);
            const double fe = eval(expanded);
            if (fe < fr) {
                simplex.back() = expanded;
                values.back() = fe;
            } else {
                simplex.back() = reflected;
                values.back() = fr;
            }
            continue;
        }
        if (fr < values[values.size() - 2]) {
            simplex.back() = reflected;
            values.back() = fr;
            continue;
        }
        const std::vector<double> contracted = blend(simplex.back(), -rho);
        const double fc = eval(contracted);
        if (fc < values.back()) {
            simplex.back() = contracted;
            values.back() = fc;
            continue;
        }
        // shrink toward the best vertex
        for (std::size_t i = 1; i < simplex.size(); ++i) {
            for (std::size_t k = 0; k < dim; ++k) {
                simplex[i][k] =
                    simplex[0][k] + sigma * (simplex[i][k] - simplex[0][k]);
            }
            simplex[i] = clamp_to_box(std::move(simplex[i]), bounds);
            values[i] = eval(simplex[i]);
        }
    }

    order();
    res.x = simplex.front();
    res.value = values.front();
    return res;
}

}  // namespace pachain
