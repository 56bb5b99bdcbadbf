// photodetection.hpp — Linearized photocurrent statistics: converts Gaussian
// moments into intensity-noise figures for weighted photocurrent combinations
// normalized to a calibrated shot-noise limit.

#pragma once

#include "pachain/bogoliubov.hpp"

#include <span>
#include <vector>

namespace pachain {

// Weighted photocurrent combination sum_k c_k i_k over a set of detected
// modes, with per-detector quantum efficiencies.
struct DetectionPlan {
    std::vector<Index> detected_modes;
    std::vector<double> coefficients;
    std::vector<double> detector_efficiencies;  // empty = all unity

    Index detectors() const { return static_cast<Index>(detected_modes.size()); }
};

// Throws std::invalid_argument on malformed plans (size mismatch, all-zero
// coefficients, efficiency outside [0, 1]).
void validate_plan(const DetectionPlan& plan, Index modes);

struct NoiseReport {
    std::vector<double> mean_powers;  // detected intensity per plan entry
    double variance = 0.0;            // photocurrent combination variance
    double snl = 0.0;                 // shot-noise limit, sum c_k^2 I_k
    double ratio = 0.0;               // variance / snl
    double db = 0.0;                  // 10 log10(ratio)
};

double to_db(double ratio);    // ratio > 0
double from_db(double db);     // exact inverse, round-trips within 1e−12

// Appends a loss_transform(eta_det) on each detected mode, consuming one
// vacuum ancilla per detector. Throws if fewer ancillas than detectors.
BogoliubovTransform apply_detector_efficiency(const BogoliubovTransform& T,
                                              const DetectionPlan& plan,
                                              std::span<const Index> ancillas);

// Per-sample covariance of the photocurrent fluctuations of `modes`:
//   Cov(i_j, i_k) = |alpha_j||alpha_k| Cov(X_{theta_j}, X_{theta_k}),
// theta_k = arg(alpha_k). Linearized (first order in quadrature fluctuations).
RMatrix photocurrent_covariance(const QuadratureCovariance& gamma,
                                const MeanField& alpha,
                                std::span<const Index> modes);

// Full linearized report for one combination. Every detected mode with a
// nonzero coefficient must be bright; dark modes are rejected.
NoiseReport photocurrent_noise(const QuadratureCovariance& gamma,
                               const MeanField& alpha,
                               const DetectionPlan& plan);

// Splits a coherent beam of the given power on a 50/50 beam splitter and
// returns Var(i_a − i_b) computed through the engine. Equals total_power in
// shot-noise units; the balanced-detection SNL calibration.
double snl_calibration_sim(double total_power);

}  // namespace pachain
