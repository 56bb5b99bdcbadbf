#include "pachain/photodetection.hpp"

#include <cmath>
#include <stdexcept>

namespace pachain {

void validate_plan(const DetectionPlan& plan, Index modes) {
    const std::size_t n = plan.detected_modes.size();
    if (n == 0) {
        throw std::invalid_argument("DetectionPlan: no detected modes");
    }
    if (plan.coefficients.size() != n) {
        throw std::invalid_argument(
            "DetectionPlan: coefficient count does not match detected modes");
    }
    if (!plan.detector_efficiencies.empty() &&
        plan.detector_efficiencies.size() != n) {
        throw std::invalid_argument(
            "DetectionPlan: efficiency count does not match detected modes");
    }
    bool any_nonzero = false;
    for (std::size_t k = 0; k < n; ++k) {
        const Index m = plan.detected_modes[k];
        if (m < 0 || m >= modes) {
            throw std::out_of_range("DetectionPlan: detected mode out of range");
        }
        if (plan.coefficients[k] != 0.0) any_nonzero = true;
        if (!plan.detector_efficiencies.empty()) {
            const double eta = plan.detector_efficiencies[k];
            if (!(eta >= 0.0 && eta <= 1.0)) {
                throw std::invalid_argument(
                    "DetectionPlan: detector efficiency must be in [0, 1]");
            }
        }
    }
    if (!any_nonzero) {
        throw std::invalid_argument("DetectionPlan: all coefficients are zero");
    }
}

double to_db(double ratio) {
    if (!(ratio > 0.0)) {
        throw std::domain_error("to_db: ratio must be positive");
    }
    return 10.0 * std::log10(ratio);
}

double from_db(double db) { return std::pow(10.0, db / 10.0); }

BogoliubovTransform apply_detector_efficiency(const BogoliubovTransform& T,
                                              const DetectionPlan& plan,
                                              std::span<const Index> ancillas) {
    validate_plan(plan, T.modes());
    if (ancillas.size() < plan.detected_modes.size()) {
        throw std::invalid_argument(
            "apply_detector_efficiency: not enough vacuum ancillas");
    }
    BogoliubovTransform out = T;
    for (std::size_t k = 0; k < plan.detected_modes.size(); ++k) {
        const double eta = plan.detector_efficiencies.empty()
                               ? 1.0
                               : plan.detector_efficiencies[k];
        out = compose(loss_transform(T.modes(), plan.detected_modes[k],
                                     ancillas[k], eta),
                      out);
    }
    return out;
}

RMatrix photocurrent_covariance(const QuadratureCovariance& gamma,
                                const MeanField& alpha,
                                std::span<const Index> modes) {
    if (2 * alpha.modes() != gamma.gamma.rows()) {
        throw std::invalid_argument("photocurrent_covariance: dimension mismatch");
    }
    const Index n = static_cast<Index>(modes.size());
    // Row k of V picks out |alpha_k| X_{theta_k} in quadrature space.
    RMatrix V = RMatrix::Zero(n, gamma.gamma.rows());
    for (Index k = 0; k < n; ++k) {
        const Index m = modes[k];
        if (m < 0 || m >= alpha.modes()) {
            throw std::out_of_range("photocurrent_covariance: mode out of range");
        }
        const Complex a = alpha.alpha(m);
        const double mag = std::abs(a);
        if (mag > 0.0) {
            const double theta = std::arg(a);
            V(k, 2 * m) = mag * std::cos(theta);
            V(k, 2 * m + 1) = mag * std::sin(theta);
        }
    }
    return V * gamma.gamma * V.transpose();
}

NoiseReport photocurrent_noise(const QuadratureCovariance& gamma,
                               const MeanField& alpha,
                               const DetectionPlan& plan) {
    validate_plan(plan, alpha.modes());
    if (2 * alpha.modes() != gamma.gamma.rows()) {
        throw std::invalid_argument("photocurrent_noise: dimension mismatch");
    }

    NoiseReport rep;
    const std::size_t n = plan.detected_modes.size();
    rep.mean_powers.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double intensity = alpha.intensity(plan.detected_modes[k]);
        rep.mean_powers[k] = intensity;
        if (intensity == 0.0 && plan.coefficients[k] != 0.0) {
            throw std::domain_error(
                "photocurrent_noise: dark mode with nonzero coefficient; "
                "linearization undefined");
        }
        rep.snl += plan.coefficients[k] * plan.coefficients[k] * intensity;
    }
    if (!(rep.snl > 0.0)) {
        throw std::domain_error("photocurrent_noise: all detected beams dark, no SNL");
    }

    const RMatrix cov =
        photocurrent_covariance(gamma, alpha, plan.detected_modes);
    Eigen::Map<const RVector> c(plan.coefficients.data(),
                                static_cast<Index>(n));
    rep.variance = c.dot(cov * c);
    rep.ratio = rep.variance / rep.snl;
    rep.db = to_db(rep.ratio);
    return rep;
}

double snl_calibration_sim(double total_power) {
    if (!(total_power > 0.0)) {
        throw std::invalid_argument("snl_calibration_sim: power must be positive");
    }
    const Index modes = 2;
    const BogoliubovTransform split = beamsplitter_transform(modes, 0, 1, 0.5);

    MeanField in{CVector::Zero(modes)};
    in.alpha(0) = std::sqrt(total_power);

    const MeanField out = propagate_mean(split, in);
    const QuadratureCovariance cov =
        output_covariance(split, vacuum_covariance(modes));

    DetectionPlan plan;
    plan.detected_modes = {0, 1};
    plan.coefficients = {1.0, -1.0};
    return photocurrent_noise(cov, out, plan).variance;
}

}  // namespace pachain
