// fock.hpp — Exact truncated number-basis reference for one- and two-stage
// amplifier chains at small photon numbers. Validates the linearized Gaussian
// engine and the conserved photon-number-difference invariant.

#pragma once

#include "pachain/bogoliubov.hpp"

#include <vector>

namespace pachain::fock {

// Norm lost by a coherent-state truncation before the state is flagged.
inline constexpr double kCoherentLeakTol = 1e-8;
// Cumulative leakage beyond which evolved states are flagged unreliable.
inline constexpr double kLeakageFlag = 1e-4;

// Truncated number-basis state over up to 3 modes. `cutoffs[k]` is the
// largest retained photon number of mode k (dimension cutoffs[k] + 1).
// Amplitudes stay unnormalized: norm² = 1 − leakage, so truncation loss is
// visible, never hidden.
struct FockState {
    std::vector<Index> cutoffs;
    std::vector<Complex> amplitudes;  // row-major, last mode fastest
    double leakage = 0.0;
    bool reliable = true;

    Index modes() const { return static_cast<Index>(cutoffs.size()); }
    Index dim(Index mode) const { return cutoffs[static_cast<std::size_t>(mode)] + 1; }
    double norm_squared() const;
};

struct MomentReport {
    RVector mean_photons;
    RMatrix covariance;  // photon-number covariance, symmetric
    double leakage = 0.0;
    bool reliable = true;
};

// Exact-vs-linearized comparison for the multi-beam difference combination.
struct GaussianComparison {
    double seed_intensity = 0.0;
    double exact_difference_variance = 0.0;  // Var(N_probe − sum N_conjugate)
    double exact_total_mean = 0.0;           // exact SNL, sum of mean photons
    double exact_ratio = 0.0;
    double linearized_ratio = 0.0;           // 1 / (2 prod G − 1)
    double absolute_discrepancy = 0.0;
    double relative_discrepancy = 0.0;
    double predicted_relative = 0.0;         // O(1/|alpha|²) spontaneous term
    double leakage = 0.0;
};

// Intensity gain G = cosh²(r)  =>  r = arccosh(sqrt(G)).
double gain_to_squeezing(double gain);

FockState vacuum_state(std::vector<Index> cutoffs);

// Single-mode coherent state; Poissonian tail beyond the cutoff is reported
// as leakage and flagged if above kCoherentLeakTol.
FockState coherent_state(Complex alpha, Index cutoff);

// Tensor product (at most 3 modes total).
FockState tensor(const FockState& a, const FockState& b);

// Applies exp[r(a† b† − a b)] on the mode pair. The generator conserves
// n_a − n_b, so each difference sector is evolved by the exact exponential of
// a small tridiagonal block on an internally padded ladder; amplitudes that
// land beyond the declared cutoffs are dropped and accounted as leakage.
FockState apply_tms(FockState state, double r, Index mode_a, Index mode_b);

MomentReport photon_moments(const FockState& state);

// Var(d · N) for a coefficient vector over the modes.
double number_combination_variance(const MomentReport& m,
                                   const std::vector<double>& coefficients);

// Builds coherent(alpha) ⊗ vacuum^n, applies one PIA per gain with the probe
// always in mode 0, and compares the exact intensity-difference ratio with
// the linearized 1/(2 prod G − 1). Throws if leakage exceeds kLeakageFlag.
GaussianComparison verify_against_gaussian(const std::vector<double>& gains,
                                           Complex seed_alpha,
                                           const std::vector<Index>& cutoffs);

}  // namespace pachain::fock
