// bogoliubov.hpp — Linear bosonic network algebra: Bogoliubov transforms,
// their composition and validity checks, and Gaussian moment propagation.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

namespace pachain {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Tolerances shared by the validity checks. Residual ~100x double rounding
// for networks up to M = 64 modes.
inline constexpr double kSymplecticTol = 1e-9;
inline constexpr double kSymmetryTol = 1e-12;

// Ordered set of mode names. Index in the vector is the mode index used by
// every transform in a scenario.
class ModeRegistry {
public:
    ModeRegistry() = default;
    explicit ModeRegistry(std::vector<std::string> labels);

    // Appends a new label, returns its index. Duplicate labels rejected.
    Index add(const std::string& label);
    Index index(const std::string& label) const;   // throws if unknown
    bool contains(const std::string& label) const;
    const std::string& label(Index i) const;
    Index size() const { return static_cast<Index>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }

private:
    std::vector<std::string> labels_;
};

// a_out = A a + B a†. A is the annihilation-to-annihilation block, B the
// creation-to-annihilation block. Valid transforms satisfy
//   A A† − B B† = I   and   A Bᵀ symmetric.
struct BogoliubovTransform {
    CMatrix A;
    CMatrix B;

    Index modes() const { return A.rows(); }
};

// First moments: alpha_k in sqrt(photon flux) units, |alpha_k|² = intensity.
struct MeanField {
    CVector alpha;

    Index modes() const { return alpha.size(); }
    double intensity(Index k) const { return std::norm(alpha(k)); }
};

// Second moments over quadratures (X_1, P_1, ..., X_M, P_M) with
// X = a + a†, P = −i(a − a†); vacuum variance 1 (shot-noise units).
struct QuadratureCovariance {
    RMatrix gamma;

    Index modes() const { return gamma.rows() / 2; }
};

struct SymplecticCheck {
    bool ok = false;
    double commutator_residual = 0.0;  // max |A A† − B B† − I|
    double symmetry_residual = 0.0;    // max |A Bᵀ − (A Bᵀ)ᵀ|

    double max_residual() const {
        return commutator_residual > symmetry_residual ? commutator_residual
                                                       : symmetry_residual;
    }
};

struct CovarianceCheck {
    bool ok = false;
    double symmetry_residual = 0.0;
    double min_eigenvalue = 0.0;             // of gamma itself
    double min_uncertainty_eigenvalue = 0.0; // of gamma + i*Omega
};

// ------------------------------ constructors -------------------------------

BogoliubovTransform identity_transform(Index modes);

// Phase-insensitive amplifier on (signal, idler) with intensity gain G >= 1:
//   a_s' = sqrt(G) a_s + sqrt(G−1) a_i†,  a_i' = sqrt(G) a_i + sqrt(G−1) a_s†.
BogoliubovTransform pia_transform(Index modes, Index signal, Index idler,
                                  double gain);

// Transmission eta on `mode`, vacuum coupled in through `ancilla`:
//   a_m' = sqrt(eta) a_m + sqrt(1−eta) a_v (unitary completion on ancilla).
BogoliubovTransform loss_transform(Index modes, Index mode, Index ancilla,
                                   double eta);

// Two-mode mixing with intensity transmittance t:
//   a_1' = sqrt(t) a_1 + sqrt(1−t) a_2,  a_2' = −sqrt(1−t) a_1 + sqrt(t) a_2.
BogoliubovTransform beamsplitter_transform(Index modes, Index m1, Index m2,
                                           double t);

// ------------------------------- operations --------------------------------

// Applies `first`, then `second`:
//   A = A2 A1 + B2 B1*,  B = A2 B1 + B2 A1*.
BogoliubovTransform compose(const BogoliubovTransform& second,
                            const BogoliubovTransform& first);

// Reports residuals of the two Bogoliubov identities; never throws.
SymplecticCheck check_symplectic(const BogoliubovTransform& T);

// alpha_out = A alpha + B conj(alpha)
MeanField propagate_mean(const BogoliubovTransform& T, const MeanField& in);

QuadratureCovariance vacuum_covariance(Index modes);

// gamma_out = S gamma S^T with S the real 2Mx2M symplectic equivalent of (A,B).
QuadratureCovariance output_covariance(const BogoliubovTransform& T,
                                       const QuadratureCovariance& in);

// Real 2Mx2M quadrature-space matrix equivalent to (A, B).
RMatrix to_symplectic(const BogoliubovTransform& T);

// Standard symplectic form for the (X_1, P_1, ...) ordering: [X, P] = 2i,
// Omega = blkdiag([[0, 1], [−1, 0]]).
RMatrix symplectic_form(Index modes);

// Symmetry / positivity / uncertainty (gamma + i Omega >= 0) residuals.
CovarianceCheck check_covariance(const QuadratureCovariance& g);

// Absolute eigenvalues of i Omega gamma, sorted ascending (each symplectic
// eigenvalue appears twice). Invariant under symplectic transforms of gamma.
RVector symplectic_spectrum(const QuadratureCovariance& g);

}  // namespace pachain
