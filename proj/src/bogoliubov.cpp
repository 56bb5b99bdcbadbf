#include "pachain/bogoliubov.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pachain {

namespace {

void require_mode(Index modes, Index k, const char* who) {
    if (k < 0 || k >= modes) {
        throw std::out_of_range(std::string(who) + ": mode index out of range");
    }
}

}  // namespace

ModeRegistry::ModeRegistry(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
    if (labels_.empty()) {
        throw std::invalid_argument("ModeRegistry: at least one mode required");
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        for (std::size_t j = i + 1; j < labels_.size(); ++j) {
            if (labels_[i] == labels_[j]) {
                throw std::invalid_argument("ModeRegistry: duplicate label '" +
                                            labels_[i] + "'");
            }
        }
    }
}

Index ModeRegistry::add(const std::string& label) {
    if (contains(label)) {
        throw std::invalid_argument("ModeRegistry: duplicate label '" + label +
                                    "'");
    }
    labels_.push_back(label);
    return static_cast<Index>(labels_.size()) - 1;
}

Index ModeRegistry::index(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == label) return static_cast<Index>(i);
    }
    throw std::invalid_argument("ModeRegistry: unknown label '" + label + "'");
}

bool ModeRegistry::contains(const std::string& label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

const std::string& ModeRegistry::label(Index i) const {
    if (i < 0 || i >= size()) {
        throw std::out_of_range("ModeRegistry: index out of range");
    }
    return labels_[static_cast<std::size_t>(i)];
}

BogoliubovTransform identity_transform(Index modes) {
    if (modes < 1) {
        throw std::invalid_argument("identity_transform: mode count must be >= 1");
    }
    return {CMatrix::Identity(modes, modes), CMatrix::Zero(modes, modes)};
}

BogoliubovTransform pia_transform(Index modes, Index signal, Index idler,
                                  double gain) {
    require_mode(modes, signal, "pia_transform");
    require_mode(modes, idler, "pia_transform");
    if (signal == idler) {
        throw std::invalid_argument("pia_transform: signal and idler must differ");
    }
    if (!(gain >= 1.0)) {
        throw std::invalid_argument("pia_transform: gain must be >= 1");
    }
    BogoliubovTransform T = identity_transform(modes);
    const double c = std::sqrt(gain);
    const double s = std::sqrt(gain - 1.0);
    T.A(signal, signal) = c;
    T.A(idler, idler) = c;
    T.B(signal, idler) = s;
    T.B(idler, signal) = s;
    return T;
}

BogoliubovTransform loss_transform(Index modes, Index mode, Index ancilla,
                                   double eta) {
    require_mode(modes, mode, "loss_transform");
    require_mode(modes, ancilla, "loss_transform");
    if (mode == ancilla) {
        throw std::invalid_argument("loss_transform: mode and ancilla must differ");
    }
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("loss_transform: transmission must be in [0, 1]");
    }
    BogoliubovTransform T = identity_transform(modes);
    const double c = std::sqrt(eta);
    const double s = std::sqrt(1.0 - eta);
    T.A(mode, mode) = c;
    T.A(mode, ancilla) = s;
    T.A(ancilla, mode) = -s;
    T.A(ancilla, ancilla) = c;
    return T;
}

BogoliubovTransform beamsplitter_transform(Index modes, Index m1, Index m2,
                                           double t) {
    require_mode(modes, m1, "beamsplitter_transform");
    require_mode(modes, m2, "beamsplitter_transform");
    if (m1 == m2) {
        throw std::invalid_argument("beamsplitter_transform: ports must differ");
    }
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::invalid_argument(
            "beamsplitter_transform: transmittance must be in [0, 1]");
    }
    BogoliubovTransform T = identity_transform(modes);
    const double c = std::sqrt(t);
    const double s = std::sqrt(1.0 - t);
    T.A(m1, m1) = c;
    T.A(m1, m2) = s;
    T.A(m2, m1) = -s;
    T.A(m2, m2) = c;
    return T;
}

BogoliubovTransform compose(const BogoliubovTransform& second,
                            const BogoliubovTransform& first) {
    if (second.modes() != first.modes()) {
        throw std::invalid_argument("compose: mode count mismatch");
    }
    BogoliubovTransform out;
    out.A = second.A * first.A + second.B * first.B.conjugate();
    out.B = second.A * first.B + second.B * first.A.conjugate();
    return out;
}

SymplecticCheck check_symplectic(const BogoliubovTransform& T) {
    SymplecticCheck r;
    const Index m = T.modes();
    const CMatrix comm = T.A * T.A.adjoint() - T.B * T.B.adjoint() -
                         CMatrix::Identity(m, m);
    const CMatrix abt = T.A * T.B.transpose();
    const CMatrix sym = abt - abt.transpose();
    r.commutator_residual = comm.cwiseAbs().maxCoeff();
    r.symmetry_residual = sym.cwiseAbs().maxCoeff();
    r.ok = r.commutator_residual < kSymplecticTol &&
           r.symmetry_residual < kSymplecticTol;
    return r;
}

MeanField propagate_mean(const BogoliubovTransform& T, const MeanField& in) {
    if (T.modes() != in.modes()) {
        throw std::invalid_argument("propagate_mean: dimension mismatch");
    }
    return {T.A * in.alpha + T.B * in.alpha.conjugate()};
}

QuadratureCovariance vacuum_covariance(Index modes) {
    if (modes < 1) {
        throw std::invalid_argument("vacuum_covariance: mode count must be >= 1");
    }
    return {RMatrix::Identity(2 * modes, 2 * modes)};
}

RMatrix to_symplectic(const BogoliubovTransform& T) {
    const Index m = T.modes();
    RMatrix S(2 * m, 2 * m);
    for (Index i = 0; i < m; ++i) {
        for (Index j = 0; j < m; ++j) {
            const Complex a = T.A(i, j);
            const Complex b = T.B(i, j);
            // X' = Re(A+B) X + (−Im(A)+Im(B)) P;  P' = (Im(A)+Im(B)) X + Re(A−B) P
            S(2 * i, 2 * j) = a.real() + b.real();
            S(2 * i, 2 * j + 1) = -a.imag() + b.imag();
            S(2 * i + 1, 2 * j) = a.imag() + b.imag();
            S(2 * i + 1, 2 * j + 1) = a.real() - b.real();
        }
    }
    return S;
}

QuadratureCovariance output_covariance(const BogoliubovTransform& T,
                                       const QuadratureCovariance& in) {
    if (2 * T.modes() != in.gamma.rows() || in.gamma.rows() != in.gamma.cols()) {
        throw std::invalid_argument("output_covariance: dimension mismatch");
    }
    const RMatrix S = to_symplectic(T);
    RMatrix g = S * in.gamma * S.transpose();
    g = 0.5 * (g + g.transpose()).eval();  // kill rounding asymmetry
    return {std::move(g)};
}

RMatrix symplectic_form(Index modes) {
    RMatrix W = RMatrix::Zero(2 * modes, 2 * modes);
    for (Index k = 0; k < modes; ++k) {
        W(2 * k, 2 * k + 1) = 1.0;
        W(2 * k + 1, 2 * k) = -1.0;
    }
    return W;
}

CovarianceCheck check_covariance(const QuadratureCovariance& g) {
    CovarianceCheck r;
    const Index n = g.gamma.rows();
    r.symmetry_residual = (g.gamma - g.gamma.transpose()).cwiseAbs().maxCoeff();

    Eigen::SelfAdjointEigenSolver<RMatrix> es(g.gamma);
    r.min_eigenvalue = es.eigenvalues().minCoeff();

    const RMatrix W = symplectic_form(n / 2);
    CMatrix u = g.gamma.cast<Complex>() + Complex(0.0, 1.0) * W.cast<Complex>();
    Eigen::SelfAdjointEigenSolver<CMatrix> esu(u);
    r.min_uncertainty_eigenvalue = esu.eigenvalues().minCoeff();

    r.ok = r.symmetry_residual < kSymmetryTol &&
           r.min_eigenvalue > -kSymplecticTol &&
           r.min_uncertainty_eigenvalue > -kSymplecticTol;
    return r;
}

RVector symplectic_spectrum(const QuadratureCovariance& g) {
    const Index n = g.gamma.rows();
    const RMatrix W = symplectic_form(n / 2);
    const CMatrix m =
        Complex(0.0, 1.0) * W.cast<Complex>() * g.gamma.cast<Complex>();
    Eigen::ComplexEigenSolver<CMatrix> es(m);
    RVector out(n);
    for (Index k = 0; k < n; ++k) out(k) = std::abs(es.eigenvalues()(k));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace pachain
