#include "pachain/fock.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pachain::fock {

namespace {

std::size_t total_dim(const std::vector<Index>& cutoffs) {
    std::size_t d = 1;
    for (Index c : cutoffs) d *= static_cast<std::size_t>(c + 1);
    return d;
}

std::vector<std::size_t> strides(const FockState& s) {
    const std::size_t n = s.cutoffs.size();
    std::vector<std::size_t> st(n, 1);
    for (std::size_t k = n; k-- > 1;) {
        st[k - 1] = st[k] * static_cast<std::size_t>(s.dim(static_cast<Index>(k)));
    }
    return st;
}

}  // namespace

double FockState::norm_squared() const {
    double n2 = 0.0;
    for (const Complex& c : amplitudes) n2 += std::norm(c);
    return n2;
}

double gain_to_squeezing(double gain) {
    if (!(gain >= 1.0)) {
        throw std::invalid_argument("gain_to_squeezing: gain must be >= 1");
    }
    return std::acosh(std::sqrt(gain));
}

FockState vacuum_state(std::vector<Index> cutoffs) {
    if (cutoffs.empty() || cutoffs.size() > 3) {
        throw std::invalid_argument("vacuum_state: 1 to 3 modes supported");
    }
    for (Index c : cutoffs) {
        if (c < 0) throw std::invalid_argument("vacuum_state: negative cutoff");
    }
    FockState s;
    s.cutoffs = std::move(cutoffs);
    s.amplitudes.assign(total_dim(s.cutoffs), Complex(0.0, 0.0));
    s.amplitudes[0] = 1.0;
    return s;
}

FockState coherent_state(Complex alpha, Index cutoff) {
    if (cutoff < 0) {
        throw std::invalid_argument("coherent_state: negative cutoff");
    }
    FockState s;
    s.cutoffs = {cutoff};
    s.amplitudes.resize(static_cast<std::size_t>(cutoff) + 1);
    // c_{n+1} = c_n * alpha / sqrt(n+1), c_0 = exp(−|alpha|²/2)
    Complex c = std::exp(Complex(-0.5 * std::norm(alpha), 0.0));
    double kept = 0.0;
    for (Index n = 0; n <= cutoff; ++n) {
        s.amplitudes[static_cast<std::size_t>(n)] = c;
        kept += std::norm(c);
        c *= alpha / std::sqrt(static_cast<double>(n) + 1.0);
    }
    s.leakage = std::max(0.0, 1.0 - kept);
    s.reliable = s.leakage <= kCoherentLeakTol;
    return s;
}

FockState tensor(const FockState& a, const FockState& b) {
    if (a.modes() + b.modes() > 3) {
        throw std::invalid_argument("tensor: at most 3 modes supported");
    }
    FockState s;
    s.cutoffs = a.cutoffs;
    s.cutoffs.insert(s.cutoffs.end(), b.cutoffs.begin(), b.cutoffs.end());
    s.amplitudes.resize(a.amplitudes.size() * b.amplitudes.size());
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
        for (std::size_t j = 0; j < b.amplitudes.size(); ++j) {
            s.amplitudes[i * b.amplitudes.size() + j] =
                a.amplitudes[i] * b.amplitudes[j];
        }
    }
    s.leakage = a.leakage + b.leakage;
    s.reliable = a.reliable && b.reliable;
    return s;
}

FockState apply_tms(FockState state, double r, Index mode_a, Index mode_b) {
    const Index nm = state.modes();
    if (mode_a < 0 || mode_a >= nm || mode_b < 0 || mode_b >= nm ||
        mode_a == mode_b) {
        throw std::invalid_argument("apply_tms: need two distinct valid modes");
    }
    if (!std::isfinite(r)) {
        throw std::invalid_argument("apply_tms: squeezing parameter not finite");
    }
    if (r == 0.0) return state;

    const Index ca = state.cutoffs[static_cast<std::size_t>(mode_a)];
    const Index cb = state.cutoffs[static_cast<std::size_t>(mode_b)];

    // Internal ladder extension: the evolution multiplies photon numbers by
    // roughly G = cosh²r, so pad the pair space far enough that amplitude at
    // the internal boundary is negligible; weight between the declared cutoff
    // and the internal boundary is the reported leakage.
    const double g = std::cosh(r) * std::cosh(r);
    const Index pad = std::max<Index>(
        16, static_cast<Index>(std::ceil(2.0 * (g - 1.0) *
                                         static_cast<double>(std::max(ca, cb) + 2))) +
                8);
    const Index da_int = ca + 1 + pad;
    const Index db_int = cb + 1 + pad;

    // Spectator enumeration: base offsets of all non-pair mode combinations.
    const std::vector<std::size_t> st = strides(state);
    std::vector<std::size_t> bases{0};
    for (Index m = 0; m < nm; ++m) {
        if (m == mode_a || m == mode_b) continue;
        std::vector<std::size_t> next;
        next.reserve(bases.size() * static_cast<std::size_t>(state.dim(m)));
        for (std::size_t b : bases) {
            for (Index n = 0; n < state.dim(m); ++n) {
                next.push_back(b + static_cast<std::size_t>(n) * st[static_cast<std::size_t>(m)]);
            }
        }
        bases = std::move(next);
    }
    const std::size_t sa = st[static_cast<std::size_t>(mode_a)];
    const std::size_t sb = st[static_cast<std::size_t>(mode_b)];

    std::vector<Complex> out(state.amplitudes.size(), Complex(0.0, 0.0));
    double leaked = 0.0;

    // One difference sector delta = n_a − n_b at a time. Within a sector the
    // generator r(a†b† − ab) is a real skew-symmetric tridiagonal ladder;
    // diag(i^j) maps it to a real symmetric tridiagonal matrix T with
    // off-diagonals sqrt((j+d+1)(j+1)), so exp = D V e^{−i r Λ} Vᵀ D†.
    for (Index delta = -cb; delta <= ca; ++delta) {
        const Index d = delta >= 0 ? delta : -delta;
        // j indexes |j+d, j⟩ on (heavy, light) = (a, b) for delta >= 0.
        const Index heavy_int = delta >= 0 ? da_int : db_int;
        const Index light_int = delta >= 0 ? db_int : da_int;
        const Index len = std::min(heavy_int - d, light_int);
        const Index heavy_cut = delta >= 0 ? ca : cb;
        const Index light_cut = delta >= 0 ? cb : ca;
        const Index keep = std::min(heavy_cut - d, light_cut) + 1;  // retained j
        if (keep <= 0 || len <= 0) continue;

        RMatrix T = RMatrix::Zero(len, len);
        for (Index j = 0; j + 1 < len; ++j) {
            const double w = std::sqrt(static_cast<double>(j + d + 1) *
                                       static_cast<double>(j + 1));
            T(j, j + 1) = w;
            T(j + 1, j) = w;
        }
        Eigen::SelfAdjointEigenSolver<RMatrix> es(T);
        const RMatrix& V = es.eigenvectors();
        CVector phases(len);
        for (Index k = 0; k < len; ++k) {
            phases(k) = std::exp(Complex(0.0, -r * es.eigenvalues()(k)));
        }
        const Complex iu(0.0, 1.0);
        CVector dphase(len);  // i^j
        dphase(0) = 1.0;
        for (Index j = 1; j < len; ++j) dphase(j) = dphase(j - 1) * iu;

        CVector x(len);
        for (std::size_t base : bases) {
            x.setZero();
            for (Index j = 0; j < keep; ++j) {
                const Index na = delta >= 0 ? j + d : j;
                const Index nb = delta >= 0 ? j : j + d;
                x(j) = state.amplitudes[base + static_cast<std::size_t>(na) * sa +
                                        static_cast<std::size_t>(nb) * sb];
            }
            if (x.isZero(0.0)) continue;

            CVector u = dphase.conjugate().cwiseProduct(x);
            CVector y = V.transpose() * u;
            y = phases.cwiseProduct(y);
            CVector z = V * y;
            z = dphase.cwiseProduct(z);

            for (Index j = 0; j < keep; ++j) {
                const Index na = delta >= 0 ? j + d : j;
                const Index nb = delta >= 0 ? j : j + d;
                out[base + static_cast<std::size_t>(na) * sa +
                    static_cast<std::size_t>(nb) * sb] = z(j);
            }
            for (Index j = keep; j < len; ++j) leaked += std::norm(z(j));
        }
    }

    state.amplitudes = std::move(out);
    state.leakage += leaked;
    state.reliable = state.reliable && state.leakage <= kLeakageFlag;
    return state;
}

MomentReport photon_moments(const FockState& state) {
    const Index nm = state.modes();
    MomentReport rep;
    rep.mean_photons = RVector::Zero(nm);
    rep.covariance = RMatrix::Zero(nm, nm);
    rep.leakage = state.leakage;
    rep.reliable = state.reliable;

    const double n2 = state.norm_squared();
    if (n2 <= 0.0) {
        throw std::domain_error("photon_moments: state has zero norm");
    }

    RMatrix second = RMatrix::Zero(nm, nm);
    std::vector<Index> idx(static_cast<std::size_t>(nm), 0);
    for (std::size_t flat = 0; flat < state.amplitudes.size(); ++flat) {
        const double p = std::norm(state.amplitudes[flat]);
        if (p != 0.0) {
            for (Index j = 0; j < nm; ++j) {
                const double njv = static_cast<double>(idx[static_cast<std::size_t>(j)]);
                rep.mean_photons(j) += p * njv;
                for (Index k = 0; k < nm; ++k) {
                    second(j, k) += p * njv *
                                    static_cast<double>(idx[static_cast<std::size_t>(k)]);
                }
            }
        }
        // advance the multi-index, last mode fastest
        for (Index m = nm; m-- > 0;) {
            auto& v = idx[static_cast<std::size_t>(m)];
            if (++v <= state.cutoffs[static_cast<std::size_t>(m)]) break;
            v = 0;
        }
    }
    rep.mean_photons /= n2;
    second /= n2;
    rep.covariance =
        second - rep.mean_photons * rep.mean_photons.transpose();
    rep.covariance = 0.5 * (rep.covariance + rep.covariance.transpose()).eval();
    return rep;
}

double number_combination_variance(const MomentReport& m,
                                   const std::vector<double>& coefficients) {
    if (static_cast<Index>(coefficients.size()) != m.mean_photons.size()) {
        throw std::invalid_argument(
            "number_combination_variance: coefficient count mismatch");
    }
    Eigen::Map<const RVector> d(coefficients.data(),
                                static_cast<Index>(coefficients.size()));
    return d.dot(m.covariance * d);
}

GaussianComparison verify_against_gaussian(const std::vector<double>& gains,
                                           Complex seed_alpha,
                                           const std::vector<Index>& cutoffs) {
    if (gains.empty() || gains.size() > 2) {
        throw std::invalid_argument("verify_against_gaussian: 1 or 2 stages");
    }
    if (cutoffs.size() != gains.size() + 1) {
        throw std::invalid_argument(
            "verify_against_gaussian: need one cutoff per mode (probe + conjugates)");
    }
    if (total_dim(cutoffs) > 2'000'000) {
        throw std::invalid_argument(
            "verify_against_gaussian: truncated space too large");
    }

    FockState state = coherent_state(seed_alpha, cutoffs[0]);
    for (std::size_t k = 1; k < cutoffs.size(); ++k) {
        state = tensor(state, vacuum_state({cutoffs[k]}));
    }
    double gain_product = 1.0;
    for (std::size_t i = 0; i < gains.size(); ++i) {
        state = apply_tms(state, gain_to_squeezing(gains[i]), 0,
                          static_cast<Index>(i + 1));
        gain_product *= gains[i];
    }
    if (state.leakage > kLeakageFlag) {
        throw std::runtime_error(
            "verify_against_gaussian: truncation leakage above threshold");
    }

    const MomentReport mom = photon_moments(state);
    std::vector<double> comb(cutoffs.size(), -1.0);
    comb[0] = 1.0;

    GaussianComparison c;
    c.seed_intensity = std::norm(seed_alpha);
    c.exact_difference_variance = number_combination_variance(mom, comb);
    c.exact_total_mean = mom.mean_photons.sum();
    c.exact_ratio = c.exact_difference_variance / c.exact_total_mean;
    c.linearized_ratio = 1.0 / (2.0 * gain_product - 1.0);
    c.absolute_discrepancy = std::abs(c.exact_ratio - c.linearized_ratio);
    c.relative_discrepancy = c.absolute_discrepancy / c.linearized_ratio;
    const double spont = 2.0 * gain_product - 2.0;  // mean photons at zero seed
    c.predicted_relative =
        spont / ((2.0 * gain_product - 1.0) * c.seed_intensity + spont);
    c.leakage = state.leakage;
    return c;
}

}  // namespace pachain::fock
