// cascade.hpp — Scenario layer: turns a declarative cascade description
// (seed, per-stage gains, loss budget, detection plans) into a concrete
// network, evaluates the analytic squeezing formulas, runs full trace sets,
// and fits unknown transmissions to measured squeezing.

#pragma once

#include "pachain/bogoliubov.hpp"
#include "pachain/optimize.hpp"
#include "pachain/photodetection.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pachain {

struct StageSpec {
    double gain = 1.0;
    double pre_stage_transmission = 1.0;  // probe loss before this cell
};

struct ClassicalExcess {
    std::string mode;
    double excess_variance = 0.0;  // added amplitude-quadrature variance
};

struct NamedPlan {
    std::string name;
    std::map<std::string, double> coefficients;  // beam label -> weight
};

// Declarative cascade: a coherent seed through n amplifier cells in series.
// Bright beams are labeled C1..Cn (conjugates) and Pr<n> (the final probe);
// path_transmissions and plans refer to those labels.
struct CascadeSpec {
    double seed_intensity = 0.0;
    std::vector<StageSpec> stages;
    std::map<std::string, double> path_transmissions;
    double detector_efficiency = 1.0;
    std::vector<NamedPlan> plans;  // empty = default trace set
    std::optional<ClassicalExcess> classical_excess;

    Index stage_count() const { return static_cast<Index>(stages.size()); }
};

void validate_spec(const CascadeSpec& spec);

std::string probe_label(const CascadeSpec& spec);
// C1..Cn, then the probe — the detection order i_1 .. i_{n+1}.
std::vector<std::string> bright_beam_labels(const CascadeSpec& spec);

// Lettered A..G trace set for two-stage chains (singles, pairwise
// differences, full difference); per-beam singles plus "full_difference"
// otherwise.
std::vector<NamedPlan> default_plans(const CascadeSpec& spec);

struct BuiltNetwork {
    ModeRegistry registry;
    BogoliubovTransform transform;
    Index probe_mode = 0;
    std::vector<Index> bright_modes;  // same order as bright_beam_labels
};

// Allocates the seed mode, n conjugates, and one vacuum ancilla per loss
// point (pre-stage, per-beam path, per-detector), then composes
// loss + PIA per stage, path losses, and detector-efficiency losses.
BuiltNetwork build_network(const CascadeSpec& spec);

struct ScenarioResult {
    ModeRegistry registry;
    BogoliubovTransform transform;
    MeanField mean;
    QuadratureCovariance covariance;
    std::vector<std::pair<std::string, NoiseReport>> reports;
};

ScenarioResult run_scenario(const CascadeSpec& spec, bool validate_moments = true);

// 1 / (2 prod G_i − 1); the lossless intensity-difference ratio of the
// (n+1)-beam combination. Equals 1/(2G^n − 1) for equal gains.
double analytic_chain_ratio(const std::vector<double>& gains);

// (2 G1 − 1) / (2 G2 − 1); the probe-vs-last-conjugate pair after two cells.
double pairwise_ratio(double gain1, double gain2);

// ------------------------------- loss fitting -------------------------------

// Slope-derived squeezing of the paper-style benchmark trio: twin beams from
// cell 1, twin beams from cell 2 (coherently seeded), and the cascaded triple.
struct MeasuredSqueezing {
    double twin1_db = 0.0;
    double twin2_db = 0.0;
    double triple_db = 0.0;
};

// The transmissions the benchmark trio shares. t_probe is the detected probe
// arm, t_c1/t_c2 the conjugate arms of cell 1/2, t_mid the probe loss between
// the cells.
struct PathBudget {
    double t_probe = 1.0;
    double t_c1 = 1.0;
    double t_c2 = 1.0;
    double t_mid = 1.0;
};

PathBudget path_budget_from(const CascadeSpec& two_stage_template);

// Single-cell twin-beam scenario sharing the template's gains and detector
// efficiency; stage = 0 (cell 1, keeps its pre-stage loss) or 1 (cell 2,
// fresh coherent seed).
CascadeSpec twin_scenario(const CascadeSpec& two_stage_template, int stage,
                          double t_probe, double t_conj);

// The full two-stage scenario with an explicit budget.
CascadeSpec triple_scenario(const CascadeSpec& two_stage_template,
                            const PathBudget& budget);

struct FitResult {
    std::vector<std::pair<std::string, double>> transmissions;  // fitted values
    double twin1_model_db = 0.0;
    double twin2_model_db = 0.0;
    double triple_model_db = 0.0;
    double residual_sum_sq_db = 0.0;
    double max_abs_error_db = 0.0;
    bool residual_flagged = false;  // any point off by more than 0.1 dB
    int evaluations = 0;
};

inline constexpr double kFitFlagThresholdDb = 0.1;

// Fits the free transmissions (names from {"t_probe", "t_c1", "t_c2",
// "t_mid"}, each bounded to [0.5, 1]) so the benchmark trio reproduces the
// measured dB triplet; remaining budget entries come from the template.
// Coarse grid then simplex refinement; deterministic.
FitResult fit_losses(const MeasuredSqueezing& measured,
                     const CascadeSpec& two_stage_template,
                     const std::vector<std::string>& free_params,
                     const OptimizeOptions& options = {});

}  // namespace pachain
