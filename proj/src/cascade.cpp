#include "pachain/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pachain {

namespace {

bool known_bright_label(const CascadeSpec& spec, const std::string& label) {
    const auto labels = bright_beam_labels(spec);
    return std::find(labels.begin(), labels.end(), label) != labels.end();
}

}  // namespace

void validate_spec(const CascadeSpec& spec) {
    if (spec.stages.empty()) {
        throw std::invalid_argument("CascadeSpec: stages must contain at least one stage");
    }
    if (!(spec.seed_intensity >= 0.0)) {
        throw std::invalid_argument("CascadeSpec: seed_intensity must be >= 0");
    }
    for (std::size_t i = 0; i < spec.stages.size(); ++i) {
        const StageSpec& st = spec.stages[i];
        if (!(st.gain >= 1.0)) {
            throw std::invalid_argument("CascadeSpec: stages[" + std::to_string(i) +
                                        "].gain must be >= 1");
        }
        if (!(st.pre_stage_transmission >= 0.0 && st.pre_stage_transmission <= 1.0)) {
            throw std::invalid_argument("CascadeSpec: stages[" + std::to_string(i) +
                                        "].pre_stage_transmission must be in [0, 1]");
        }
    }
    if (!(spec.detector_efficiency >= 0.0 && spec.detector_efficiency <= 1.0)) {
        throw std::invalid_argument(
            "CascadeSpec: detector_efficiency must be in [0, 1]");
    }
    for (const auto& [label, eta] : spec.path_transmissions) {
        if (!known_bright_label(spec, label)) {
            throw std::invalid_argument(
                "CascadeSpec: path_transmissions refers to unknown beam '" + label +
                "'");
        }
        if (!(eta >= 0.0 && eta <= 1.0)) {
            throw std::invalid_argument("CascadeSpec: path_transmissions['" + label +
                                        "'] must be in [0, 1]");
        }
    }
    for (const NamedPlan& plan : spec.plans) {
        if (plan.coefficients.empty()) {
            throw std::invalid_argument("CascadeSpec: plan '" + plan.name +
                                        "' has no coefficients");
        }
        for (const auto& [label, c] : plan.coefficients) {
            if (!known_bright_label(spec, label)) {
                throw std::invalid_argument("CascadeSpec: plan '" + plan.name +
                                            "' refers to unknown beam '" + label + "'");
            }
            (void)c;
        }
    }
    if (spec.classical_excess) {
        if (!(spec.classical_excess->excess_variance >= 0.0)) {
            throw std::invalid_argument(
                "CascadeSpec: classical_excess.excess_variance must be >= 0");
        }
        if (!known_bright_label(spec, spec.classical_excess->mode)) {
            throw std::invalid_argument(
                "CascadeSpec: classical_excess.mode refers to unknown beam '" +
                spec.classical_excess->mode + "'");
        }
    }
}

std::string probe_label(const CascadeSpec& spec) {
    return "Pr" + std::to_string(spec.stages.size());
}

std::vector<std::string> bright_beam_labels(const CascadeSpec& spec) {
    std::vector<std::string> labels;
    for (std::size_t i = 1; i <= spec.stages.size(); ++i) {
        labels.push_back("C" + std::to_string(i));
    }
    labels.push_back(probe_label(spec));
    return labels;
}

std::vector<NamedPlan> default_plans(const CascadeSpec& spec) {
    const std::string pr = probe_label(spec);
    std::vector<NamedPlan> plans;
    if (spec.stages.size() == 2) {
        plans.push_back({"A", {{"C1", 1.0}}});
        plans.push_back({"B", {{"C2", 1.0}}});
        plans.push_back({"C", {{pr, 1.0}}});
        plans.push_back({"D", {{pr, 1.0}, {"C2", -1.0}}});
        plans.push_back({"E", {{pr, 1.0}, {"C1", -1.0}}});
        plans.push_back({"F", {{"C2", 1.0}, {"C1", -1.0}}});
        plans.push_back({"G", {{pr, 1.0}, {"C2", -1.0}, {"C1", -1.0}}});
        return plans;
    }
    for (const std::string& label : bright_beam_labels(spec)) {
        plans.push_back({label, {{label, 1.0}}});
    }
    NamedPlan full{"full_difference", {{pr, 1.0}}};
    for (std::size_t i = 1; i <= spec.stages.size(); ++i) {
        full.coefficients["C" + std::to_string(i)] = -1.0;
    }
    plans.push_back(std::move(full));
    return plans;
}

BuiltNetwork build_network(const CascadeSpec& spec) {
    validate_spec(spec);
    const Index n = spec.stage_count();

    BuiltNetwork net;
    net.probe_mode = net.registry.add(probe_label(spec));
    std::vector<Index> conj_modes;
    for (Index i = 1; i <= n; ++i) {
        conj_modes.push_back(net.registry.add("C" + std::to_string(i)));
    }
    std::vector<Index> pre_ancillas;
    for (Index i = 1; i <= n; ++i) {
        pre_ancillas.push_back(net.registry.add("vac_pre" + std::to_string(i)));
    }
    const std::vector<std::string> bright = bright_beam_labels(spec);
    std::vector<Index> path_ancillas, det_ancillas;
    for (const std::string& label : bright) {
        path_ancillas.push_back(net.registry.add("vac_path_" + label));
    }
    for (const std::string& label : bright) {
        det_ancillas.push_back(net.registry.add("vac_det_" + label));
    }
    const Index modes = net.registry.size();

    BogoliubovTransform T = identity_transform(modes);
    for (Index i = 0; i < n; ++i) {
        T = compose(loss_transform(modes, net.probe_mode, pre_ancillas[i],
                                   spec.stages[static_cast<std::size_t>(i)]
                                       .pre_stage_transmission),
                    T);
        T = compose(pia_transform(modes, net.probe_mode, conj_modes[i],
                                  spec.stages[static_cast<std::size_t>(i)].gain),
                    T);
    }
    for (std::size_t b = 0; b < bright.size(); ++b) {
        const Index mode = net.registry.index(bright[b]);
        const auto it = spec.path_transmissions.find(bright[b]);
        const double eta = it == spec.path_transmissions.end() ? 1.0 : it->second;
        T = compose(loss_transform(modes, mode, path_ancillas[b], eta), T);
    }
    for (std::size_t b = 0; b < bright.size(); ++b) {
        const Index mode = net.registry.index(bright[b]);
        T = compose(loss_transform(modes, mode, det_ancillas[b],
                                   spec.detector_efficiency),
                    T);
    }

    net.transform = std::move(T);
    for (const std::string& label : bright) {
        net.bright_modes.push_back(net.registry.index(label));
    }
    return net;
}

ScenarioResult run_scenario(const CascadeSpec& spec, bool validate_moments) {
    BuiltNetwork net = build_network(spec);
    const Index modes = net.registry.size();

    MeanField in{CVector::Zero(modes)};
    in.alpha(net.probe_mode) = std::sqrt(spec.seed_intensity);

    QuadratureCovariance gin = vacuum_covariance(modes);
    if (spec.classical_excess) {
        const Index m = net.registry.index(spec.classical_excess->mode);
        gin.gamma(2 * m, 2 * m) += spec.classical_excess->excess_variance;
    }

    ScenarioResult result;
    result.mean = propagate_mean(net.transform, in);
    result.covariance = output_covariance(net.transform, gin);
    if (validate_moments) {
        const CovarianceCheck cc = check_covariance(result.covariance);
        if (!cc.ok) {
            throw std::logic_error("run_scenario: propagated covariance invalid");
        }
    }

    const std::vector<NamedPlan> plans =
        spec.plans.empty() ? default_plans(spec) : spec.plans;
    for (const NamedPlan& np : plans) {
        DetectionPlan plan;
        for (const auto& [label, c] : np.coefficients) {
            plan.detected_modes.push_back(net.registry.index(label));
            plan.coefficients.push_back(c);
        }
        result.reports.emplace_back(
            np.name, photocurrent_noise(result.covariance, result.mean, plan));
    }

    result.registry = std::move(net.registry);
    result.transform = std::move(net.transform);
    return result;
}

double analytic_chain_ratio(const std::vector<double>& gains) {
    if (gains.empty()) {
        throw std::invalid_argument("analytic_chain_ratio: need at least one gain");
    }
    double product = 1.0;
    for (double g : gains) {
        if (!(g >= 1.0)) {
            throw std::invalid_argument("analytic_chain_ratio: gains must be >= 1");
        }
        product *= g;
    }
    return 1.0 / (2.0 * product - 1.0);
}

double pairwise_ratio(double gain1, double gain2) {
    if (!(gain1 >= 1.0) || !(gain2 >= 1.0)) {
        throw std::invalid_argument("pairwise_ratio: gains must be >= 1");
    }
    return (2.0 * gain1 - 1.0) / (2.0 * gain2 - 1.0);
}

PathBudget path_budget_from(const CascadeSpec& templ) {
    if (templ.stages.size() != 2) {
        throw std::invalid_argument("path_budget_from: template must have 2 stages");
    }
    PathBudget b;
    auto get = [&](const std::string& label, double fallback) {
        const auto it = templ.path_transmissions.find(label);
        return it == templ.path_transmissions.end() ? fallback : it->second;
    };
    b.t_probe = get(probe_label(templ), 1.0);
    b.t_c1 = get("C1", 1.0);
    b.t_c2 = get("C2", 1.0);
    b.t_mid = templ.stages[1].pre_stage_transmission;
    return b;
}

CascadeSpec twin_scenario(const CascadeSpec& templ, int stage, double t_probe,
                          double t_conj) {
    if (templ.stages.size() != 2) {
        throw std::invalid_argument("twin_scenario: template must have 2 stages");
    }
    if (stage != 0 && stage != 1) {
        throw std::invalid_argument("twin_scenario: stage must be 0 or 1");
    }
    CascadeSpec s;
    s.seed_intensity = templ.seed_intensity;
    // Cell 2 twins are benchmarked with a fresh coherent seed, so no
    // pre-stage probe loss there.
    s.stages = {{templ.stages[static_cast<std::size_t>(stage)].gain,
                 stage == 0 ? templ.stages[0].pre_stage_transmission : 1.0}};
    s.path_transmissions = {{"Pr1", t_probe}, {"C1", t_conj}};
    s.detector_efficiency = templ.detector_efficiency;
    s.plans = {{"twin", {{"Pr1", 1.0}, {"C1", -1.0}}}};
    return s;
}

CascadeSpec triple_scenario(const CascadeSpec& templ, const PathBudget& budget) {
    if (templ.stages.size() != 2) {
        throw std::invalid_argument("triple_scenario: template must have 2 stages");
    }
    CascadeSpec s = templ;
    s.stages[1].pre_stage_transmission = budget.t_mid;
    s.path_transmissions = {{probe_label(s), budget.t_probe},
                            {"C1", budget.t_c1},
                            {"C2", budget.t_c2}};
    s.plans = {{"triple",
                {{probe_label(s), 1.0}, {"C2", -1.0}, {"C1", -1.0}}}};
    return s;
}

namespace {

double scenario_db(const CascadeSpec& spec) {
    const ScenarioResult r = run_scenario(spec, /*validate_moments=*/false);
    return r.reports.front().second.db;
}

struct BenchmarkTrio {
    double twin1_db = 0.0;
    double twin2_db = 0.0;
    double triple_db = 0.0;
};

BenchmarkTrio evaluate_trio(const CascadeSpec& templ, const PathBudget& b) {
    BenchmarkTrio out;
    out.twin1_db = scenario_db(twin_scenario(templ, 0, b.t_probe, b.t_c1));
    out.twin2_db = scenario_db(twin_scenario(templ, 1, b.t_probe, b.t_c2));
    out.triple_db = scenario_db(triple_scenario(templ, b));
    return out;
}

}  // namespace

FitResult fit_losses(const MeasuredSqueezing& measured,
                     const CascadeSpec& templ,
                     const std::vector<std::string>& free_params,
                     const OptimizeOptions& options) {
    if (templ.stages.size() != 2) {
        throw std::invalid_argument("fit_losses: template must have 2 stages");
    }
    if (free_params.empty() || free_params.size() > 4) {
        throw std::invalid_argument("fit_losses: 1 to 4 free parameters");
    }
    if (!std::isfinite(measured.twin1_db) || !std::isfinite(measured.twin2_db) ||
        !std::isfinite(measured.triple_db)) {
        throw std::invalid_argument("fit_losses: measured values must be finite");
    }
    const std::vector<std::string> allowed = {"t_probe", "t_c1", "t_c2", "t_mid"};
    for (std::size_t i = 0; i < free_params.size(); ++i) {
        if (std::find(allowed.begin(), allowed.end(), free_params[i]) ==
            allowed.end()) {
            throw std::invalid_argument("fit_losses: unknown parameter '" +
                                        free_params[i] + "'");
        }
        for (std::size_t j = i + 1; j < free_params.size(); ++j) {
            if (free_params[i] == free_params[j]) {
                throw std::invalid_argument("fit_losses: duplicate parameter '" +
                                            free_params[i] + "'");
            }
        }
    }

    const PathBudget base = path_budget_from(templ);
    auto with_params = [&](const std::vector<double>& x) {
        PathBudget b = base;
        for (std::size_t i = 0; i < free_params.size(); ++i) {
            if (free_params[i] == "t_probe") b.t_probe = x[i];
            else if (free_params[i] == "t_c1") b.t_c1 = x[i];
            else if (free_params[i] == "t_c2") b.t_c2 = x[i];
            else b.t_mid = x[i];
        }
        return b;
    };

    auto objective = [&](const std::vector<double>& x) {
        const BenchmarkTrio t = evaluate_trio(templ, with_params(x));
        const double e1 = t.twin1_db - measured.twin1_db;
        const double e2 = t.twin2_db - measured.twin2_db;
        const double e3 = t.triple_db - measured.triple_db;
        return e1 * e1 + e2 * e2 + e3 * e3;
    };

    const std::vector<std::pair<double, double>> bounds(free_params.size(),
                                                        {0.5, 1.0});
    const OptimizeResult opt = minimize_bounded(objective, bounds, options);

    FitResult fit;
    for (std::size_t i = 0; i < free_params.size(); ++i) {
        fit.transmissions.emplace_back(free_params[i], opt.x[i]);
    }
    const BenchmarkTrio t = evaluate_trio(templ, with_params(opt.x));
    fit.twin1_model_db = t.twin1_db;
    fit.twin2_model_db = t.twin2_db;
    fit.triple_model_db = t.triple_db;
    fit.residual_sum_sq_db = opt.value;
    fit.max_abs_error_db = std::max({std::abs(t.twin1_db - measured.twin1_db),
                                     std::abs(t.twin2_db - measured.twin2_db),
                                     std::abs(t.triple_db - measured.triple_db)});
    fit.residual_flagged = fit.max_abs_error_db > kFitFlagThresholdDb;
    fit.evaluations = opt.evaluations;
    return fit;
}

}  // namespace pachain
