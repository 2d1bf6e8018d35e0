// Command line front end: every subcommand reads a JSON experiment
// config, runs one pipeline and emits CSV/JSON/SVG artifacts. Exit codes:
// 0 success, 2 config/validation failure, 3 numeric non-convergence.

#include <cstdio>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "freering/config.hpp"
#include "freering/emit.hpp"
#include "freering/outliers.hpp"
#include "freering/rmt.hpp"
#include "freering/subordination.hpp"
#include "freering/weingarten.hpp"

namespace {

using namespace freering;

struct GlobalArgs {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<long> n;
    std::optional<int> trials;
    std::optional<double> tol;
};

ExperimentConfig load(const GlobalArgs& args, bool need_seed) {
    ExperimentConfig cfg = parse_config(args.config_path);
    if (args.seed) cfg.seed = *args.seed;
    if (args.n) {
        if (*args.n < 8) throw ConfigError("flag --n must be >= 8");
        cfg.n = *args.n;
    }
    if (args.trials) {
        if (*args.trials < 1) throw ConfigError("flag --trials must be >= 1");
        cfg.trials = *args.trials;
    }
    if (args.tol) {
        if (!(*args.tol > 0.0)) throw ConfigError("flag --tol must be positive");
        cfg.tol = *args.tol;
    }
    if (need_seed && !cfg.seed)
        throw ConfigError("config: \"seed\" is required for stochastic commands");
    return cfg;
}

void emit_or_print(const std::string& out_path, const std::string& name,
                   const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
    } else {
        write_file(out_path + name, content);
    }
}

int run_spectrum(const GlobalArgs& args) {
    const ExperimentConfig cfg = load(args, true);
    const ModelSample sample = sample_model(cfg.model, cfg.n, *cfg.seed);
    const Eigen::VectorXcd ev = eigenvalues(sample.m);
    const std::vector<Complex> evs(ev.data(), ev.data() + ev.size());
    emit_or_print(args.out_path, "spectrum.csv", eigenvalues_csv(evs));
    emit_or_print(args.out_path, "spectrum_meta.json",
                  spectrum_metadata_json(cfg.model, cfg.n, *cfg.seed));
    return 0;
}

int run_domains(const GlobalArgs& args) {
    const ExperimentConfig cfg = load(args, false);
    const DomainGrid grid = grid_map(cfg.model, cfg.bbox, cfg.resolution);
    emit_or_print(args.out_path, "domains.csv", domain_grid_csv(grid));
    emit_or_print(args.out_path, "domains.svg", scatter_svg(grid, {}, cfg.model.spikes));
    return 0;
}

int run_outliers(const GlobalArgs& args) {
    const ExperimentConfig cfg = load(args, true);
    const OutlierReport report = run_experiment(cfg.model, cfg.n, cfg.trials, cfg.tol, *cfg.seed);
    emit_or_print(args.out_path, "outliers.json", report_json(report));
    if (!args.out_path.empty()) {
        // pooled scatter of the first trial with the domain overlay
        const ModelSample sample = sample_model(cfg.model, cfg.n, *cfg.seed);
        const Eigen::VectorXcd ev = eigenvalues(sample.m);
        const std::vector<Complex> evs(ev.data(), ev.data() + ev.size());
        const DomainGrid grid = grid_map(cfg.model, cfg.bbox, cfg.resolution);
        write_file(args.out_path + "outliers.svg", scatter_svg(grid, evs, cfg.model.spikes));
    }
    return 0;
}

int run_subord(const GlobalArgs& args) {
    const ExperimentConfig cfg = load(args, false);
    if (!cfg.has_point)
        throw ConfigError("config: \"point\" is required for the subord command");
    const DiscreteMeasure mu1 = model_mu1(cfg.model, cfg.point);
    const DiscreteMeasure mu2 = model_mu2(cfg.model);
    std::vector<SubordinationSolution> rows;
    for (int rr = 0; rr < cfg.resolution; ++rr) {
        const double y = cfg.bbox.ymin + (cfg.bbox.ymax - cfg.bbox.ymin) * rr / (cfg.resolution - 1.0);
        if (!(y > 0.0)) continue;
        for (int cc = 0; cc < cfg.resolution; ++cc) {
            const double x =
                cfg.bbox.xmin + (cfg.bbox.xmax - cfg.bbox.xmin) * cc / (cfg.resolution - 1.0);
            rows.push_back(subordination_solve(mu1, mu2, Complex(x, y)));
        }
    }
    emit_or_print(args.out_path, "subord.csv", subordination_csv(rows));
    return 0;
}

int run_gap(const GlobalArgs& args, const std::string& side_name) {
    const ExperimentConfig cfg = load(args, false);
    if (!cfg.has_point) throw ConfigError("config: \"point\" is required for the gap command");
    const DiscreteMeasure mu1 = model_mu1(cfg.model, cfg.point);
    const DiscreteMeasure mu2 = model_mu2(cfg.model);
    HSide side;
    if (side_name == "h1") {
        side = HSide::H1;
    } else if (side_name == "h2") {
        side = HSide::H2;
    } else {  // auto: outer points gap on mu1, inner points on mu2
        side = theta_classify(cfg.model, cfg.point) == DomainClass::ThetaIn ? HSide::H2 : HSide::H1;
    }
    const SupportGapCertificate cert = support_gap(mu1, mu2, side);
    emit_or_print(args.out_path, "gap.json", certificate_json(cert));
    return 0;
}

int run_weingarten(const GlobalArgs& args, int p) {
    if (p < 1 || p > 6) throw ConfigError("flag --p must be in 1..6");
    const int wn = args.n ? static_cast<int>(*args.n) : 10;
    const int trials = args.trials ? *args.trials : 0;
    if (wn < p) throw ConfigError("flag --n must be >= p");
    if (trials > 0 && !args.seed)
        throw ConfigError("flag --seed is required for the weingarten MC comparison");
    const std::uint64_t seed = args.seed ? *args.seed : 0;

    const WeingartenTable table = wg_exact(p, wn);
    nlohmann::ordered_json j;
    j["p"] = p;
    j["n"] = wn;
    nlohmann::ordered_json jt = nlohmann::ordered_json::array();
    for (const auto& [type, value] : table.values) {
        nlohmann::ordered_json row;
        row["cycle_type"] = type;
        row["wg"] = value;
        row["asymptotic_ratio"] = wg_asymptotic_check(p, type, {wn})[0];
        row["moebius"] = moebius_factor(type);
        jt.push_back(row);
    }
    j["table"] = jt;
    j["gram_residual"] = table.gram_residual;
    j["class_spread"] = table.class_spread;

    if (trials > 0) {
        std::vector<int> idx(p), ones(p, 1);
        std::iota(idx.begin(), idx.end(), 1);
        const double exact = mixed_moment_exact(idx, idx, idx, idx, wn);
        const McMoment mc = mc_moment(idx, idx, idx, idx, wn, trials, seed);
        nlohmann::ordered_json cmp;
        cmp["pattern"] = "distinct-diagonal";
        cmp["exact"] = exact;
        cmp["mc_mean"] = {mc.mean.real(), mc.mean.imag()};
        cmp["mc_stderr"] = mc.stderr_;
        cmp["within_3_sigma"] = std::abs(mc.mean - Complex(exact, 0.0)) <= 3.0 * mc.stderr_;
        j["mc_comparison"] = cmp;
    }
    emit_or_print(args.out_path, "weingarten.json", j.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Free-probability predictions and Monte-Carlo checks for the deformed single ring model"};
    app.require_subcommand(1);

    GlobalArgs args;
    app.add_option("--config", args.config_path, "experiment config (JSON)");
    app.add_option("--out", args.out_path, "output prefix (default: stdout)");
    std::uint64_t seed_flag = 0;
    auto* seed_opt = app.add_option("--seed", seed_flag, "seed override");
    long n_flag = 0;
    auto* n_opt = app.add_option("--n", n_flag, "matrix size override");
    int trials_flag = 0;
    auto* trials_opt = app.add_option("--trials", trials_flag, "trial count override");
    double tol_flag = 0;
    auto* tol_opt = app.add_option("--tol", tol_flag, "matching tolerance override");

    auto* spectrum = app.add_subcommand("spectrum", "sample one model realization, emit eigenvalues");
    auto* domains_cmd = app.add_subcommand("domains", "classify a grid into the two domains");
    auto* outliers_cmd = app.add_subcommand("outliers", "Monte-Carlo outlier/inner-emptiness report");
    auto* subord = app.add_subcommand("subord", "subordination solutions on a grid");
    auto* gap = app.add_subcommand("gap", "support-gap certificate at the config point");
    std::string side = "auto";
    gap->add_option("--side", side, "h1, h2 or auto");
    auto* weingarten_cmd = app.add_subcommand("weingarten", "exact table, asymptotics, MC comparison");
    int wg_p = 2;
    weingarten_cmd->add_option("--p", wg_p, "moment order (1..6)");

    CLI11_PARSE(app, argc, argv);
    if (*seed_opt) args.seed = seed_flag;
    if (*n_opt) args.n = n_flag;
    if (*trials_opt) args.trials = trials_flag;
    if (*tol_opt) args.tol = tol_flag;

    try {
        if (spectrum->parsed()) return run_spectrum(args);
        if (domains_cmd->parsed()) return run_domains(args);
        if (outliers_cmd->parsed()) return run_outliers(args);
        if (subord->parsed()) return run_subord(args);
        if (gap->parsed()) return run_gap(args, side);
        if (weingarten_cmd->parsed()) return run_weingarten(args, wg_p);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NonConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
