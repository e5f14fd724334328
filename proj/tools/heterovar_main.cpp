// heterovar: difference-based variance function estimation toolkit.
//
// Subcommands:
//   estimate  variance curve from a CSV dataset (difference-based or Fan-Yao)
//   cv        K-fold cross-validation bandwidth selection
//   simulate  Monte-Carlo comparison study (medians of CDMSE per method)
//   rates     empirical convergence rate of the difference-based estimator
//   theory    moment-matching, Hellinger affinity, adversarial-mean tools
//   kernel    debug dumps of kernel coefficients and bin weights
//
// Exit codes: 0 success, 1 invalid configuration/input, 2 numeric tolerance
// failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "heterovar/cross_validation.hpp"
#include "heterovar/csv.hpp"
#include "heterovar/difference.hpp"
#include "heterovar/errors.hpp"
#include "heterovar/functions.hpp"
#include "heterovar/kernel.hpp"
#include "heterovar/local_linear.hpp"
#include "heterovar/lower_bound.hpp"
#include "heterovar/sample.hpp"
#include "heterovar/simulation.hpp"

using nlohmann::json;
namespace hv = heterovar;

namespace {

std::vector<double> parse_double_list(const std::string& text, const char* flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw hv::invalid_config(std::string(flag) + ": cannot parse '" + item + "'");
        }
    }
    if (out.empty()) throw hv::invalid_config(std::string(flag) + ": empty list");
    return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text, const char* flag) {
    std::vector<std::size_t> out;
    for (double v : parse_double_list(text, flag)) {
        if (v < 1 || v != static_cast<double>(static_cast<std::size_t>(v)))
            throw hv::invalid_config(std::string(flag) + ": entries must be positive integers");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

//! "lo:hi:count" -> log-spaced bandwidth grid, same spacing as the default.
std::vector<double> parse_h_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3)
        throw hv::invalid_config("--h-grid: expected lo:hi:count, got '" + text + "'");
    double lo = 0, hi = 0;
    long count = 0;
    try {
        lo = std::stod(parts[0]);
        hi = std::stod(parts[1]);
        count = std::stol(parts[2]);
    } catch (const std::exception&) {
        throw hv::invalid_config("--h-grid: cannot parse '" + text + "'");
    }
    if (!(lo > 0.0) || !(hi > lo) || hi >= 0.5 || count < 2)
        throw hv::invalid_config("--h-grid: need 0 < lo < hi < 0.5 and count >= 2");
    std::vector<double> grid(static_cast<std::size_t>(count));
    for (long k = 0; k < count; ++k)
        grid[static_cast<std::size_t>(k)] =
            lo * std::pow(hi / lo, static_cast<double>(k) / static_cast<double>(count - 1));
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

hv::Sample load_sample(const std::string& path) {
    hv::Sample sample;
    hv::read_xy_csv(path, sample.x, sample.y);
    sample.design = hv::Design::random_uniform;
    const std::size_t n = sample.x.size();
    bool fixed = n >= 3;
    for (std::size_t i = 0; fixed && i < n; ++i)
        fixed = sample.x[i] == static_cast<double>(i + 1) / static_cast<double>(n);
    if (fixed) sample.design = hv::Design::fixed_equidistant;
    sample.validate();
    return sample;
}

void emit(const std::string& path, const std::string& payload) {
    if (path.empty() || path == "-") {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw hv::invalid_config("cannot open output file '" + path + "'");
    out << payload;
    if (!out) throw hv::invalid_config("failed writing output file '" + path + "'");
}

std::string per_rep_csv(const hv::ExperimentSummary& summary) {
    std::string out = "rep,method,h,cdmse\n";
    for (const auto& rec : summary.per_replication) {
        out += std::to_string(rec.rep);
        out += ',';
        out += hv::method_name(rec.method);
        out += ',';
        out += hv::format_double(rec.h);
        out += ',';
        out += rec.error.empty() ? hv::format_double(rec.cdmse) : std::string("nan");
        out += '\n';
    }
    return out;
}

json summary_json(const hv::ExperimentSummary& summary) {
    json methods = json::object();
    for (const auto& [name, ms] : summary.by_method) {
        methods[name] = {{"median", ms.median},
                         {"q1", ms.q1},
                         {"q3", ms.q3},
                         {"succeeded", ms.succeeded},
                         {"failed", ms.failed}};
    }
    return methods;
}

json cv_result_json(const hv::CVResult& result) {
    json scores = json::array();
    for (const auto& s : result.scores) {
        json entry = {{"h", s.h}, {"evaluated", s.evaluated}, {"skipped", s.skipped}};
        if (std::isfinite(s.score))
            entry["score"] = s.score;
        else
            entry["score"] = nullptr;  // disqualified candidate
        scores.push_back(entry);
    }
    return {{"h_selected", result.h_selected}, {"scores", scores}};
}

// ---------------------------------------------------------------- estimate

struct EstimateArgs {
    std::string input, output, method = "diff", grid = "design";
    double h = 0.0, h_mean = 0.0, h_var = 0.0;
    int order = 2;
    int folds = 10;
    std::uint64_t seed = 0;
    bool truncate = false;
};

int run_estimate(const EstimateArgs& args) {
    const hv::Sample sample = load_sample(args.input);

    std::vector<double> grid;
    if (args.grid == "design") {
        grid = sample.x;
    } else {
        char* end = nullptr;
        const long count = std::strtol(args.grid.c_str(), &end, 10);
        if (end != args.grid.c_str() && *end == '\0') {
            if (count < 2) throw hv::invalid_config("--grid: need at least 2 points");
            grid.resize(static_cast<std::size_t>(count));
            for (long j = 0; j < count; ++j)
                grid[static_cast<std::size_t>(j)] =
                    static_cast<double>(j) / static_cast<double>(count - 1);
        } else {
            const hv::CsvTable table = hv::read_csv(args.grid);
            if (table.header.empty() || table.header[0] != "x")
                throw hv::invalid_config("--grid file: first column must be named 'x'");
            grid = table.columns[0];
        }
    }

    hv::VarianceEstimate est;
    if (args.method == "diff") {
        const double h = args.h > 0.0 ? args.h : hv::default_bandwidth(sample.size());
        est = hv::estimate_variance(sample, h, args.order, grid, args.truncate);
    } else if (args.method == "fanyao") {
        double hm = args.h_mean, hc = args.h_var;
        if (!(hm > 0.0) || !(hc > 0.0)) {
            hv::CVConfig cv;
            cv.folds = args.folds;
            cv.h_grid = hv::default_h_grid(sample.size());
            cv.seed = args.seed;
            cv.method = hv::VarianceMethod::residual_based;
            const hv::FanYaoBandwidths sel = hv::kfold_cv_fanyao(sample, cv);
            if (!(hm > 0.0)) hm = sel.h_mean;
            if (!(hc > 0.0)) hc = sel.h_var;
        }
        est = hv::fan_yao_variance(sample, hm, hc, grid, args.truncate);
    } else {
        throw hv::invalid_config("--method: expected diff or fanyao, got '" + args.method + "'");
    }

    const std::vector<std::string> header = {"x", "vhat"};
    const std::vector<std::vector<double>> cols = {est.grid, est.values};
    emit(args.output, hv::csv_to_string(header, cols));
    return 0;
}

// ---------------------------------------------------------------------- cv

struct CvArgs {
    std::string input, output, method = "diff", h_grid;
    int folds = 10;
    int order = 2;
    std::uint64_t seed = 0;
};

int run_cv(const CvArgs& args) {
    const hv::Sample sample = load_sample(args.input);
    hv::CVConfig cv;
    cv.folds = args.folds;
    cv.order = args.order;
    cv.seed = args.seed;
    cv.h_grid = args.h_grid.empty() ? hv::default_h_grid(sample.size())
                                    : parse_h_grid(args.h_grid);

    json out;
    if (args.method == "diff") {
        cv.method = hv::VarianceMethod::difference_based;
        out = cv_result_json(hv::kfold_cv_diff(sample, cv));
    } else if (args.method == "fanyao") {
        cv.method = hv::VarianceMethod::residual_based;
        const hv::FanYaoBandwidths sel = hv::kfold_cv_fanyao(sample, cv);
        out = {{"h_mean", sel.h_mean},
               {"h_var", sel.h_var},
               {"stage_mean", cv_result_json(sel.stage_mean)},
               {"stage_var", cv_result_json(sel.stage_var)}};
    } else {
        throw hv::invalid_config("--method: expected diff or fanyao, got '" + args.method + "'");
    }
    emit(args.output, out.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string preset, mean = "f1", noise = "gaussian", design = "fixed";
    std::string h_grid, config_path, output, per_rep;
    std::size_t n = 1000, replications = 100;
    int folds = 10;
    std::uint64_t seed = 0;
    bool fast = false;
};

hv::ExperimentConfig base_config(const SimulateArgs& args) {
    hv::ExperimentConfig config;
    config.n = args.n;
    config.replications = args.fast ? 30 : args.replications;
    config.master_seed = args.seed;
    config.cv.folds = args.folds;
    if (!args.h_grid.empty()) config.cv.h_grid = parse_h_grid(args.h_grid);

    if (args.noise == "gaussian")
        config.noise = hv::NoiseFamily::gaussian;
    else if (args.noise == "two-point")
        config.noise = hv::NoiseFamily::two_point;
    else
        throw hv::invalid_config("--noise: expected gaussian or two-point, got '" + args.noise + "'");

    if (args.design == "fixed")
        config.design = hv::Design::fixed_equidistant;
    else if (args.design == "random")
        config.design = hv::Design::random_uniform;
    else
        throw hv::invalid_config("--design: expected fixed or random, got '" + args.design + "'");

    config.functions.mean_id = hv::mean_id_from_name(args.mean);
    config.functions.variance_id = hv::VarianceId::v_quadratic;
    return config;
}

void apply_json_config(hv::ExperimentConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw hv::invalid_config("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw hv::invalid_config(path + ": invalid JSON config: " + e.what());
    }
    if (j.contains("n")) config.n = j["n"].get<std::size_t>();
    if (j.contains("replications")) config.replications = j["replications"].get<std::size_t>();
    if (j.contains("seed")) config.master_seed = j["seed"].get<std::uint64_t>();
    if (j.contains("folds")) config.cv.folds = j["folds"].get<int>();
    if (j.contains("h_grid")) config.cv.h_grid = j["h_grid"].get<std::vector<double>>();
    if (j.contains("mean"))
        config.functions.mean_id = hv::mean_id_from_name(j["mean"].get<std::string>());
    if (j.contains("noise")) {
        const std::string noise = j["noise"].get<std::string>();
        if (noise == "gaussian")
            config.noise = hv::NoiseFamily::gaussian;
        else if (noise == "two-point")
            config.noise = hv::NoiseFamily::two_point;
        else
            throw hv::invalid_config(path + ": noise must be gaussian or two-point");
    }
    if (j.contains("design")) {
        const std::string design = j["design"].get<std::string>();
        if (design == "fixed")
            config.design = hv::Design::fixed_equidistant;
        else if (design == "random")
            config.design = hv::Design::random_uniform;
        else
            throw hv::invalid_config(path + ": design must be fixed or random");
    }
}

std::string per_rep_path(const std::string& base, const std::string& mean) {
    const std::size_t dot = base.find_last_of('.');
    if (dot == std::string::npos) return base + "_" + mean;
    return base.substr(0, dot) + "_" + mean + base.substr(dot);
}

int run_simulate(const SimulateArgs& args) {
    if (!args.preset.empty() && args.preset != "table1")
        throw hv::invalid_config("--preset: only 'table1' is available, got '" + args.preset + "'");

    hv::ExperimentConfig config = base_config(args);
    if (!args.config_path.empty()) apply_json_config(config, args.config_path);

    std::vector<hv::MeanId> means;
    if (args.preset == "table1") {
        // n = 1000, 100 replications (30 with --fast), K = 10, Gaussian noise,
        // fixed design, all four mean functions, quadratic variance.
        config.n = 1000;
        config.replications = args.fast ? 30 : 100;
        config.cv.folds = 10;
        config.noise = hv::NoiseFamily::gaussian;
        config.design = hv::Design::fixed_equidistant;
        means = {hv::MeanId::f1, hv::MeanId::f2, hv::MeanId::f3, hv::MeanId::f4};
    } else {
        means = {config.functions.mean_id};
    }

    json results = json::object();
    for (hv::MeanId mean : means) {
        config.functions.mean_id = mean;
        const hv::ExperimentSummary summary = hv::run_table1(config);
        results[hv::mean_name(mean)] = summary_json(summary);
        if (!args.per_rep.empty()) {
            const std::string path = means.size() > 1
                                         ? per_rep_path(args.per_rep, hv::mean_name(mean))
                                         : args.per_rep;
            emit(path, per_rep_csv(summary));
        }
    }

    json out = {{"n", config.n},
                {"replications", config.replications},
                {"folds", config.cv.folds},
                {"noise", config.noise == hv::NoiseFamily::gaussian ? "gaussian" : "two-point"},
                {"design", config.design == hv::Design::fixed_equidistant ? "fixed" : "random"},
                {"seed", config.master_seed},
                {"results", results}};
    if (!args.preset.empty()) out["preset"] = args.preset;
    emit(args.output, out.dump(2) + "\n");
    return 0;
}

// ------------------------------------------------------------------- rates

struct RatesArgs {
    std::string ns = "250,500,1000,2000,4000", mean = "f1", output;
    double exponent = -0.2;
    std::size_t replications = 50;
    std::uint64_t seed = 0;
};

int run_rates(const RatesArgs& args) {
    const std::vector<std::size_t> ns = parse_size_list(args.ns, "--ns");
    hv::ExperimentConfig config;
    config.n = ns.front();
    config.replications = args.replications;
    config.master_seed = args.seed;
    config.functions.mean_id = hv::mean_id_from_name(args.mean);

    const hv::RateStudyResult result = hv::rate_study(ns, config, args.exponent);

    std::vector<double> log_n, log_cdmse;
    for (const auto& [lx, ly] : result.points) {
        log_n.push_back(lx);
        log_cdmse.push_back(ly);
    }
    const std::vector<std::string> header = {"log_n", "log_median_cdmse"};
    const std::vector<std::vector<double>> cols = {log_n, log_cdmse};
    emit(args.output, hv::csv_to_string(header, cols));

    const std::string slope_line = "slope " + hv::format_double(result.slope) + "\n";
    if (args.output.empty() || args.output == "-")
        std::fputs(slope_line.c_str(), stderr);  // keep stdout valid CSV
    else
        std::fputs(slope_line.c_str(), stdout);
    return 0;
}

// ------------------------------------------------------------------ theory

int run_theory_moments(int q, const std::string& output) {
    const hv::MomentDistribution dist = hv::moment_distribution(q);
    const std::vector<std::string> header = {"node", "weight"};
    const std::vector<std::vector<double>> cols = {dist.nodes, dist.weights};
    emit(output, hv::csv_to_string(header, cols));
    return 0;
}

int run_theory_hellinger(double alpha, int q, const std::string& n_list, double M_f,
                         const std::string& output) {
    const std::vector<std::size_t> ns = parse_size_list(n_list, "--n-list");
    std::vector<double> n_col, theta_col, affinity_col, rho_col;
    for (std::size_t n : ns) {
        const hv::TestingProblem problem = hv::make_testing_problem(n, alpha, q, M_f);
        n_col.push_back(static_cast<double>(n));
        theta_col.push_back(problem.theta);
        affinity_col.push_back(hv::single_sample_affinity(problem.G, problem.theta));
        rho_col.push_back(hv::hellinger_affinity(problem));
    }
    const std::vector<std::string> header = {"n", "theta", "affinity", "rho"};
    const std::vector<std::vector<double>> cols = {n_col, theta_col, affinity_col, rho_col};
    emit(output, hv::csv_to_string(header, cols));
    return 0;
}

int run_theory_hc(const std::string& d_list, const std::string& output) {
    std::vector<double> d_col = parse_double_list(d_list, "--d-list");
    std::vector<double> value_col;
    for (double d : d_col) value_col.push_back(hv::hc_integral(d));
    const std::vector<std::string> header = {"d", "value"};
    const std::vector<std::vector<double>> cols = {d_col, value_col};
    emit(output, hv::csv_to_string(header, cols));
    return 0;
}

int run_theory_adversarial(double alpha, int q, std::size_t n, std::uint64_t seed, double M_f,
                           const std::string& output) {
    const hv::AdversarialMean f1 = hv::adversarial_mean(n, alpha, q, M_f, seed);
    std::vector<double> idx(n), xs(n), values(n);
    for (std::size_t i = 0; i < n; ++i) {
        idx[i] = static_cast<double>(i + 1);
        xs[i] = static_cast<double>(i + 1) / static_cast<double>(n);
        values[i] = f1.design_values()[i];
    }
    const std::vector<std::string> header = {"i", "x", "f1"};
    const std::vector<std::vector<double>> cols = {idx, xs, values};
    emit(output, hv::csv_to_string(header, cols));
    return 0;
}

int run_theory_lower_bound(const std::string& alphas_text, const std::string& ns_text,
                           double M_f, int q, std::size_t replications, std::uint64_t seed,
                           bool no_control, const std::string& output) {
    const std::vector<double> alphas = parse_double_list(alphas_text, "--alphas");
    const std::vector<std::size_t> ns = parse_size_list(ns_text, "--ns");
    hv::LowerBoundConfig config;
    config.M_f = M_f;
    config.q = q;
    config.replications = replications;
    config.master_seed = seed;

    const hv::LowerBoundResult result =
        hv::lower_bound_experiment(alphas, ns, config, !no_control);

    const auto study_json = [](const hv::SlopeStudy& s) {
        json points = json::array();
        for (const auto& [lx, ly] : s.points)
            points.push_back({{"log_n", lx}, {"log_median_sq_err", ly}});
        return json{{"alpha", s.alpha},
                    {"q", s.q},
                    {"slope", s.slope},
                    {"expected_slope", s.expected_slope},
                    {"points", points}};
    };
    json entries = json::array();
    for (const auto& e : result.entries) entries.push_back(study_json(e));
    json out = {{"entries", entries}};
    if (result.has_control) out["control"] = study_json(result.control);
    emit(output, out.dump(2) + "\n");
    return 0;
}

// ------------------------------------------------------------------ kernel

int run_kernel(int order, double t, bool has_t, double h, double x, int n,
               const std::string& output) {
    if (h > 0.0 || n > 0) {
        if (!(h > 0.0) || n < 3)
            throw hv::invalid_config("kernel weights need both --h in (0, 1/2) and --n >= 3");
        const hv::WeightVector wv = hv::bin_weights(order, h, x, n);
        std::vector<double> idx(wv.weights.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<double>(i + 1);
        const std::vector<std::string> header = {"i", "weight"};
        const std::vector<std::vector<double>> cols = {idx, wv.weights};
        emit(output, hv::csv_to_string(header, cols));
        return 0;
    }
    const hv::Kernel kernel = has_t ? hv::make_boundary_kernel(order, t)
                                    : hv::make_interior_kernel(order);
    std::vector<double> idx(kernel.poly.coeffs().size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<double>(i);
    const std::vector<std::string> header = {"i", "coeff"};
    const std::vector<std::vector<double>> cols = {idx, kernel.poly.coeffs()};
    emit(output, hv::csv_to_string(header, cols));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variance function estimation in heteroscedastic nonparametric regression"};
    app.require_subcommand(1);
    // --h is a documented option name, so help must not claim -h.
    app.set_help_flag("--help", "Print help and exit");

    EstimateArgs est_args;
    CLI::App* est = app.add_subcommand("estimate", "Estimate the variance curve from x,y CSV data");
    est->set_help_flag("--help", "Print help and exit");
    est->add_option("--input", est_args.input, "Input CSV with header x,y")->required();
    est->add_option("--output", est_args.output, "Output CSV path (default stdout)");
    est->add_option("--method", est_args.method, "diff | fanyao (default diff)");
    est->add_option("--h", est_args.h, "Bandwidth; default n^{-1/5} for diff");
    est->add_option("--order", est_args.order, "Kernel moment order (default 2)");
    est->add_option("--grid", est_args.grid, "design | <count> | <csv file with column x>");
    est->add_option("--h-mean", est_args.h_mean, "Mean-stage bandwidth (fanyao)");
    est->add_option("--h-var", est_args.h_var, "Variance-stage bandwidth (fanyao)");
    est->add_option("--k", est_args.folds, "CV folds when fanyao bandwidths are unset");
    est->add_option("--seed", est_args.seed, "CV fold seed (default 0)");
    est->add_flag("--truncate", est_args.truncate, "Clip negative estimates at zero");

    CvArgs cv_args;
    CLI::App* cv = app.add_subcommand("cv", "Cross-validated bandwidth selection");
    cv->add_option("--input", cv_args.input, "Input CSV with header x,y")->required();
    cv->add_option("--output", cv_args.output, "Output JSON path (default stdout)");
    cv->add_option("--method", cv_args.method, "diff | fanyao (default diff)");
    cv->add_option("--k", cv_args.folds, "Number of folds (default 10)");
    cv->add_option("--h-grid", cv_args.h_grid, "lo:hi:count log-spaced candidates");
    cv->add_option("--order", cv_args.order, "Kernel moment order for diff (default 2)");
    cv->add_option("--seed", cv_args.seed, "Fold seed (default 0)");

    SimulateArgs sim_args;
    CLI::App* sim = app.add_subcommand("simulate", "Monte-Carlo comparison study");
    sim->add_option("--preset", sim_args.preset, "table1: n=1000, 100 reps, K=10, four means");
    sim->add_option("--n", sim_args.n, "Sample size (default 1000)");
    sim->add_option("--replications", sim_args.replications, "Replications (default 100)");
    sim->add_option("--mean", sim_args.mean, "f1 | f2 | f3 | f4 (default f1)");
    sim->add_option("--noise", sim_args.noise, "gaussian | two-point (default gaussian)");
    sim->add_option("--design", sim_args.design, "fixed | random (default fixed)");
    sim->add_option("--k", sim_args.folds, "CV folds (default 10)");
    sim->add_option("--h-grid", sim_args.h_grid, "lo:hi:count CV candidates");
    sim->add_option("--config", sim_args.config_path, "JSON config file; overrides flags");
    sim->add_option("--seed", sim_args.seed, "Master seed (default 0)");
    sim->add_option("--output", sim_args.output, "Summary JSON path (default stdout)");
    sim->add_option("--per-rep", sim_args.per_rep, "Per-replication CSV path");
    sim->add_flag("--fast", sim_args.fast, "30 replications instead of 100");

    RatesArgs rates_args;
    CLI::App* rates = app.add_subcommand("rates", "Empirical convergence rate study");
    rates->add_option("--ns", rates_args.ns, "Comma list of sample sizes");
    rates->add_option("--exponent", rates_args.exponent, "Bandwidth rule h = n^e (default -0.2)");
    rates->add_option("--replications", rates_args.replications, "Replications per n (default 50)");
    rates->add_option("--mean", rates_args.mean, "Mean function (default f1)");
    rates->add_option("--seed", rates_args.seed, "Master seed (default 0)");
    rates->add_option("--output", rates_args.output, "CSV path (default stdout)");

    CLI::App* theory = app.add_subcommand("theory", "Lower-bound construction tools");
    theory->require_subcommand(1);

    int mom_q = 5;
    std::string mom_output;
    CLI::App* moments = theory->add_subcommand("moments", "Moment-matched discrete distribution");
    moments->add_option("--q", mom_q, "Matched moment order, odd (default 5)");
    moments->add_option("--output", mom_output, "CSV path (default stdout)");

    double hel_alpha = 0.3, hel_mf = 1.0;
    int hel_q = 5;
    std::string hel_ns = "100,1000,10000", hel_output;
    CLI::App* hellinger = theory->add_subcommand("hellinger", "Hellinger affinity of the two hypotheses");
    hellinger->add_option("--alpha", hel_alpha, "Mean smoothness (default 0.3)");
    hellinger->add_option("--q", hel_q, "Matched moment order (default 5)");
    hellinger->add_option("--n-list", hel_ns, "Comma list of sample sizes");
    hellinger->add_option("--mf", hel_mf, "Class radius M_f (default 1)");
    hellinger->add_option("--output", hel_output, "CSV path (default stdout)");

    std::string hc_ds = "1,10", hc_output;
    CLI::App* hc = theory->add_subcommand("hc-check", "Odd-integrand correction term, expected 0");
    hc->add_option("--d-list", hc_ds, "Comma list of d values");
    hc->add_option("--output", hc_output, "CSV path (default stdout)");

    double adv_alpha = 0.15, adv_mf = 1.0;
    int adv_q = 7;
    std::size_t adv_n = 1000;
    std::uint64_t adv_seed = 0;
    std::string adv_output;
    CLI::App* adversarial = theory->add_subcommand("adversarial", "Random bump mean at the design points");
    adversarial->add_option("--alpha", adv_alpha, "Mean smoothness (default 0.15)");
    adversarial->add_option("--q", adv_q, "Matched moment order (default 7)");
    adversarial->add_option("--n", adv_n, "Sample size (default 1000)");
    adversarial->add_option("--seed", adv_seed, "Seed (default 0)");
    adversarial->add_option("--mf", adv_mf, "Class radius M_f (default 1)");
    adversarial->add_option("--output", adv_output, "CSV path (default stdout)");

    std::string lb_alphas = "0.15", lb_ns = "500,1000,2000,4000,8000", lb_output;
    double lb_mf = 10.0;
    int lb_q = 0;
    std::size_t lb_reps = 50;
    std::uint64_t lb_seed = 0;
    bool lb_no_control = false;
    CLI::App* lower = theory->add_subcommand("lower-bound", "Pointwise-error slopes under the bump mean");
    lower->add_option("--alphas", lb_alphas, "Comma list of alphas (default 0.15)");
    lower->add_option("--ns", lb_ns, "Comma list of sample sizes");
    lower->add_option("--mf", lb_mf, "Class radius M_f (default 10)");
    lower->add_option("--q", lb_q, "Matched moment order; 0 = smallest valid per alpha");
    lower->add_option("--replications", lb_reps, "Replications per cell (default 50)");
    lower->add_option("--seed", lb_seed, "Master seed (default 0)");
    lower->add_flag("--no-control", lb_no_control, "Skip the f = 0 control run");
    lower->add_option("--output", lb_output, "JSON path (default stdout)");

    int ker_order = 2, ker_n = 0;
    double ker_t = 1.0, ker_h = 0.0, ker_x = 0.5;
    bool ker_has_t = false;
    std::string ker_output;
    CLI::App* kernel = app.add_subcommand("kernel", "Dump kernel coefficients or bin weights");
    kernel->set_help_flag("--help", "Print help and exit");
    kernel->add_option("--order", ker_order, "Kernel moment order (default 2)");
    kernel->add_option("--t", ker_t, "Boundary parameter; omit for the interior kernel")
        ->check(CLI::Range(0.0, 1.0));
    kernel->add_option("--h", ker_h, "Bandwidth: with --x/--n dumps bin weights");
    kernel->add_option("--x", ker_x, "Evaluation point (default 0.5)");
    kernel->add_option("--n", ker_n, "Sample size for bin weights");
    kernel->add_option("--output", ker_output, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (app.got_subcommand(est)) return run_estimate(est_args);
        if (app.got_subcommand(cv)) return run_cv(cv_args);
        if (app.got_subcommand(sim)) return run_simulate(sim_args);
        if (app.got_subcommand(rates)) return run_rates(rates_args);
        if (app.got_subcommand(kernel)) {
            ker_has_t = kernel->count("--t") > 0;
            return run_kernel(ker_order, ker_t, ker_has_t, ker_h, ker_x, ker_n, ker_output);
        }
        if (app.got_subcommand(theory)) {
            if (theory->got_subcommand(moments)) return run_theory_moments(mom_q, mom_output);
            if (theory->got_subcommand(hellinger))
                return run_theory_hellinger(hel_alpha, hel_q, hel_ns, hel_mf, hel_output);
            if (theory->got_subcommand(hc)) return run_theory_hc(hc_ds, hc_output);
            if (theory->got_subcommand(adversarial))
                return run_theory_adversarial(adv_alpha, adv_q, adv_n, adv_seed, adv_mf, adv_output);
            if (theory->got_subcommand(lower))
                return run_theory_lower_bound(lb_alphas, lb_ns, lb_mf, lb_q, lb_reps, lb_seed,
                                              lb_no_control, lb_output);
        }
        throw hv::invalid_config("no subcommand selected");
    } catch (const hv::tolerance_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hv::invalid_config& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
