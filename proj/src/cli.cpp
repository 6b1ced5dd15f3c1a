#include "esos/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "esos/experiments.hpp"
#include "esos/io.hpp"
#include "esos/model.hpp"

namespace esos::cli {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write output file '" + path + "'");
    out << std::setprecision(17);
    return out;
}

void write_json(const std::string& path, const json& j) {
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

Dataset load_dataset(const std::string& path, int n_override) {
    return esos::io::parse_dataset_csv_file(path, n_override);
}

// Fits the estimators appropriate for the configured baseline family.
struct Fit {
    EstimateResult unrestricted;
    EstimateResult restricted;
};

Fit fit_estimates(const Dataset& d, const esos::io::RunConfig& cfg) {
    Fit fit;
    if (cfg.family == Family::LocationScale) {
        auto ls = mle_location_scale(d, cfg.transform);
        fit.unrestricted = std::move(ls.unrestricted);
        fit.restricted = std::move(ls.restricted);
    } else if (cfg.family == Family::Scale && !cfg.baseline_rate_known) {
        fit.unrestricted = mle_scale_family(d, cfg.transform);
        fit.restricted = mle_order_restricted(d, BaselineSpec::scale(d.n, cfg.transform, 1.0));
    } else {
        fit.unrestricted = mle_unrestricted(d, cfg.scenario.baseline);
        fit.restricted = mle_order_restricted(d, cfg.scenario.baseline);
    }
    return fit;
}

void write_estimates_csv(const std::string& path, const Fit& fit) {
    auto out = open_out(path);
    out << "component,level,unrestricted,restricted,m,exists\n";
    const auto& p = fit.unrestricted.params;
    for (int j = 1; j <= p.n(); ++j) {
        for (int k = 1; k <= p.s(); ++k) {
            const auto u = p.at(j, k);
            const auto o = fit.restricted.params.at(j, k);
            out << j << ',' << k << ',';
            if (u) out << *u;
            out << ',';
            if (o) out << *o;
            out << ',' << fit.unrestricted.counts.count(j, k) << ','
                << (u ? "true" : "false") << "\n";
        }
    }
}

int run_simulate(const esos::io::RunConfig& cfg, int r, const std::string& out_path) {
    if (r < 1) throw std::runtime_error("simulate requires r >= 1");
    const Dataset d = sample_dataset(cfg.scenario, r, cfg.scenario.seed);
    esos::io::write_dataset_csv_file(out_path, d);
    return 0;
}

int run_estimate(const esos::io::RunConfig& cfg, const std::string& data_path, int n_override,
                 const std::string& out_path, const std::string& format) {
    const Dataset d = load_dataset(data_path, n_override ? n_override : cfg.scenario.n);
    const Fit fit = fit_estimates(d, cfg);
    if (format == "csv")
        write_estimates_csv(out_path, fit);
    else
        write_json(out_path, esos::io::estimate_to_json(fit.unrestricted, fit.restricted));
    return 0;
}

int run_estimate_seq(const esos::io::RunConfig& cfg, const std::string& data_path, int n_override,
                     const std::string& out_path) {
    const Dataset d = load_dataset(data_path, n_override ? n_override : cfg.scenario.n);
    const EstimateResult est = mle_unrestricted_sequence(d, cfg.scenario.baseline);
    write_json(out_path, esos::io::sequence_estimate_to_json(est));
    return 0;
}

int run_lrt(const esos::io::RunConfig& cfg, const std::string& data_path, int n_override,
            const std::string& quantiles_path, const std::string& out_path) {
    const Dataset d = load_dataset(data_path, n_override ? n_override : cfg.scenario.n);
    const json block = cfg.raw.value("lrt", json::object());
    const double level = block.value("level", 0.05);
    LrtResult res;
    if (!quantiles_path.empty()) {
        std::ifstream in(quantiles_path);
        if (!in) throw std::runtime_error("cannot open quantile table '" + quantiles_path + "'");
        json qj;
        in >> qj;
        res = lrt_test(d, cfg.scenario.baseline, level, esos::io::quantile_table_from_json(qj));
    } else {
        const int n_sim = block.value("nsim", 10000);
        const auto probs = block.value("probs", std::vector<double>{0.9, 0.95, 0.99});
        res = lrt_bootstrap(d, cfg.scenario.baseline, level, n_sim, probs, cfg.scenario.seed);
    }
    write_json(out_path, esos::io::lrt_result_to_json(res));
    return 0;
}

int run_mc(const esos::io::RunConfig& cfg, const std::string& out_path) {
    const json block = cfg.raw.value("mc", json::object());
    const int reps = block.value("reps", 2000);
    const int r = cfg.r > 0 ? cfg.r : block.value("r", 0);
    if (r < 1) throw std::runtime_error("mc requires a positive r");
    const SummaryTable table = mc_estimate_summary(cfg.scenario, r, reps);
    auto out = open_out(out_path);
    out << "component,level,mean_unrestricted,sd_unrestricted,prop_unrestricted,"
           "mean_restricted,sd_restricted,prop_restricted\n";
    for (const auto& e : table.entries)
        out << e.component << ',' << e.level << ',' << e.mean_unrestricted << ','
            << e.sd_unrestricted << ',' << e.prop_unrestricted << ',' << e.mean_restricted << ','
            << e.sd_restricted << ',' << e.prop_restricted << "\n";
    out << "# prop_all_exist=" << table.prop_all_exist << "\n";
    return 0;
}

int run_sweep(const esos::io::RunConfig& cfg, const std::string& out_path) {
    const json block = cfg.raw.value("sweep", json::object());
    const int reps = block.value("reps", 2000);
    const int r = cfg.r > 0 ? cfg.r : block.value("r", 0);
    if (r < 1) throw std::runtime_error("sweep requires a positive r");
    const bool log_scale = block.value("log", false);

    std::vector<SweepRow> rows;
    if (block.contains("p1_values")) {
        rows = proportionality_sweep_grid(cfg.scenario, r,
                                          block.at("p1_values").get<std::vector<double>>(),
                                          block.at("p2_values").get<std::vector<double>>(), reps);
    } else {
        rows = proportionality_sweep(cfg.scenario, r,
                                     block.at("p_values").get<std::vector<double>>(), reps);
    }
    auto out = open_out(out_path);
    out << "p1,p2,bias_sum\n";
    for (const auto& row : rows) {
        out << row.p1 << ',';
        if (!std::isnan(row.p2)) out << row.p2;
        out << ',' << (log_scale ? std::log(row.bias_sum) : row.bias_sum) << "\n";
    }
    return 0;
}

int run_existence(const esos::io::RunConfig& cfg, const std::string& out_path) {
    const json block = cfg.raw.value("existence", json::object());
    const int reps = block.value("reps", 10000);
    const double within_p = block.value("p", 1.5);
    const auto ptildes = block.at("ptilde_values").get<std::vector<double>>();
    const auto rs = block.at("r_values").get<std::vector<int>>();
    const auto rows = existence_study(cfg.scenario, within_p, ptildes, rs, reps);
    auto out = open_out(out_path);
    out << "ptilde,r,proportion\n";
    for (const auto& row : rows)
        out << row.ptilde << ',' << row.r << ',' << row.proportion << "\n";
    return 0;
}

int run_power(const esos::io::RunConfig& cfg, const std::string& out_path) {
    const json block = cfg.raw.value("power", json::object());
    const int reps = block.value("reps", 200);
    const int combos_count = block.value("combos", 50);
    const int null_sims = block.value("null_sims", 1000);
    const double level = block.value("level", 0.05);
    const int window = block.value("window", 5);
    const auto rs = block.value("r_values", std::vector<int>{10, 25, 50});
    const std::string design_name = block.value("design", "level1");
    const PowerDesign design =
        design_name == "level2" ? PowerDesign::Level2 : PowerDesign::Level1;

    auto combos = power_combos(design, cfg.scenario.n, combos_count, cfg.scenario.seed);
    std::sort(combos.begin(), combos.end(),
              [](const PowerCombo& a, const PowerCombo& b) { return a.distance < b.distance; });
    const auto rows = power_study(cfg.scenario, combos, rs, reps, null_sims, level);

    auto out = open_out(out_path);
    out << "r,distance,power,running_mean\n";
    for (int r : rs) {
        std::vector<double> powers;
        for (const auto& row : rows)
            if (row.r == r) powers.push_back(row.power);
        const auto smooth = running_mean(powers, window);
        std::size_t i = 0;
        for (const auto& row : rows)
            if (row.r == r)
                out << row.r << ',' << row.distance << ',' << row.power << ',' << smooth[i++]
                    << "\n";
    }
    return 0;
}

int run_kde(const std::string& samples_path, const std::string& out_path) {
    std::ifstream in(samples_path);
    if (!in) throw std::runtime_error("cannot open samples file '" + samples_path + "'");
    std::vector<double> samples;
    double x;
    while (in >> x) samples.push_back(x);
    const CurveData curve = kde_curve(samples);
    auto out = open_out(out_path);
    out << "# bandwidth=" << curve.bandwidth << " samples=" << curve.sample_count << "\n";
    out << "x,density\n";
    for (std::size_t i = 0; i < curve.grid.size(); ++i)
        out << curve.grid[i] << ',' << curve.density[i] << "\n";
    return 0;
}

int run_convert(const std::string& in_path, int n_override, const std::string& out_path) {
    std::ifstream in(in_path);
    if (!in) throw std::runtime_error("cannot open input file '" + in_path + "'");
    const Dataset d = esos::io::parse_dataset_wide_csv(in, n_override);
    esos::io::write_dataset_csv_file(out_path, d);
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Load-sharing reliability workbench: simulation, estimation and "
                 "testing for sequential failure data under proportional hazards"};
    app.require_subcommand(1);

    std::string config_path, data_path, out_path, quantiles_path, samples_path, in_path;
    std::string format = "json";
    int r = 0, n_override = 0;
    std::int64_t seed_override = -1;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        if (needs_config)
            sub->add_option("--config", config_path, "configuration JSON")->required();
        sub->add_option("--out", out_path, "output path")->required();
        sub->add_option("--seed", seed_override, "override the configured master seed");
    };

    auto* sim = app.add_subcommand("simulate", "draw a dataset and write it as CSV");
    add_common(sim, true);
    sim->add_option("--r", r, "number of systems (defaults to config r)");

    auto* est = app.add_subcommand("estimate", "unrestricted and order-restricted estimates");
    add_common(est, true);
    est->add_option("--data", data_path, "dataset CSV")->required();
    est->add_option("--n", n_override, "system size override");
    est->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    auto* seq = app.add_subcommand("estimate-seq", "history-dependent estimates");
    add_common(seq, true);
    seq->add_option("--data", data_path, "dataset CSV")->required();
    seq->add_option("--n", n_override, "system size override");

    auto* lrt = app.add_subcommand("lrt", "likelihood ratio test with simulated quantiles");
    add_common(lrt, true);
    lrt->add_option("--data", data_path, "dataset CSV")->required();
    lrt->add_option("--n", n_override, "system size override");
    lrt->add_option("--quantiles", quantiles_path, "reuse a saved quantile table JSON");

    auto* mc = app.add_subcommand("mc", "Monte Carlo estimator summary");
    add_common(mc, true);

    auto* sweep = app.add_subcommand("sweep", "proportionality-factor accuracy sweep");
    add_common(sweep, true);

    auto* exist = app.add_subcommand("existence", "existence-proportion study");
    add_common(exist, true);

    auto* power = app.add_subcommand("power", "likelihood-ratio-test power study");
    add_common(power, true);

    auto* kde = app.add_subcommand("kde", "kernel density curve from a sample file");
    kde->add_option("--samples", samples_path, "one value per line")->required();
    kde->add_option("--out", out_path, "output path")->required();

    auto* conv = app.add_subcommand("convert", "wide-layout dataset to long-format CSV");
    conv->add_option("--in", in_path, "wide-layout CSV")->required();
    conv->add_option("--n", n_override, "system size override");
    conv->add_option("--out", out_path, "output path")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        esos::io::RunConfig cfg;
        if (!config_path.empty()) {
            cfg = esos::io::parse_config_file(config_path);
            if (seed_override >= 0)
                cfg.scenario.seed = static_cast<std::uint64_t>(seed_override);
        }
        if (sim->parsed()) return run_simulate(cfg, r > 0 ? r : cfg.r, out_path);
        if (est->parsed()) return run_estimate(cfg, data_path, n_override, out_path, format);
        if (seq->parsed()) return run_estimate_seq(cfg, data_path, n_override, out_path);
        if (lrt->parsed()) return run_lrt(cfg, data_path, n_override, quantiles_path, out_path);
        if (mc->parsed()) return run_mc(cfg, out_path);
        if (sweep->parsed()) return run_sweep(cfg, out_path);
        if (exist->parsed()) return run_existence(cfg, out_path);
        if (power->parsed()) return run_power(cfg, out_path);
        if (kde->parsed()) return run_kde(samples_path, out_path);
        if (conv->parsed()) return run_convert(in_path, n_override, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace esos::cli
