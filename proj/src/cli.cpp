#include "covert/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "covert/config.hpp"
#include "covert/covertness.hpp"
#include "covert/detector.hpp"
#include "covert/errors.hpp"
#include "covert/montecarlo.hpp"
#include "covert/rate_opt.hpp"

namespace covert::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kManifestPrefix = "# manifest ";

struct Overrides {
    std::optional<std::int64_t> antennas;
    std::optional<std::int64_t> max_blocklength;
    std::optional<double> epsilon;
    std::optional<double> delta;
    std::optional<double> lambda;
    std::optional<double> gain_ab;
};

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::string manifest_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> trials;
    Overrides overrides;
};

struct SearchFlags {
    double power_min = 1e-3;
    double power_max = 1e3;
    int grid_points = 200;
};

void add_common(CLI::App* cmd, CommonOptions& common) {
    cmd->add_option("--config", common.config_path, "JSON scenario file");
    cmd->add_option("--out", common.out_path, "write CSV/report here instead of stdout");
    cmd->add_option("--seed", common.seed, "master seed for randomized commands");
    cmd->add_option("--trials", common.trials, "Monte Carlo trials");
    cmd->add_option("--manifest", common.manifest_path,
                    "replay the run recorded in an earlier output file");
}

void add_overrides(CLI::App* cmd, Overrides& o, bool sweep_m, bool sweep_eps) {
    if (!sweep_m) cmd->add_option("--M", o.antennas, "override antenna count");
    if (!sweep_eps) cmd->add_option("--epsilon", o.epsilon, "override covertness level");
    cmd->add_option("--L-max", o.max_blocklength, "override L_max");
    cmd->add_option("--delta", o.delta, "override decoding error target");
    cmd->add_option("--lambda", o.lambda, "override channel-gain rate");
    cmd->add_option("--gain-ab", o.gain_ab, "override receiver channel gain");
}

void add_search(CLI::App* cmd, SearchFlags& s) {
    cmd->add_option("--p-min", s.power_min, "lower end of the power search bracket");
    cmd->add_option("--p-max", s.power_max, "upper end of the power search bracket");
    cmd->add_option("--grid-points", s.grid_points, "log-spaced power grid size");
}

SystemConfig apply_overrides(SystemConfig cfg, const Overrides& o) {
    if (o.antennas) cfg.antennas = *o.antennas;
    if (o.max_blocklength) cfg.max_blocklength = *o.max_blocklength;
    if (o.lambda) cfg.lambda = *o.lambda;
    if (o.gain_ab) cfg.gain_ab = *o.gain_ab;
    try {
        if (o.epsilon) cfg.epsilon = Probability(*o.epsilon);
        if (o.delta) cfg.delta = Probability(*o.delta);
        cfg.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    }
    return cfg;
}

SystemConfig resolve_config(const CommonOptions& common, const std::optional<SystemConfig>& fallback) {
    if (common.config_path.empty()) {
        if (!fallback) throw ConfigError("--config <path> is required");
        return apply_overrides(*fallback, common.overrides);
    }
    return apply_overrides(load_config(common.config_path), common.overrides);
}

rate_opt::SearchOptions to_search(const SearchFlags& s) {
    rate_opt::SearchOptions o;
    o.power_min = s.power_min;
    o.power_max = s.power_max;
    o.grid_points = s.grid_points;
    return o;
}

ordered_json search_json(const SearchFlags& s) {
    ordered_json j;
    j["power_min"] = s.power_min;
    j["power_max"] = s.power_max;
    j["grid_points"] = s.grid_points;
    return j;
}

SearchFlags search_from_json(const nlohmann::json& j) {
    SearchFlags s;
    s.power_min = j.at("power_min").get<double>();
    s.power_max = j.at("power_max").get<double>();
    s.grid_points = j.at("grid_points").get<int>();
    return s;
}

void emit(const std::string& content, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << content;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw ConfigError("cannot write output file '" + path + "'");
    file << content;
}

// Resolves the manifest for this invocation: either replayed verbatim from an
// earlier output file, or freshly built from the parsed flags.
RunManifest replayed(const CommonOptions& common, const std::string& command) {
    RunManifest m = RunManifest::from_file(common.manifest_path);
    if (m.command != command) {
        throw ConfigError("manifest records command '" + m.command + "', not '" + command + "'");
    }
    return m;
}

// ---------------------------------------------------------------- optimize

int cmd_optimize(const CommonOptions& common, const SearchFlags& flags, std::ostream& out) {
    RunManifest manifest;
    SearchFlags search = flags;
    if (!common.manifest_path.empty()) {
        manifest = replayed(common, "optimize");
        search = search_from_json(nlohmann::json::parse(manifest.args_json));
    } else {
        manifest.config = resolve_config(common, std::nullopt);
        manifest.command = "optimize";
        manifest.seed = common.seed;
        manifest.output_path = common.out_path;
        manifest.args_json = search_json(search).dump();
    }

    const auto result = rate_opt::optimize_power(manifest.config, to_search(search));
    const auto& best = result.best;

    std::ostringstream summary;
    summary << manifest.to_line() << '\n';
    summary << "P_a_star=" << format_real(best.power) << '\n';
    summary << "L_star=" << best.blocklength << '\n';
    summary << "rate=" << format_real(best.rate) << '\n';
    summary << "throughput=" << format_real(best.throughput) << '\n';
    summary << "feasible=" << (best.feasible ? "true" : "false") << '\n';
    summary << "covertness_binding=" << (result.covertness_binding ? "true" : "false") << '\n';
    if (!best.feasible) {
        summary << "status=infeasible: no power admits a covert blocklength with nonnegative rate; "
                   "throughput reported as 0\n";
    }
    out << summary.str();

    if (!common.out_path.empty() || !manifest.output_path.empty()) {
        std::ostringstream csv;
        csv << manifest.to_line() << '\n' << "P_a,L,throughput\n";
        for (const auto& t : result.power_grid_trace) {
            csv << format_real(t.power) << ',' << t.blocklength << ',' << format_real(t.throughput)
                << '\n';
        }
        const std::string path = common.out_path.empty() ? manifest.output_path : common.out_path;
        emit(csv.str(), path, out);
    }
    return exit_ok;
}

// ---------------------------------------------------------------- figure1

struct Figure1Flags {
    std::vector<std::string> variants;
    double power_min = 1e-3;
    double power_max = 10.0;
    int points = 81;
};

rate_opt::Figure1Variant parse_variant(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw ConfigError("variant '" + text + "' must look like L_max:epsilon");
    }
    try {
        std::size_t used = 0;
        const std::int64_t l_max = std::stoll(text.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument(text);
        const std::string eps_text = text.substr(colon + 1);
        const double eps = std::stod(eps_text, &used);
        if (used != eps_text.size()) throw std::invalid_argument(text);
        return {l_max, eps};
    } catch (const std::logic_error&) {
        throw ConfigError("variant '" + text + "' must look like L_max:epsilon");
    }
}

int cmd_figure1(const CommonOptions& common, const Figure1Flags& flags, std::ostream& out) {
    RunManifest manifest;
    std::vector<rate_opt::Figure1Variant> variants;
    Figure1Flags grid = flags;
    if (!common.manifest_path.empty()) {
        manifest = replayed(common, "figure1");
        const auto args = nlohmann::json::parse(manifest.args_json);
        for (const auto& v : args.at("variants")) {
            variants.push_back({v.at("L_max").get<std::int64_t>(), v.at("epsilon").get<double>()});
        }
        grid.power_min = args.at("power_min").get<double>();
        grid.power_max = args.at("power_max").get<double>();
        grid.points = args.at("points").get<int>();
    } else {
        for (const auto& v : flags.variants) variants.push_back(parse_variant(v));
        if (variants.empty()) throw ConfigError("figure1 needs at least one --variant L_max:epsilon");
        manifest.config = resolve_config(common, std::nullopt);
        manifest.command = "figure1";
        manifest.seed = common.seed;
        manifest.output_path = common.out_path;
        ordered_json args;
        args["variants"] = ordered_json::array();
        for (const auto& v : variants) {
            ordered_json item;
            item["L_max"] = v.max_blocklength;
            item["epsilon"] = v.epsilon;
            args["variants"].push_back(item);
        }
        args["power_min"] = grid.power_min;
        args["power_max"] = grid.power_max;
        args["points"] = grid.points;
        manifest.args_json = args.dump();
    }
    for (const auto& v : variants) {
        if (v.max_blocklength < 1 || !(v.epsilon > 0.0 && v.epsilon < 1.0)) {
            throw ConfigError("variant needs L_max >= 1 and 0 < epsilon < 1");
        }
    }
    if (!(grid.power_min > 0.0 && grid.power_max >= grid.power_min && grid.points >= 1)) {
        throw ConfigError("power grid needs 0 < p-min <= p-max and at least one point");
    }

    const auto powers = rate_opt::log_grid(grid.power_min, grid.power_max, grid.points);
    const auto rows = rate_opt::sweep_figure1(manifest.config, powers, variants);

    std::ostringstream csv;
    csv << manifest.to_line() << '\n' << "P_a,L_max,epsilon,L_star\n";
    for (const auto& r : rows) {
        csv << format_real(r.power) << ',' << r.max_blocklength << ',' << format_real(r.epsilon)
            << ',' << r.optimal_blocklength << '\n';
    }
    emit(csv.str(), common.out_path.empty() ? manifest.output_path : common.out_path, out);
    return exit_ok;
}

// ---------------------------------------------------------------- figure2

struct Figure2Flags {
    std::string antennas = "1:32";
    std::string epsilons = "0.05,0.1,0.3";
    std::optional<std::int64_t> fixed_blocklength;
};

int cmd_figure2(const CommonOptions& common, const Figure2Flags& flags, const SearchFlags& sflags,
                std::ostream& out) {
    RunManifest manifest;
    std::vector<std::int64_t> antennas;
    std::vector<double> epsilons;
    std::optional<std::int64_t> fixed;
    SearchFlags search = sflags;
    if (!common.manifest_path.empty()) {
        manifest = replayed(common, "figure2");
        const auto args = nlohmann::json::parse(manifest.args_json);
        antennas = args.at("M").get<std::vector<std::int64_t>>();
        epsilons = args.at("epsilon").get<std::vector<double>>();
        if (!args.at("fixed_L").is_null()) fixed = args.at("fixed_L").get<std::int64_t>();
        search = search_from_json(args.at("search"));
    } else {
        antennas = parse_int_list(flags.antennas);
        epsilons = parse_real_list(flags.epsilons);
        fixed = flags.fixed_blocklength;
        manifest.config = resolve_config(common, std::nullopt);
        manifest.command = "figure2";
        manifest.seed = common.seed;
        manifest.output_path = common.out_path;
        ordered_json args;
        args["M"] = antennas;
        args["epsilon"] = epsilons;
        args["fixed_L"] = fixed ? ordered_json(*fixed) : ordered_json(nullptr);
        args["search"] = search_json(search);
        manifest.args_json = args.dump();
    }
    if (antennas.empty() || epsilons.empty()) throw ConfigError("figure2 needs nonempty M and epsilon lists");
    for (auto m : antennas) {
        if (m < 1) throw ConfigError("antenna counts must be at least 1");
    }
    for (auto e : epsilons) {
        if (!(e > 0.0 && e < 1.0)) throw ConfigError("epsilon values must lie in (0, 1)");
    }
    if (fixed && (*fixed < 1 || *fixed > manifest.config.max_blocklength)) {
        throw ConfigError("--fixed-L must lie in [1, L_max]");
    }

    const auto rows =
        rate_opt::sweep_figure2(manifest.config, antennas, epsilons, fixed, to_search(search));
    std::ostringstream csv;
    csv << manifest.to_line() << '\n' << "M,epsilon,mode,P_a_star,L_star,throughput\n";
    for (const auto& r : rows) {
        csv << r.antennas << ',' << format_real(r.epsilon) << ',' << rate_opt::to_string(r.mode)
            << ',' << format_real(r.power) << ',' << r.blocklength << ','
            << format_real(r.throughput) << '\n';
    }
    emit(csv.str(), common.out_path.empty() ? manifest.output_path : common.out_path, out);
    return exit_ok;
}

// ---------------------------------------------------------------- validate

struct ValidateFlags {
    double power = 1.0;
    std::int64_t blocklength = 50;
    double threshold_scale = 1.0;  // negative-control hook, hidden from --help
    int workers = 1;
};

struct CheckOutcome {
    std::string name;
    std::string detail;
    bool pass = false;
};

constexpr double kSigmaBand = 4.0;

CheckOutcome probability_check(const std::string& name, const montecarlo::TrialReport& emp,
                               double analytic) {
    const double sigma = std::max(emp.std_error,
                                  montecarlo::binomial_std_error(analytic, emp.trials));
    const double band = kSigmaBand * sigma;
    const bool pass = std::abs(emp.estimate - analytic) <= band;
    return {name,
            "empirical=" + format_real(emp.estimate) + " analytic=" + format_real(analytic) +
                " band=+-" + format_real(band) + " (4 sigma, " + std::to_string(emp.trials) +
                " trials)",
            pass};
}

int cmd_validate(const CommonOptions& common, const ValidateFlags& flags, std::ostream& out) {
    RunManifest manifest;
    ValidateFlags v = flags;
    std::int64_t trials = 0;
    if (!common.manifest_path.empty()) {
        manifest = replayed(common, "validate");
        const auto args = nlohmann::json::parse(manifest.args_json);
        v.power = args.at("P_a").get<double>();
        v.blocklength = args.at("L").get<std::int64_t>();
        v.threshold_scale = args.at("threshold_scale").get<double>();
        trials = args.at("trials").get<std::int64_t>();
        if (!manifest.seed) throw ConfigError("manifest has no seed");
    } else {
        if (!common.seed) throw ConfigError("validate requires an explicit --seed");
        trials = common.trials.value_or(100000);
        manifest.config = resolve_config(common, SystemConfig::baseline(2, 1000, 0.3));
        manifest.command = "validate";
        manifest.seed = common.seed;
        manifest.output_path = common.out_path;
        ordered_json args;
        args["P_a"] = v.power;
        args["L"] = v.blocklength;
        args["trials"] = trials;
        args["threshold_scale"] = v.threshold_scale;
        manifest.args_json = args.dump();
    }
    if (trials < 10000) throw ConfigError("validate needs --trials >= 10000");
    if (!(v.power > 0.0) || v.blocklength < 1 || !(v.threshold_scale > 0.0)) {
        throw ConfigError("validate needs P_a > 0 and L >= 1");
    }
    const SystemConfig& cfg = manifest.config;
    const std::uint64_t seed = *manifest.seed;

    std::vector<CheckOutcome> checks;

    // Detector error probabilities on one seeded channel, full observation synthesis.
    RandomStream channel_rng(seed, substream(StreamTag::parameters, 0));
    const ChannelDraw channel = sample_channel(channel_rng, cfg.antennas, cfg.lambda);
    const double gain = channel.gain();

    // The threshold to certify: the closed-form one if it attains the grid
    // minimum, the density-crossing one otherwise. The hook scales it afterwards.
    const double theta_derived = detector::optimal_threshold(v.power, gain, v.blocklength);
    const int grid_points = 1000;
    double grid_min = std::numeric_limits<double>::infinity();
    const auto thetas = rate_opt::log_grid(theta_derived / 10.0, theta_derived * 10.0, grid_points);
    for (double t : thetas) {
        grid_min = std::min(grid_min,
                            detector::errors_at_threshold(t, v.power, gain, v.blocklength).total);
    }
    const double derived_total =
        detector::errors_at_threshold(theta_derived, v.power, gain, v.blocklength).total;
    const auto rule = derived_total <= grid_min + 1e-9 ? detector::ThresholdRule::as_derived
                                                       : detector::ThresholdRule::min_error;
    const double theta =
        v.threshold_scale * detector::threshold(rule, v.power, gain, v.blocklength);

    montecarlo::RunOptions run;
    run.rule = rule;
    run.threshold_scale = v.threshold_scale;
    run.workers = v.workers;
    const auto [pfa, pmd] =
        montecarlo::empirical_error_probs(channel, v.power, v.blocklength, trials, seed, run);
    const auto analytic = detector::errors_at_threshold(theta, v.power, gain, v.blocklength);
    checks.push_back(probability_check("detector_pfa", pfa, analytic.p_fa));
    checks.push_back(probability_check("detector_pmd", pmd, analytic.p_md));

    {
        const double total = analytic.total;
        const bool pass = total <= grid_min + 1e-9;
        std::string detail = "threshold=" + std::string(detector::to_string(rule)) +
                             " total=" + format_real(total) + " grid_min=" + format_real(grid_min) +
                             " (1000 thresholds on [theta/10, 10 theta])";
        if (rule == detector::ThresholdRule::min_error) {
            detail += "; as-derived threshold total=" + format_real(derived_total) +
                      " misses the grid minimum";
        }
        checks.push_back({"detector_optimality", detail, pass});
    }

    // Expected divergence: quadrature against Monte Carlo.
    {
        const double quad = covertness::expected_kl(v.power, cfg.antennas, cfg.lambda);
        const auto mc = montecarlo::empirical_expected_kl(v.power, cfg.antennas, cfg.lambda,
                                                          trials, seed, v.workers);
        const double band = kSigmaBand * mc.std_error;
        checks.push_back({"expected_kl",
                          "quadrature=" + format_real(quad) + " monte_carlo=" +
                              format_real(mc.estimate) + " band=+-" + format_real(band),
                          std::abs(quad - mc.estimate) <= band});
    }

    // Covertness at the budget-saturating power for the requested blocklength.
    {
        const auto power = rate_opt::power_for_blocklength(v.blocklength, cfg, 1e-6, 1e6);
        if (!power) {
            checks.push_back({"covertness", "no power meets the budget at L=" +
                                                std::to_string(v.blocklength), false});
        } else {
            montecarlo::RunOptions cov = run;
            cov.path = montecarlo::SimulationPath::sufficient_statistic;
            const std::int64_t draws = std::max<std::int64_t>(1000, trials / 100);
            const auto report = montecarlo::verify_covertness(cfg, *power, v.blocklength, draws,
                                                              1000, seed, cov);
            const double floor = 1.0 - cfg.epsilon.value() - 3.0 * report.std_error;
            checks.push_back({"covertness",
                              "P_a=" + format_real(*power) + " L=" +
                                  std::to_string(v.blocklength) + " mean_total=" +
                                  format_real(report.estimate) + " floor=" + format_real(floor) +
                                  " (1 - eps - 3 sigma, " + std::to_string(draws) + " channels)",
                              report.estimate >= floor});
        }
    }

    std::ostringstream report;
    report << manifest.to_line() << '\n';
    report << "# validate seed=" << seed << " trials=" << trials << " M=" << cfg.antennas
           << " P_a=" << format_real(v.power) << " L=" << v.blocklength << '\n';
    int passed = 0;
    std::string failed;
    for (const auto& c : checks) {
        report << "check " << c.name << ": " << c.detail << " -> " << (c.pass ? "PASS" : "FAIL")
               << '\n';
        if (c.pass) {
            ++passed;
        } else {
            failed += (failed.empty() ? "" : ",") + c.name;
        }
    }
    report << "result: " << (failed.empty() ? "PASS" : "FAIL") << " (" << passed << '/'
           << checks.size() << ")";
    if (!failed.empty()) report << " failed=" << failed;
    report << '\n';
    out << report.str();
    if (!common.out_path.empty()) emit(report.str(), common.out_path, out);
    return failed.empty() ? exit_ok : exit_validation_failure;
}

}  // namespace

std::string format_real(double v) {
    if (v == 0.0) return "0";  // folds -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> values;
    try {
        const auto colon = text.find(':');
        if (colon != std::string::npos) {
            const std::int64_t lo = std::stoll(text.substr(0, colon));
            const std::int64_t hi = std::stoll(text.substr(colon + 1));
            if (hi < lo) throw ConfigError("range '" + text + "' is empty");
            for (std::int64_t v = lo; v <= hi; ++v) values.push_back(v);
            return values;
        }
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) values.push_back(std::stoll(item));
        }
    } catch (const std::logic_error&) {
        throw ConfigError("cannot parse integer list '" + text + "'");
    }
    return values;
}

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    try {
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) values.push_back(std::stod(item));
        }
    } catch (const std::logic_error&) {
        throw ConfigError("cannot parse number list '" + text + "'");
    }
    return values;
}

std::string RunManifest::to_line() const {
    ordered_json j;
    j["command"] = command;
    j["config"] = ordered_json::parse(to_json(config));
    j["seed"] = seed ? ordered_json(*seed) : ordered_json(nullptr);
    j["output_path"] = output_path;
    j["tool_version"] = tool_version;
    j["args"] = ordered_json::parse(args_json);
    return kManifestPrefix + j.dump();
}

RunManifest RunManifest::from_line(const std::string& line) {
    const std::string prefix = kManifestPrefix;
    if (line.rfind(prefix, 0) != 0) throw ConfigError("not a manifest line");
    try {
        const auto j = ordered_json::parse(line.substr(prefix.size()));
        RunManifest m;
        m.command = j.at("command").get<std::string>();
        m.config = parse_config(j.at("config").dump());
        if (!j.at("seed").is_null()) m.seed = j.at("seed").get<std::uint64_t>();
        m.output_path = j.at("output_path").get<std::string>();
        m.tool_version = j.at("tool_version").get<std::string>();
        m.args_json = j.at("args").dump();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed manifest: ") + e.what());
    }
}

RunManifest RunManifest::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open manifest source '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(kManifestPrefix, 0) == 0) return from_line(line);
        if (line.empty() || line[0] != '#') break;
    }
    throw ConfigError("no manifest line in '" + path + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Covert throughput design against a multi-antenna optimal detector", "covert-cli"};
    app.require_subcommand(1);

    CommonOptions common;
    SearchFlags search;
    Figure1Flags fig1;
    Figure2Flags fig2;
    ValidateFlags val;

    auto* optimize = app.add_subcommand("optimize", "jointly optimal transmit power and blocklength");
    add_common(optimize, common);
    add_overrides(optimize, common.overrides, false, false);
    add_search(optimize, search);

    auto* figure1 = app.add_subcommand("figure1", "optimal blocklength versus transmit power (CSV)");
    add_common(figure1, common);
    add_overrides(figure1, common.overrides, false, true);
    figure1->add_option("--variant", fig1.variants, "L_max:epsilon curve, repeatable");
    figure1->add_option("--p-min", fig1.power_min, "smallest power on the grid");
    figure1->add_option("--p-max", fig1.power_max, "largest power on the grid");
    figure1->add_option("--points", fig1.points, "log-spaced grid size");

    auto* figure2 = app.add_subcommand("figure2", "covert throughput versus antenna count (CSV)");
    add_common(figure2, common);
    add_overrides(figure2, common.overrides, true, true);
    add_search(figure2, search);
    figure2->add_option("--M", fig2.antennas, "antenna counts, e.g. 1:32 or 1,2,4");
    figure2->add_option("--epsilon", fig2.epsilons, "covertness levels, e.g. 0.05,0.1,0.3");
    figure2->add_option("--fixed-L", fig2.fixed_blocklength, "also report the fixed-blocklength curve");

    auto* validate = app.add_subcommand("validate", "analytic versus Monte Carlo cross-checks");
    add_common(validate, common);
    add_overrides(validate, common.overrides, false, false);
    validate->add_option("--P-a", val.power, "transmit power for the detector checks");
    validate->add_option("--L", val.blocklength, "blocklength for the detector checks");
    validate->add_option("--workers", val.workers, "worker threads (results do not depend on it)");
    validate->add_option("--threshold-scale", val.threshold_scale)->group("");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage_error;
    }

    try {
        if (optimize->parsed()) return cmd_optimize(common, search, out);
        if (figure1->parsed()) return cmd_figure1(common, fig1, out);
        if (figure2->parsed()) return cmd_figure2(common, fig2, search, out);
        if (validate->parsed()) return cmd_validate(common, val, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage_error;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage_error;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << '\n';
        return exit_numeric_failure;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_numeric_failure;
    }
    return exit_usage_error;
}

}  // namespace covert::cli
