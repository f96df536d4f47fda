#include "skyshare/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "skyshare/config.hpp"
#include "skyshare/errors.hpp"
#include "skyshare/radiomap.hpp"
#include "skyshare/report.hpp"
#include "skyshare/simulator.hpp"

#ifndef SKYSHARE_VERSION
#define SKYSHARE_VERSION "0.0.0"
#endif

namespace skyshare::cli {

namespace fs = std::filesystem;

namespace {

struct Loaded {
    ScenarioConfig config;
    int status = exit_ok;
};

Loaded load(const std::string& path, std::ostream& err, bool quiet_info = false)
{
    Loaded l;
    if (path.empty()) {
        if (!quiet_info)
            err << "info: no --config given; using built-in case-study defaults\n";
        return l;
    }
    if (!fs::exists(path)) {
        err << "error: cannot read config file '" << path << "'\n";
        l.status = exit_filesystem;
        return l;
    }
    try {
        ConfigParseResult r = load_config(path);
        for (const auto& d : r.diagnostics)
            if (d.severity == Diagnostic::Severity::error || !quiet_info)
                err << d.format() << "\n";
        l.config = r.config;
        if (!r.ok())
            l.status = exit_invalid_config;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        l.status = exit_usage;
    }
    return l;
}

bool write_file(const fs::path& path, const std::string& content, std::ostream& err)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (out)
        out << content;
    if (!out) {
        err << "error: cannot write '" << path.string() << "'\n";
        return false;
    }
    return true;
}

bool prepare_dir(const std::string& dir, std::ostream& err)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        err << "error: cannot create output directory '" << dir << "'"
            << (ec ? ": " + ec.message() : std::string()) << "\n";
        return false;
    }
    const fs::path probe = fs::path(dir) / ".skyshare_write_test";
    std::ofstream test(probe);
    if (!test) {
        err << "error: output directory '" << dir << "' is not writable\n";
        return false;
    }
    test.close();
    fs::remove(probe, ec);
    return true;
}

std::string utc_now()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return stamp;
}

std::optional<std::vector<Scheme>> parse_schemes(const std::string& text, std::ostream& err)
{
    if (text == "all")
        return all_schemes();
    std::vector<Scheme> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        const auto s = parse_scheme(item);
        if (!s) {
            err << "error: unknown scheme '" << item << "' (expected proposed, finesync, randscheme, nosharing or all)\n";
            return std::nullopt;
        }
        if (std::find(out.begin(), out.end(), *s) == out.end())
            out.push_back(*s);
    }
    if (out.empty()) {
        err << "error: empty scheme list\n";
        return std::nullopt;
    }
    return out;
}

void apply_overrides(ScenarioConfig& c, const RunArgs& args)
{
    if (args.seed)
        c.master_seed = *args.seed;
    if (args.mc_samples)
        c.eval_mc_samples = *args.mc_samples;
}

nlohmann::json manifest_base(const std::string& command, const RunArgs& args, const ScenarioConfig& config)
{
    return {{"tool", "skyshare"},
            {"version", SKYSHARE_VERSION},
            {"command", command},
            {"config_path", args.config_path},
            {"config_digest", config.digest()},
            {"resolved_config", "resolved_config.yaml"},
            {"master_seed", config.master_seed},
            {"parallelism", args.parallelism},
            {"eval_mc_samples", config.eval_mc_samples},
            {"created_utc", utc_now()}};
}

}  // namespace

std::vector<double> parse_values(const std::string& text)
{
    std::vector<double> out;
    if (text.empty())
        return out;
    if (text.find(':') != std::string::npos) {
        std::stringstream ss(text);
        std::string a, b, c;
        std::getline(ss, a, ':');
        std::getline(ss, b, ':');
        std::getline(ss, c, ':');
        const double start = std::stod(a), stop = std::stod(b), step = c.empty() ? 1.0 : std::stod(c);
        if (!(step > 0))
            throw std::invalid_argument("range step must be positive");
        for (std::size_t i = 0;; ++i) {
            const double v = start + static_cast<double>(i) * step;
            if (v > stop + 1e-9 * std::max(1.0, std::abs(stop)))
                break;
            out.push_back(v);
        }
        return out;
    }
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');)
        out.push_back(std::stod(item));
    return out;
}

int cmd_validate(const std::string& config_path, std::ostream& err)
{
    if (config_path.empty()) {
        err << "error: validate needs --config\n";
        return exit_usage;
    }
    const Loaded l = load(config_path, err);
    if (l.status == exit_ok)
        err << "valid: config digest " << l.config.digest() << "\n";
    return l.status;
}

int cmd_run(const RunArgs& args, std::ostream& err)
{
    Loaded l = load(args.config_path, err, true);
    if (l.status != exit_ok)
        return l.status;
    apply_overrides(l.config, args);
    for (const auto& d : validate_config(l.config))
        if (d.severity == Diagnostic::Severity::error) {
            err << d.format() << "\n";
            l.status = exit_invalid_config;
        }
    if (l.status != exit_ok)
        return l.status;
    const auto schemes = parse_schemes(args.schemes, err);
    if (!schemes)
        return exit_usage;
    if (!prepare_dir(args.out_dir, err))
        return exit_filesystem;

    RunOptions options;
    options.parallelism = args.parallelism;
    std::optional<RadioMap> map;
    std::vector<std::uint64_t> seeds;
    if (!args.radiomap_path.empty()) {
        try {
            map = load_radio_map(args.radiomap_path);
        } catch (const RadioMapError& e) {
            err << "error: " << e.what() << "\n";
            return e.kind() == RadioMapError::Kind::io ? exit_filesystem : exit_integrity;
        }
        if (map->metadata.channel_digest != channel_digest(l.config)) {
            err << "error: radio map was built with different channel parameters\n";
            return exit_integrity;
        }
        options.radiomap = &*map;
        seeds.push_back(map->metadata.topology_seed);
        err << "info: lookup mode; evaluating the radio map's topology (seed " << seeds.back() << ")\n";
    } else {
        for (std::size_t t = 0; t < l.config.num_topologies; ++t)
            seeds.push_back(topology_seed(l.config.master_seed, t));
    }

    const SimulationReport report = replicate_seeds(l.config, *schemes, seeds, l.config.master_seed, options);
    for (const auto& t : report.topologies)
        if (!t.ok)
            err << "error: topology " << t.index << " failed: " << t.error << "\n";

    const fs::path out(args.out_dir);
    nlohmann::json manifest = manifest_base("run", args, l.config);
    manifest["schemes"] = nlohmann::json::array();
    for (Scheme s : *schemes)
        manifest["schemes"].push_back(scheme_name(s));
    manifest["topology_seeds"] = seeds;
    manifest["radiomap"] = args.radiomap_path;
    if (map)
        manifest["radiomap_digest"] = map->metadata.content_digest;
    manifest["outputs"] = {"report.json", "topologies.csv", "resolved_config.yaml"};
    manifest["status"] = report.failed ? "partial" : "ok";
    manifest["timings"] = timings_json(report);

    bool ok = write_file(out / "report.json", report_json(report).dump(2) + "\n", err) &&
              write_file(out / "topologies.csv", topologies_csv(report), err) &&
              write_file(out / "resolved_config.yaml", emit_config(l.config), err) &&
              write_file(out / "manifest.json", manifest.dump(2) + "\n", err);
    if (!ok)
        return exit_filesystem;
    return report.failed ? exit_partial : exit_ok;
}

int cmd_sweep(const RunArgs& args, const std::string& parameter, const std::string& values_text, std::ostream& err)
{
    Loaded l = load(args.config_path, err, true);
    if (l.status != exit_ok)
        return l.status;
    apply_overrides(l.config, args);
    const auto param = parse_sweep_parameter(parameter);
    if (!param) {
        err << "error: unknown sweep parameter '" << parameter << "' (expected tbs_power, T or F)\n";
        return exit_usage;
    }
    std::vector<double> values;
    try {
        values = parse_values(values_text);
    } catch (const std::exception& e) {
        err << "error: cannot parse sweep values '" << values_text << "'\n";
        return exit_usage;
    }
    for (double v : values) {
        try {
            apply_sweep_value(l.config, *param, v);
        } catch (const ConfigError& e) {
            err << "error: " << e.what() << "\n";
            return exit_invalid_config;
        }
    }
    const auto schemes = parse_schemes(args.schemes, err);
    if (!schemes)
        return exit_usage;
    if (!prepare_dir(args.out_dir, err))
        return exit_filesystem;

    RunOptions options;
    options.parallelism = args.parallelism;
    const std::vector<SweepRow> rows = sweep(l.config, *param, values, *schemes, options);

    std::size_t failed = 0;
    bool paired = true;
    for (const auto& r : rows) {
        failed += r.report.failed;
        for (std::size_t t = 0; t < r.report.topologies.size(); ++t)
            paired = paired && r.report.topologies[t].layout_digest == rows.front().report.topologies[t].layout_digest;
    }
    if (!paired)
        err << "warning: topology digests differ across sweep values\n";

    const fs::path out(args.out_dir);
    nlohmann::json manifest = manifest_base("sweep", args, l.config);
    manifest["parameter"] = sweep_parameter_name(*param);
    manifest["values"] = values;
    manifest["schemes"] = nlohmann::json::array();
    for (Scheme s : *schemes)
        manifest["schemes"].push_back(scheme_name(s));
    manifest["paired_topologies"] = paired;
    manifest["outputs"] = {"report.json", "sweep.csv", "resolved_config.yaml"};
    manifest["status"] = failed ? "partial" : "ok";
    nlohmann::json timings = nlohmann::json::array();
    for (const auto& r : rows)
        timings.push_back({{"value", r.value}, {"timings", timings_json(r.report)}});
    manifest["timings"] = timings;

    bool ok = write_file(out / "report.json", sweep_json(*param, rows).dump(2) + "\n", err) &&
              write_file(out / "sweep.csv", sweep_csv(*param, rows), err) &&
              write_file(out / "resolved_config.yaml", emit_config(l.config), err) &&
              write_file(out / "manifest.json", manifest.dump(2) + "\n", err);
    if (!ok)
        return exit_filesystem;
    return failed ? exit_partial : exit_ok;
}

int cmd_radiomap_build(const MapBuildArgs& args, std::ostream& err)
{
    Loaded l = load(args.config_path, err, true);
    if (l.status != exit_ok)
        return l.status;
    if (args.seed)
        l.config.master_seed = *args.seed;
    try {
        const Topology topo = generate_topology(l.config, topology_seed(l.config.master_seed, args.topology_index));
        const MapRegion region = MapRegion::covering(topo, l.config, args.step_m);
        const RadioMap map = build_radio_map(topo, l.config, region,
                                             args.node_budget ? args.node_budget : kDefaultNodeBudget,
                                             args.parallelism);
        save_radio_map(map, args.out_path);
        err << "built " << map.region.node_count() << " nodes (" << map.region.rows << " x " << map.region.cols
            << "), digest " << map.metadata.content_digest << "\n";
    } catch (const RadioMapError& e) {
        err << "error: " << e.what() << "\n";
        return e.kind() == RadioMapError::Kind::io ? exit_filesystem : exit_invalid_config;
    }
    return exit_ok;
}

int cmd_radiomap_info(const std::string& path, std::ostream& out, std::ostream& err)
{
    try {
        const RadioMap map = load_radio_map(path);
        const auto& r = map.region;
        out << "nodes: " << r.node_count() << " (" << r.rows << " rows x " << r.cols << " cols)\n"
            << "grid_step_m: " << format_number(r.grid_step_m) << "\n"
            << "origin: " << format_number(r.origin.latitude_deg) << ", " << format_number(r.origin.longitude_deg)
            << " at " << format_number(r.origin.altitude_m) << " m\n"
            << "tus: " << map.num_tus << "\n"
            << "frequency_hz: " << format_number(map.metadata.frequency_hz) << "\n"
            << "satellite_exponent: " << format_number(map.metadata.satellite_exponent) << "\n"
            << "terrestrial_exponent: " << format_number(map.metadata.terrestrial_exponent) << "\n"
            << "reference_loss_db: " << format_number(map.metadata.reference_loss_db) << "\n"
            << "topology_seed: " << map.metadata.topology_seed << "\n"
            << "channel_digest: " << map.metadata.channel_digest << "\n"
            << "built: " << map.metadata.build_timestamp << "\n"
            << "content_digest: " << map.metadata.content_digest << "\n";
    } catch (const RadioMapError& e) {
        err << "error: " << e.what() << "\n";
        return e.kind() == RadioMapError::Kind::io ? exit_filesystem : exit_integrity;
    }
    return exit_ok;
}

int cmd_radiomap_verify(const std::string& path, const std::string& config_path, std::size_t samples,
                        std::ostream& err)
{
    Loaded l = load(config_path, err, true);
    if (l.status != exit_ok)
        return l.status;
    try {
        const RadioMap map = load_radio_map(path);
        if (map.metadata.channel_digest != channel_digest(l.config)) {
            err << "error: map channel digest " << map.metadata.channel_digest << " does not match config "
                << channel_digest(l.config) << "\n";
            return exit_integrity;
        }
        const Topology topo = generate_topology(l.config, map.metadata.topology_seed);
        const MapVerification v = verify_radio_map(map, topo, l.config, samples);
        if (!v.ok()) {
            err << "error: verification failed: " << v.mismatched_nodes.size() << " of " << v.checked
                << " nodes differ" << (v.digest_ok ? "" : "; content digest mismatch") << "\n";
            return exit_integrity;
        }
        err << "verified " << v.checked << " nodes; digest " << map.metadata.content_digest << "\n";
    } catch (const RadioMapError& e) {
        err << "error: " << e.what() << "\n";
        return e.kind() == RadioMapError::Kind::io ? exit_filesystem : exit_integrity;
    }
    return exit_ok;
}

int run_cli(int argc, char** argv)
{
    CLI::App app{"Joint satellite-terrestrial spectrum sharing simulator"};
    app.set_version_flag("--version", SKYSHARE_VERSION);
    app.require_subcommand(1);

    std::string validate_config_path;
    auto* validate = app.add_subcommand("validate", "check a scenario config");
    validate->add_option("--config", validate_config_path, "scenario YAML")->required();

    RunArgs run_args;
    auto add_run_flags = [](CLI::App* cmd, RunArgs& a) {
        cmd->add_option("--config", a.config_path, "scenario YAML (default: case-study values)");
        cmd->add_option("--seed", a.seed, "master seed override");
        cmd->add_option("--schemes", a.schemes, "comma list of proposed,finesync,randscheme,nosharing or all");
        cmd->add_option("--out", a.out_dir, "output directory");
        cmd->add_option("--parallelism", a.parallelism, "worker threads")->check(CLI::PositiveNumber);
        cmd->add_option("--mc-samples", a.mc_samples, "evaluation Monte Carlo samples")->check(CLI::PositiveNumber);
    };
    auto* run = app.add_subcommand("run", "run the schemes over seeded topologies");
    add_run_flags(run, run_args);
    run->add_option("--radiomap", run_args.radiomap_path, "radio map file; enables lookup mode");

    RunArgs sweep_args;
    std::string sweep_param, sweep_values;
    auto* sweep_cmd = app.add_subcommand("sweep", "replicate over a parameter sweep");
    add_run_flags(sweep_cmd, sweep_args);
    sweep_cmd->add_option("--parameter", sweep_param, "tbs_power, T or F")->required();
    sweep_cmd->add_option("--values", sweep_values, "a,b,c or start:stop:step")->required();

    auto* radiomap = app.add_subcommand("radiomap", "build, inspect or verify radio maps");
    radiomap->require_subcommand(1);
    MapBuildArgs build_args;
    auto* build = radiomap->add_subcommand("build", "build a radio map for one topology");
    build->add_option("--config", build_args.config_path, "scenario YAML");
    build->add_option("--seed", build_args.seed, "master seed override");
    build->add_option("--topology-index", build_args.topology_index, "topology index under the master seed");
    build->add_option("--step", build_args.step_m, "grid step in meters")->check(CLI::PositiveNumber);
    build->add_option("--budget", build_args.node_budget, "maximum node count");
    build->add_option("--out", build_args.out_path, "output file");
    build->add_option("--parallelism", build_args.parallelism, "worker threads")->check(CLI::PositiveNumber);
    std::string info_path;
    auto* info = radiomap->add_subcommand("info", "print map metadata");
    info->add_option("map", info_path, "radio map file")->required();
    std::string verify_path, verify_config;
    std::size_t verify_samples = 100;
    auto* verify = radiomap->add_subcommand("verify", "re-derive random nodes and compare exactly");
    verify->add_option("map", verify_path, "radio map file")->required();
    verify->add_option("--config", verify_config, "scenario YAML the map was built with");
    verify->add_option("--samples", verify_samples, "nodes to re-derive");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*validate)
            return cmd_validate(validate_config_path, std::cerr);
        if (*run)
            return cmd_run(run_args, std::cerr);
        if (*sweep_cmd)
            return cmd_sweep(sweep_args, sweep_param, sweep_values, std::cerr);
        if (*build)
            return cmd_radiomap_build(build_args, std::cerr);
        if (*info)
            return cmd_radiomap_info(info_path, std::cout, std::cerr);
        if (*verify)
            return cmd_radiomap_verify(verify_path, verify_config, verify_samples, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_partial;
    }
    return exit_usage;
}

}  // namespace skyshare::cli
