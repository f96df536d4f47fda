#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace skyshare::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,           // bad flags or unparsable config text
    exit_invalid_config = 2,  // config parsed but violates constraints
    exit_partial = 3,         // some topologies failed; outputs marked partial
    exit_filesystem = 4,
    exit_integrity = 5,       // radio-map digest or content mismatch
};

struct RunArgs {
    std::string config_path;  // empty: built-in case-study defaults
    std::optional<std::uint64_t> seed;
    std::string schemes = "all";
    std::string out_dir = "out";
    int parallelism = 1;
    std::string radiomap_path;
    std::optional<std::size_t> mc_samples;
};

int cmd_validate(const std::string& config_path, std::ostream& err);
int cmd_run(const RunArgs& args, std::ostream& err);
int cmd_sweep(const RunArgs& args, const std::string& parameter, const std::string& values, std::ostream& err);

struct MapBuildArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::size_t topology_index = 0;
    double step_m = 50.0;
    std::size_t node_budget = 0;  // 0: library default
    std::string out_path = "radiomap.bin";
    int parallelism = 1;
};

int cmd_radiomap_build(const MapBuildArgs& args, std::ostream& err);
int cmd_radiomap_info(const std::string& path, std::ostream& out, std::ostream& err);
int cmd_radiomap_verify(const std::string& path, const std::string& config_path, std::size_t samples,
                        std::ostream& err);

/// Parses "a,b,c" or "start:stop:step" (inclusive stop).
std::vector<double> parse_values(const std::string& text);

int run_cli(int argc, char** argv);

}  // namespace skyshare::cli
