#pragma once

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <string>

#include <unistd.h>

#include "skyshare/channel.hpp"
#include "skyshare/config.hpp"

namespace skyshare::testing {

inline std::string source_path(const std::string& rel) { return std::string(SKYSHARE_SOURCE_DIR) + "/" + rel; }

// Fresh scratch directory under the system temp dir; removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag)
    {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("skyshare-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

// Small scenario that still exercises every stage: 7 cells, 4 carriers.
inline ScenarioConfig small_config()
{
    ScenarioConfig c;
    c.num_tbs = 7;
    c.tus_per_tbs = 4;
    c.num_laas = 8;
    c.num_carriers = 4;
    c.feature_mc_samples = 40;
    c.eval_mc_samples = 60;
    c.num_topologies = 2;
    return c;
}

inline ScenarioConfig deterministic_fading(ScenarioConfig c)
{
    c.satellite_fading = FadingModel::deterministic();
    c.terrestrial_fading = FadingModel::deterministic();
    c.interference_fading = FadingModel::deterministic();
    c.cross_fading = FadingModel::deterministic();
    return c;
}

// Planner CSI built straight from dB tables, for hand-sized cases.
inline PlannerCsi hand_csi(std::size_t U, std::size_t N, std::size_t M, std::vector<double> g_sat_db,
                           std::vector<double> g_ter_db, std::vector<double> g_int_db,
                           std::vector<std::size_t> serving, double cross_db = -400.0)
{
    PlannerCsi csi;
    csi.num_laas = U;
    csi.num_tus = N;
    csi.num_tbs = M;
    csi.scenario_seed = 7;
    csi.g_sat_db = std::move(g_sat_db);
    csi.g_ter_db = std::move(g_ter_db);
    csi.g_int_db = std::move(g_int_db);
    csi.g_cross_db.assign(M * N, cross_db);
    csi.serving_tbs = std::move(serving);
    csi.tbs_color.assign(M, 0);
    csi.refresh_linear();
    return csi;
}

}  // namespace skyshare::testing
