#include "skyshare/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace skyshare {

std::string format_number(double v)
{
    if (!std::isfinite(v))
        return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

namespace {

nlohmann::json statistic_json(const Statistic& s) { return {{"mean", s.mean}, {"std", s.std}}; }

nlohmann::json outcome_json(const SchemeOutcome& o)
{
    return {{"scheme", scheme_name(o.scheme)},
            {"satellite_bps", o.satellite_bps},
            {"terrestrial_bps", o.terrestrial_bps},
            {"total_bps", o.total_bps},
            {"improvement_pct", o.improvement_pct},
            {"flagged_pairs", o.flagged_pairs},
            {"violating_pairs", o.violating_pairs},
            {"unflagged_violations", o.unflagged_violations},
            {"mean_laa_power_dbw", o.mean_laa_power_dbw},
            {"plan_digest", o.plan_digest}};
}

void csv_outcome(std::ostringstream& os, const TopologyOutcome& t, const SchemeOutcome& o)
{
    os << t.index << ',' << t.seed << ',' << t.layout_digest << ',' << scheme_name(o.scheme) << ','
       << format_number(o.satellite_bps) << ',' << format_number(o.terrestrial_bps) << ','
       << format_number(o.total_bps) << ',' << format_number(o.improvement_pct) << ',' << o.flagged_pairs << ','
       << o.violating_pairs << ',' << o.unflagged_violations << ',' << format_number(o.mean_laa_power_dbw) << ','
       << o.plan_digest << '\n';
}

constexpr const char* kCsvColumns =
    "topology,seed,layout_digest,scheme,satellite_bps,terrestrial_bps,total_bps,improvement_pct,flagged_pairs,"
    "violating_pairs,unflagged_violations,mean_laa_power_dbw,plan_digest";

}  // namespace

nlohmann::json report_json(const SimulationReport& report)
{
    nlohmann::json j;
    j["config_digest"] = report.config_digest;
    j["master_seed"] = report.master_seed;
    j["schemes"] = nlohmann::json::array();
    for (Scheme s : report.schemes)
        j["schemes"].push_back(scheme_name(s));
    j["succeeded"] = report.succeeded;
    j["failed"] = report.failed;
    j["partial"] = report.failed > 0;
    j["aggregates"] = nlohmann::json::array();
    for (const auto& a : report.aggregates)
        j["aggregates"].push_back({{"scheme", scheme_name(a.scheme)},
                                   {"count", a.count},
                                   {"satellite_bps", statistic_json(a.satellite_bps)},
                                   {"terrestrial_bps", statistic_json(a.terrestrial_bps)},
                                   {"total_bps", statistic_json(a.total_bps)},
                                   {"improvement_pct", statistic_json(a.improvement_pct)},
                                   {"violating_pairs", statistic_json(a.violating_pairs)}});
    j["topologies"] = nlohmann::json::array();
    for (const auto& t : report.topologies) {
        nlohmann::json tj = {{"index", t.index}, {"seed", t.seed}, {"layout_digest", t.layout_digest}, {"ok", t.ok}};
        if (!t.ok)
            tj["error"] = t.error;
        tj["schemes"] = nlohmann::json::array();
        for (const auto& o : t.schemes)
            tj["schemes"].push_back(outcome_json(o));
        j["topologies"].push_back(std::move(tj));
    }
    return j;
}

nlohmann::json sweep_json(SweepParameter parameter, const std::vector<SweepRow>& rows)
{
    nlohmann::json j;
    j["parameter"] = sweep_parameter_name(parameter);
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows)
        j["rows"].push_back({{"value", r.value}, {"report", report_json(r.report)}});
    return j;
}

nlohmann::json timings_json(const SimulationReport& report)
{
    nlohmann::json j = nlohmann::json::array();
    for (const auto& t : report.topologies)
        for (const auto& o : t.schemes)
            j.push_back({{"topology", t.index},
                         {"scheme", scheme_name(o.scheme)},
                         {"features_s", o.timings.features_s},
                         {"clustering_s", o.timings.clustering_s},
                         {"scheduling_s", o.timings.scheduling_s},
                         {"power_s", o.timings.power_s},
                         {"evaluation_s", o.timings.evaluation_s}});
    return j;
}

std::string topologies_csv(const SimulationReport& report)
{
    std::ostringstream os;
    os << kCsvColumns << '\n';
    for (const auto& t : report.topologies)
        for (const auto& o : t.schemes)
            csv_outcome(os, t, o);
    return os.str();
}

std::string sweep_csv(SweepParameter parameter, const std::vector<SweepRow>& rows)
{
    std::ostringstream os;
    os << "parameter,value," << kCsvColumns << '\n';
    for (const auto& r : rows)
        for (const auto& t : r.report.topologies)
            for (const auto& o : t.schemes) {
                os << sweep_parameter_name(parameter) << ',' << format_number(r.value) << ',';
                csv_outcome(os, t, o);
            }
    return os.str();
}

}  // namespace skyshare
