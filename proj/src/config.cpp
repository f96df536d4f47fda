#include "skyshare/config.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <variant>

#include <json.hpp>

#include "skyshare/digest.hpp"
#include "skyshare/errors.hpp"

namespace skyshare {

namespace {

template <class T>
using Accessor = T& (*)(ScenarioConfig&);

using AnyAccessor = std::variant<Accessor<double>, Accessor<std::size_t>, Accessor<bool>, Accessor<int>,
                                 Accessor<FadingModel>, Accessor<ReuseMode>, Accessor<std::vector<std::size_t>>>;

struct Field {
    const char* section;
    const char* key;
    AnyAccessor access;
};

#define SKY_FIELD(sec, key, type, expr) \
    Field { sec, key, Accessor<type>(+[](ScenarioConfig& c) -> type& { return expr; }) }

const std::vector<Field>& schema()
{
    static const std::vector<Field> fields = {
        SKY_FIELD("geometry", "satellite_altitude_m", double, c.satellite_altitude_m),
        SKY_FIELD("geometry", "subsatellite_lat_deg", double, c.subsatellite_lat_deg),
        SKY_FIELD("geometry", "subsatellite_lon_deg", double, c.subsatellite_lon_deg),
        SKY_FIELD("geometry", "center_lat_deg", double, c.center_lat_deg),
        SKY_FIELD("geometry", "center_lon_deg", double, c.center_lon_deg),
        SKY_FIELD("geometry", "num_tbs", std::size_t, c.num_tbs),
        SKY_FIELD("geometry", "tus_per_tbs", std::size_t, c.tus_per_tbs),
        SKY_FIELD("geometry", "num_laas", std::size_t, c.num_laas),
        SKY_FIELD("geometry", "laa_altitude_m", double, c.laa_altitude_m),
        SKY_FIELD("geometry", "cell_radius_m", double, c.cell_radius_m),

        SKY_FIELD("radio", "carrier_frequency_hz", double, c.carrier_frequency_hz),
        SKY_FIELD("radio", "num_carriers", std::size_t, c.num_carriers),
        SKY_FIELD("radio", "bandwidth_hz", double, c.bandwidth_hz),
        SKY_FIELD("radio", "noise_power_dbm", double, c.noise_power_dbm),
        SKY_FIELD("radio", "gamma_th_offset_db", double, c.gamma_th_offset_db),
        SKY_FIELD("radio", "interval_s", double, c.interval_s),

        SKY_FIELD("antenna", "satellite_gain_dbi", double, c.satellite_gain_dbi),
        SKY_FIELD("antenna", "tbs_gain_dbi", double, c.tbs_gain_dbi),
        SKY_FIELD("antenna", "tu_gain_dbi", double, c.tu_gain_dbi),
        SKY_FIELD("antenna", "laa_dish_diameter_m", double, c.laa_dish_diameter_m),
        SKY_FIELD("antenna", "laa_aperture_efficiency", double, c.laa_aperture_efficiency),

        SKY_FIELD("propagation", "terrestrial_exponent", double, c.terrestrial_exponent),
        SKY_FIELD("propagation", "satellite_exponent", double, c.satellite_exponent),
        SKY_FIELD("propagation", "cross_tbs_interference", bool, c.cross_tbs_interference),

        SKY_FIELD("fading", "satellite", FadingModel, c.satellite_fading),
        SKY_FIELD("fading", "terrestrial", FadingModel, c.terrestrial_fading),
        SKY_FIELD("fading", "interference", FadingModel, c.interference_fading),
        SKY_FIELD("fading", "cross", FadingModel, c.cross_fading),

        SKY_FIELD("power", "laa_min_dbw", double, c.power.laa_min_dbw),
        SKY_FIELD("power", "laa_max_dbw", double, c.power.laa_max_dbw),
        SKY_FIELD("power", "tbs_min_dbm", double, c.power.tbs_min_dbm),
        SKY_FIELD("power", "tbs_max_dbm", double, c.power.tbs_max_dbm),
        SKY_FIELD("power", "tbs_power_dbm", double, c.tbs_power_dbm),
        SKY_FIELD("power", "refine_tbs_power", bool, c.refine_tbs_power),

        SKY_FIELD("reuse", "mode", ReuseMode, c.reuse),
        SKY_FIELD("reuse", "partial_factor", int, c.partial_reuse_factor),
        SKY_FIELD("reuse", "laa_quotas", std::vector<std::size_t>, c.laa_quotas),

        SKY_FIELD("simulation", "feature_mc_samples", std::size_t, c.feature_mc_samples),
        SKY_FIELD("simulation", "eval_mc_samples", std::size_t, c.eval_mc_samples),
        SKY_FIELD("simulation", "num_topologies", std::size_t, c.num_topologies),
        SKY_FIELD("simulation", "master_seed", std::size_t, c.master_seed),
        SKY_FIELD("simulation", "kmeans_max_iters", std::size_t, c.kmeans_max_iters),
        SKY_FIELD("simulation", "kmeans_restarts", std::size_t, c.kmeans_restarts),
        SKY_FIELD("simulation", "qos_penalty", bool, c.qos_penalty),
    };
    return fields;
}

#undef SKY_FIELD

std::string format_double(double v)
{
    if (std::isinf(v))
        return v > 0 ? ".inf" : "-.inf";
    if (std::isnan(v))
        return ".nan";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, end);
    // keep YAML readers from seeing an integer where a float was written
    if (s.find_first_of(".eEn") == std::string::npos)
        s += ".0";
    return s;
}

const char* fading_kind_name(FadingKind k)
{
    switch (k) {
    case FadingKind::none:
        return "none";
    case FadingKind::rayleigh:
        return "rayleigh";
    case FadingKind::rician:
        return "rician";
    }
    return "none";
}

std::string yaml_value(const ScenarioConfig& config, const Field& f)
{
    ScenarioConfig copy = config;
    return std::visit(
        [&](auto accessor) -> std::string {
            const auto& v = accessor(copy);
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                return format_double(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, FadingModel>) {
                return std::string("{kind: ") + fading_kind_name(v.kind) + ", k_db: " + format_double(v.k_db) +
                       ", shadowing_sigma_db: " + format_double(v.shadowing_sigma_db) + "}";
            } else if constexpr (std::is_same_v<T, ReuseMode>) {
                return v == ReuseMode::full ? "full" : "partial";
            } else if constexpr (std::is_same_v<T, std::vector<std::size_t>>) {
                std::string s = "[";
                for (std::size_t i = 0; i < v.size(); ++i)
                    s += (i ? ", " : "") + std::to_string(v[i]);
                return s + "]";
            } else {
                return std::to_string(v);
            }
        },
        f.access);
}

nlohmann::json json_value(const ScenarioConfig& config, const Field& f)
{
    ScenarioConfig copy = config;
    return std::visit(
        [&](auto accessor) -> nlohmann::json {
            const auto& v = accessor(copy);
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, FadingModel>) {
                return {{"kind", fading_kind_name(v.kind)}, {"k_db", v.k_db}, {"shadowing_sigma_db", v.shadowing_sigma_db}};
            } else if constexpr (std::is_same_v<T, ReuseMode>) {
                return v == ReuseMode::full ? "full" : "partial";
            } else {
                return v;
            }
        },
        f.access);
}

struct Reader {
    std::vector<Diagnostic>& diags;

    void error(const std::string& path, const YAML::Node& node, const std::string& msg)
    {
        diags.push_back({Diagnostic::Severity::error, path, msg, node.IsDefined() ? node.Mark().line + 1 : 0});
    }

    bool read(const YAML::Node& node, const std::string& path, double& out)
    {
        try {
            if (!node.IsScalar())
                throw YAML::BadConversion(node.Mark());
            out = node.as<double>();
            return true;
        } catch (const YAML::Exception&) {
            error(path, node, "expected a number");
            return false;
        }
    }

    bool read(const YAML::Node& node, const std::string& path, std::size_t& out)
    {
        try {
            if (!node.IsScalar())
                throw YAML::BadConversion(node.Mark());
            const std::string& s = node.Scalar();
            std::uint64_t v = 0;
            auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc() || end != s.data() + s.size())
                throw YAML::BadConversion(node.Mark());
            out = v;
            return true;
        } catch (const YAML::Exception&) {
            error(path, node, "expected a non-negative integer");
            return false;
        }
    }

    bool read(const YAML::Node& node, const std::string& path, int& out)
    {
        try {
            if (!node.IsScalar())
                throw YAML::BadConversion(node.Mark());
            out = node.as<int>();
            return true;
        } catch (const YAML::Exception&) {
            error(path, node, "expected an integer");
            return false;
        }
    }

    bool read(const YAML::Node& node, const std::string& path, bool& out)
    {
        try {
            if (!node.IsScalar())
                throw YAML::BadConversion(node.Mark());
            out = node.as<bool>();
            return true;
        } catch (const YAML::Exception&) {
            error(path, node, "expected true or false");
            return false;
        }
    }

    bool read(const YAML::Node& node, const std::string& path, ReuseMode& out)
    {
        const std::string s = node.IsScalar() ? node.Scalar() : "";
        if (s == "full") {
            out = ReuseMode::full;
            return true;
        }
        if (s == "partial") {
            out = ReuseMode::partial;
            return true;
        }
        error(path, node, "expected 'full' or 'partial'");
        return false;
    }

    bool read(const YAML::Node& node, const std::string& path, std::vector<std::size_t>& out)
    {
        if (!node.IsSequence()) {
            error(path, node, "expected a sequence of integers");
            return false;
        }
        std::vector<std::size_t> values;
        for (std::size_t i = 0; i < node.size(); ++i) {
            std::size_t v = 0;
            if (!read(node[i], path + "[" + std::to_string(i) + "]", v))
                return false;
            values.push_back(v);
        }
        out = std::move(values);
        return true;
    }

    bool read(const YAML::Node& node, const std::string& path, FadingModel& out)
    {
        if (!node.IsMap()) {
            error(path, node, "expected a map with kind / k_db / shadowing_sigma_db");
            return false;
        }
        FadingModel model = out;
        bool ok = true;
        for (const auto& kv : node) {
            const std::string key = kv.first.as<std::string>();
            const std::string sub = path + "." + key;
            if (key == "kind") {
                const std::string kind = kv.second.IsScalar() ? kv.second.Scalar() : "";
                if (kind == "none")
                    model.kind = FadingKind::none;
                else if (kind == "rayleigh")
                    model.kind = FadingKind::rayleigh;
                else if (kind == "rician")
                    model.kind = FadingKind::rician;
                else {
                    error(sub, kv.second, "expected none, rayleigh or rician");
                    ok = false;
                }
            } else if (key == "k_db") {
                ok = read(kv.second, sub, model.k_db) && ok;
            } else if (key == "shadowing_sigma_db") {
                ok = read(kv.second, sub, model.shadowing_sigma_db) && ok;
            } else {
                error(sub, kv.first, "unknown key");
                ok = false;
            }
        }
        if (ok)
            out = model;
        return ok;
    }
};

}  // namespace

std::vector<std::size_t> ScenarioConfig::resolved_quotas() const
{
    if (!laa_quotas.empty())
        return laa_quotas;
    if (num_carriers == 0)
        return {};
    return std::vector<std::size_t>(num_carriers, num_laas / num_carriers);
}

std::vector<std::size_t> ScenarioConfig::allowed_carriers(int reuse_color) const
{
    const int f = reuse_factor();
    const std::size_t block = f > 0 ? num_carriers / static_cast<std::size_t>(f) : num_carriers;
    std::vector<std::size_t> carriers;
    if (f <= 1) {
        carriers.resize(num_carriers);
        std::iota(carriers.begin(), carriers.end(), std::size_t{0});
        return carriers;
    }
    for (std::size_t k = 0; k < block; ++k)
        carriers.push_back(static_cast<std::size_t>(reuse_color) * block + k);
    return carriers;
}

std::string ScenarioConfig::canonical_json() const
{
    nlohmann::json j = nlohmann::json::object();
    for (const auto& f : schema())
        j[f.section][f.key] = json_value(*this, f);
    return j.dump();
}

std::string ScenarioConfig::digest() const { return sha256_hex(canonical_json()); }

std::string Diagnostic::format() const
{
    std::ostringstream os;
    os << (severity == Severity::error ? "error" : "info") << ": " << path;
    if (line > 0)
        os << " (line " << line << ")";
    os << ": " << message;
    return os.str();
}

bool ConfigParseResult::ok() const noexcept
{
    for (const auto& d : diagnostics)
        if (d.severity == Diagnostic::Severity::error)
            return false;
    return true;
}

ConfigParseResult parse_config(const std::string& text)
{
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ConfigError("config parse error at line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }

    ConfigParseResult result;
    Reader reader{result.diagnostics};
    if (root.IsNull()) {
        root = YAML::Node(YAML::NodeType::Map);
    } else if (!root.IsMap()) {
        reader.error("<root>", root, "expected a map of sections");
        return result;
    }

    std::set<std::string> sections;
    for (const auto& f : schema())
        sections.insert(f.section);

    for (const auto& kv : root) {
        const std::string name = kv.first.as<std::string>();
        if (!sections.count(name)) {
            reader.error(name, kv.first, "unknown section");
            continue;
        }
        if (!kv.second.IsMap()) {
            reader.error(name, kv.second, "expected a map");
            continue;
        }
        for (const auto& entry : kv.second) {
            const std::string key = entry.first.as<std::string>();
            const bool known = std::any_of(schema().begin(), schema().end(), [&](const Field& f) {
                return name == f.section && key == f.key;
            });
            if (!known)
                reader.error(name + "." + key, entry.first, "unknown key");
        }
    }

    for (const auto& f : schema()) {
        const std::string path = std::string(f.section) + "." + f.key;
        const YAML::Node section = root[f.section];
        const YAML::Node node = section.IsDefined() && section.IsMap() ? section[f.key] : YAML::Node();
        if (!node.IsDefined() || node.IsNull()) {
            result.diagnostics.push_back({Diagnostic::Severity::info, path,
                                          "missing; defaulted to " + yaml_value(result.config, f), 0});
            continue;
        }
        std::visit([&](auto accessor) { reader.read(node, path, accessor(result.config)); }, f.access);
    }

    for (auto& d : validate_config(result.config))
        result.diagnostics.push_back(std::move(d));
    return result;
}

ConfigParseResult load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::vector<Diagnostic> validate_config(const ScenarioConfig& c)
{
    std::vector<Diagnostic> d;
    auto err = [&d](std::string path, std::string msg) {
        d.push_back({Diagnostic::Severity::error, std::move(path), std::move(msg), 0});
    };
    auto info = [&d](std::string path, std::string msg) {
        d.push_back({Diagnostic::Severity::info, std::move(path), std::move(msg), 0});
    };
    auto finite = [](double v) { return std::isfinite(v); };

    if (!finite(c.satellite_altitude_m) || c.satellite_altitude_m <= 0)
        err("geometry.satellite_altitude_m", "must be positive");
    if (!finite(c.laa_altitude_m) || c.laa_altitude_m < 0)
        err("geometry.laa_altitude_m", "must be non-negative");
    if (c.satellite_altitude_m <= c.laa_altitude_m)
        err("geometry.satellite_altitude_m", "must exceed the LAA altitude");
    for (auto [path, v] : {std::pair{"geometry.subsatellite_lat_deg", c.subsatellite_lat_deg},
                           std::pair{"geometry.center_lat_deg", c.center_lat_deg}})
        if (!finite(v) || v < -90 || v > 90)
            err(path, "latitude outside [-90, 90]");
    for (auto [path, v] : {std::pair{"geometry.subsatellite_lon_deg", c.subsatellite_lon_deg},
                           std::pair{"geometry.center_lon_deg", c.center_lon_deg}})
        if (!finite(v) || v < -180 || v > 180)
            err(path, "longitude outside [-180, 180]");
    if (c.num_tbs == 0)
        err("geometry.num_tbs", "must be at least 1");
    if (c.tus_per_tbs == 0)
        err("geometry.tus_per_tbs", "must be at least 1");
    if (c.num_laas == 0)
        err("geometry.num_laas", "must be at least 1");
    if (!finite(c.cell_radius_m) || c.cell_radius_m <= 0)
        err("geometry.cell_radius_m", "must be positive");

    if (!finite(c.carrier_frequency_hz) || c.carrier_frequency_hz <= 0)
        err("radio.carrier_frequency_hz", "must be positive");
    if (c.num_carriers == 0)
        err("radio.num_carriers", "must be at least 1");
    if (!finite(c.bandwidth_hz) || c.bandwidth_hz <= 0)
        err("radio.bandwidth_hz", "must be positive");
    if (!finite(c.noise_power_dbm))
        err("radio.noise_power_dbm", "must be finite");
    if (!finite(c.gamma_th_offset_db))
        err("radio.gamma_th_offset_db", "must be finite");
    if (!finite(c.interval_s) || c.interval_s <= 0)
        err("radio.interval_s", "must be positive");

    if (!finite(c.laa_dish_diameter_m) || c.laa_dish_diameter_m <= 0)
        err("antenna.laa_dish_diameter_m", "must be positive");
    if (!(c.laa_aperture_efficiency > 0 && c.laa_aperture_efficiency <= 1))
        err("antenna.laa_aperture_efficiency", "must lie in (0, 1]");
    for (auto [path, v] : {std::pair{"antenna.satellite_gain_dbi", c.satellite_gain_dbi},
                           std::pair{"antenna.tbs_gain_dbi", c.tbs_gain_dbi},
                           std::pair{"antenna.tu_gain_dbi", c.tu_gain_dbi}})
        if (!finite(v))
            err(path, "must be finite");

    if (!finite(c.terrestrial_exponent) || c.terrestrial_exponent <= 0)
        err("propagation.terrestrial_exponent", "must be positive");
    if (!finite(c.satellite_exponent) || c.satellite_exponent <= 0)
        err("propagation.satellite_exponent", "must be positive");

    for (auto [path, m] : {std::pair{"fading.satellite", &c.satellite_fading},
                           std::pair{"fading.terrestrial", &c.terrestrial_fading},
                           std::pair{"fading.interference", &c.interference_fading},
                           std::pair{"fading.cross", &c.cross_fading}}) {
        if (m->kind == FadingKind::rician && !finite(m->k_db))
            err(std::string(path) + ".k_db", "must be finite");
        if (!finite(m->shadowing_sigma_db) || m->shadowing_sigma_db < 0)
            err(std::string(path) + ".shadowing_sigma_db", "must be non-negative");
    }

    const PowerBounds& p = c.power;
    if (!(p.laa_min_dbw <= p.laa_max_dbw))
        err("power.laa_min_dbw", "LAA power bounds are empty (min > max)");
    if (!(p.tbs_min_dbm <= p.tbs_max_dbm))
        err("power.tbs_min_dbm", "TBS power bounds are empty (min > max)");
    if (!(c.tbs_power_dbm >= p.tbs_min_dbm && c.tbs_power_dbm <= p.tbs_max_dbm))
        err("power.tbs_power_dbm", "outside [tbs_min_dbm, tbs_max_dbm]");

    const int f = c.partial_reuse_factor;
    if (f < 1) {
        err("reuse.partial_factor", "must be at least 1");
    } else if (c.num_carriers > 0 && c.num_carriers % static_cast<std::size_t>(f) != 0) {
        err("radio.num_carriers", "K = " + std::to_string(c.num_carriers) +
                                      " is not divisible by the reuse factor F = " + std::to_string(f));
    } else if (c.reuse == ReuseMode::partial) {
        if (c.num_tbs < static_cast<std::size_t>(f))
            info("reuse.partial_factor", "fewer TBSs than reuse colors; some carrier blocks carry no TBS");
        if (f != 1 && f != 3 && f != 4 && f != 7)
            info("reuse.partial_factor", "no standard hexagonal pattern for this F; using (q + 2r) mod F coloring");
    }

    if (c.num_carriers > 0) {
        if (c.laa_quotas.empty()) {
            if (c.num_laas % c.num_carriers != 0)
                err("geometry.num_laas", "U = " + std::to_string(c.num_laas) + " is not divisible by K = " +
                                             std::to_string(c.num_carriers) + "; give reuse.laa_quotas explicitly");
        } else {
            if (c.laa_quotas.size() != c.num_carriers)
                err("reuse.laa_quotas", "needs exactly K entries");
            if (std::accumulate(c.laa_quotas.begin(), c.laa_quotas.end(), std::size_t{0}) != c.num_laas)
                err("reuse.laa_quotas", "entries must sum to U");
            if (std::find(c.laa_quotas.begin(), c.laa_quotas.end(), std::size_t{0}) != c.laa_quotas.end())
                err("reuse.laa_quotas", "entries must be positive");
        }
        if (c.num_laas < c.num_carriers)
            err("geometry.num_laas", "fewer LAAs than carriers; every carrier needs a satellite cluster");
        const int rf = c.reuse_factor();
        if (rf >= 1 && c.num_carriers % static_cast<std::size_t>(rf) == 0) {
            const std::size_t allowed = c.num_carriers / static_cast<std::size_t>(rf);
            if (c.tus_per_tbs % allowed != 0)
                info("geometry.tus_per_tbs", "V is not divisible by the " + std::to_string(allowed) +
                                                 " carriers per TBS; per-carrier TU quotas differ by one");
            if (c.tus_per_tbs < allowed)
                info("geometry.tus_per_tbs", "fewer TUs than carriers per TBS; some carriers stay idle per TBS");
        }
    }

    if (c.feature_mc_samples == 0)
        err("simulation.feature_mc_samples", "must be at least 1");
    if (c.eval_mc_samples == 0)
        err("simulation.eval_mc_samples", "must be at least 1");
    if (c.num_topologies == 0)
        err("simulation.num_topologies", "must be at least 1");
    if (c.kmeans_max_iters == 0)
        err("simulation.kmeans_max_iters", "must be at least 1");
    if (c.kmeans_restarts == 0)
        err("simulation.kmeans_restarts", "must be at least 1");
    return d;
}

std::string emit_config(const ScenarioConfig& config)
{
    std::ostringstream os;
    os << "# skyshare scenario configuration\n";
    std::string current;
    for (const auto& f : schema()) {
        if (current != f.section) {
            current = f.section;
            os << "\n" << current << ":\n";
        }
        os << "  " << f.key << ": " << yaml_value(config, f) << "\n";
    }
    return os.str();
}

std::vector<std::string> case_study_deviations(const ScenarioConfig& c)
{
    std::vector<std::string> out;
    auto check = [&out](const char* name, double actual, double expected) {
        if (std::abs(actual - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
            std::ostringstream os;
            os << name << " = " << actual << " (case study: " << expected << ")";
            out.push_back(os.str());
        }
    };
    check("satellite altitude H_s [m]", c.satellite_altitude_m, 500e3);
    check("sub-satellite latitude [deg]", c.subsatellite_lat_deg, 40.0);
    check("sub-satellite longitude [deg]", c.subsatellite_lon_deg, 100.0);
    check("region center latitude [deg]", c.center_lat_deg, 40.0);
    check("region center longitude [deg]", c.center_lon_deg, 116.0);
    check("TBS count M", static_cast<double>(c.num_tbs), 28);
    check("TUs per TBS V", static_cast<double>(c.tus_per_tbs), 24);
    check("LAA count U", static_cast<double>(c.num_laas), 96);
    check("LAA altitude H [m]", c.laa_altitude_m, 200.0);
    check("coverage radius [m]", c.cell_radius_m, 1000.0);
    check("carrier count K", static_cast<double>(c.num_carriers), 12);
    check("carrier frequency [Hz]", c.carrier_frequency_hz, 2e9);
    check("bandwidth B [Hz]", c.bandwidth_hz, 1e6);
    check("interval T [s]", c.interval_s, 10.0);
    check("noise power [dBm]", c.noise_power_dbm, -114.0);
    check("gamma_th [dBm]", c.gamma_th_dbm(), -126.2);
    check("satellite receive gain [dBi]", c.satellite_gain_dbi, 25.0);
    check("TBS transmit gain [dBi]", c.tbs_gain_dbi, 15.0);
    check("TU gain [dBi]", c.tu_gain_dbi, 0.0);
    check("LAA dish diameter [m]", c.laa_dish_diameter_m, 0.5);
    check("LAA min power [dBW]", c.power.laa_min_dbw, -3.0);
    check("LAA max power [dBW]", c.power.laa_max_dbw, 2.0);
    check("TBS min power [dBm]", c.power.tbs_min_dbm, 0.0);
    check("TBS max power [dBm]", c.power.tbs_max_dbm, 10.0);
    check("partial reuse factor F", c.partial_reuse_factor, 4);
    check("topology count", static_cast<double>(c.num_topologies), 10);
    return out;
}

}  // namespace skyshare
