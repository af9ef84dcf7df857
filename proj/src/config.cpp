#include "optoswitch/config.hpp"
#include "optoswitch/model.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace optoswitch::config
{
namespace
{
struct Sections
{
    std::map<std::string, std::map<std::string, std::string>> data;

    bool has(const std::string& section) const { return data.count(section) > 0; }

    std::optional<std::string> get(const std::string& section, const std::string& key) const
    {
        auto s = data.find(section);
        if (s == data.end())
            return std::nullopt;
        auto k = s->second.find(key);
        if (k == s->second.end())
            return std::nullopt;
        return k->second;
    }
};

std::string trim(std::string s)
{
    s.erase(0, s.find_first_not_of(" \t\r"));
    s.erase(s.find_last_not_of(" \t\r") + 1);
    return s;
}

Sections parse_sections(const std::string& text)
{
    Sections out;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos)
            line.erase(comment);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[')
        {
            if (line.back() != ']')
                throw ConfigError("malformed section header at line " +
                                  std::to_string(line_no));
            section = trim(line.substr(1, line.size() - 2));
            out.data[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos || section.empty())
            throw ConfigError("expected 'key = value' at line " + std::to_string(line_no));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("empty key or value at line " + std::to_string(line_no));
        out.data[section][key] = value;
    }
    return out;
}

double parse_number(const std::string& value, const std::string& key)
{
    std::size_t used = 0;
    double v = 0.0;
    try
    {
        v = std::stod(value, &used);
    }
    catch (const std::exception&)
    {
        throw ConfigError("cannot parse number for '" + key + "': " + value);
    }
    if (trim(value.substr(used)).empty())
        return v;
    throw ConfigError("unexpected trailing text for '" + key + "': " + value);
}

enum class RateUnit
{
    Unset,
    Dimensionless,
    Physical
};

// Rates accept a frequency suffix (Hz/kHz/MHz, meaning 2*pi*f in rad/s) or a
// bare number in units of kappa1; the two styles must not be mixed.
double parse_rate(const std::string& value, const std::string& key, RateUnit& unit_kind)
{
    std::size_t used = 0;
    double v = 0.0;
    try
    {
        v = std::stod(value, &used);
    }
    catch (const std::exception&)
    {
        throw ConfigError("cannot parse rate for '" + key + "': " + value);
    }
    const std::string suffix = trim(value.substr(used));
    RateUnit kind = RateUnit::Dimensionless;
    if (!suffix.empty())
    {
        kind = RateUnit::Physical;
        if (suffix == "Hz")
            v *= 2 * pi;
        else if (suffix == "kHz")
            v *= 2 * pi * 1e3;
        else if (suffix == "MHz")
            v *= 2 * pi * 1e6;
        else
            throw ConfigError("unknown rate unit for '" + key + "': " + suffix);
    }
    if (unit_kind == RateUnit::Unset)
        unit_kind = kind;
    else if (unit_kind != kind)
        throw ConfigError("mixed rate units in config (key '" + key + "')");
    return v;
}

int parse_int(const std::string& value, const std::string& key)
{
    const double v = parse_number(value, key);
    if (v != std::floor(v))
        throw ConfigError("'" + key + "' must be an integer");
    return static_cast<int>(v);
}

sweep::Axis parse_axis(const std::string& value, const std::string& key)
{
    std::istringstream in(value);
    sweep::Axis axis;
    std::string tok;
    std::vector<std::string> toks;
    while (std::getline(in, tok, ','))
        toks.push_back(trim(tok));
    if (toks.size() != 4)
        throw ConfigError("'" + key + "' expects 'name,min,max,count'");
    axis.name = toks[0];
    axis.min = parse_number(toks[1], key);
    axis.max = parse_number(toks[2], key);
    axis.count = parse_int(toks[3], key);
    return axis;
}
} // namespace

RunConfig parse_config_text(const std::string& text)
{
    const Sections sec = parse_sections(text);
    RunConfig cfg;

    const bool direct = sec.has("params");
    const bool physical = sec.has("physical");
    if (direct == physical)
        throw ConfigError("exactly one of [params] or [physical] must be present");

    RateUnit unit_kind = RateUnit::Unset;
    if (direct)
    {
        cfg.style = RunConfig::Style::Direct;
        auto rate = [&](const char* key, double fallback) {
            auto v = sec.get("params", key);
            return v ? parse_rate(*v, key, unit_kind) : fallback;
        };
        cfg.params.kappa1 = rate("kappa1", 1.0);
        cfg.params.kappa2 = rate("kappa2", -cfg.params.kappa1);
        cfg.params.gamma_m = rate("gamma_m", cfg.params.kappa1);
        cfg.params.G = rate("G", 0.0);
        cfg.params.g0 = rate("g0", 0.0);
        cfg.params.omega_m = rate("omega_m", cfg.params.kappa1 * 947.0 / 215.0);
        auto d0 = sec.get("params", "Delta0");
        cfg.params.Delta0 =
            d0 ? parse_rate(*d0, "Delta0", unit_kind) : cfg.params.omega_m;
        if (auto v = sec.get("params", "n"))
            cfg.params.n = parse_number(*v, "n");
        if (!(cfg.params.kappa1 > 0.0))
            throw ConfigError("kappa1 must be > 0");
        if (cfg.params.G < 0.0 || cfg.params.n < 0.0)
            throw ConfigError("G and n must be >= 0");

        // normalize to kappa1
        cfg.kappa_ref = unit_kind == RateUnit::Physical ? cfg.params.kappa1 : 1.0;
        const double k = cfg.params.kappa1;
        cfg.params.kappa1 = 1.0;
        cfg.params.kappa2 /= k;
        cfg.params.gamma_m /= k;
        cfg.params.G /= k;
        cfg.params.g0 /= k;
        cfg.params.omega_m /= k;
        cfg.params.Delta0 /= k;
    }
    else
    {
        cfg.style = RunConfig::Style::Physical;
        PhysicalParams phys;
        auto rate = [&](const char* key, double fallback) {
            auto v = sec.get("physical", key);
            if (!v)
                return fallback;
            RateUnit local = RateUnit::Physical; // physical style requires units
            return parse_rate(*v, key, local);
        };
        auto number = [&](const char* key, double fallback) {
            auto v = sec.get("physical", key);
            return v ? parse_number(*v, key) : fallback;
        };
        phys.cavity_length = number("L", phys.cavity_length);
        phys.mass = number("mass", phys.mass);
        phys.decay_left = rate("kappa1", phys.decay_left);
        phys.decay_right = rate("kappa2", phys.decay_right);
        phys.mech_damping = rate("gamma_m", phys.mech_damping);
        phys.mech_freq = rate("omega_m", phys.mech_freq);
        const double lambda = number("lambda", 1064e-9);
        phys.control_freq = 2 * pi * speed_of_light / lambda;
        phys.cavity_freq = phys.control_freq + phys.mech_freq;
        phys.control_power_left = number("P1", 0.0);
        phys.control_power_right = number("P2", 0.0);
        phys.probe_power_left = number("wp1", 0.0);
        phys.probe_power_right = number("wp2", 0.0);
        cfg.physical = phys;
    }

    if (sec.has("drive"))
    {
        auto number = [&](const char* key, double fallback) {
            auto v = sec.get("drive", key);
            return v ? parse_number(*v, key) : fallback;
        };
        cfg.drive.eps_L = number("eps_L", 1.0);
        cfg.drive.eps_R = number("eps_R", 1.0);
        cfg.drive.theta = number("theta", 0.0);
        if (auto v = sec.get("drive", "eps_cL"))
            cfg.drive.eps_cL = parse_number(*v, "eps_cL");
        if (auto v = sec.get("drive", "eps_cR"))
            cfg.drive.eps_cR = parse_number(*v, "eps_cR");
        if (cfg.drive.eps_L < 0.0 || cfg.drive.eps_R < 0.0)
            throw ConfigError("probe amplitudes must be >= 0");
    }

    if (cfg.style == RunConfig::Style::Physical)
    {
        DriveConfig resolved;
        cfg.params = model::derive_system_params(*cfg.physical, cfg.drive, &resolved);
        cfg.drive = resolved;
        cfg.kappa_ref = cfg.physical->decay_left;
        const double k = cfg.params.kappa1;
        // keep the steady amplitudes invariant under the rate rescaling
        if (cfg.drive.eps_cL)
            *cfg.drive.eps_cL /= k;
        if (cfg.drive.eps_cR)
            *cfg.drive.eps_cR /= k;
        cfg.params.kappa1 = 1.0;
        cfg.params.kappa2 /= k;
        cfg.params.gamma_m /= k;
        cfg.params.G /= k;
        cfg.params.g0 /= k;
        cfg.params.omega_m /= k;
        cfg.params.Delta0 /= k;
    }

    if (sec.has("run"))
    {
        if (auto v = sec.get("run", "mode"))
            cfg.mode = *v;
        if (auto v = sec.get("run", "delta_min"))
            cfg.delta_min = parse_number(*v, "delta_min");
        if (auto v = sec.get("run", "delta_max"))
            cfg.delta_max = parse_number(*v, "delta_max");
        if (auto v = sec.get("run", "points"))
            cfg.points = parse_int(*v, "points");
        if (auto v = sec.get("run", "channel"))
            cfg.channel = *v;
        if (auto v = sec.get("run", "figure"))
            cfg.figure_id = *v;
        if (auto v = sec.get("run", "selfcheck_points"))
            cfg.selfcheck_points = parse_int(*v, "selfcheck_points");
        if (auto v = sec.get("run", "seed"))
            cfg.seed = static_cast<std::uint64_t>(parse_number(*v, "seed"));
    }
    if (cfg.points < 2)
        throw ConfigError("points must be >= 2");
    if (!(cfg.delta_max > cfg.delta_min))
        throw ConfigError("delta_max must exceed delta_min");

    if (sec.has("sweep"))
    {
        sweep::SweepSpec spec;
        auto a1 = sec.get("sweep", "axis1");
        if (!a1)
            throw ConfigError("[sweep] requires axis1");
        spec.axis1 = parse_axis(*a1, "axis1");
        if (auto a2 = sec.get("sweep", "axis2"))
            spec.axis2 = parse_axis(*a2, "axis2");
        auto obs = sec.get("sweep", "observables");
        if (!obs)
            throw ConfigError("[sweep] requires observables");
        std::istringstream in(*obs);
        std::string tok;
        while (std::getline(in, tok, ','))
            spec.observables.push_back(trim(tok));
        spec.fixed = {{"kappa1", cfg.params.kappa1}, {"kappa2", cfg.params.kappa2},
                      {"gamma_m", cfg.params.gamma_m}, {"n", cfg.params.n},
                      {"G", cfg.params.G},           {"theta", cfg.drive.theta},
                      {"eps_L", cfg.drive.eps_L},    {"eps_R", cfg.drive.eps_R},
                      {"delta", 0.0}};
        cfg.sweep_spec = spec;
    }

    if (sec.has("output"))
    {
        if (auto v = sec.get("output", "path"))
            cfg.out_path = *v;
        if (auto v = sec.get("output", "format"))
            cfg.format = *v;
        if (auto v = sec.get("output", "precision"))
            cfg.precision = parse_int(*v, "precision");
    }
    if (cfg.format != "csv" && cfg.format != "json")
        throw ConfigError("output format must be csv or json");
    if (cfg.precision < 1 || cfg.precision > 17)
        throw ConfigError("precision must be in [1, 17]");
    return cfg;
}

RunConfig parse_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

} // namespace optoswitch::config
