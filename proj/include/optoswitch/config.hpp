#ifndef OPTOSWITCH_CONFIG_HPP
#define OPTOSWITCH_CONFIG_HPP

#include "optoswitch/sweep.hpp"
#include "optoswitch/types.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace optoswitch::config
{
struct ConfigError : Error
{
    using Error::Error;
};

// Parsed and resolved run configuration. Rates are normalized to kappa1 at
// the parse boundary regardless of the input unit style.
struct RunConfig
{
    enum class Style
    {
        Direct,
        Physical
    };
    Style style = Style::Direct;

    SystemParams params;
    DriveConfig drive;
    std::optional<PhysicalParams> physical;
    double kappa_ref = 1.0; // rad/s value of kappa1, 1.0 for dimensionless input

    std::string mode = "spectrum";
    double delta_min = -5.0;
    double delta_max = 5.0;
    int points = 1001;
    std::string channel = "rl";
    std::string figure_id;
    std::optional<sweep::SweepSpec> sweep_spec;
    int selfcheck_points = 200;
    std::uint64_t seed = 12345;

    std::string out_path;
    std::string format = "csv";
    int precision = 12;
};

RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);

} // namespace optoswitch::config

#endif
