#ifndef OPTOSWITCH_SWEEP_HPP
#define OPTOSWITCH_SWEEP_HPP

#include "optoswitch/types.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace optoswitch::sweep
{
inline constexpr const char* tool_version = "optoswitch 1.0.0";

struct Axis
{
    std::string name; // one of: delta, G, theta, n, kappa2, gamma_m, eps_ratio
    double min = 0.0;
    double max = 0.0;
    int count = 0;
};

struct SweepSpec
{
    Axis axis1;
    std::optional<Axis> axis2;
    // Remaining parameters: kappa1, kappa2, gamma_m, n, G, theta, eps_L,
    // eps_R, delta (those not provided fall back to documented defaults).
    std::map<std::string, double> fixed;
    // Subset of {R_l, T_l, R_r, T_r, tau_rl, tau_tl, tau_rr, tau_tr}.
    std::vector<std::string> observables;
};

struct Dataset
{
    std::vector<std::string> columns; // "name[unit]" tokens
    std::vector<std::vector<double>> rows;
    std::map<std::string, std::string> metadata;
};

// Grid evaluation with deterministic row order (axis2 fastest). Pole or
// undefined points become sentinel-flag rows, never omissions.
Dataset run_sweep(const SweepSpec& spec);

// Parameter bindings behind the published figure panels. grid_points <= 0
// keeps the defaults (1001 per 1D axis, 51x51 for surfaces).
Dataset figure_dataset(const std::string& figure_id, int grid_points = 0);

const std::vector<std::string>& figure_ids();

} // namespace optoswitch::sweep

#endif
