#ifndef OPTOSWITCH_MODEL_HPP
#define OPTOSWITCH_MODEL_HPP

#include "optoswitch/types.hpp"

namespace optoswitch::model
{
struct SteadyStateOptions
{
    double rel_tol = 1e-12;
    int max_iterations = 1000;
    double damping = 0.5;
};

struct RegimeThresholds
{
    double much_greater = 10.0; // for ">>" style comparisons
    double approx_rel = 0.05;   // for "~" style comparisons
};

// g0 = omega0 * sqrt(hbar / (2 m omega_m)) / L
double bare_coupling(const PhysicalParams& phys);

// eps = sqrt(2 |kappa| P / (hbar omega)); |kappa| keeps the conversion
// defined for the gain cavity.
double amplitude_from_power(double kappa, double power, double field_freq);

// Solve the steady-state equations, including the Delta_{1,2} = Delta0 -/+
// 2 g0 Re(b_s) feedback, by damped fixed-point iteration.
SteadyState steady_state(const SystemParams& params, const DriveConfig& drive,
                         const SteadyStateOptions& opts = {});

// Convert a physical parameter set into normalized system parameters
// (G = g0 |a1s|, n = |a2s/a1s|^2). Control amplitudes are stored back into
// the returned DriveConfig of derive result via out_drive when non-null.
SystemParams derive_system_params(const PhysicalParams& phys, const DriveConfig& drive,
                                  DriveConfig* out_drive = nullptr);

// Approximate photon-number ratio n ~ eps_cR^2 (kappa1^2 + omega_m^2) /
// [eps_cL^2 (kappa2^2 + omega_m^2)]. Falls back to params.n when no control
// amplitudes are configured.
double photon_ratio_estimate(const SystemParams& params, const DriveConfig& drive);

RegimeReport validate_regime(const SystemParams& params, const SteadyState& ss,
                             const RegimeThresholds& thresholds = {});

// Gain-balanced reference configuration kappa1 = -kappa2 = gamma_m = kappa, n = 1.
SystemParams gain_balanced(double G, double kappa = 1.0);

} // namespace optoswitch::model

#endif
