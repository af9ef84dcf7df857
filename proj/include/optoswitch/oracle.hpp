#ifndef OPTOSWITCH_ORACLE_HPP
#define OPTOSWITCH_ORACLE_HPP

#include "optoswitch/types.hpp"

#include <Eigen/Dense>

#include <array>
#include <utility>
#include <vector>

namespace optoswitch::oracle
{
// Linearized system matrix over the fixed state order (db, da1, da2).
Eigen::Matrix3cd system_matrix(const SystemParams& params);

// Drive vector (0, eps_L, eps_R e^{i theta}).
Eigen::Vector3cd drive_vector(const DriveConfig& drive);

struct StabilityReport
{
    std::array<Complex, 3> eigenvalues{};
    double max_real_part = 0.0;
    bool stable = false;
    double margin = 0.0; // |max_real_part| / kappa1
};

// Generic complex 3x3 solve of (-i delta I - A) x = d; shares no algebra with
// the closed-form response path.
FluctuationAmps solve_linear_response(const SystemParams& params, const DriveConfig& drive,
                                      double delta);

StabilityReport system_stability(const SystemParams& params);

// Fixed-step RK4 integration of x' = A x + d e^{-i delta t} from rest, then a
// harmonic fit over the final quarter of the horizon. horizon/dt <= 0 pick
// defaults from the stability report.
FluctuationAmps integrate_time_domain(const SystemParams& params, const DriveConfig& drive,
                                      double delta, double horizon = 0.0, double dt = 0.0);

// Stable intervals of G in [g_min, g_max], located by scan + bisection on
// max_real_part. Empty when no stable G exists.
std::vector<std::pair<double, double>> stable_g_window(SystemParams params, double g_min,
                                                       double g_max, int samples = 512);

} // namespace optoswitch::oracle

#endif
