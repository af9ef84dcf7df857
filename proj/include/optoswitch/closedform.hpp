#ifndef OPTOSWITCH_CLOSEDFORM_HPP
#define OPTOSWITCH_CLOSEDFORM_HPP

#include "optoswitch/types.hpp"

#include <utility>

namespace optoswitch::closedform
{
// The three analytic special cases. All require the gain-balanced condition
// kappa1 = -kappa2 = gamma_m = kappa with n = 1.
enum class CaseId
{
    SingleProbe,   // eps_R = 0
    FIPR,          // eps_L = eps_R, theta = pi
    PhaseResonant, // eps_L = eps_R, delta = 0
};

struct RT
{
    double R = 0.0;
    double T = 0.0;
};

// (params, drive) satisfying a case condition, for cross-checks against the
// general solver.
std::pair<SystemParams, DriveConfig> case_setup(CaseId id, double G, double kappa = 1.0,
                                                double theta = 0.0);

bool satisfies(CaseId id, const SystemParams& params, const DriveConfig& drive,
               double rel_tol = 1e-12);

// Single left probe: R_L = R_l, T_L = T_l.
RT single_probe_RT(double G, double kappa, double delta);

// Balanced probes with theta = pi: R_L = 1 identically, T_L from the cubic ratio.
RT fipr_RT(double G, double kappa, double delta);

// Balanced resonant probes (delta = 0), arbitrary theta.
RT phase_resonant_RT(double G, double kappa, double theta);

} // namespace optoswitch::closedform

#endif
