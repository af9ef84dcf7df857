#ifndef OPTOSWITCH_SELFCHECK_HPP
#define OPTOSWITCH_SELFCHECK_HPP

#include "optoswitch/types.hpp"

#include <cstdint>
#include <random>

namespace optoswitch::selfcheck
{
struct Draw
{
    SystemParams params;
    DriveConfig drive;
    double delta = 0.0;
};

// Random parameter point; when require_stable is set, redraws until the
// system matrix is stable with margin >= min_margin (needed for a bounded
// time-domain horizon).
Draw random_draw(std::mt19937_64& rng, bool require_stable = true,
                 double min_margin = 0.2);

struct TriangleResult
{
    int points = 0;
    double max_dev_closed_vs_solve = 0.0;
    double max_dev_solve_vs_time = 0.0;
};

// Cross-validates the closed-form response, the generic linear solve and the
// time-domain fit over randomized stable draws.
TriangleResult oracle_triangle(int n_points, std::uint64_t seed,
                               bool include_time_domain = true);

} // namespace optoswitch::selfcheck

#endif
