#include "optoswitch/selfcheck.hpp"
#include "optoswitch/oracle.hpp"
#include "optoswitch/response.hpp"

#include <cmath>

namespace optoswitch::selfcheck
{
namespace
{
double rel_dev(const FluctuationAmps& a, const FluctuationAmps& b)
{
    const double num = std::sqrt(std::norm(a.db - b.db) + std::norm(a.da1 - b.da1) +
                                 std::norm(a.da2 - b.da2));
    const double den = std::sqrt(std::norm(b.db) + std::norm(b.da1) + std::norm(b.da2));
    return den > 0.0 ? num / den : num;
}
} // namespace

Draw random_draw(std::mt19937_64& rng, bool require_stable, double min_margin)
{
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int attempt = 0; attempt < 10000; ++attempt)
    {
        Draw d;
        d.params.kappa1 = 1.0;
        d.params.gamma_m = 0.25 + 1.25 * u01(rng);
        const double k2_mag = 0.3 + 1.7 * u01(rng);
        d.params.kappa2 = u01(rng) < 0.5 ? k2_mag : -k2_mag;
        d.params.G = 2.0 * u01(rng);
        d.params.n = 4.0 * u01(rng);
        d.drive.eps_L = 0.2 + 1.8 * u01(rng);
        d.drive.eps_R = 0.2 + 1.8 * u01(rng);
        d.drive.theta = 2.0 * pi * u01(rng);
        d.delta = -2.0 + 4.0 * u01(rng);
        if (!require_stable)
            return d;
        const auto stab = oracle::system_stability(d.params);
        if (stab.stable && stab.margin >= min_margin)
            return d;
    }
    throw Error("failed to find a stable random draw");
}

TriangleResult oracle_triangle(int n_points, std::uint64_t seed, bool include_time_domain)
{
    std::mt19937_64 rng(seed);
    TriangleResult res;
    res.points = n_points;
    for (int k = 0; k < n_points; ++k)
    {
        const Draw d = random_draw(rng);
        const FluctuationAmps solved =
            oracle::solve_linear_response(d.params, d.drive, d.delta);
        const FluctuationAmps closed =
            response::fluctuation_amplitudes(d.params, d.drive, d.delta);
        res.max_dev_closed_vs_solve =
            std::max(res.max_dev_closed_vs_solve, rel_dev(closed, solved));
        if (include_time_domain)
        {
            const auto stab = oracle::system_stability(d.params);
            const double horizon = 30.0 / std::abs(stab.max_real_part);
            double rate_max = std::max(std::abs(d.delta), 1.0);
            for (const auto& ev : stab.eigenvalues)
                rate_max = std::max(rate_max, std::abs(ev));
            const double dt = 0.005 / rate_max;
            const FluctuationAmps fitted =
                oracle::integrate_time_domain(d.params, d.drive, d.delta, horizon, dt);
            res.max_dev_solve_vs_time =
                std::max(res.max_dev_solve_vs_time, rel_dev(fitted, solved));
        }
    }
    return res;
}

} // namespace optoswitch::selfcheck
