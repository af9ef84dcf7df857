#include "optoswitch/oracle.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace optoswitch::oracle
{
Eigen::Matrix3cd system_matrix(const SystemParams& params)
{
    const Complex i(0.0, 1.0);
    const double G = params.G;
    const double Gr = G * std::sqrt(params.n); // coupling to the right cavity
    Eigen::Matrix3cd A;
    A << -params.gamma_m, i * G, -i * Gr,
         i * G, -params.kappa1, 0.0,
         -i * Gr, 0.0, -params.kappa2;
    return A;
}

Eigen::Vector3cd drive_vector(const DriveConfig& drive)
{
    const Complex i(0.0, 1.0);
    Eigen::Vector3cd d;
    d << 0.0, drive.eps_L, drive.eps_R * std::exp(i * drive.theta);
    return d;
}

FluctuationAmps solve_linear_response(const SystemParams& params, const DriveConfig& drive,
                                      double delta)
{
    const Complex i(0.0, 1.0);
    const Eigen::Matrix3cd A = system_matrix(params);
    const Eigen::Matrix3cd M = -i * delta * Eigen::Matrix3cd::Identity() - A;
    Eigen::PartialPivLU<Eigen::Matrix3cd> lu(M);
    const double pivot_floor = 1e-14 * M.norm();
    if (std::abs(lu.matrixLU().diagonal().cwiseAbs().minCoeff()) < pivot_floor)
        throw SingularSystem("linear-response matrix pivot below 1e-14 of matrix norm");
    const Eigen::Vector3cd x = lu.solve(drive_vector(drive));
    return {x(0), x(1), x(2), delta};
}

StabilityReport system_stability(const SystemParams& params)
{
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> solver(system_matrix(params), false);
    StabilityReport rep;
    rep.max_real_part = -INFINITY;
    for (int k = 0; k < 3; ++k)
    {
        rep.eigenvalues[static_cast<std::size_t>(k)] = solver.eigenvalues()(k);
        rep.max_real_part = std::max(rep.max_real_part, solver.eigenvalues()(k).real());
    }
    rep.stable = rep.max_real_part < 0.0;
    rep.margin = std::abs(rep.max_real_part) / std::abs(params.kappa1);
    return rep;
}

FluctuationAmps integrate_time_domain(const SystemParams& params, const DriveConfig& drive,
                                      double delta, double horizon, double dt)
{
    const StabilityReport stab = system_stability(params);
    if (!stab.stable)
        throw UnstableSystem("time-domain integration requires a stable system matrix");

    const double decay = -stab.max_real_part;
    double rate_max = std::max(std::abs(delta), std::abs(params.kappa1));
    for (const auto& ev : stab.eigenvalues)
        rate_max = std::max(rate_max, std::abs(ev));

    if (horizon <= 0.0)
        horizon = 40.0 / decay;
    else if (horizon < 10.0 / decay)
        throw std::invalid_argument("horizon must be at least 10/|max_real_part|");
    if (dt <= 0.0)
        dt = 0.01 / rate_max;
    else if (dt > 0.01 / rate_max)
        throw std::invalid_argument("dt exceeds 0.01/max rate");

    const Complex i(0.0, 1.0);
    const Eigen::Matrix3cd A = system_matrix(params);
    const Eigen::Vector3cd d = drive_vector(drive);

    const long n_steps = static_cast<long>(std::ceil(horizon / dt));
    dt = horizon / static_cast<double>(n_steps);

    // Fit window: final quarter of the horizon, trimmed to whole drive
    // periods when delta != 0.
    double window = horizon / 4.0;
    if (delta != 0.0)
    {
        const double period = 2.0 * pi / std::abs(delta);
        const double whole = std::floor(window / period) * period;
        if (whole >= period)
            window = whole;
    }
    const double fit_start = horizon - window;

    auto rhs = [&](const Eigen::Vector3cd& x, double t) -> Eigen::Vector3cd {
        return A * x + d * std::exp(-i * delta * t);
    };

    Eigen::Vector3cd x = Eigen::Vector3cd::Zero();
    Eigen::Vector3cd proj = Eigen::Vector3cd::Zero();
    double power = 0.0;
    long n_fit = 0;

    for (long k = 0; k < n_steps; ++k)
    {
        const double t = k * dt;
        const Eigen::Vector3cd k1 = rhs(x, t);
        const Eigen::Vector3cd k2 = rhs(x + 0.5 * dt * k1, t + 0.5 * dt);
        const Eigen::Vector3cd k3 = rhs(x + 0.5 * dt * k2, t + 0.5 * dt);
        const Eigen::Vector3cd k4 = rhs(x + dt * k3, t + dt);
        x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        const double t_next = t + dt;
        if (t_next >= fit_start)
        {
            proj += x * std::exp(i * delta * t_next);
            power += x.squaredNorm();
            ++n_fit;
        }
    }
    if (n_fit < 8)
        throw std::invalid_argument("fit window too short for the chosen dt");

    const Eigen::Vector3cd amp = proj / static_cast<double>(n_fit);
    const double mean_power = power / static_cast<double>(n_fit);
    const double residual2 = std::max(0.0, mean_power - amp.squaredNorm());
    const double scale = amp.norm();
    if (scale > 0.0 && std::sqrt(residual2) > 1e-4 * scale)
        throw TransientNotDecayed("harmonic fit residual above 1e-4 of amplitude");

    return {amp(0), amp(1), amp(2), delta};
}

std::vector<std::pair<double, double>> stable_g_window(SystemParams params, double g_min,
                                                       double g_max, int samples)
{
    auto max_re = [&](double g) {
        params.G = g;
        return system_stability(params).max_real_part;
    };
    auto bisect = [&](double lo, double hi) {
        for (int it = 0; it < 80; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            if ((max_re(lo) < 0.0) == (max_re(mid) < 0.0))
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    };

    std::vector<std::pair<double, double>> intervals;
    const double step = (g_max - g_min) / (samples - 1);
    bool in_stable = max_re(g_min) < 0.0;
    double start = g_min;
    double prev = g_min;
    for (int k = 1; k < samples; ++k)
    {
        const double g = g_min + k * step;
        const bool stable = max_re(g) < 0.0;
        if (stable != in_stable)
        {
            const double crossing = bisect(prev, g);
            if (in_stable)
                intervals.emplace_back(start, crossing);
            else
                start = crossing;
            in_stable = stable;
        }
        prev = g;
    }
    if (in_stable)
        intervals.emplace_back(start, g_max);
    return intervals;
}

} // namespace optoswitch::oracle
