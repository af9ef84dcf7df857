#include "optoswitch/response.hpp"

#include <cmath>
#include <stdexcept>

namespace optoswitch::response
{
FluctuationAmps fluctuation_amplitudes(const SystemParams& params, const DriveConfig& drive,
                                       double delta)
{
    const Complex i(0.0, 1.0);
    const double G = params.G;
    const double r = std::sqrt(params.n); // steady amplitude ratio a2s/a1s
    const Complex k1 = Complex(params.kappa1, -delta);
    const Complex k2 = Complex(params.kappa2, -delta);
    const Complex gm = Complex(params.gamma_m, -delta);
    const Complex epsL = drive.eps_L;
    const Complex epsR = drive.eps_R * std::exp(i * drive.theta);

    const Complex F1 = gm * k1 * k2;
    const Complex F2 = G * G * (params.n * k1 + k2);
    const Complex denom = F1 + F2;
    if (std::abs(denom) < pole_threshold(params))
        throw ResponsePole("response denominator |F1+F2| below pole threshold");

    FluctuationAmps amps;
    amps.delta = delta;
    amps.db = -i * G * (r * epsR * k1 - epsL * k2) / denom;
    amps.da1 = (G * G * (r * epsR + params.n * epsL) + epsL * gm * k2) / denom;
    amps.da2 = (G * G * (epsR + r * epsL) + epsR * gm * k1) / denom;
    return amps;
}

OutputFields output_fields(const FluctuationAmps& amps, const DriveConfig& drive,
                           const SystemParams& params)
{
    const Complex i(0.0, 1.0);
    OutputFields out;
    out.outL = 2.0 * params.kappa1 * amps.da1 - drive.eps_L;
    out.outR = 2.0 * params.kappa2 * amps.da2 - drive.eps_R * std::exp(i * drive.theta);
    return out;
}

TransportResult transport_coefficients(const SystemParams& params, const DriveConfig& drive,
                                       double delta)
{
    if (!(drive.eps_L > 0.0) && !(drive.eps_R > 0.0))
        throw UndefinedRatio("at least one probe amplitude must be > 0");

    const FluctuationAmps amps = fluctuation_amplitudes(params, drive, delta);
    const OutputFields out = output_fields(amps, drive, params);

    TransportResult res;
    res.delta = delta;
    if (drive.eps_L > 0.0)
    {
        const Complex rl = out.outL / drive.eps_L;
        const Complex tl = out.outR / drive.eps_L;
        res.R_l = std::norm(rl);
        res.T_l = std::norm(tl);
        res.theta_rl = std::arg(rl);
        res.theta_tl = std::arg(tl);
    }
    if (drive.eps_R > 0.0)
    {
        const Complex rr = out.outR / drive.eps_R;
        const Complex tr = out.outL / drive.eps_R;
        res.R_r = std::norm(rr);
        res.T_r = std::norm(tr);
        res.theta_rr = std::arg(rr);
        res.theta_tr = std::arg(tr);
    }
    return res;
}

std::vector<SpectrumPoint> spectrum(const SystemParams& params, const DriveConfig& drive,
                                    std::span<const double> grid)
{
    if (grid.empty())
        throw std::invalid_argument("spectrum grid must be nonempty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("spectrum grid must be strictly increasing");

    std::vector<SpectrumPoint> points(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        points[i].delta = grid[i];
        try
        {
            points[i].value = transport_coefficients(params, drive, grid[i]);
        }
        catch (const ResponsePole&)
        {
            points[i].pole = true;
        }
    }
    return points;
}

std::vector<double> linspace(double lo, double hi, int count)
{
    if (count < 2)
        throw std::invalid_argument("linspace needs at least 2 points");
    std::vector<double> g(static_cast<std::size_t>(count));
    const double step = (hi - lo) / (count - 1);
    for (int i = 0; i < count; ++i)
        g[static_cast<std::size_t>(i)] = lo + step * i;
    g.back() = hi;
    return g;
}

} // namespace optoswitch::response
