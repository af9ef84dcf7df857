#include "optoswitch/delay.hpp"
#include "optoswitch/response.hpp"

#include <cmath>
#include <stdexcept>

namespace optoswitch::delay
{
Channel channel_from_name(const std::string& name)
{
    if (name == "rl") return Channel::rl;
    if (name == "tl") return Channel::tl;
    if (name == "rr") return Channel::rr;
    if (name == "tr") return Channel::tr;
    throw std::invalid_argument("unknown delay channel: " + name);
}

std::string channel_name(Channel c)
{
    switch (c)
    {
    case Channel::rl: return "rl";
    case Channel::tl: return "tl";
    case Channel::rr: return "rr";
    case Channel::tr: return "tr";
    }
    return {};
}

double channel_phase(const SystemParams& params, const DriveConfig& drive, double delta,
                     Channel channel)
{
    const bool left_ref = channel == Channel::rl || channel == Channel::tl;
    const double ref = left_ref ? drive.eps_L : drive.eps_R;
    if (!(ref > 0.0))
        throw UndefinedRatio("reference probe amplitude is zero for channel " +
                             channel_name(channel));

    const FluctuationAmps amps = response::fluctuation_amplitudes(params, drive, delta);
    const OutputFields out = response::output_fields(amps, drive, params);
    const bool left_out = channel == Channel::rl || channel == Channel::tr;
    const Complex field = left_out ? out.outL : out.outR;
    if (std::abs(field) < 1e-14 * ref)
        throw UndefinedRatio("output field numerically zero for channel " +
                             channel_name(channel));
    return std::arg(field / ref);
}

namespace
{
// Unwrap a short stencil outward from its center sample; throws PhaseJump if
// an adjacent jump stays above pi/2 after branch adjustment.
void unwrap_stencil(std::span<double> phases, std::size_t center)
{
    auto align = [](double reference, double& value) {
        while (value - reference > pi)
            value -= 2 * pi;
        while (value - reference < -pi)
            value += 2 * pi;
        if (std::abs(value - reference) > pi / 2)
            throw PhaseJump("phase jump above pi/2 inside differentiation stencil");
    };
    for (std::size_t k = center; k-- > 0;)
        align(phases[k + 1], phases[k]);
    for (std::size_t k = center + 1; k < phases.size(); ++k)
        align(phases[k - 1], phases[k]);
}
} // namespace

double group_delay(const SystemParams& params, const DriveConfig& drive, double delta,
                   Channel channel, double h)
{
    if (h <= 0.0)
        h = 1e-6 * std::abs(params.kappa1);

    const double offsets[5] = {-h, -h / 2, 0.0, h / 2, h};
    double phases[5];
    for (int k = 0; k < 5; ++k)
    {
        try
        {
            phases[k] = channel_phase(params, drive, delta + offsets[k], channel);
        }
        catch (const ResponsePole&)
        {
            throw PoleAdjacent("differentiation stencil touches a response pole");
        }
    }
    unwrap_stencil(phases, 2);

    const double coarse = (phases[4] - phases[0]) / (2 * h);
    const double fine = (phases[3] - phases[1]) / h;
    return (4 * fine - coarse) / 3;
}

void unwrap(std::span<double> phases)
{
    for (std::size_t k = 1; k < phases.size(); ++k)
    {
        const double jump = std::round((phases[k] - phases[k - 1]) / (2 * pi));
        phases[k] -= 2 * pi * jump;
    }
}

std::vector<DelayPoint> delay_spectrum(const SystemParams& params, const DriveConfig& drive,
                                       std::span<const double> grid, Channel channel)
{
    if (grid.size() < 3)
        throw std::invalid_argument("delay_spectrum needs at least 3 grid points");
    for (std::size_t k = 1; k < grid.size(); ++k)
        if (!(grid[k] > grid[k - 1]))
            throw std::invalid_argument("delay grid must be strictly increasing");

    const std::size_t count = grid.size();
    std::vector<DelayPoint> points(count);
    std::vector<double> phases(count, 0.0);
    std::vector<bool> valid(count, false);
    for (std::size_t k = 0; k < count; ++k)
    {
        points[k].delta = grid[k];
        try
        {
            phases[k] = channel_phase(params, drive, grid[k], channel);
            valid[k] = true;
        }
        catch (const ResponsePole&)
        {
            points[k].pole = true;
        }
        catch (const UndefinedRatio&)
        {
            points[k].undefined = true;
        }
    }

    // Unwrap and differentiate each contiguous valid segment.
    std::size_t seg_start = 0;
    while (seg_start < count)
    {
        if (!valid[seg_start])
        {
            ++seg_start;
            continue;
        }
        std::size_t seg_end = seg_start;
        while (seg_end + 1 < count && valid[seg_end + 1])
            ++seg_end;
        const std::size_t len = seg_end - seg_start + 1;
        unwrap(std::span<double>(phases.data() + seg_start, len));
        if (len >= 2)
        {
            for (std::size_t k = seg_start; k <= seg_end; ++k)
            {
                const std::size_t lo = k == seg_start ? k : k - 1;
                const std::size_t hi = k == seg_end ? k : k + 1;
                if (lo != hi)
                    points[k].tau = (phases[hi] - phases[lo]) / (grid[hi] - grid[lo]);
            }
        }
        seg_start = seg_end + 1;
    }
    return points;
}

} // namespace optoswitch::delay
