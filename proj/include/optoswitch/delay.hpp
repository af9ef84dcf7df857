#ifndef OPTOSWITCH_DELAY_HPP
#define OPTOSWITCH_DELAY_HPP

#include "optoswitch/types.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace optoswitch::delay
{
enum class Channel
{
    rl, // left reflection
    tl, // left transmission
    rr, // right reflection
    tr, // right transmission
};

Channel channel_from_name(const std::string& name);
std::string channel_name(Channel c);

// Output phase of one channel at one detuning. Throws UndefinedRatio when the
// reference probe is off or the output field is numerically zero.
double channel_phase(const SystemParams& params, const DriveConfig& drive, double delta,
                     Channel channel);

// Group delay d(theta)/d(delta) by a Richardson-refined central difference on
// the unwrapped phase. h <= 0 picks the default 1e-6 * kappa1.
double group_delay(const SystemParams& params, const DriveConfig& drive, double delta,
                   Channel channel, double h = 0.0);

struct DelayPoint
{
    double delta = 0.0;
    std::optional<double> tau;
    bool pole = false;
    bool undefined = false;
};

// Phase sampled over the grid, globally unwrapped, then centrally
// differentiated. Grid must be strictly increasing.
std::vector<DelayPoint> delay_spectrum(const SystemParams& params, const DriveConfig& drive,
                                       std::span<const double> grid, Channel channel);

// In-place 2*pi unwrap; idempotent on already-unwrapped input.
void unwrap(std::span<double> phases);

} // namespace optoswitch::delay

#endif
