#ifndef OPTOSWITCH_RESPONSE_HPP
#define OPTOSWITCH_RESPONSE_HPP

#include "optoswitch/types.hpp"

#include <optional>
#include <span>
#include <vector>

namespace optoswitch::response
{
// |F1 + F2| below this value counts as a response pole (normalized: the
// denominator carries three powers of rate).
inline double pole_threshold(const SystemParams& params)
{
    const double k = std::abs(params.kappa1);
    return 1e-12 * k * k * k;
}

// Closed-form Stokes fluctuation amplitudes at probe detuning delta.
FluctuationAmps fluctuation_amplitudes(const SystemParams& params, const DriveConfig& drive,
                                       double delta);

// Input-output relations: outL = 2 kappa1 da1 - eps_L, outR = 2 kappa2 da2 - eps_R e^{i theta}.
OutputFields output_fields(const FluctuationAmps& amps, const DriveConfig& drive,
                           const SystemParams& params);

// All defined reflection/transmission rates and output phases at one detuning.
TransportResult transport_coefficients(const SystemParams& params, const DriveConfig& drive,
                                       double delta);

struct SpectrumPoint
{
    double delta = 0.0;
    bool pole = false;
    std::optional<TransportResult> value;
};

// Vectorized transport over an ordered detuning grid; pole points are kept
// as markers, never dropped.
std::vector<SpectrumPoint> spectrum(const SystemParams& params, const DriveConfig& drive,
                                    std::span<const double> grid);

// Evenly spaced grid helper, endpoints inclusive.
std::vector<double> linspace(double lo, double hi, int count);

} // namespace optoswitch::response

#endif
