#ifndef OPTOSWITCH_TYPES_HPP
#define OPTOSWITCH_TYPES_HPP

#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace optoswitch
{
using Complex = std::complex<double>;

inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double speed_of_light = 299792458.0; // m/s
inline constexpr double pi = std::numbers::pi;

// Rates and couplings of the linearized three-mode system. All values are
// angular frequencies; the library does not care about the absolute scale,
// so the natural choice is kappa1 = 1 (everything in units of kappa).
// kappa2 < 0 represents gain of the active cavity.
struct SystemParams
{
    double kappa1 = 1.0;
    double kappa2 = -1.0;
    double gamma_m = 1.0;
    double omega_m = 947.0 / 215.0; // ratio from the reference parameter set
    double g0 = 0.0;                // bare optomechanical coupling (0 = unspecified)
    double G = 0.0;                 // effective coupling rate, >= 0
    double n = 1.0;                 // intracavity photon-number ratio |a2s/a1s|^2
    double Delta0 = 947.0 / 215.0;  // cavity-control detuning, defaults to omega_m
};

// Probe drives. Amplitudes are real and non-negative; theta is the relative
// phase of the right probe. Control amplitudes are only needed when deriving
// (G, n) from a physical configuration.
struct DriveConfig
{
    double eps_L = 1.0;
    double eps_R = 1.0;
    double theta = 0.0;
    std::optional<double> eps_cL;
    std::optional<double> eps_cR;
};

// Physical description of the device; converted once at the boundary.
struct PhysicalParams
{
    double cavity_length = 25e-3;      // m
    double mass = 145e-12;             // kg
    double cavity_freq = 0.0;          // rad/s, omega_0
    double mech_freq = 2 * pi * 947e3; // rad/s, omega_m
    double control_freq = 0.0;         // rad/s, omega_c
    double decay_left = 2 * pi * 215e3;  // rad/s, kappa1 > 0
    double decay_right = -2 * pi * 215e3; // rad/s, signed
    double mech_damping = 2 * pi * 215e3; // rad/s, gamma_m > 0
    double control_power_left = 0.0;   // W
    double control_power_right = 0.0;  // W
    double probe_power_left = 0.0;     // W
    double probe_power_right = 0.0;    // W
};

struct SteadyState
{
    Complex b_s;
    Complex a1s;
    Complex a2s;
    double Delta1 = 0.0;
    double Delta2 = 0.0;
};

struct RegimeCheck
{
    bool ok = false;
    double margin = 0.0;
};

struct RegimeReport
{
    RegimeCheck resolved_sideband; // omega_m / max|kappa|
    RegimeCheck high_Q;            // Q = omega_m / gamma_m
    RegimeCheck rwa_left;          // omega_m / (g0 |a1s|)
    RegimeCheck rwa_right;         // omega_m / (g0 |a2s|)
    RegimeCheck red_detuned_left;  // |Delta1 - omega_m| / omega_m
    RegimeCheck red_detuned_right; // |Delta2 - omega_m| / omega_m
    RegimeCheck ratio_term_negligible; // 2 g0 Re(b_s) / Delta0
};

struct FluctuationAmps
{
    Complex db;  // delta b_+
    Complex da1; // delta a_1+
    Complex da2; // delta a_2+
    double delta = 0.0;
};

struct OutputFields
{
    Complex outL; // eps_outL+
    Complex outR; // eps_outR+
};

// Intensity ratios and output phases at one probe detuning. Entries whose
// reference probe is off are absent, never zero.
struct TransportResult
{
    std::optional<double> R_l, T_l, R_r, T_r;
    std::optional<double> theta_rl, theta_tl, theta_rr, theta_tr;
    double delta = 0.0;
};

struct Error : std::runtime_error
{
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonPositiveParameter : Error { using Error::Error; };
struct SteadyStateDivergence : Error { using Error::Error; };
struct SingularCavityResponse : Error { using Error::Error; };
struct ResponsePole : Error { using Error::Error; };
struct UndefinedRatio : Error { using Error::Error; };
struct PoleAdjacent : Error { using Error::Error; };
struct PhaseJump : Error { using Error::Error; };
struct SingularSystem : Error { using Error::Error; };
struct UnstableSystem : Error { using Error::Error; };
struct TransientNotDecayed : Error { using Error::Error; };
struct UnknownFigure : Error { using Error::Error; };

// Reduce an angle to [0, 2*pi).
inline double wrap_two_pi(double angle)
{
    double a = std::fmod(angle, 2 * pi);
    if (a < 0)
        a += 2 * pi;
    return a;
}

} // namespace optoswitch

#endif
