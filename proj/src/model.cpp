#include "optoswitch/model.hpp"

#include <cmath>
#include <sstream>

namespace optoswitch::model
{
namespace
{
void require_positive(double value, const char* name)
{
    if (!(value > 0.0))
    {
        std::ostringstream oss;
        oss << name << " must be > 0, got " << value;
        throw NonPositiveParameter(oss.str());
    }
}
} // namespace

double bare_coupling(const PhysicalParams& phys)
{
    require_positive(phys.cavity_length, "cavity_length");
    require_positive(phys.mass, "mass");
    require_positive(phys.cavity_freq, "cavity_freq");
    require_positive(phys.mech_freq, "mech_freq");
    return phys.cavity_freq * std::sqrt(hbar / (2.0 * phys.mass * phys.mech_freq)) /
           phys.cavity_length;
}

double amplitude_from_power(double kappa, double power, double field_freq)
{
    if (power < 0.0)
        throw NonPositiveParameter("power must be >= 0");
    require_positive(field_freq, "field frequency");
    return std::sqrt(2.0 * std::abs(kappa) * power / (hbar * field_freq));
}

SteadyState steady_state(const SystemParams& params, const DriveConfig& drive,
                         const SteadyStateOptions& opts)
{
    require_positive(params.gamma_m, "gamma_m");
    const double eps_cL = drive.eps_cL.value_or(0.0);
    const double eps_cR = drive.eps_cR.value_or(0.0);

    const Complex mech_denom(params.gamma_m, params.omega_m);

    auto evaluate = [&](double re_bs, SteadyState& out) {
        out.Delta1 = params.Delta0 - 2.0 * params.g0 * re_bs;
        out.Delta2 = params.Delta0 + 2.0 * params.g0 * re_bs;
        const Complex d1(params.kappa1, out.Delta1);
        const Complex d2(params.kappa2, out.Delta2);
        if (std::abs(d2) < 1e-15 * params.omega_m || std::abs(d1) < 1e-15 * params.omega_m)
            throw SingularCavityResponse("cavity response denominator below 1e-15 * omega_m");
        out.a1s = eps_cL / d1;
        out.a2s = eps_cR / d2;
        out.b_s = -Complex(0.0, params.g0) * (std::norm(out.a2s) - std::norm(out.a1s)) /
                  mech_denom;
    };

    SteadyState ss;
    double re_bs = 0.0;
    const double scale = std::max({std::abs(eps_cL), std::abs(eps_cR), params.omega_m});
    for (int it = 0; it < opts.max_iterations; ++it)
    {
        evaluate(re_bs, ss);
        const double next = ss.b_s.real();
        const double change = std::abs(next - re_bs);
        if (change <= opts.rel_tol * std::max(std::abs(next), scale * 1e-3))
        {
            // one final evaluation at the converged point
            re_bs = next;
            evaluate(re_bs, ss);
            return ss;
        }
        re_bs = (1.0 - opts.damping) * re_bs + opts.damping * next;
    }
    throw SteadyStateDivergence("steady-state fixed point did not converge");
}

SystemParams derive_system_params(const PhysicalParams& phys, const DriveConfig& drive,
                                  DriveConfig* out_drive)
{
    require_positive(phys.decay_left, "decay_left");
    require_positive(phys.mech_damping, "mech_damping");
    require_positive(phys.mech_freq, "mech_freq");
    const double g0 = bare_coupling(phys);

    SystemParams params;
    params.kappa1 = phys.decay_left;
    params.kappa2 = phys.decay_right;
    params.gamma_m = phys.mech_damping;
    params.omega_m = phys.mech_freq;
    params.g0 = g0;
    params.Delta0 = phys.mech_freq; // red-detuned sideband default

    DriveConfig full = drive;
    if (!full.eps_cL)
        full.eps_cL = amplitude_from_power(phys.decay_left, phys.control_power_left,
                                           phys.control_freq);
    if (!full.eps_cR)
        full.eps_cR = amplitude_from_power(phys.decay_right, phys.control_power_right,
                                           phys.control_freq);

    const SteadyState ss = steady_state(params, full);
    const double a1 = std::abs(ss.a1s);
    params.G = g0 * a1;
    params.n = a1 > 0.0 ? std::norm(ss.a2s / ss.a1s) : 0.0;
    if (out_drive)
        *out_drive = full;
    return params;
}

double photon_ratio_estimate(const SystemParams& params, const DriveConfig& drive)
{
    if (!drive.eps_cL || !drive.eps_cR)
        return params.n;
    const double num = *drive.eps_cR * *drive.eps_cR *
                       (params.kappa1 * params.kappa1 + params.omega_m * params.omega_m);
    const double den = *drive.eps_cL * *drive.eps_cL *
                       (params.kappa2 * params.kappa2 + params.omega_m * params.omega_m);
    return num / den;
}

RegimeReport validate_regime(const SystemParams& params, const SteadyState& ss,
                             const RegimeThresholds& th)
{
    RegimeReport rep;
    const double kmax = std::max(std::abs(params.kappa1), std::abs(params.kappa2));
    rep.resolved_sideband.margin = kmax > 0 ? params.omega_m / kmax : INFINITY;
    rep.resolved_sideband.ok = rep.resolved_sideband.margin > th.much_greater;

    rep.high_Q.margin = params.omega_m / params.gamma_m;
    rep.high_Q.ok = rep.high_Q.margin > th.much_greater;

    const double ga1 = params.g0 * std::abs(ss.a1s);
    const double ga2 = params.g0 * std::abs(ss.a2s);
    rep.rwa_left.margin = ga1 > 0 ? params.omega_m / ga1 : INFINITY;
    rep.rwa_right.margin = ga2 > 0 ? params.omega_m / ga2 : INFINITY;
    rep.rwa_left.ok = rep.rwa_left.margin > th.much_greater;
    rep.rwa_right.ok = rep.rwa_right.margin > th.much_greater;

    rep.red_detuned_left.margin = std::abs(ss.Delta1 - params.omega_m) / params.omega_m;
    rep.red_detuned_right.margin = std::abs(ss.Delta2 - params.omega_m) / params.omega_m;
    rep.red_detuned_left.ok = rep.red_detuned_left.margin < th.approx_rel;
    rep.red_detuned_right.ok = rep.red_detuned_right.margin < th.approx_rel;

    rep.ratio_term_negligible.margin =
        params.Delta0 != 0.0 ? 2.0 * params.g0 * ss.b_s.real() / params.Delta0 : INFINITY;
    rep.ratio_term_negligible.ok =
        std::abs(rep.ratio_term_negligible.margin) < th.approx_rel;
    return rep;
}

SystemParams gain_balanced(double G, double kappa)
{
    SystemParams p;
    p.kappa1 = kappa;
    p.kappa2 = -kappa;
    p.gamma_m = kappa;
    p.n = 1.0;
    p.G = G;
    p.omega_m = kappa * 947.0 / 215.0;
    p.Delta0 = p.omega_m;
    return p;
}

} // namespace optoswitch::model
