#include "optoswitch/closedform.hpp"
#include "optoswitch/model.hpp"

#include <cmath>

namespace optoswitch::closedform
{
std::pair<SystemParams, DriveConfig> case_setup(CaseId id, double G, double kappa,
                                                double theta)
{
    SystemParams params = model::gain_balanced(G, kappa);
    DriveConfig drive;
    switch (id)
    {
    case CaseId::SingleProbe:
        drive.eps_L = 1.0;
        drive.eps_R = 0.0;
        drive.theta = 0.0;
        break;
    case CaseId::FIPR:
        drive.eps_L = 1.0;
        drive.eps_R = 1.0;
        drive.theta = pi;
        break;
    case CaseId::PhaseResonant:
        drive.eps_L = 1.0;
        drive.eps_R = 1.0;
        drive.theta = theta;
        break;
    }
    return {params, drive};
}

bool satisfies(CaseId id, const SystemParams& params, const DriveConfig& drive,
               double rel_tol)
{
    const double k = params.kappa1;
    auto close = [&](double a, double b) {
        return std::abs(a - b) <= rel_tol * std::max({std::abs(a), std::abs(b), k});
    };
    if (!(k > 0) || !close(params.kappa2, -k) || !close(params.gamma_m, k) ||
        !close(params.n, 1.0))
        return false;
    switch (id)
    {
    case CaseId::SingleProbe:
        return drive.eps_R == 0.0;
    case CaseId::FIPR:
        return close(drive.eps_L, drive.eps_R) && close(wrap_two_pi(drive.theta), pi);
    case CaseId::PhaseResonant:
        return close(drive.eps_L, drive.eps_R);
    }
    return false;
}

RT single_probe_RT(double G, double kappa, double delta)
{
    const Complex i(0.0, 1.0);
    const double G2 = G * G;
    const double mod2 = kappa * kappa + delta * delta;
    const Complex denom = (kappa - i * delta) * mod2 + 2.0 * i * G2 * delta;
    if (std::abs(denom) < 1e-12 * kappa * kappa * kappa)
        throw ResponsePole("single-probe denominator below pole threshold");
    const Complex num_R = (kappa + i * delta) * mod2 - 2.0 * i * G2 * delta - 2.0 * kappa * G2;
    const Complex num_T = 2.0 * kappa * G2;
    return {std::norm(num_R / denom), std::norm(num_T / denom)};
}

RT fipr_RT(double G, double kappa, double delta)
{
    const Complex i(0.0, 1.0);
    const double G2 = G * G;
    const Complex km = kappa - i * delta;
    const Complex kp = kappa + i * delta;
    const Complex denom = 2.0 * i * G2 * delta + km * km * kp;
    if (std::abs(denom) < 1e-12 * kappa * kappa * kappa)
        throw ResponsePole("FIPR denominator below pole threshold");
    const Complex num = 2.0 * i * G2 * delta - km * km * km;
    return {1.0, std::norm(num / denom)};
}

RT phase_resonant_RT(double G, double kappa, double theta)
{
    const Complex i(0.0, 1.0);
    const Complex phase = std::exp(i * theta);
    const Complex coupling = 2.0 * G * G * (1.0 + phase) / (kappa * kappa);
    return {std::norm(1.0 - coupling), std::norm(phase + coupling)};
}

} // namespace optoswitch::closedform
