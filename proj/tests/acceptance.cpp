#include "optoswitch/closedform.hpp"
#include "optoswitch/dataset_io.hpp"
#include "optoswitch/delay.hpp"
#include "optoswitch/model.hpp"
#include "optoswitch/oracle.hpp"
#include "optoswitch/response.hpp"
#include "optoswitch/selfcheck.hpp"
#include "optoswitch/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace optoswitch;

namespace
{
int failures = 0;

void report(int number, const char* title, bool ok)
{
    std::printf("criterion %2d %s: %s\n", number, ok ? "PASS" : "FAIL", title);
    if (!ok)
        ++failures;
}

bool close_rel(double a, double b, double tol)
{
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1.0});
}

DriveConfig left_probe()
{
    DriveConfig d;
    d.eps_L = 1.0;
    d.eps_R = 0.0;
    return d;
}

DriveConfig balanced_pi()
{
    DriveConfig d;
    d.eps_L = d.eps_R = 1.0;
    d.theta = pi;
    return d;
}

bool resonance_values()
{
    bool ok = true;
    for (double g : {0.3, 0.7, 1.0 / std::sqrt(2.0), 1.0, 1.2})
    {
        const auto res = response::transport_coefficients(model::gain_balanced(g),
                                                          left_probe(), 0.0);
        const double r = (1.0 - 2.0 * g * g) * (1.0 - 2.0 * g * g);
        const double t = 4.0 * g * g * g * g;
        ok = ok && close_rel(*res.R_l, r, 1e-12) && close_rel(*res.T_l, t, 1e-12);
    }
    const auto at_crit = response::transport_coefficients(
        model::gain_balanced(1.0 / std::sqrt(2.0)), left_probe(), 0.0);
    ok = ok && std::abs(*at_crit.R_l) <= 1e-12 && close_rel(*at_crit.T_l, 1.0, 1e-12);
    const auto at_one =
        response::transport_coefficients(model::gain_balanced(1.0), left_probe(), 0.0);
    ok = ok && close_rel(*at_one.R_l, 1.0, 1e-12) && close_rel(*at_one.T_l, 4.0, 1e-12);
    return ok;
}

bool fipr_reflection()
{
    bool ok = true;
    const auto grid = response::linspace(-5.0, 5.0, 1001);
    for (double g : {1.0, 2.0, 3.0})
    {
        const SystemParams params = model::gain_balanced(g);
        for (double delta : grid)
        {
            const auto res =
                response::transport_coefficients(params, balanced_pi(), delta);
            ok = ok && close_rel(*res.R_l, 1.0, 1e-12);
        }
        const auto at_zero =
            response::transport_coefficients(params, balanced_pi(), 0.0);
        ok = ok && close_rel(*at_zero.T_l, 1.0, 1e-12);
    }
    return ok;
}

bool phase_switching()
{
    const double g = 0.5;
    const auto zero = closedform::phase_resonant_RT(g, 1.0, 0.0);
    const auto odd = closedform::phase_resonant_RT(g, 1.0, pi);
    bool ok = std::abs(zero.R) <= 1e-12 && close_rel(zero.T, 4.0, 1e-12) &&
              close_rel(odd.R, 1.0, 1e-12) && close_rel(odd.T, 1.0, 1e-12);
    for (int k = 0; k <= 720; ++k)
    {
        const double theta = 2.0 * pi * k / 720.0;
        const auto [params, drive] =
            closedform::case_setup(closedform::CaseId::PhaseResonant, g, 1.0, theta);
        const auto rt = closedform::phase_resonant_RT(g, 1.0, theta);
        const auto gen = response::transport_coefficients(params, drive, 0.0);
        ok = ok && close_rel(*gen.R_l, rt.R, 1e-12) && close_rel(*gen.T_l, rt.T, 1e-12);
    }
    return ok;
}

bool oracle_triangle()
{
    const auto res = selfcheck::oracle_triangle(200, 12345);
    return res.max_dev_closed_vs_solve < 1e-10 && res.max_dev_solve_vs_time < 1e-6;
}

bool delay_transition()
{
    const auto tau = [&](double g, delay::Channel ch) {
        return delay::group_delay(model::gain_balanced(g), left_probe(), 0.0, ch);
    };
    bool ok = tau(0.9, delay::Channel::rl) > 0.0 && tau(1.1, delay::Channel::rl) < 0.0 &&
              std::abs(tau(1.0, delay::Channel::rl)) < 1e-3;
    for (double g : {0.8, 1.0, 1.2})
        ok = ok && tau(g, delay::Channel::tl) < 0.0;
    return ok;
}

bool analytic_delay()
{
    const SystemParams params = model::gain_balanced(0.0);
    for (double delta : response::linspace(-3.0, 3.0, 121))
    {
        const double tau =
            delay::group_delay(params, left_probe(), delta, delay::Channel::rl);
        if (!close_rel(tau, 2.0 / (1.0 + delta * delta), 1e-6))
            return false;
    }
    return true;
}

bool transmission_ratio()
{
    std::mt19937_64 rng(99);
    int checked = 0;
    while (checked < 100)
    {
        const auto d = selfcheck::random_draw(rng, false);
        DriveConfig left = d.drive;
        left.eps_R = 0.0;
        DriveConfig right = d.drive;
        right.eps_L = 0.0;
        try
        {
            const auto tl = response::transport_coefficients(d.params, left, d.delta);
            const auto tr = response::transport_coefficients(d.params, right, d.delta);
            if (*tr.T_r < 1e-30)
                continue;
            const double expected =
                (d.params.kappa2 / d.params.kappa1) * (d.params.kappa2 / d.params.kappa1);
            if (std::abs(*tl.T_l / *tr.T_r - expected) > 1e-10 * expected)
                return false;
            ++checked;
        }
        catch (const ResponsePole&)
        {
        }
    }
    return true;
}

bool exchange_symmetry()
{
    std::mt19937_64 rng(123);
    int checked = 0;
    while (checked < 100)
    {
        auto d = selfcheck::random_draw(rng, false);
        d.params.n = 1.0;
        SystemParams swapped = d.params;
        std::swap(swapped.kappa1, swapped.kappa2);
        DriveConfig sw_drive = d.drive;
        std::swap(sw_drive.eps_L, sw_drive.eps_R);
        sw_drive.theta = -d.drive.theta;
        try
        {
            const auto a = response::transport_coefficients(d.params, d.drive, d.delta);
            const auto b = response::transport_coefficients(swapped, sw_drive, d.delta);
            if (!close_rel(*a.R_l, *b.R_r, 1e-12) || !close_rel(*a.T_l, *b.T_r, 1e-12) ||
                !close_rel(*a.R_r, *b.R_l, 1e-12) || !close_rel(*a.T_r, *b.T_l, 1e-12))
                return false;
            ++checked;
        }
        catch (const ResponsePole&)
        {
        }
    }
    return true;
}

bool stability_reporting()
{
    SystemParams params = model::gain_balanced(0.0);
    params.gamma_m = 0.6;
    const auto rep = oracle::system_stability(params);
    std::vector<double> re;
    for (const auto& ev : rep.eigenvalues)
        re.push_back(ev.real());
    std::sort(re.begin(), re.end());
    bool ok = std::abs(re[0] + 1.0) <= 1e-12 && std::abs(re[1] + 0.6) <= 1e-12 &&
              std::abs(re[2] - 1.0) <= 1e-12;

    // regression fixture: frozen scan of the gain-balanced instability
    std::ifstream in(std::string(FIXTURE_DIR) + "/gain_balanced_stability.txt");
    if (!in)
        return false;
    std::string line;
    int fixture_rows = 0;
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        if (line.rfind("# stable_g_window_intervals", 0) == 0)
        {
            const auto window =
                oracle::stable_g_window(model::gain_balanced(0.0), 0.0, 5.0, 512);
            std::istringstream ss(line.substr(line.find('=') + 1));
            std::size_t expected = 99;
            ss >> expected;
            ok = ok && window.size() == expected;
            continue;
        }
        if (line.front() == '#')
            continue;
        std::istringstream ss(line);
        double g = 0.0, frozen = 0.0;
        ss >> g >> frozen;
        const auto scan = oracle::system_stability(model::gain_balanced(g));
        ok = ok && close_rel(scan.max_real_part, frozen, 1e-12);
        ++fixture_rows;
    }
    return ok && fixture_rows >= 5;
}

bool figure_datasets()
{
    for (const auto& id : sweep::figure_ids())
    {
        const auto start = std::chrono::steady_clock::now();
        std::string first, second;
        try
        {
            first = io::format_dataset_csv(sweep::figure_dataset(id));
            second = io::format_dataset_csv(sweep::figure_dataset(id));
        }
        catch (const std::exception&)
        {
            return false;
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (first != second || first.empty() || seconds > 2 * 5.0)
            return false;
    }
    return true;
}
} // namespace

int main()
{
    report(1, "resonance reflection/transmission values", resonance_values());
    report(2, "frequency-independent perfect reflection", fipr_reflection());
    report(3, "phase-controlled switching", phase_switching());
    report(4, "oracle triangle over randomized draws", oracle_triangle());
    report(5, "group-delay sign transition", delay_transition());
    report(6, "analytic decoupled delay", analytic_delay());
    report(7, "single-probe transmission ratio", transmission_ratio());
    report(8, "left/right exchange symmetry", exchange_symmetry());
    report(9, "stability eigenvalues and frozen window", stability_reporting());
    report(10, "figure datasets deterministic and timely", figure_datasets());
    if (failures == 0)
        std::printf("acceptance: all criteria passed\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
