#include "optoswitch/sweep.hpp"
#include "optoswitch/closedform.hpp"
#include "optoswitch/delay.hpp"
#include "optoswitch/response.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace optoswitch::sweep
{
namespace
{
const std::set<std::string> axis_names = {"delta", "G",      "theta",    "n",
                                          "kappa2", "gamma_m", "eps_ratio"};
const std::vector<std::string> observable_names = {"R_l",    "T_l",    "R_r",    "T_r",
                                                   "tau_rl", "tau_tl", "tau_rr", "tau_tr"};

std::string unit_of(const std::string& name)
{
    if (name == "delta" || name == "G" || name == "kappa2" || name == "gamma_m")
        return "kappa";
    if (name == "theta")
        return "rad";
    if (name.rfind("tau_", 0) == 0)
        return "1/kappa";
    if (name == "n" || name == "eps_ratio")
        return "1";
    return "1"; // R/T intensity ratios
}

struct Point
{
    SystemParams params;
    DriveConfig drive;
    double delta = 0.0;
};

Point build_point(const std::map<std::string, double>& fixed)
{
    auto get = [&](const std::string& key, double fallback) {
        auto it = fixed.find(key);
        return it == fixed.end() ? fallback : it->second;
    };
    Point pt;
    pt.params.kappa1 = get("kappa1", 1.0);
    pt.params.kappa2 = get("kappa2", -1.0);
    pt.params.gamma_m = get("gamma_m", 1.0);
    pt.params.n = get("n", 1.0);
    pt.params.G = get("G", 0.0);
    pt.params.omega_m = get("omega_m", pt.params.kappa1 * 947.0 / 215.0);
    pt.params.Delta0 = get("Delta0", pt.params.omega_m);
    pt.drive.eps_L = get("eps_L", 1.0);
    pt.drive.eps_R = get("eps_R", 1.0);
    pt.drive.theta = get("theta", 0.0);
    pt.delta = get("delta", 0.0);
    return pt;
}

void apply_axis(Point& pt, const std::string& name, double value)
{
    if (name == "delta")
        pt.delta = value;
    else if (name == "G")
        pt.params.G = value;
    else if (name == "theta")
        pt.drive.theta = value;
    else if (name == "n")
        pt.params.n = value;
    else if (name == "kappa2")
        pt.params.kappa2 = value;
    else if (name == "gamma_m")
        pt.params.gamma_m = value;
    else if (name == "eps_ratio")
        pt.drive.eps_R = value * pt.drive.eps_L;
    else
        throw std::invalid_argument("unknown sweep axis: " + name);
}

int worker_count()
{
    unsigned cap = std::thread::hardware_concurrency();
    if (cap == 0)
        cap = 1;
    if (const char* env = std::getenv("OPTOSWITCH_THREADS"))
    {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1)
            cap = std::min<unsigned>(cap, static_cast<unsigned>(v));
    }
    return static_cast<int>(cap);
}

// Static-partition parallel loop; results land in preallocated storage, so
// assembly order stays deterministic.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn)
{
    const int workers = std::min<std::size_t>(worker_count(), count);
    if (workers <= 1)
    {
        for (std::size_t k = 0; k < count; ++k)
            fn(k);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
    {
        pool.emplace_back([&, w]() {
            for (std::size_t k = static_cast<std::size_t>(w); k < count;
                 k += static_cast<std::size_t>(workers))
                fn(k);
        });
    }
    for (auto& t : pool)
        t.join();
}

std::string format_double(double v)
{
    std::ostringstream oss;
    oss.precision(17);
    oss << v;
    return oss.str();
}

std::optional<closedform::CaseId> matching_case(const Point& pt)
{
    using closedform::CaseId;
    for (CaseId id : {CaseId::SingleProbe, CaseId::FIPR, CaseId::PhaseResonant})
        if (closedform::satisfies(id, pt.params, pt.drive))
            return id;
    return std::nullopt;
}

std::string case_name(closedform::CaseId id)
{
    switch (id)
    {
    case closedform::CaseId::SingleProbe: return "SingleProbe";
    case closedform::CaseId::FIPR: return "FIPR";
    case closedform::CaseId::PhaseResonant: return "PhaseResonant";
    }
    return {};
}
} // namespace

Dataset run_sweep(const SweepSpec& spec)
{
    auto check_axis = [](const Axis& axis) {
        if (!axis_names.count(axis.name))
            throw std::invalid_argument("unknown sweep axis: " + axis.name);
        if (axis.count < 2)
            throw std::invalid_argument("axis count must be >= 2");
    };
    check_axis(spec.axis1);
    if (spec.axis2)
        check_axis(*spec.axis2);
    if (spec.observables.empty())
        throw std::invalid_argument("sweep needs at least one observable");
    for (const auto& obs : spec.observables)
        if (std::find(observable_names.begin(), observable_names.end(), obs) ==
            observable_names.end())
            throw std::invalid_argument("unknown observable: " + obs);

    const std::vector<double> grid1 =
        response::linspace(spec.axis1.min, spec.axis1.max, spec.axis1.count);
    const std::vector<double> grid2 =
        spec.axis2 ? response::linspace(spec.axis2->min, spec.axis2->max, spec.axis2->count)
                   : std::vector<double>{};

    Dataset ds;
    ds.columns.push_back(spec.axis1.name + "[" + unit_of(spec.axis1.name) + "]");
    if (spec.axis2)
        ds.columns.push_back(spec.axis2->name + "[" + unit_of(spec.axis2->name) + "]");
    for (const auto& obs : spec.observables)
        ds.columns.push_back(obs + "[" + unit_of(obs) + "]");
    ds.columns.push_back("pole[flag]");
    ds.columns.push_back("undefined[flag]");

    const std::size_t n1 = grid1.size();
    const std::size_t n2 = spec.axis2 ? grid2.size() : 1;
    ds.rows.assign(n1 * n2, {});

    const double nan = std::numeric_limits<double>::quiet_NaN();
    parallel_for(n1 * n2, [&](std::size_t row) {
        const std::size_t i1 = row / n2;
        const std::size_t i2 = row % n2;
        Point pt = build_point(spec.fixed);
        apply_axis(pt, spec.axis1.name, grid1[i1]);
        if (spec.axis2)
            apply_axis(pt, spec.axis2->name, grid2[i2]);

        std::vector<double>& out = ds.rows[row];
        out.reserve(ds.columns.size());
        out.push_back(grid1[i1]);
        if (spec.axis2)
            out.push_back(grid2[i2]);

        bool pole = false;
        bool undefined = false;
        std::optional<TransportResult> transport;
        for (const auto& obs : spec.observables)
        {
            double value = nan;
            try
            {
                if (obs.rfind("tau_", 0) == 0)
                {
                    value = delay::group_delay(pt.params, pt.drive, pt.delta,
                                               delay::channel_from_name(obs.substr(4)));
                }
                else
                {
                    if (!transport)
                        transport =
                            response::transport_coefficients(pt.params, pt.drive, pt.delta);
                    std::optional<double> v;
                    if (obs == "R_l") v = transport->R_l;
                    else if (obs == "T_l") v = transport->T_l;
                    else if (obs == "R_r") v = transport->R_r;
                    else v = transport->T_r;
                    if (v)
                        value = *v;
                    else
                        undefined = true;
                }
            }
            catch (const ResponsePole&)
            {
                pole = true;
            }
            catch (const PoleAdjacent&)
            {
                pole = true;
            }
            catch (const UndefinedRatio&)
            {
                undefined = true;
            }
            out.push_back(value);
        }
        out.push_back(pole ? 1.0 : 0.0);
        out.push_back(undefined ? 1.0 : 0.0);
    });

    const Point base = build_point(spec.fixed);
    ds.metadata["tool_version"] = tool_version;
    ds.metadata["axis1"] = spec.axis1.name;
    ds.metadata["axis1_count"] = std::to_string(spec.axis1.count);
    if (spec.axis2)
    {
        ds.metadata["axis2"] = spec.axis2->name;
        ds.metadata["axis2_count"] = std::to_string(spec.axis2->count);
    }
    for (const auto& [key, value] : spec.fixed)
        ds.metadata["fixed." + key] = format_double(value);
    ds.metadata["fixed.kappa1"] = format_double(base.params.kappa1);
    ds.metadata["tau_unit"] = "1/kappa1; multiply by 1/kappa1[s] for seconds";
    if (auto id = matching_case(base))
        ds.metadata["case_id"] = case_name(*id);
    return ds;
}

const std::vector<std::string>& figure_ids()
{
    static const std::vector<std::string> ids = {
        "fig2a", "fig2b", "fig2c", "fig2d", "fig2e", "fig3a", "fig3b", "fig4a",
        "fig4b", "fig4c", "fig4d", "fig4e", "fig5a", "fig5b", "fig6"};
    return ids;
}

Dataset figure_dataset(const std::string& figure_id, int grid_points)
{
    const int n1 = grid_points > 0 ? grid_points : 1001;
    const int n2 = grid_points > 0 ? grid_points : 51;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    SweepSpec spec;
    spec.fixed = {{"kappa1", 1.0}, {"kappa2", -1.0}, {"gamma_m", 1.0}, {"n", 1.0}};
    spec.axis1 = {"delta", -5.0, 5.0, n1};

    auto single_probe = [&]() {
        spec.fixed["eps_L"] = 1.0;
        spec.fixed["eps_R"] = 0.0;
        spec.fixed["theta"] = 0.0;
    };
    auto balanced_pi = [&]() {
        spec.fixed["eps_L"] = 1.0;
        spec.fixed["eps_R"] = 1.0;
        spec.fixed["theta"] = pi;
    };

    if (figure_id == "fig2a" || figure_id == "fig2b" || figure_id == "fig2c")
    {
        single_probe();
        spec.fixed["G"] = figure_id == "fig2a" ? 0.7
                        : figure_id == "fig2b" ? inv_sqrt2
                                               : 1.2;
        spec.observables = {"R_l", "T_l"};
    }
    else if (figure_id == "fig2d" || figure_id == "fig2e")
    {
        single_probe();
        spec.axis1.count = n2;
        spec.axis2 = Axis{"G", 0.0, 1.5, n2};
        spec.observables = {figure_id == "fig2d" ? "R_l" : "T_l"};
    }
    else if (figure_id == "fig3a" || figure_id == "fig3b")
    {
        single_probe();
        spec.axis2 = Axis{"G", 0.8, 1.2, 3};
        spec.observables = {figure_id == "fig3a" ? "tau_rl" : "tau_tl"};
    }
    else if (figure_id == "fig4a" || figure_id == "fig4b" || figure_id == "fig4c")
    {
        balanced_pi();
        spec.fixed["G"] = figure_id == "fig4a" ? 1.0 : figure_id == "fig4b" ? 2.0 : 3.0;
        spec.observables = {"R_l", "T_l"};
    }
    else if (figure_id == "fig4d" || figure_id == "fig4e")
    {
        balanced_pi();
        spec.axis1.count = n2;
        spec.axis2 = Axis{"G", 0.0, 3.0, n2};
        spec.observables = {figure_id == "fig4d" ? "R_l" : "T_l"};
    }
    else if (figure_id == "fig5a" || figure_id == "fig5b")
    {
        balanced_pi();
        spec.axis2 = Axis{"G", 1.0, 3.0, 3};
        spec.observables = {figure_id == "fig5a" ? "tau_rl" : "tau_tl"};
    }
    else if (figure_id == "fig6")
    {
        spec.fixed["eps_L"] = 1.0;
        spec.fixed["eps_R"] = 1.0;
        spec.fixed["G"] = 0.5;
        spec.fixed["delta"] = 0.0;
        spec.axis1 = {"theta", 0.0, 2.0 * pi, n1};
        spec.observables = {"R_l", "T_l"};
    }
    else
    {
        throw UnknownFigure("unknown figure id: " + figure_id);
    }

    Dataset ds = run_sweep(spec);
    ds.metadata["figure_id"] = figure_id;

    if (figure_id == "fig5a" || figure_id == "fig5b")
    {
        // Locate the transmission-amplification maxima for each G value.
        for (double g : {1.0, 2.0, 3.0})
        {
            SweepSpec tspec = spec;
            tspec.axis2.reset();
            tspec.fixed["G"] = g;
            tspec.observables = {"T_l"};
            const Dataset tds = run_sweep(tspec);
            double best_delta = 0.0;
            double best = -1.0;
            for (const auto& row : tds.rows)
            {
                if (row[1] > best && row[0] >= 0.0)
                {
                    best = row[1];
                    best_delta = row[0];
                }
            }
            std::ostringstream key;
            key << "argmax_T_L.G=" << g;
            ds.metadata[key.str()] = format_double(best_delta);
        }
    }
    return ds;
}

} // namespace optoswitch::sweep
