#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "optoswitch/config.hpp"
#include "optoswitch/dataset_io.hpp"
#include "optoswitch/sweep.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace optoswitch;
using doctest::Approx;

namespace
{
sweep::SweepSpec fipr_spec(int count = 101)
{
    sweep::SweepSpec spec;
    spec.axis1 = {"delta", -5.0, 5.0, count};
    spec.fixed = {{"kappa2", -1.0}, {"gamma_m", 1.0}, {"n", 1.0},
                  {"G", 2.0},       {"theta", pi},    {"eps_L", 1.0},
                  {"eps_R", 1.0}};
    spec.observables = {"R_l", "T_l"};
    return spec;
}

std::filesystem::path temp_file(const char* name)
{
    return std::filesystem::temp_directory_path() / name;
}
} // namespace

TEST_CASE("sweep rows are complete and ordered with axis2 fastest")
{
    sweep::SweepSpec spec;
    spec.axis1 = {"G", 0.0, 1.0, 3};
    spec.axis2 = sweep::Axis{"delta", -1.0, 1.0, 5};
    spec.fixed = {{"eps_R", 0.0}};
    spec.observables = {"T_l"};
    const auto ds = sweep::run_sweep(spec);
    REQUIRE(ds.rows.size() == 15);
    REQUIRE(ds.columns.size() == 5);
    CHECK(ds.columns[0] == "G[kappa]");
    CHECK(ds.columns[1] == "delta[kappa]");
    CHECK(ds.columns[2] == "T_l[1]");
    CHECK(ds.columns[3] == "pole[flag]");
    CHECK(ds.columns[4] == "undefined[flag]");
    for (std::size_t row = 0; row < 15; ++row)
    {
        CHECK(ds.rows[row][0] == Approx(0.5 * (row / 5)).epsilon(1e-15));
        CHECK(ds.rows[row][1] == Approx(-1.0 + 0.5 * (row % 5)).epsilon(1e-15));
    }
}

TEST_CASE("sweeps are deterministic across repeated runs")
{
    const auto spec = fipr_spec();
    const auto a = sweep::run_sweep(spec);
    const auto b = sweep::run_sweep(spec);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t r = 0; r < a.rows.size(); ++r)
        for (std::size_t c = 0; c < a.rows[r].size(); ++c)
            CHECK(a.rows[r][c] == b.rows[r][c]);
    CHECK(a.metadata == b.metadata);
}

TEST_CASE("a 2D slice matches the corresponding 1D sweep bit for bit")
{
    sweep::SweepSpec spec2;
    spec2.axis1 = {"G", 0.5, 1.5, 3};
    spec2.axis2 = sweep::Axis{"delta", -2.0, 2.0, 21};
    spec2.fixed = {{"eps_R", 0.0}};
    spec2.observables = {"R_l", "T_l"};
    const auto ds2 = sweep::run_sweep(spec2);

    sweep::SweepSpec spec1;
    spec1.axis1 = {"delta", -2.0, 2.0, 21};
    spec1.fixed = {{"eps_R", 0.0}, {"G", 1.0}};
    spec1.observables = {"R_l", "T_l"};
    const auto ds1 = sweep::run_sweep(spec1);

    for (std::size_t k = 0; k < 21; ++k)
    {
        const auto& slice = ds2.rows[21 + k]; // middle G value
        const auto& line = ds1.rows[k];
        CHECK(slice[1] == line[0]);
        CHECK(slice[2] == line[1]);
        CHECK(slice[3] == line[2]);
    }
}

TEST_CASE("balanced pi-phase sweeps pin R_l to one and tag the case")
{
    const auto ds = sweep::run_sweep(fipr_spec());
    for (const auto& row : ds.rows)
    {
        CHECK(row[1] == Approx(1.0).epsilon(1e-12));
        CHECK(row[3] == 0.0);
        CHECK(row[4] == 0.0);
    }
    REQUIRE(ds.metadata.count("case_id") == 1);
    CHECK(ds.metadata.at("case_id") == "FIPR");
    CHECK(ds.metadata.at("tool_version") == sweep::tool_version);
    CHECK(ds.metadata.at("fixed.G") == "2");
}

TEST_CASE("two-point axes are valid, one-point axes are not")
{
    sweep::SweepSpec spec = fipr_spec(2);
    CHECK(sweep::run_sweep(spec).rows.size() == 2);
    spec.axis1.count = 1;
    CHECK_THROWS_AS(sweep::run_sweep(spec), std::invalid_argument);
}

TEST_CASE("unknown axes and observables are rejected")
{
    sweep::SweepSpec spec = fipr_spec();
    spec.axis1.name = "bogus";
    CHECK_THROWS_AS(sweep::run_sweep(spec), std::invalid_argument);
    spec = fipr_spec();
    spec.observables = {"S_l"};
    CHECK_THROWS_AS(sweep::run_sweep(spec), std::invalid_argument);
    spec = fipr_spec();
    spec.observables.clear();
    CHECK_THROWS_AS(sweep::run_sweep(spec), std::invalid_argument);
}

TEST_CASE("pole rows carry flags and NaN values, not gaps")
{
    sweep::SweepSpec spec;
    spec.axis1 = {"delta", -1.0, 1.0, 5};
    spec.fixed = {{"kappa2", 0.0}, {"G", 0.0}, {"eps_R", 0.0}};
    spec.observables = {"R_l"};
    const auto ds = sweep::run_sweep(spec);
    REQUIRE(ds.rows.size() == 5);
    CHECK(ds.rows[2][2] == 1.0); // pole flag at delta = 0
    CHECK(std::isnan(ds.rows[2][1]));
    CHECK(ds.rows[0][2] == 0.0);
    CHECK_FALSE(std::isnan(ds.rows[0][1]));
}

TEST_CASE("figure datasets")
{
    SUBCASE("phase panel hits the switching values")
    {
        const auto ds = sweep::figure_dataset("fig6", 1001);
        REQUIRE(ds.rows.size() == 1001);
        CHECK(ds.metadata.at("figure_id") == "fig6");
        const auto& mid = ds.rows[500]; // theta = pi
        CHECK(mid[0] == Approx(pi).epsilon(1e-12));
        CHECK(mid[1] == Approx(1.0).epsilon(1e-12));
        CHECK(mid[2] == Approx(1.0).epsilon(1e-12));
        const auto& first = ds.rows[0]; // theta = 0
        CHECK(first[1] == Approx(0.0).epsilon(1e-12));
        CHECK(first[2] == Approx(4.0).epsilon(1e-12));
    }
    SUBCASE("surface panel shape and reflection dip along G")
    {
        const auto ds = sweep::figure_dataset("fig2d", 11);
        REQUIRE(ds.rows.size() == 121);
        REQUIRE(ds.columns.size() == 5);
        CHECK(ds.columns[0] == "delta[kappa]");
        CHECK(ds.columns[1] == "G[kappa]");
        // resonant column: R_l = (1 - 2 G^2)^2
        for (std::size_t j = 0; j < 11; ++j)
        {
            const auto& row = ds.rows[5 * 11 + j];
            CHECK(row[0] == 0.0);
            const double g = row[1];
            CHECK(row[2] ==
                  Approx((1.0 - 2.0 * g * g) * (1.0 - 2.0 * g * g)).epsilon(1e-10));
        }
    }
    SUBCASE("delay panels record the amplification maxima")
    {
        const auto ds = sweep::figure_dataset("fig5b", 101);
        CHECK(ds.metadata.count("argmax_T_L.G=1") == 1);
        CHECK(ds.metadata.count("argmax_T_L.G=2") == 1);
        CHECK(ds.metadata.count("argmax_T_L.G=3") == 1);
        CHECK(std::stod(ds.metadata.at("argmax_T_L.G=2")) > 0.0);
    }
    SUBCASE("every published id resolves, others do not")
    {
        for (const auto& id : sweep::figure_ids())
            CHECK_NOTHROW(sweep::figure_dataset(id, 5));
        CHECK_THROWS_AS(sweep::figure_dataset("fig99", 5), UnknownFigure);
    }
}

TEST_CASE("CSV round trip preserves values and metadata")
{
    auto ds = sweep::run_sweep(fipr_spec(11));
    const auto path = temp_file("optoswitch_roundtrip.csv");
    io::write_csv(ds, path.string(), 17);
    const auto back = io::read_csv(path.string());
    std::filesystem::remove(path);

    REQUIRE(back.columns == ds.columns);
    REQUIRE(back.rows.size() == ds.rows.size());
    for (std::size_t r = 0; r < ds.rows.size(); ++r)
        for (std::size_t c = 0; c < ds.rows[r].size(); ++c)
            CHECK(back.rows[r][c] == ds.rows[r][c]);
    CHECK(back.metadata == ds.metadata);
}

TEST_CASE("CSV formatting spells NaN and prefixes metadata")
{
    sweep::Dataset ds;
    ds.columns = {"delta[kappa]", "R_l[1]"};
    ds.rows = {{0.5, std::numeric_limits<double>::quiet_NaN()}};
    ds.metadata["note"] = "value";
    const std::string text = io::format_dataset_csv(ds, 6);
    CHECK(text.find("# note = value") != std::string::npos);
    CHECK(text.find("delta[kappa],R_l[1]") != std::string::npos);
    CHECK(text.find("NaN") != std::string::npos);
}

TEST_CASE("JSON output parses back with nulls for NaN")
{
    sweep::Dataset ds;
    ds.columns = {"delta[kappa]", "T_l[1]"};
    ds.rows = {{-1.0, 0.25}, {0.0, std::numeric_limits<double>::quiet_NaN()}};
    ds.metadata["figure_id"] = "none";
    const auto path = temp_file("optoswitch_out.json");
    io::write_json(ds, path.string());
    std::ifstream in(path);
    const auto j = nlohmann::json::parse(in);
    std::filesystem::remove(path);

    CHECK(j["metadata"]["figure_id"] == "none");
    REQUIRE(j["columns"].size() == 2);
    CHECK(j["columns"][0] == "delta[kappa]");
    CHECK(j["rows"][0][1].get<double>() == 0.25);
    CHECK(j["rows"][1][1].is_null());
}

TEST_CASE("config parsing")
{
    SUBCASE("direct style with dimensionless rates")
    {
        const auto cfg = config::parse_config_text(
            "[params]\n"
            "kappa1 = 1\nkappa2 = -1\ngamma_m = 1\nG = 0.7\n"
            "[drive]\neps_L = 1\neps_R = 0\n"
            "[run]\nmode = spectrum\npoints = 101\n");
        CHECK(cfg.style == config::RunConfig::Style::Direct);
        CHECK(cfg.kappa_ref == 1.0);
        CHECK(cfg.params.kappa2 == -1.0);
        CHECK(cfg.params.G == Approx(0.7));
        CHECK(cfg.drive.eps_R == 0.0);
        CHECK(cfg.points == 101);
    }
    SUBCASE("frequency suffixes normalize to kappa1 = 1")
    {
        const auto cfg = config::parse_config_text(
            "[params]\n"
            "kappa1 = 215 kHz\nkappa2 = -215 kHz\ngamma_m = 140 Hz\nG = 107.5 kHz\n");
        CHECK(cfg.params.kappa1 == 1.0);
        CHECK(cfg.params.kappa2 == Approx(-1.0).epsilon(1e-12));
        CHECK(cfg.params.G == Approx(0.5).epsilon(1e-12));
        CHECK(cfg.params.gamma_m == Approx(140.0 / 215e3).epsilon(1e-12));
        CHECK(cfg.kappa_ref == Approx(2 * pi * 215e3).epsilon(1e-12));
    }
    SUBCASE("mixed rate units are rejected")
    {
        CHECK_THROWS_AS(config::parse_config_text(
                            "[params]\nkappa1 = 215 kHz\nkappa2 = -1\n"),
                        config::ConfigError);
    }
    SUBCASE("exactly one parameter style")
    {
        CHECK_THROWS_AS(config::parse_config_text("[run]\nmode = spectrum\n"),
                        config::ConfigError);
        CHECK_THROWS_AS(config::parse_config_text(
                            "[params]\nkappa1 = 1\n[physical]\nL = 1e-3\n"),
                        config::ConfigError);
    }
    SUBCASE("malformed lines carry line numbers")
    {
        try
        {
            config::parse_config_text("[params]\nkappa1 = 1\nnonsense line\n");
            FAIL("expected ConfigError");
        }
        catch (const config::ConfigError& e)
        {
            CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        }
    }
    SUBCASE("sweep section builds a full spec")
    {
        const auto cfg = config::parse_config_text(
            "[params]\nkappa1 = 1\nG = 0.5\n"
            "[sweep]\n"
            "axis1 = delta,-5,5,201\n"
            "axis2 = G,0,1.5,51\n"
            "observables = R_l,T_l\n");
        REQUIRE(cfg.sweep_spec.has_value());
        CHECK(cfg.sweep_spec->axis1.name == "delta");
        CHECK(cfg.sweep_spec->axis1.count == 201);
        REQUIRE(cfg.sweep_spec->axis2.has_value());
        CHECK(cfg.sweep_spec->axis2->max == 1.5);
        CHECK(cfg.sweep_spec->observables ==
              std::vector<std::string>{"R_l", "T_l"});
        CHECK(cfg.sweep_spec->fixed.at("G") == 0.5);
    }
    SUBCASE("physical style derives normalized parameters")
    {
        const auto cfg = config::parse_config_text(
            "[physical]\n"
            "L = 25e-3\nmass = 145e-12\n"
            "omega_m = 947 kHz\nkappa1 = 215 kHz\nkappa2 = 215 kHz\n"
            "gamma_m = 140 Hz\nlambda = 1064e-9\nP1 = 1e-3\nP2 = 1e-3\n");
        CHECK(cfg.style == config::RunConfig::Style::Physical);
        CHECK(cfg.params.kappa1 == 1.0);
        CHECK(cfg.params.kappa2 == Approx(1.0).epsilon(1e-10));
        CHECK(cfg.params.n == Approx(1.0).epsilon(1e-8));
        CHECK(cfg.params.G > 0.0);
        CHECK(cfg.kappa_ref == Approx(2 * pi * 215e3).epsilon(1e-12));
    }
    SUBCASE("output constraints")
    {
        CHECK_THROWS_AS(config::parse_config_text(
                            "[params]\nkappa1 = 1\n[output]\nformat = xml\n"),
                        config::ConfigError);
        CHECK_THROWS_AS(config::parse_config_text(
                            "[params]\nkappa1 = 1\n[output]\nprecision = 40\n"),
                        config::ConfigError);
    }
}
