#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "icct/cavity.hpp"
#include "icct/constants.hpp"
#include "icct/optimizer.hpp"
#include "icct/species.hpp"
#include "json.hpp"

using namespace icct;
namespace ct = icct::constants;

namespace {
const TrapGeometry kGeom{};
const IonSpecies kCa40 = calcium_ion(40);
const ModeGeometry kMode = waist_from_geometry(CavitySpec{});
const double kKappa = cavity_decay_rate(CavitySpec{}.linewidth_fwhm_hz);
}  // namespace

TEST_CASE("constraint tables") {
    const auto def = StabilityConstraint::default_table();
    CHECK(def.defined_at(100.0));
    CHECK(def.defined_at(400.0));
    CHECK_FALSE(def.defined_at(99.0));
    CHECK_FALSE(def.defined_at(401.0));
    CHECK(def.max_length_m(350.0) == doctest::Approx(2.25e-3));
    // interpolation midway between knots
    CHECK(def.max_length_m(325.0) == doctest::Approx(0.5 * (2.6e-3 + 2.25e-3)));

    const auto none = StabilityConstraint::unconstrained();
    CHECK(none.defined_at(1e4));
    CHECK(std::isinf(none.max_length_m(1e4)));

    const auto parsed =
        StabilityConstraint::from_csv("u_rf_V,max_length_m\n100,4e-3\n200,2e-3\n");
    CHECK(parsed.max_length_m(150.0) == doctest::Approx(3e-3));

    CHECK_THROWS_AS(StabilityConstraint::from_csv("volts,len\n100,4e-3\n"), ConfigError);
    CHECK_THROWS_AS(
        StabilityConstraint::from_csv("u_rf_V,max_length_m\n100,4e-3\n200,5e-3\n"),
        ConfigError);
    CHECK_THROWS_AS(StabilityConstraint::from_csv("u_rf_V,max_length_m\n100,-1e-3\n"),
                    ConfigError);
}

TEST_CASE("point evaluation reproduces the 350 V anchor") {
    // length capped at 2.2 mm: N = rho pi w0^2 l / 4 with rho(350 V)
    const auto table = StabilityConstraint::from_csv("u_rf_V,max_length_m\n300,2.2e-3\n400,2.2e-3\n");
    const SweepPoint p = evaluate_point(350.0, 1.0, kGeom, kCa40, kMode, 1e5, table);
    REQUIRE(p.feasible);
    CHECK(p.length_m == doctest::Approx(2.2e-3));
    CHECK(p.density_m3 == doctest::Approx(8.485e14).epsilon(1e-3));
    CHECK(std::abs(p.density_m3 - 8.3e14) / 8.3e14 < 0.03);  // quoted operating density ~8.3e8 cm^-3
    CHECK(p.n_in_mode == doctest::Approx(1988.0).epsilon(2e-3));
    CHECK(std::abs(p.n_in_mode - 2000.0) / 2000.0 < 0.05);
}

TEST_CASE("mode population scales with the waist squared") {
    const auto none = StabilityConstraint::unconstrained();
    const SweepPoint p1 = evaluate_point(300.0, 2.0, kGeom, kCa40, kMode, 1e5, none);
    ModeGeometry wide = kMode;
    wide.waist_m *= 2.0;
    const SweepPoint p2 = evaluate_point(300.0, 2.0, kGeom, kCa40, wide, 1e5, none);
    CHECK(p2.n_in_mode == doctest::Approx(4.0 * p1.n_in_mode).epsilon(1e-12));
}

TEST_CASE("infeasible points are flagged, not fatal") {
    const auto def = StabilityConstraint::default_table();
    const SweepPoint unstable = evaluate_point(900.0, 1.0, kGeom, kCa40, kMode, 1e5, def);
    CHECK_FALSE(unstable.feasible);
    CHECK(unstable.reason == "mathieu unstable");

    const SweepPoint outside = evaluate_point(90.0, 1.0, kGeom, kCa40, kMode, 1e5, def);
    CHECK_FALSE(outside.feasible);
    CHECK(outside.reason == "constraint undefined");

    const SweepPoint deconfined =
        evaluate_point(150.0, 40.0, kGeom, kCa40, kMode, 1e5,
                       StabilityConstraint::unconstrained());
    CHECK_FALSE(deconfined.feasible);
    CHECK(deconfined.reason == "radially deconfined");
}

TEST_CASE("single-point grid argmax") {
    SweepGrid grid;
    grid.u_rf_volts = {300.0};
    grid.u_end_volts = {2.0};
    const auto result = sweep(grid, kGeom, kCa40, kMode, kKappa, 1e5,
                              StabilityConstraint::unconstrained());
    CHECK(result.argmax == 0);
    CHECK(result.points.size() == 1);
    CHECK(result.strong_coupling_n_min == 431);
}

TEST_CASE("shipped constraint puts the optimum at 350 V") {
    SweepGrid grid;
    for (double u = 150.0; u <= 400.0; u += 25.0) grid.u_rf_volts.push_back(u);
    for (double u = 1.0; u <= 5.0; u += 1.0) grid.u_end_volts.push_back(u);
    const auto result =
        sweep(grid, kGeom, kCa40, kMode, kKappa, 1e5, StabilityConstraint::default_table());
    const SweepPoint& best = result.points[result.argmax];
    CHECK(best.u_rf_volts == 350.0);
    CHECK(best.n_in_mode >= 2000.0);
    // the constraint is respected everywhere
    const auto table = StabilityConstraint::default_table();
    for (const auto& p : result.points) {
        if (!p.feasible) continue;
        const double cap = p.density_m3 * ct::pi * kMode.waist_m * kMode.waist_m *
                           table.max_length_m(p.u_rf_volts) / 4.0;
        CHECK(p.n_in_mode <= cap * (1.0 + 1e-12));
    }
}

TEST_CASE("without the constraint the population is monotone in U_rf") {
    SweepGrid grid;
    for (double u = 150.0; u <= 400.0; u += 25.0) grid.u_rf_volts.push_back(u);
    grid.u_end_volts = {1.0};
    const auto result = sweep(grid, kGeom, kCa40, kMode, kKappa, 1e5,
                              StabilityConstraint::unconstrained());
    for (std::size_t i = 1; i < result.points.size(); ++i) {
        CHECK(result.points[i].n_in_mode > result.points[i - 1].n_in_mode);
    }
    // argmax at the top of the range, no interior peak
    CHECK(result.points[result.argmax].u_rf_volts == 400.0);
}

TEST_CASE("argmax is invariant under uniform scaling of N") {
    SweepGrid grid;
    for (double u = 150.0; u <= 400.0; u += 25.0) grid.u_rf_volts.push_back(u);
    for (double u = 1.0; u <= 3.0; u += 1.0) grid.u_end_volts.push_back(u);
    const auto table = StabilityConstraint::default_table();
    const auto r1 = sweep(grid, kGeom, kCa40, kMode, kKappa, 1e5, table);
    ModeGeometry wide = kMode;
    wide.waist_m *= 2.0;  // scales every N by exactly 4
    const auto r2 = sweep(grid, kGeom, kCa40, wide, kKappa, 1e5, table);
    CHECK(r1.argmax == r2.argmax);
}

TEST_CASE("grid refinement never lowers the maximum") {
    SweepGrid coarse;
    for (double u = 150.0; u <= 400.0; u += 50.0) coarse.u_rf_volts.push_back(u);
    coarse.u_end_volts = {1.0, 3.0};
    SweepGrid fine = coarse;
    fine.u_rf_volts.clear();
    for (double u = 150.0; u <= 400.0; u += 25.0) fine.u_rf_volts.push_back(u);

    const auto table = StabilityConstraint::default_table();
    const auto rc = sweep(coarse, kGeom, kCa40, kMode, kKappa, 1e5, table);
    const auto rf = sweep(fine, kGeom, kCa40, kMode, kKappa, 1e5, table);
    CHECK(rf.points[rf.argmax].n_in_mode >= rc.points[rc.argmax].n_in_mode);
}

TEST_CASE("all-infeasible grid is an error") {
    SweepGrid grid;
    grid.u_rf_volts = {900.0};
    grid.u_end_volts = {1.0};
    CHECK_THROWS_AS(
        sweep(grid, kGeom, kCa40, kMode, kKappa, 1e5, StabilityConstraint::default_table()),
        InfeasibleError);
}

TEST_CASE("threshold crossing detection") {
    SweepGrid grid;
    for (double u = 60.0; u <= 200.0; u += 20.0) grid.u_rf_volts.push_back(u);
    grid.u_end_volts = {3.9};
    const auto result = sweep(grid, kGeom, kCa40, kMode, kKappa, 1e5,
                              StabilityConstraint::unconstrained());
    REQUIRE(result.threshold_crossings_v.size() == 1);
    CHECK(result.threshold_crossings_v[0] > 160.0);
    CHECK(result.threshold_crossings_v[0] < 180.0);
}

TEST_CASE("json summary carries the argmax and threshold crossings") {
    SweepGrid grid;
    for (double u = 60.0; u <= 200.0; u += 20.0) grid.u_rf_volts.push_back(u);
    grid.u_end_volts = {3.9};
    const auto result = sweep(grid, kGeom, kCa40, kMode, kKappa, 1e5,
                              StabilityConstraint::unconstrained());
    const auto summary = nlohmann::json::parse(sweep_summary_json(result));
    CHECK(summary["argmax"]["u_rf_volts"].get<double>() == 200.0);
    CHECK(summary["strong_coupling_n_min"].get<long>() == 431);
    REQUIRE(summary["threshold_crossings_v"].size() == 1);
    CHECK(summary["threshold_crossings_v"][0].get<double>() ==
          doctest::Approx(result.threshold_crossings_v[0]));
}

TEST_CASE("sweep csv round trip") {
    SweepGrid grid;
    grid.u_rf_volts = {200.0, 300.0};
    grid.u_end_volts = {1.0, 2.0};
    const auto result = sweep(grid, kGeom, kCa40, kMode, kKappa, 1e5,
                              StabilityConstraint::default_table());
    std::ostringstream os;
    write_sweep_csv(os, result);
    std::istringstream is(os.str());
    const auto parsed = read_sweep_csv(is);
    REQUIRE(parsed.points.size() == result.points.size());
    for (std::size_t i = 0; i < parsed.points.size(); ++i) {
        CHECK(parsed.points[i].u_rf_volts == result.points[i].u_rf_volts);
        CHECK(parsed.points[i].n_in_mode == result.points[i].n_in_mode);
        CHECK(parsed.points[i].density_m3 == result.points[i].density_m3);
        CHECK(parsed.points[i].feasible == result.points[i].feasible);
    }
    // exact column schema
    CHECK(os.str().rfind("u_rf_V,u_end_V,density_m3,length_m,n_in_mode,g_coll_rad_s,feasible\n",
                         0) == 0);
}
