#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>

#include "icct/constants.hpp"
#include "icct/species.hpp"
#include "icct/trap.hpp"

using namespace icct;
namespace ct = icct::constants;

namespace {
const TrapGeometry kGeom{};  // reference trap
const IonSpecies kCa40 = calcium_ion(40);
}  // namespace

TEST_CASE("axial frequency reproduces the measured 160 kHz") {
    const DriveVoltages v{130.0, 3.9};
    const double fz = axial_frequency(kGeom, v, kCa40) / ct::two_pi;
    CHECK(std::abs(fz - 160.0e3) / 160.0e3 < 0.03);
    // frozen value from direct evaluation of the formula constants
    CHECK(fz == doctest::Approx(161.56e3).epsilon(5e-4));
}

TEST_CASE("axial frequency at zero end voltage is zero") {
    const DriveVoltages v{130.0, 0.0};
    CHECK(axial_frequency(kGeom, v, kCa40) == 0.0);
}

TEST_CASE("axial frequency scales as sqrt(U_end)") {
    const DriveVoltages v1{130.0, 3.9};
    const DriveVoltages v4{130.0, 4.0 * 3.9};
    CHECK(axial_frequency(kGeom, v4, kCa40) ==
          doctest::Approx(2.0 * axial_frequency(kGeom, v1, kCa40)).epsilon(1e-14));
}

TEST_CASE("radial frequency reproduces the measured 225 kHz") {
    const DriveVoltages v{130.0, 3.9};
    const double fr = radial_frequency(kGeom, v, kCa40) / ct::two_pi;
    CHECK(std::abs(fr - 225.0e3) / 225.0e3 < 0.03);
    CHECK(fr == doctest::Approx(227.42e3).epsilon(5e-4));
}

TEST_CASE("no rf confinement is rejected") {
    const DriveVoltages v{0.0, 3.9};
    CHECK_THROWS_WITH_AS(radial_frequency(kGeom, v, kCa40), "radially deconfined",
                         InfeasibleError);
}

TEST_CASE("rf-only radial frequency at 130 V") {
    // evaluated by hand from the constants: 254.5 kHz (the full 227.4 kHz
    // value at 3.9 V end voltage requires exactly this rf term)
    const DriveVoltages v{130.0, 0.0};
    const double f_first = radial_frequency_rf_term(kGeom, v, kCa40) / ct::two_pi;
    CHECK(f_first == doctest::Approx(254.5e3).epsilon(2e-3));
    CHECK(radial_frequency(kGeom, v, kCa40) ==
          doctest::Approx(radial_frequency_rf_term(kGeom, v, kCa40)).epsilon(1e-14));
}

TEST_CASE("mathieu q values and stability flags") {
    CHECK(mathieu_q(kGeom, {130.0, 3.9}, kCa40).q == doctest::Approx(0.17996).epsilon(1e-3));
    CHECK(mathieu_q(kGeom, {130.0, 3.9}, kCa40).flag == StabilityFlag::ok);
    CHECK(mathieu_q(kGeom, {0.0, 3.9}, kCa40).q == 0.0);
    const auto warn = mathieu_q(kGeom, {400.0, 3.9}, kCa40);
    CHECK(warn.q == doctest::Approx(0.5537).epsilon(1e-3));
    CHECK(warn.flag == StabilityFlag::warn);
    CHECK(mathieu_q(kGeom, {700.0, 3.9}, kCa40).flag == StabilityFlag::unstable);
}

TEST_CASE("rf term equals q Omega / (2 sqrt(2)) to machine precision") {
    for (double u : {40.0, 130.0, 275.0, 400.0}) {
        const DriveVoltages v{u, 2.0};
        const double q = mathieu_q(kGeom, v, kCa40).q;
        const double expected = q * kGeom.omega_rf_rad_s / (2.0 * std::sqrt(2.0));
        CHECK(radial_frequency_rf_term(kGeom, v, kCa40) ==
              doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("crystal density anchors") {
    // measured densities span 6.8e7 to 1.1e9 cm^-3 over 100..400 V
    const double rho100 = crystal_density(kGeom, {100.0, 3.9}, kCa40);
    const double rho300 = crystal_density(kGeom, {300.0, 1.7}, kCa40);
    const double rho400 = crystal_density(kGeom, {400.0, 3.9}, kCa40);
    CHECK(std::abs(rho100 - 6.8e13) / 6.8e13 < 0.05);
    CHECK(std::abs(rho300 - 6.1e14) / 6.1e14 < 0.05);
    CHECK(std::abs(rho400 - 1.1e15) / 1.1e15 < 0.05);
}

TEST_CASE("crystal density scales as U_rf^2 and ignores U_end") {
    const double rho1 = crystal_density(kGeom, {100.0, 3.9}, kCa40);
    const double rho2 = crystal_density(kGeom, {200.0, 3.9}, kCa40);
    CHECK(rho2 == doctest::Approx(4.0 * rho1).epsilon(1e-14));
    CHECK(crystal_density(kGeom, {100.0, 0.4}, kCa40) == rho1);
    CHECK(crystal_density(kGeom, {100.0, 9.9}, kCa40) == rho1);
}

TEST_CASE("pseudopotential energy") {
    const DriveVoltages v{130.0, 3.9};
    CHECK(pseudo_potential(kGeom, v, kCa40, {0.0, 0.0, 0.0}) == 0.0);
    // 0.5 M omega_z^2 (10 um)^2 evaluated by hand
    const double e = pseudo_potential(kGeom, v, kCa40, {0.0, 0.0, 10e-6});
    CHECK(e == doctest::Approx(3.419e-24).epsilon(5e-3));
    // radial symmetry
    CHECK(pseudo_potential(kGeom, v, kCa40, {7e-6, 0.0, 0.0}) ==
          pseudo_potential(kGeom, v, kCa40, {0.0, 7e-6, 0.0}));
    // propagates deconfinement
    CHECK_THROWS_AS(pseudo_potential(kGeom, {0.0, 3.9}, kCa40, {1e-6, 0.0, 0.0}),
                    InfeasibleError);
}

TEST_CASE("end-cap defocusing cancels in omega_r^2 + omega_z^2 / 2") {
    const double u_rf = 220.0;
    double reference = 0.0;
    bool first = true;
    for (double u_end : {1.0, 3.9, 9.0}) {
        const DriveVoltages v{u_rf, u_end};
        const double wr = radial_frequency(kGeom, v, kCa40);
        const double wz = axial_frequency(kGeom, v, kCa40);
        const double combined = wr * wr + 0.5 * wz * wz;
        if (first) {
            reference = combined;
            first = false;
        } else {
            CHECK(combined == doctest::Approx(reference).epsilon(1e-12));
        }
    }
}

TEST_CASE("isotope scaling of the axial frequency") {
    const DriveVoltages v{130.0, 3.9};
    const IonSpecies ca44 = calcium_ion(44);
    const double ratio = axial_frequency(kGeom, v, kCa40) / axial_frequency(kGeom, v, ca44);
    CHECK(ratio == doctest::Approx(std::sqrt(ca44.mass_kg / kCa40.mass_kg)).epsilon(1e-13));
}

TEST_CASE("randomized voltage/mass property sweep") {
    // hand-rolled generator across the stable operating domain
    std::uint64_t s = 99;
    auto next = [&s]() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return static_cast<double>(s >> 11) * 0x1.0p-53;
    };
    for (int trial = 0; trial < 200; ++trial) {
        const double u_rf = 80.0 + 320.0 * next();
        const double u_end = 0.2 + 8.0 * next();
        IonSpecies ion = kCa40;
        ion.mass_kg *= 0.5 + 1.5 * next();  // 20..80 u
        const DriveVoltages v{u_rf, u_end};

        // rf term identity against the Mathieu parameter
        const double q = mathieu_q(kGeom, v, ion).q;
        CHECK(radial_frequency_rf_term(kGeom, v, ion) ==
              doctest::Approx(q * kGeom.omega_rf_rad_s / (2.0 * std::sqrt(2.0)))
                  .epsilon(1e-13));

        // density: quadratic in U_rf, independent of U_end
        const DriveVoltages v2{2.0 * u_rf, 0.3 * u_end};
        CHECK(crystal_density(kGeom, v2, ion) ==
              doctest::Approx(4.0 * crystal_density(kGeom, v, ion)).epsilon(1e-13));

        // defocusing cancellation identity
        double wr = 0.0;
        try {
            wr = radial_frequency(kGeom, v, ion);
        } catch (const InfeasibleError&) {
            continue;  // deconfined corner of the domain
        }
        const double wz = axial_frequency(kGeom, v, ion);
        const double rf = radial_frequency_rf_term(kGeom, v, ion);
        CHECK(wr * wr + 0.5 * wz * wz == doctest::Approx(rf * rf).epsilon(1e-12));
    }
}

TEST_CASE("type invariants are enforced") {
    TrapGeometry bad = kGeom;
    bad.eta = 1.5;
    CHECK_THROWS_AS(validate(bad), ConfigError);
    DriveVoltages v{-1.0, 0.0};
    CHECK_THROWS_AS(validate(v), ConfigError);
    IonSpecies ion = kCa40;
    ion.mass_kg = 0.0;
    CHECK_THROWS_AS(validate(ion), ConfigError);
}
