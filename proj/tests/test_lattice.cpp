#include <doctest.h>

#include <complex>

#include "paldg/models.hpp"
#include "support/helpers.hpp"

using namespace paldg;
using paldg::testing::make_linear_model;

TEST_CASE("maxwellian of the zero state vanishes for a linear flux") {
    const auto model = make_linear_model<double>(0.7, 2.0);
    const MacroState<double> w = {0.0};
    const auto feq = maxwellian(model, w);
    CHECK(feq[0] == 0.0);
    CHECK(feq[1] == 0.0);
}

TEST_CASE("maxwellian matches the two-speed equilibrium formula") {
    const auto model = make_isothermal<double>(0.6, 2.0);
    const MacroState<double> w = {1.0, 0.6};  // rho = 1, u = 0.6
    const auto feq = maxwellian(model, w);
    // q(w) = (0.6, 0.36 + 0.36) = (0.6, 0.72)
    CHECK(feq[0] == doctest::Approx(0.35).epsilon(1e-14));
    CHECK(feq[1] == doctest::Approx(0.65).epsilon(1e-14));
    CHECK(feq[2] == doctest::Approx(0.3 - 0.72 / 4.0).epsilon(1e-14));
    CHECK(feq[3] == doctest::Approx(0.3 + 0.72 / 4.0).epsilon(1e-14));
}

TEST_CASE("moment map on explicit values") {
    const auto model = make_linear_model<double>(0.0, 2.0);
    const MacroState<double> f = {0.35, 0.65};
    const auto [w, z] = moments(model, f);
    CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(z[0] == doctest::Approx(0.6).epsilon(1e-15));

    const auto [w0, z0] = moments(model, MacroState<double>{0.0, 0.0});
    CHECK(w0[0] == 0.0);
    CHECK(z0[0] == 0.0);
}

TEST_CASE("maxwellian moments reproduce (w, q(w)) for random admissible states") {
    const auto iso = make_isothermal<double>(0.6, 2.0);
    const auto eul = make_euler<double>(1.4, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        {
            const auto w = testing::random_isothermal_state();
            const auto feq = maxwellian(iso, w);
            const auto [wm, zm] = moments(iso, feq);
            std::vector<double> q(2);
            iso.eval_flux(std::span<const double>(w), std::span<double>(q));
            for (int k = 0; k < 2; ++k) {
                CHECK(wm[k] == doctest::Approx(w[k]).epsilon(1e-14));
                CHECK(zm[k] == doctest::Approx(q[k]).epsilon(2e-14));
            }
        }
        {
            const auto w = testing::random_euler_state(1.4);
            const auto feq = maxwellian(eul, w);
            const auto [wm, zm] = moments(eul, feq);
            std::vector<double> q(3);
            eul.eval_flux(std::span<const double>(w), std::span<double>(q));
            for (int k = 0; k < 3; ++k) {
                CHECK(wm[k] == doctest::Approx(w[k]).epsilon(1e-14));
                CHECK(zm[k] == doctest::Approx(q[k]).epsilon(2e-13));
            }
        }
    }
}

TEST_CASE("equilibrium projection preserves w") {
    const auto model = make_isothermal<double>(0.6, 2.0);
    MacroState<double> f = {0.2, 0.9, -0.1, 0.5};
    const auto [w, z] = moments(model, f);
    const auto feq = maxwellian(model, w);
    const auto [w2, z2] = moments(model, feq);
    CHECK(w2[0] == doctest::Approx(w[0]).epsilon(1e-15));
    CHECK(w2[1] == doctest::Approx(w[1]).epsilon(1e-15));
}

TEST_CASE("velocity reversal is a bit-exact involution") {
    KineticField<double> f(4, 3, 4);
    for (std::size_t i = 0; i < f.data.size(); ++i) f.data[i] = testing::uniform(-2.0, 2.0);
    const auto original = f.data;

    reverse_velocities(f);
    CHECK(f.at(0, 1, 2) == original[f.lane_size() * 1 + 1 * 3 + 2]);
    reverse_velocities(f);
    CHECK(f.data == original);
}

TEST_CASE("reversal swaps node pairs and negates z") {
    const auto model = make_linear_model<double>(0.3, 2.0);
    KineticField<double> f(2, 2, 2);
    f.at(0, 0, 0) = 0.7;  // (a, b) -> (b, a)
    f.at(1, 0, 0) = -0.2;
    const MacroState<double> node = {0.7, -0.2};
    const auto [w, z] = moments(model, node);

    reverse_velocities(f);
    CHECK(f.at(0, 0, 0) == -0.2);
    CHECK(f.at(1, 0, 0) == 0.7);
    const MacroState<double> swapped = {f.at(0, 0, 0), f.at(1, 0, 0)};
    const auto [w2, z2] = moments(model, swapped);
    CHECK(w2[0] == w[0]);
    CHECK(z2[0] == -z[0]);
}

TEST_CASE("reversal leaves symmetric data unchanged") {
    KineticField<double> f(3, 2, 4);
    for (std::size_t i = 0; i < f.data.size(); ++i) f.data[i] = 1.25;
    const auto before = f.data;
    reverse_velocities(f);
    CHECK(f.data == before);
}

TEST_CASE("sub-characteristic margin") {
    const auto iso = make_isothermal<double>(0.6, 2.0);
    std::vector<MacroState<double>> states = {{1.0, 0.0}};
    CHECK(check_subcharacteristic(iso, states) == doctest::Approx(1.4).epsilon(1e-14));

    const auto iso_slow = make_isothermal<double>(0.6, 0.5);
    CHECK(check_subcharacteristic(iso_slow, states) == doctest::Approx(-0.1).epsilon(1e-13));

    const auto eul = make_euler<double>(1.4, 2.0);
    // rho = 1, u = 0.01, p = 1
    std::vector<MacroState<double>> estates = {{1.0, 0.01, 0.5 * 1e-4 + 2.5}};
    CHECK(check_subcharacteristic(eul, estates) ==
          doctest::Approx(2.0 - (0.01 + std::sqrt(1.4))).epsilon(1e-12));
}

TEST_CASE("margin decreases monotonically in |u| for the isothermal model") {
    const auto model = make_isothermal<double>(0.6, 2.0);
    double prev = 10.0;
    for (double u = 0.0; u <= 1.0; u += 0.1) {
        std::vector<MacroState<double>> states = {{1.0, u}};
        const double margin = check_subcharacteristic(model, states);
        CHECK(margin < prev);
        prev = margin;
    }
}

TEST_CASE("empty state list is rejected") {
    const auto model = make_isothermal<double>(0.6, 2.0);
    std::vector<MacroState<double>> states;
    CHECK_THROWS_AS(check_subcharacteristic(model, states), ModelError);
}
