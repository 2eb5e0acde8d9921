#include <doctest.h>

#include <cmath>
#include <vector>

#include "paldg/models.hpp"
#include "paldg/reference.hpp"
#include "support/helpers.hpp"

using namespace paldg;

TEST_CASE("smooth pulse initial data") {
    CHECK(smooth_pulse_init(0.0)[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(smooth_pulse_init(0.0)[1] == 0.0);
    CHECK(smooth_pulse_init(2.0)[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(smooth_pulse_init(-2.0)[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("contact wave limits and midpoint") {
    const ContactWaveParams p;
    CHECK(contact_wave_exact(-5.0, 0.0)[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(contact_wave_exact(5.0, 0.0)[0] == doctest::Approx(1.0).epsilon(1e-14));
    // on the contact, omega = 1/2
    const double t = 3.0;
    CHECK(contact_wave_exact(p.u * t, t)[0] == doctest::Approx(1.5).epsilon(1e-14));
    // constant velocity and pressure
    const auto w = contact_wave_exact(0.13, 0.7);
    CHECK(w[1] / w[0] == doctest::Approx(0.01).epsilon(1e-13));
    const double pres = 0.4 * (w[2] - 0.5 * w[1] * w[1] / w[0]);
    CHECK(pres == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("contact wave satisfies the conservation law (finite-difference residual)") {
    // Fourth-order central differences in x and t of w and q(w) on the
    // closed-form profile.
    PolytropicParams gas{1.4};
    auto q = [&](double x, double t) {
        const auto w = contact_wave_exact(x, t);
        std::vector<double> out(3);
        euler_flux<double>(w, out, gas);
        return out;
    };
    const double h = 1e-3;
    for (double x : {-0.15, 0.0, 0.08, 0.2}) {
        for (double t : {0.5, 1.0}) {
            for (int k = 0; k < 3; ++k) {
                const double dwdt = (-contact_wave_exact(x, t + 2 * h)[k] +
                                     8 * contact_wave_exact(x, t + h)[k] -
                                     8 * contact_wave_exact(x, t - h)[k] +
                                     contact_wave_exact(x, t - 2 * h)[k]) /
                                    (12 * h);
                const double dqdx =
                    (-q(x + 2 * h, t)[k] + 8 * q(x + h, t)[k] - 8 * q(x - h, t)[k] +
                     q(x - 2 * h, t)[k]) /
                    (12 * h);
                CHECK(std::abs(dwdt + dqdx) < 1e-8);
            }
        }
    }
}

TEST_CASE("l2 error of identical fields is zero") {
    const auto mesh = make_mesh(-1.0, 1.0, 8, 3);
    KineticField<double> f(8, 4, 4);
    for (auto& v : f.data) v = testing::uniform(-1.0, 1.0);
    const auto norms = l2_error(f, f, mesh, 2);
    CHECK(norms.total == 0.0);
    CHECK(norms.per_w[0] == 0.0);
    CHECK(norms.per_w[1] == 0.0);
}

TEST_CASE("constant offset has the closed-form norm") {
    const double c0 = 0.37, length = 2.0;
    const int n_vel = 4;
    const auto mesh = make_mesh(-1.0, 1.0, 10, 4);
    KineticField<double> a(10, 5, n_vel), b(10, 5, n_vel);
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        a.data[i] = testing::uniform(-1.0, 1.0);
        b.data[i] = a.data[i] + c0;
    }
    const auto norms = l2_error(a, b, mesh, 2);
    CHECK(norms.total == doctest::Approx(c0 * std::sqrt(length * n_vel)).epsilon(1e-12));
    // each w component differs by 2 c0
    CHECK(norms.per_w[0] == doctest::Approx(2.0 * c0 * std::sqrt(length)).epsilon(1e-12));

    KineticField<double> wrong(9, 5, n_vel);
    CHECK_THROWS_AS(l2_error(a, wrong, mesh, 2), Error);
}

TEST_CASE("GL quadrature of a smooth square matches oversampled trapezoid") {
    // Localized integrand (vanishing with all derivatives at the ends), so
    // the oversampled trapezoid rule is itself accurate far beyond 1e-10.
    const auto mesh = make_mesh(-2.0, 2.0, 20, 5);
    auto g = [](double x) { return std::exp(-10.0 * x * x) * (1.0 + 0.3 * std::sin(3.0 * x)); };
    KineticField<double> f(20, 6, 2), zero(20, 6, 2);
    for (int cell = 0; cell < 20; ++cell)
        for (int node = 0; node < 6; ++node)
            for (int iv = 0; iv < 2; ++iv) f.at(iv, cell, node) = g(mesh.node_x(cell, node));

    const double gl = l2_error(f, zero, mesh, 1).total;

    const int n_tz = 20 * 6 * 10;
    double acc = 0.0;
    for (int i = 0; i <= n_tz; ++i) {
        const double x = -2.0 + 4.0 * i / n_tz;
        const double val = 2.0 * g(x) * g(x);  // both lanes
        acc += (i == 0 || i == n_tz) ? 0.5 * val : val;
    }
    acc *= 4.0 / n_tz;
    CHECK(gl == doctest::Approx(std::sqrt(acc)).epsilon(1e-10));
}

TEST_CASE("l2 error against a callable reference") {
    const auto mesh = make_mesh(-1.0, 1.0, 12, 3);
    KineticField<double> f(12, 4, 2);
    for (int cell = 0; cell < 12; ++cell)
        for (int node = 0; node < 4; ++node)
            for (int iv = 0; iv < 2; ++iv) f.at(iv, cell, node) = 0.5;
    const auto norms =
        l2_error_vs(f, mesh, 1, [](double, int) { return std::complex<double>(0.5, 0.0); });
    CHECK(norms.total == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
}

TEST_CASE("observed orders from error sequences") {
    {
        const auto t = observed_order({1.0, 1.0 / 16.0}, {1.0, 0.5});
        CHECK(t.slopes.size() == 1);
        CHECK(t.slopes[0] == doctest::Approx(4.0).epsilon(1e-13));
        CHECK_FALSE(t.at_floor[0]);
    }
    {
        const auto t = observed_order({1.0, 0.25, 1.0 / 16.0}, {1.0, 0.5, 0.25});
        CHECK(t.slopes[0] == doctest::Approx(2.0).epsilon(1e-13));
        CHECK(t.slopes[1] == doctest::Approx(2.0).epsilon(1e-13));
    }
    {
        const auto t = observed_order({1e-13, 9e-14}, {1.0, 0.5});
        CHECK(t.at_floor[0]);
        CHECK(t.at_floor[1]);
    }
    CHECK_THROWS_AS(observed_order({1.0, 0.0}, {1.0, 0.5}), Error);
    CHECK_THROWS_AS(observed_order({1.0}, {1.0}), Error);
}

TEST_CASE("field sampler reproduces polynomials exactly and transfers between nested meshes") {
    const int d = 3;
    auto poly = [](double x) { return ((0.3 * x - 0.2) * x + 1.1) * x - 0.4; };  // cubic
    const auto fine = make_mesh(-1.0, 1.0, 40, d);
    KineticField<double> f(40, d + 1, 2);
    for (int cell = 0; cell < 40; ++cell)
        for (int node = 0; node <= d; ++node)
            for (int iv = 0; iv < 2; ++iv) f.at(iv, cell, node) = poly(fine.node_x(cell, node));

    FieldSampler<double> sampler(f, fine);
    for (double x : {-0.987, -0.5, 0.0, 0.123, 0.75, 1.0}) {
        CHECK(sampler(x, 0) == doctest::Approx(poly(x)).epsilon(1e-13));
    }

    // coarse GL nodes, including shared interface points
    const auto coarse = make_mesh(-1.0, 1.0, 10, d);
    for (int cell = 0; cell < 10; ++cell)
        for (int node = 0; node <= d; ++node) {
            const double x = coarse.node_x(cell, node);
            CHECK(sampler(x, 1) == doctest::Approx(poly(x)).epsilon(1e-13));
        }
}

TEST_CASE("equilibrium initialization matches the nodal Maxwellian") {
    const auto model = make_isothermal<double>(0.6, 2.0);
    const auto mesh = make_mesh(-2.0, 2.0, 6, 2);
    KineticField<double> f(6, 3, 4);
    init_equilibrium(f, mesh, model, [](double x) { return smooth_pulse_init(x); });

    const double x = mesh.node_x(3, 1);
    const auto feq = maxwellian(model, smooth_pulse_init(x));
    for (int iv = 0; iv < 4; ++iv) CHECK(f.at(iv, 3, 1) == doctest::Approx(feq[iv]).epsilon(1e-15));
}
