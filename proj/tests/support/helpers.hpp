#ifndef PALDG_TESTS_HELPERS_HPP
#define PALDG_TESTS_HELPERS_HPP

#include <complex>
#include <random>
#include <vector>

#include "paldg/lattice.hpp"

namespace paldg::testing {

// Scalar conservation law with linear flux q(w) = a w; handy m=1 model.
template <class S>
inline LatticeModel<S> make_linear_model(double a, double lambda) {
    LatticeModel<S> model;
    model.m = 1;
    model.lambda = lambda;
    model.name = "linear";
    model.flux = [a](std::span<const S> w, std::span<S> q) { q[0] = a * w[0]; };
    model.max_wave_speed = [a](std::span<const double>) { return std::abs(a); };
    return model;
}

inline std::mt19937& rng() {
    static std::mt19937 gen(20240613);
    return gen;
}

inline double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

// Random admissible isothermal state.
inline std::vector<double> random_isothermal_state() {
    const double rho = uniform(0.2, 3.0);
    const double u = uniform(-1.0, 1.0);
    return {rho, rho * u};
}

// Random admissible Euler state (positive pressure).
inline std::vector<double> random_euler_state(double gamma) {
    const double rho = uniform(0.2, 3.0);
    const double u = uniform(-1.0, 1.0);
    const double p = uniform(0.2, 3.0);
    return {rho, rho * u, 0.5 * rho * u * u + p / (gamma - 1.0)};
}

}  // namespace paldg::testing

#endif
