#ifndef PALDG_MODELS_HPP
#define PALDG_MODELS_HPP

#include <cmath>
#include <span>
#include <string>

#include "paldg/errors.hpp"
#include "paldg/lattice.hpp"
#include "paldg/scalar.hpp"

namespace paldg {

struct IsothermalParams {
    double c = 0.6;  // sound speed
};

struct PolytropicParams {
    double gamma = 1.4;
};

namespace detail {

template <class S>
inline void require_nonzero_density(const S& rho) {
    if (!(std::abs(rho) > 0.0)) throw ModelError("singular flux: rho = 0");
}

}  // namespace detail

// Isothermal gas: w = (rho, rho u), q(w) = (rho u, rho u^2 + c^2 rho).
// Rational in w, analytic away from w_0 = 0.
template <class S>
inline void isothermal_flux(std::span<const S> w, std::span<S> q, const IsothermalParams& p) {
    detail::require_nonzero_density(w[0]);
    q[0] = w[1];
    q[1] = w[1] * w[1] / w[0] + (p.c * p.c) * w[0];
}

inline double max_wave_speed_isothermal(std::span<const double> w, const IsothermalParams& p) {
    if (w[0] <= 0.0) throw ModelError("inadmissible state: rho <= 0");
    return std::abs(w[1] / w[0]) + p.c;
}

// Polytropic Euler: w = (rho, rho u, E) with E = rho u^2 / 2 + p/(gamma-1).
// q(w) = (rho u, rho u^2 + p, u (E + p)), expressed rationally in w.
template <class S>
inline void euler_flux(std::span<const S> w, std::span<S> q, const PolytropicParams& par) {
    detail::require_nonzero_density(w[0]);
    const S u = w[1] / w[0];
    const S pres = (par.gamma - 1.0) * (w[2] - w[1] * u * 0.5);
    q[0] = w[1];
    q[1] = w[1] * u + pres;
    q[2] = u * (w[2] + pres);
}

inline double euler_pressure(std::span<const double> w, const PolytropicParams& par) {
    return (par.gamma - 1.0) * (w[2] - 0.5 * w[1] * w[1] / w[0]);
}

inline double max_wave_speed_euler(std::span<const double> w, const PolytropicParams& par) {
    if (w[0] <= 0.0) throw ModelError("inadmissible state: rho <= 0");
    const double p = euler_pressure(w, par);
    if (p <= 0.0) throw ModelError("inadmissible state: p <= 0");
    const double u = w[1] / w[0];
    return std::abs(u) + std::sqrt(par.gamma * p / w[0]);
}

template <class S>
inline LatticeModel<S> make_isothermal(double c, double lambda) {
    LatticeModel<S> model;
    model.m = 2;
    model.lambda = lambda;
    model.name = "isothermal";
    IsothermalParams p{c};
    model.flux = [p](std::span<const S> w, std::span<S> q) { isothermal_flux<S>(w, q, p); };
    model.max_wave_speed = [p](std::span<const double> w) {
        return max_wave_speed_isothermal(w, p);
    };
    return model;
}

template <class S>
inline LatticeModel<S> make_euler(double gamma, double lambda) {
    LatticeModel<S> model;
    model.m = 3;
    model.lambda = lambda;
    model.name = "euler";
    PolytropicParams p{gamma};
    model.flux = [p](std::span<const S> w, std::span<S> q) { euler_flux<S>(w, q, p); };
    model.max_wave_speed = [p](std::span<const double> w) {
        return max_wave_speed_euler(w, p);
    };
    return model;
}

// Model selection by name, as used by the CLI config.
template <class S>
inline LatticeModel<S> make_model(const std::string& name, double c_or_gamma, double lambda) {
    if (name == "isothermal") return make_isothermal<S>(c_or_gamma, lambda);
    if (name == "euler") return make_euler<S>(c_or_gamma, lambda);
    throw ConfigError("unknown model: " + name);
}

}  // namespace paldg

#endif
