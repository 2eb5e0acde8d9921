#ifndef PALDG_LATTICE_HPP
#define PALDG_LATTICE_HPP

#include <algorithm>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "paldg/errors.hpp"
#include "paldg/field.hpp"
#include "paldg/scalar.hpp"

namespace paldg {

// Kinetic representation of a system of m conservation laws on the
// two-speed lattice (-lambda, +lambda) per conserved component.  Index 2k
// carries -lambda, index 2k+1 carries +lambda for component k.

template <class S>
using MacroState = std::vector<S>;

template <class S>
struct LatticeModel {
    int m = 0;
    double lambda = 0.0;
    std::string name;

    // q(w): m conservative fluxes, written rationally in w so the complex
    // instantiation stays analytic.
    std::function<void(std::span<const S>, std::span<S>)> flux;

    // Spectral radius of the flux Jacobian at a real admissible state.
    std::function<double(std::span<const double>)> max_wave_speed;

    int n_vel() const { return 2 * m; }

    void eval_flux(std::span<const S> w, std::span<S> q) const { flux(w, q); }
};

// f^eq_{2k} = w_k/2 - q_k/(2 lambda), f^eq_{2k+1} = w_k/2 + q_k/(2 lambda).
// `scratch_q` must have room for m flux values.
template <class S>
inline void maxwellian_node(const LatticeModel<S>& model, std::span<const S> w,
                            std::span<S> feq, std::span<S> scratch_q) {
    model.eval_flux(w, scratch_q);
    const double inv2l = 1.0 / (2.0 * model.lambda);
    for (int k = 0; k < model.m; ++k) {
        const S half_w = w[k] * 0.5;
        const S half_q = scratch_q[k] * inv2l;
        feq[2 * k] = half_w - half_q;
        feq[2 * k + 1] = half_w + half_q;
    }
}

template <class S>
inline MacroState<S> maxwellian(const LatticeModel<S>& model, const MacroState<S>& w) {
    MacroState<S> feq(2 * model.m), q(model.m);
    maxwellian_node(model, std::span<const S>(w), std::span<S>(feq), std::span<S>(q));
    return feq;
}

// Moment map Mf = (w, z): w_k = f_{2k} + f_{2k+1}, z_k = lambda (f_{2k+1} - f_{2k}).
template <class S>
inline void moments_node(const LatticeModel<S>& model, std::span<const S> f,
                         std::span<S> w, std::span<S> z) {
    for (int k = 0; k < model.m; ++k) {
        w[k] = f[2 * k] + f[2 * k + 1];
        z[k] = model.lambda * (f[2 * k + 1] - f[2 * k]);
    }
}

template <class S>
inline std::pair<MacroState<S>, MacroState<S>> moments(const LatticeModel<S>& model,
                                                       const MacroState<S>& f) {
    MacroState<S> w(model.m), z(model.m);
    moments_node(model, std::span<const S>(f), std::span<S>(w), std::span<S>(z));
    return {w, z};
}

// min over states of (lambda - max wave speed); <= 0 means the kinetic
// representation is not dominated by the lattice speed.
inline double check_subcharacteristic(const LatticeModel<double>& model,
                                      std::span<const MacroState<double>> states) {
    if (states.empty()) throw ModelError("check_subcharacteristic: no states given");
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& w : states) {
        margin = std::min(margin, model.lambda - model.max_wave_speed(w));
    }
    return margin;
}

// Exchange operator R: swap the -lambda / +lambda slabs of every pair.
// Linear involution; commutes with the w-moment and negates z.
template <class S>
inline void reverse_velocities(KineticField<S>& f) {
    const std::size_t n = f.lane_size();
    for (int k = 0; k < f.n_vel / 2; ++k) {
        S* lo = f.lane(2 * k);
        S* hi = f.lane(2 * k + 1);
        std::swap_ranges(lo, lo + n, hi);
    }
}

}  // namespace paldg

#endif
