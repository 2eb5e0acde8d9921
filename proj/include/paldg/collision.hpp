#ifndef PALDG_COLLISION_HPP
#define PALDG_COLLISION_HPP

#include <cmath>
#include <complex>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "paldg/errors.hpp"
#include "paldg/field.hpp"
#include "paldg/lattice.hpp"
#include "paldg/scalar.hpp"

namespace paldg {

struct RelaxationParams {
    double tau = 0.0;
    double singular_tol = 1e-12;
};

// |denominator| measured against max(|dt|, tau, 1).
template <class S>
inline bool collision_denominator_ok(const S& denom, const S& dt, const RelaxationParams& p) {
    const double scale = std::max({std::abs(dt), p.tau, 1.0});
    return std::abs(denom) > p.singular_tol * scale;
}

namespace detail {

template <class S>
inline void singular_collision(const S& denom, const S& dt, int stage) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "singular collision denominator |2*tau+dt|=%.3e at dt=(%.6e,%.6e)",
                  std::abs(denom), real_part(dt), imag_part(dt));
    std::string msg(buf);
    if (stage >= 0) msg += " (composition stage " + std::to_string(stage) + ")";
    throw SingularCollisionError(msg, stage);
}

}  // namespace detail

// Implicit-Euler collision C1(dt) f = (dt f^eq + tau f) / (dt + tau).
// w-moments are conserved exactly because f^eq is built from the node's own w.
template <class S>
inline void collide_c1_node(const LatticeModel<S>& model, const RelaxationParams& p, const S& dt,
                            std::span<S> f, std::span<S> scratch, int stage = -1) {
    const int m = model.m;
    std::span<S> w = scratch.subspan(0, m);
    std::span<S> q = scratch.subspan(m, m);
    std::span<S> feq = scratch.subspan(2 * m, 2 * m);
    for (int k = 0; k < m; ++k) w[k] = f[2 * k] + f[2 * k + 1];
    maxwellian_node(model, std::span<const S>(w.data(), m), feq, q);
    if (p.tau == 0.0) {
        for (int i = 0; i < 2 * m; ++i) f[i] = feq[i];
        return;
    }
    const S denom = dt + p.tau;
    if (!collision_denominator_ok(denom, dt, p)) detail::singular_collision(denom, dt, stage);
    for (int i = 0; i < 2 * m; ++i) f[i] = (dt * feq[i] + p.tau * f[i]) / denom;
}

// Crank-Nicolson collision C2(dt) f = ((2 tau - dt) f + 2 dt f^eq) / (2 tau + dt).
// At tau = 0 the dt-free involution form 2 f^eq - f is used, which is what
// makes the symmetrized step exact at dt = 0.
template <class S>
inline void collide_c2_node(const LatticeModel<S>& model, const RelaxationParams& p, const S& dt,
                            std::span<S> f, std::span<S> scratch, int stage = -1) {
    if (p.tau != 0.0 && dt == S{}) return;
    const int m = model.m;
    std::span<S> w = scratch.subspan(0, m);
    std::span<S> q = scratch.subspan(m, m);
    std::span<S> feq = scratch.subspan(2 * m, 2 * m);
    for (int k = 0; k < m; ++k) w[k] = f[2 * k] + f[2 * k + 1];
    maxwellian_node(model, std::span<const S>(w.data(), m), feq, q);
    if (p.tau == 0.0) {
        for (int i = 0; i < 2 * m; ++i) f[i] = 2.0 * feq[i] - f[i];
        return;
    }
    const S denom = 2.0 * p.tau + dt;
    if (!collision_denominator_ok(denom, dt, p)) detail::singular_collision(denom, dt, stage);
    const S a = (2.0 * p.tau - dt) / denom;
    const S b = 2.0 * dt / denom;
    for (int i = 0; i < 2 * m; ++i) f[i] = a * f[i] + b * feq[i];
}

// Convenience node-state wrappers.
template <class S>
inline MacroState<S> collide_c1(const LatticeModel<S>& model, const RelaxationParams& p,
                                const S& dt, MacroState<S> f) {
    std::vector<S> scratch(4 * model.m);
    collide_c1_node(model, p, dt, std::span<S>(f), std::span<S>(scratch));
    return f;
}

template <class S>
inline MacroState<S> collide_c2(const LatticeModel<S>& model, const RelaxationParams& p,
                                const S& dt, MacroState<S> f) {
    std::vector<S> scratch(4 * model.m);
    collide_c2_node(model, p, dt, std::span<S>(f), std::span<S>(scratch));
    return f;
}

namespace detail {

// The guard is checked once up front (dt and tau are uniform over the field)
// so the parallel loop never throws.
template <class S>
inline void check_c2_guard(const RelaxationParams& p, const S& dt, int stage) {
    if (p.tau == 0.0 || dt == S{}) return;
    const S denom = 2.0 * p.tau + dt;
    if (!collision_denominator_ok(denom, dt, p)) singular_collision(denom, dt, stage);
}

}  // namespace detail

// Pointwise collision over the whole field, parallel over cells.
template <class S, class NodeKernel>
inline void collide_field(const LatticeModel<S>& model, const RelaxationParams& p, const S& dt,
                          KineticField<S>& f, NodeKernel&& kernel) {
    const int nv = f.n_vel;
    const std::size_t lane = f.lane_size();
#pragma omp parallel
    {
        std::vector<S> node(nv);
        std::vector<S> scratch(2 * nv);
#pragma omp for schedule(static)
        for (long long idx = 0; idx < static_cast<long long>(lane); ++idx) {
            for (int iv = 0; iv < nv; ++iv) node[iv] = f.data[lane * iv + idx];
            kernel(model, p, dt, std::span<S>(node), std::span<S>(scratch), -1);
            for (int iv = 0; iv < nv; ++iv) f.data[lane * iv + idx] = node[iv];
        }
    }
}

template <class S>
inline void collide_c2_field(const LatticeModel<S>& model, const RelaxationParams& p, const S& dt,
                             KineticField<S>& f, int stage = -1) {
    detail::check_c2_guard(p, dt, stage);
    collide_field(model, p, dt, f, collide_c2_node<S>);
}

template <class S>
inline void collide_c1_field(const LatticeModel<S>& model, const RelaxationParams& p, const S& dt,
                             KineticField<S>& f, int stage = -1) {
    if (p.tau > 0.0) {
        const S denom = dt + p.tau;
        if (!collision_denominator_ok(denom, dt, p)) detail::singular_collision(denom, dt, stage);
    }
    collide_field(model, p, dt, f, collide_c1_node<S>);
}

// Serial reference version kept for testing the parallel kernel.
template <class S>
inline void collide_c2_field_reference(const LatticeModel<S>& model, const RelaxationParams& p,
                                       const S& dt, KineticField<S>& f) {
    detail::check_c2_guard(p, dt, -1);
    const int nv = f.n_vel;
    const std::size_t lane = f.lane_size();
    std::vector<S> node(nv), scratch(2 * nv);
    for (std::size_t idx = 0; idx < lane; ++idx) {
        for (int iv = 0; iv < nv; ++iv) node[iv] = f.data[lane * iv + idx];
        collide_c2_node(model, p, dt, std::span<S>(node), std::span<S>(scratch));
        for (int iv = 0; iv < nv; ++iv) f.data[lane * iv + idx] = node[iv];
    }
}

}  // namespace paldg

#endif
