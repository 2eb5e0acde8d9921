#include "paldg/riemann.hpp"

#include <algorithm>
#include <cmath>

namespace paldg {

namespace {

// Velocity reachable from the left state through a 1-wave with middle
// density rho, and from the right state through a 2-wave.  phi_l decreases
// and phi_r increases in rho, so the connection has a unique root.
double phi_left(double rho, double rho_l, double u_l, double c) {
    if (rho <= rho_l) return u_l - c * std::log(rho / rho_l);          // 1-rarefaction
    return u_l - c * (rho - rho_l) / std::sqrt(rho * rho_l);           // 1-shock
}

double phi_right(double rho, double rho_r, double u_r, double c) {
    if (rho <= rho_r) return u_r + c * std::log(rho / rho_r);          // 2-rarefaction
    return u_r + c * (rho - rho_r) / std::sqrt(rho * rho_r);           // 2-shock
}

}  // namespace

RiemannSolutionIsothermal solve_riemann_isothermal(double rho_l, double u_l, double rho_r,
                                                   double u_r, double c) {
    if (rho_l <= 0.0 || rho_r <= 0.0) {
        throw ModelError("riemann: densities must be positive");
    }
    RiemannSolutionIsothermal sol;
    sol.rho_l = rho_l;
    sol.u_l = u_l;
    sol.rho_r = rho_r;
    sol.u_r = u_r;
    sol.c = c;

    auto g = [&](double rho) {
        return phi_left(rho, rho_l, u_l, c) - phi_right(rho, rho_r, u_r, c);
    };

    // Bracket the root: g is strictly decreasing, positive for rho -> 0
    // (both curves diverge logarithmically) and negative for large rho.
    double lo = std::min(rho_l, rho_r);
    double hi = std::max(rho_l, rho_r);
    while (g(lo) < 0.0 && lo > 1e-300) lo *= 0.5;
    while (g(hi) > 0.0 && hi < 1e300) hi *= 2.0;
    if (!(g(lo) >= 0.0 && g(hi) <= 0.0)) {
        throw ModelError("riemann: failed to bracket the middle density");
    }

    // Safeguarded Newton (numerical derivative) with bisection fallback.
    double rho = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double val = g(rho);
        if (val > 0.0) {
            lo = rho;
        } else {
            hi = rho;
        }
        const double eps = 1e-7 * std::max(rho, 1e-12);
        const double dg = (g(rho + eps) - g(rho - eps)) / (2.0 * eps);
        double next = (dg != 0.0) ? rho - val / dg : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - rho) <= 1e-12 * std::max(1.0, rho)) {
            rho = next;
            break;
        }
        rho = next;
    }
    sol.rho_star = rho;
    sol.u_star = 0.5 * (phi_left(rho, rho_l, u_l, c) + phi_right(rho, rho_r, u_r, c));

    // Wave structure and edges in xi = x/t.
    if (sol.rho_star <= rho_l) {
        sol.wave1 = WaveType::rarefaction;
        sol.head1 = u_l - c;
        sol.tail1 = sol.u_star - c;
    } else {
        sol.wave1 = WaveType::shock;
        // sigma = u - j/rho with mass flux j = +c sqrt(rho* rho_l)
        const double sigma = u_l - c * std::sqrt(sol.rho_star / rho_l);
        sol.head1 = sol.tail1 = sigma;
    }
    if (sol.rho_star <= rho_r) {
        sol.wave2 = WaveType::rarefaction;
        sol.tail2 = sol.u_star + c;
        sol.head2 = u_r + c;
    } else {
        sol.wave2 = WaveType::shock;
        const double sigma = u_r + c * std::sqrt(sol.rho_star / rho_r);
        sol.tail2 = sol.head2 = sigma;
    }
    return sol;
}

std::array<double, 2> RiemannSolutionIsothermal::sample_xi(double xi) const {
    if (xi <= head1) return {rho_l, u_l};
    if (xi < tail1) {
        // Inside the 1-fan: u - c = xi, u + c ln rho invariant.
        const double u = xi + c;
        const double rho = rho_l * std::exp((u_l - u) / c);
        return {rho, u};
    }
    if (xi <= tail2) return {rho_star, u_star};
    if (xi < head2) {
        // Inside the 2-fan: u + c = xi, u - c ln rho invariant.
        const double u = xi - c;
        const double rho = rho_r * std::exp((u - u_r) / c);
        return {rho, u};
    }
    return {rho_r, u_r};
}

std::array<double, 2> RiemannSolutionIsothermal::sample(double x, double t) const {
    if (t <= 0.0) {
        return (x < 0.0) ? std::array<double, 2>{rho_l, u_l} : std::array<double, 2>{rho_r, u_r};
    }
    return sample_xi(x / t);
}

}  // namespace paldg
