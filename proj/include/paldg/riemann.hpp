#ifndef PALDG_RIEMANN_HPP
#define PALDG_RIEMANN_HPP

#include <array>

#include "paldg/errors.hpp"

namespace paldg {

enum class WaveType { shock, rarefaction };

// Exact solution of the isothermal Euler Riemann problem.  Self-similar:
// the sampler depends on (x, t) only through xi = x/t.
struct RiemannSolutionIsothermal {
    double rho_l = 0.0, u_l = 0.0;
    double rho_r = 0.0, u_r = 0.0;
    double c = 0.0;
    double rho_star = 0.0, u_star = 0.0;
    WaveType wave1 = WaveType::rarefaction;
    WaveType wave2 = WaveType::rarefaction;

    // Wave edges in xi = x/t: 1-wave spans [head1, tail1], 2-wave
    // [tail2, head2]; for shocks head == tail == sigma.
    double head1 = 0.0, tail1 = 0.0;
    double tail2 = 0.0, head2 = 0.0;

    std::array<double, 2> sample_xi(double xi) const;  // (rho, u)
    std::array<double, 2> sample(double x, double t) const;
};

// rho* is the root of the two-wave connection built from the isothermal Lax
// curves (rarefaction: u-shift -c ln(rho*/rho_side); shock:
// -c (rho*-rho_side)/sqrt(rho* rho_side)), found by safeguarded
// Newton/bisection to 1e-12.
RiemannSolutionIsothermal solve_riemann_isothermal(double rho_l, double u_l, double rho_r,
                                                   double u_r, double c);

}  // namespace paldg

#endif
