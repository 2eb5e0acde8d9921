#include "paldg/reference.hpp"

#include <cmath>

namespace paldg {

std::vector<double> smooth_pulse_init(double x) {
    const double rho = 1.0 + std::exp(-30.0 * x * x);
    return {rho, 0.0};
}

std::vector<double> contact_wave_exact(double x, double t, const ContactWaveParams& p) {
    const double omega = 0.5 * (1.0 - std::erf(p.steepness * (x - p.u * t)));
    const double rho = omega * p.rho_l + (1.0 - omega) * p.rho_r;
    const double energy = 0.5 * rho * p.u * p.u + p.p / (p.gamma - 1.0);
    return {rho, rho * p.u, energy};
}

OrderTable observed_order(const std::vector<double>& errors,
                          const std::vector<double>& mesh_sizes) {
    if (errors.size() != mesh_sizes.size() || errors.size() < 2) {
        throw Error("observed_order: need matching error/mesh lists with >= 2 entries");
    }
    OrderTable table;
    table.at_floor.resize(errors.size());
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (errors[i] <= 0.0) {
            throw Error("observed_order: zero or negative error (undefined order)");
        }
        table.at_floor[i] = errors[i] < OrderTable::kFloor;
    }
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        table.slopes.push_back(std::log(errors[i] / errors[i + 1]) /
                               std::log(mesh_sizes[i] / mesh_sizes[i + 1]));
    }
    return table;
}

}  // namespace paldg
