#ifndef PALDG_REFERENCE_HPP
#define PALDG_REFERENCE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "paldg/field.hpp"
#include "paldg/lattice.hpp"
#include "paldg/mesh.hpp"
#include "paldg/scalar.hpp"

namespace paldg {

// Smooth isothermal pulse rho = 1 + exp(-30 x^2), u = 0.
std::vector<double> smooth_pulse_init(double x);

// Slowly moving exact contact wave of the polytropic Euler system:
// u = 1/100, p = 1, rho blending 2 -> 1 through an erf profile.
struct ContactWaveParams {
    double gamma = 1.4;
    double u = 0.01;
    double p = 1.0;
    double rho_l = 2.0;
    double rho_r = 1.0;
    double steepness = 10.0;
};

std::vector<double> contact_wave_exact(double x, double t, const ContactWaveParams& params = {});

// Fills f with the equilibrium of w(x) at every node.
template <class S>
void init_equilibrium(KineticField<S>& f, const DgMesh& mesh, const LatticeModel<S>& model,
                      const std::function<std::vector<double>(double)>& w_of_x) {
    const int m = model.m;
    std::vector<S> w(m), q(m), feq(2 * m);
    for (int cell = 0; cell < f.n_cells; ++cell) {
        for (int node = 0; node < f.n_nodes; ++node) {
            const std::vector<double> wr = w_of_x(mesh.node_x(cell, node));
            for (int k = 0; k < m; ++k) w[k] = static_cast<S>(wr[k]);
            maxwellian_node(model, std::span<const S>(w.data(), w.size()), std::span<S>(feq),
                            std::span<S>(q));
            for (int iv = 0; iv < 2 * m; ++iv) f.at(iv, cell, node) = feq[iv];
        }
    }
}

// Gauss-Lobatto L2 norms of a field difference: total over all velocity
// components plus one norm per conserved moment.
struct ErrorNorms {
    double total = 0.0;
    std::vector<double> per_w;
};

template <class A, class B>
ErrorNorms l2_error(const KineticField<A>& fa, const KineticField<B>& fb, const DgMesh& mesh,
                    int m) {
    if (fa.n_cells != fb.n_cells || fa.n_nodes != fb.n_nodes || fa.n_vel != fb.n_vel) {
        throw Error("l2_error: field shapes differ");
    }
    double total = 0.0;
    std::vector<double> per_w(m, 0.0);
    for (int cell = 0; cell < fa.n_cells; ++cell) {
        for (int node = 0; node < fa.n_nodes; ++node) {
            const double wq = mesh.node_w(node);
            for (int k = 0; k < m; ++k) {
                const auto d0 = fa.at(2 * k, cell, node) - fb.at(2 * k, cell, node);
                const auto d1 = fa.at(2 * k + 1, cell, node) - fb.at(2 * k + 1, cell, node);
                total += wq * (abs2(d0) + abs2(d1));
                per_w[k] += wq * abs2(d0 + d1);
            }
        }
    }
    ErrorNorms norms;
    norms.total = std::sqrt(total);
    norms.per_w.resize(m);
    for (int k = 0; k < m; ++k) norms.per_w[k] = std::sqrt(per_w[k]);
    return norms;
}

// Same, with the reference given as a callable sampled at fa's nodes.
template <class A, class Ref>
ErrorNorms l2_error_vs(const KineticField<A>& fa, const DgMesh& mesh, int m, Ref&& ref) {
    double total = 0.0;
    std::vector<double> per_w(m, 0.0);
    for (int cell = 0; cell < fa.n_cells; ++cell) {
        for (int node = 0; node < fa.n_nodes; ++node) {
            const double x = mesh.node_x(cell, node);
            const double wq = mesh.node_w(node);
            for (int k = 0; k < m; ++k) {
                const auto d0 = fa.at(2 * k, cell, node) - ref(x, 2 * k);
                const auto d1 = fa.at(2 * k + 1, cell, node) - ref(x, 2 * k + 1);
                total += wq * (abs2(d0) + abs2(d1));
                per_w[k] += wq * abs2(d0 + d1);
            }
        }
    }
    ErrorNorms norms;
    norms.total = std::sqrt(total);
    norms.per_w.resize(m);
    for (int k = 0; k < m; ++k) norms.per_w[k] = std::sqrt(per_w[k]);
    return norms;
}

// Discrete GL norm of the whole field (stability monitoring).
template <class S>
double field_norm(const KineticField<S>& f, const DgMesh& mesh) {
    double total = 0.0;
    for (int iv = 0; iv < f.n_vel; ++iv) {
        for (int cell = 0; cell < f.n_cells; ++cell) {
            for (int node = 0; node < f.n_nodes; ++node) {
                total += mesh.node_w(node) * abs2(f.at(iv, cell, node));
            }
        }
    }
    return std::sqrt(total);
}

// Per-cell polynomial evaluation of a (finer) solution at arbitrary x, used
// to transfer a fine-mesh reference onto a coarse mesh without a global
// interpolant.
template <class S>
class FieldSampler {
public:
    FieldSampler(const KineticField<S>& f, const DgMesh& mesh) : f_(&f), mesh_(&mesh) {}

    S operator()(double x, int iv) const {
        const int cell = mesh_->locate(x);
        // Barycentric Lagrange evaluation on the cell's GL nodes.
        const int n = mesh_->n_nodes();
        double xr = 2.0 * (x - mesh_->cell_left(cell)) / mesh_->h - 1.0;
        xr = std::clamp(xr, -1.0, 1.0);
        S num{};
        double den = 0.0;
        for (int j = 0; j < n; ++j) {
            const double diff = xr - mesh_->ref.nodes[j];
            if (diff == 0.0) return f_->at(iv, cell, j);
            const double wj = bary_weight(j) / diff;
            num += wj * f_->at(iv, cell, j);
            den += wj;
        }
        return num / den;
    }

private:
    double bary_weight(int j) const {
        double w = 1.0;
        for (int k = 0; k < mesh_->n_nodes(); ++k) {
            if (k != j) w /= mesh_->ref.nodes[j] - mesh_->ref.nodes[k];
        }
        return w;
    }
    const KineticField<S>* f_;
    const DgMesh* mesh_;
};

// Pairwise observed orders log(e_i/e_{i+1}) / log(h_i/h_{i+1}); entries at
// the round-off floor are flagged rather than reported as slopes.
struct OrderTable {
    std::vector<double> slopes;       // size n-1
    std::vector<bool> at_floor;       // size n, error under the floor threshold
    static constexpr double kFloor = 1e-12;
};

OrderTable observed_order(const std::vector<double>& errors, const std::vector<double>& mesh_sizes);

}  // namespace paldg

#endif
