#ifndef PALDG_MESH_HPP
#define PALDG_MESH_HPP

#include <vector>

#include "paldg/errors.hpp"

namespace paldg {

// Reference Gauss-Lobatto basis on [-1,1]: nodes (endpoints included),
// quadrature weights (exact through degree 2d-1) and the nodal
// differentiation matrix D_ij = L_j'(x_i), row-major.
struct GaussLobatto {
    int degree = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> deriv;  // (d+1)^2
    double min_gap = 0.0;       // smallest node spacing (the first gap)

    double d_at(int i, int j) const { return deriv[static_cast<std::size_t>(i) * (degree + 1) + j]; }
};

// Supported degrees 1..8.
GaussLobatto gauss_lobatto(int degree);

// Uniform 1D mesh of [a,b] with per-cell Gauss-Lobatto nodes.
struct DgMesh {
    double a = 0.0, b = 0.0;
    int n_cells = 0;
    GaussLobatto ref;
    double h = 0.0;      // cell width
    double delta = 0.0;  // minimal physical node spacing

    int degree() const { return ref.degree; }
    int n_nodes() const { return ref.degree + 1; }

    double cell_left(int cell) const { return a + h * cell; }
    double node_x(int cell, int node) const {
        return cell_left(cell) + 0.5 * h * (ref.nodes[node] + 1.0);
    }
    // Physical quadrature weight of a node (same in every cell).
    double node_w(int node) const { return 0.5 * h * ref.weights[node]; }

    // Cell containing x, clamped to [0, n_cells-1]; points on an interior
    // interface resolve to the right cell.
    int locate(double x) const;
};

DgMesh make_mesh(double a, double b, int n_cells, int degree);

// dt = beta * delta / lambda.
inline double cfl_dt(double beta, const DgMesh& mesh, double lambda) {
    return beta * mesh.delta / lambda;
}

}  // namespace paldg

#endif
