#include "paldg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace paldg {

namespace {

// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
void legendre(int n, double x, double* p, double* dp) {
    double p0 = 1.0, p1 = x;
    if (n == 0) {
        *p = p0;
        *dp = 0.0;
        return;
    }
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    *p = p1;
    // (1-x^2) P_n' = n (P_{n-1} - x P_n)
    const double one_m_x2 = 1.0 - x * x;
    *dp = (one_m_x2 > 0.0) ? n * (p0 - x * p1) / one_m_x2 : 0.0;
}

}  // namespace

GaussLobatto gauss_lobatto(int degree) {
    if (degree < 1 || degree > 8) {
        throw ConfigError("gauss_lobatto: degree must be in [1,8]");
    }
    const int n = degree + 1;
    GaussLobatto gl;
    gl.degree = degree;
    gl.nodes.resize(n);
    gl.weights.resize(n);
    gl.deriv.assign(static_cast<std::size_t>(n) * n, 0.0);

    // Interior nodes are the roots of P_d'; Newton from the Chebyshev-Lobatto
    // guesses.  P_d'' follows from the Legendre ODE.
    gl.nodes[0] = -1.0;
    gl.nodes[degree] = 1.0;
    const double pi = std::acos(-1.0);
    for (int i = 1; i < degree; ++i) {
        double x = -std::cos(pi * i / degree);
        for (int it = 0; it < 100; ++it) {
            double p, dp;
            legendre(degree, x, &p, &dp);
            const double ddp = (2.0 * x * dp - degree * (degree + 1.0) * p) / (1.0 - x * x);
            const double step = dp / ddp;
            x -= step;
            if (std::abs(step) < 1e-15) break;
        }
        gl.nodes[i] = x;
    }
    // Enforce the symmetry x_i = -x_{d-i} exactly.
    for (int i = 0; i < n / 2; ++i) {
        const double s = 0.5 * (gl.nodes[i] - gl.nodes[degree - i]);
        gl.nodes[i] = s;
        gl.nodes[degree - i] = -s;
    }
    if (n % 2 == 1) gl.nodes[n / 2] = 0.0;

    // w_i = 2 / (d (d+1) P_d(x_i)^2)
    for (int i = 0; i < n; ++i) {
        double p, dp;
        legendre(degree, gl.nodes[i], &p, &dp);
        gl.weights[i] = 2.0 / (degree * (degree + 1.0) * p * p);
    }

    // Differentiation matrix via barycentric weights.
    std::vector<double> bary(n, 1.0);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            if (k != j) bary[j] *= gl.nodes[j] - gl.nodes[k];
        }
        bary[j] = 1.0 / bary[j];
    }
    for (int i = 0; i < n; ++i) {
        double diag = 0.0;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double dij = (bary[j] / bary[i]) / (gl.nodes[i] - gl.nodes[j]);
            gl.deriv[static_cast<std::size_t>(i) * n + j] = dij;
            diag -= dij;
        }
        gl.deriv[static_cast<std::size_t>(i) * n + i] = diag;
    }

    gl.min_gap = gl.nodes[1] - gl.nodes[0];
    for (int i = 1; i < degree; ++i) {
        gl.min_gap = std::min(gl.min_gap, gl.nodes[i + 1] - gl.nodes[i]);
    }
    return gl;
}

int DgMesh::locate(double x) const {
    const int cell = static_cast<int>(std::floor((x - a) / h));
    return std::clamp(cell, 0, n_cells - 1);
}

DgMesh make_mesh(double a, double b, int n_cells, int degree) {
    if (!(b > a)) throw ConfigError("make_mesh: domain must satisfy b > a");
    if (n_cells < 1) throw ConfigError("make_mesh: need at least one cell");
    DgMesh mesh;
    mesh.a = a;
    mesh.b = b;
    mesh.n_cells = n_cells;
    mesh.ref = gauss_lobatto(degree);
    mesh.h = (b - a) / n_cells;
    mesh.delta = 0.5 * mesh.h * mesh.ref.min_gap;
    return mesh;
}

}  // namespace paldg
