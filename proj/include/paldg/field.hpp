#ifndef PALDG_FIELD_HPP
#define PALDG_FIELD_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "paldg/scalar.hpp"

namespace paldg {

// Discrete distribution f over (velocity index, cell, node).  Velocity-major
// layout so each velocity lane is a contiguous slab: transport sweeps own a
// lane exclusively and may run concurrently, and the reversal operator is a
// swap of paired slabs.
template <class S>
struct KineticField {
    int n_cells = 0;
    int n_nodes = 0;  // d+1 Gauss-Lobatto nodes per cell
    int n_vel = 0;    // 2m velocity indices, pair 2k/2k+1 = -lambda/+lambda

    std::vector<S> data;

    KineticField() = default;
    KineticField(int cells, int nodes, int vel)
        : n_cells(cells), n_nodes(nodes), n_vel(vel),
          data(static_cast<std::size_t>(cells) * nodes * vel, S{}) {}

    std::size_t lane_size() const {
        return static_cast<std::size_t>(n_cells) * n_nodes;
    }
    std::size_t size() const { return data.size(); }

    S* lane(int iv) { return data.data() + lane_size() * iv; }
    const S* lane(int iv) const { return data.data() + lane_size() * iv; }

    S& at(int iv, int cell, int node) {
        return data[lane_size() * iv + static_cast<std::size_t>(cell) * n_nodes + node];
    }
    const S& at(int iv, int cell, int node) const {
        return data[lane_size() * iv + static_cast<std::size_t>(cell) * n_nodes + node];
    }

    bool same_shape(const KineticField& o) const {
        return n_cells == o.n_cells && n_nodes == o.n_nodes && n_vel == o.n_vel;
    }

    bool all_finite() const {
        for (const S& v : data)
            if (!is_finite(v)) return false;
        return true;
    }
};

using RealField = KineticField<double>;
using ComplexField = KineticField<std::complex<double>>;

}  // namespace paldg

#endif
