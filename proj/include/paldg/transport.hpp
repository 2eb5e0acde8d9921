#ifndef PALDG_TRANSPORT_HPP
#define PALDG_TRANSPORT_HPP

#include <complex>
#include <map>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "paldg/errors.hpp"
#include "paldg/field.hpp"
#include "paldg/lattice.hpp"
#include "paldg/linalg.hpp"
#include "paldg/mesh.hpp"
#include "paldg/scalar.hpp"

namespace paldg {

// Equilibrium-inflow boundary data: the kinetic equilibrium of the fixed
// left/right macro states, one value per velocity index.  Outflow needs no
// data under upwinding.
template <class S>
struct BoundaryEquilibrium {
    std::vector<S> left;   // 2m values
    std::vector<S> right;  // 2m values

    // Pair-swapped data for the reversed-velocity transport of negative
    // time steps.
    BoundaryEquilibrium reversed() const {
        BoundaryEquilibrium r = *this;
        for (std::size_t k = 0; 2 * k + 1 < left.size(); ++k) {
            std::swap(r.left[2 * k], r.left[2 * k + 1]);
            std::swap(r.right[2 * k], r.right[2 * k + 1]);
        }
        return r;
    }
};

template <class S>
inline BoundaryEquilibrium<S> make_boundary(const LatticeModel<S>& model,
                                            const MacroState<S>& w_left,
                                            const MacroState<S>& w_right) {
    BoundaryEquilibrium<S> bc;
    bc.left = maxwellian(model, w_left);
    bc.right = maxwellian(model, w_right);
    return bc;
}

// Upwind nodal DG transport of the kinetic field at speeds -lambda/+lambda.
//
// L_h per cell and velocity v:  v D f  plus the upwind jump lifted into the
// inflow node through the lumped Gauss-Lobatto mass.  (Id + dt L_h) is block
// triangular in the flow direction, so the implicit solve is a sweep of
// local dense solves; the factorizations depend only on dt and the velocity
// sign and are cached per distinct dt.
template <class S>
class TransportSolver {
public:
    TransportSolver(const DgMesh& mesh, double lambda)
        : mesh_(&mesh), lambda_(lambda), n_(mesh.n_nodes()) {}

    const DgMesh& mesh() const { return *mesh_; }
    double lambda() const { return lambda_; }

    // Explicit residual L_h f (out of place).
    KineticField<S> apply_transport(const KineticField<S>& f,
                                    const BoundaryEquilibrium<S>& bc) const {
        KineticField<S> r(f.n_cells, f.n_nodes, f.n_vel);
        const double dscale = 2.0 / mesh_->h;
        const double pen = 2.0 * lambda_ / (mesh_->h * mesh_->ref.weights[0]);
        // ref weights are symmetric, so the same penalty serves both ends.
        for (int iv = 0; iv < f.n_vel; ++iv) {
            const bool plus = (iv % 2 == 1);
            const double v = plus ? lambda_ : -lambda_;
            const S* fl = f.lane(iv);
            S* rl = r.lane(iv);
            for (int cell = 0; cell < f.n_cells; ++cell) {
                const S* fc = fl + static_cast<std::size_t>(cell) * n_;
                S* rc = rl + static_cast<std::size_t>(cell) * n_;
                for (int i = 0; i < n_; ++i) {
                    S acc{};
                    for (int j = 0; j < n_; ++j) acc += mesh_->ref.d_at(i, j) * fc[j];
                    rc[i] = (v * dscale) * acc;
                }
                if (plus) {
                    const S up = (cell == 0) ? bc.left[iv] : fc[-1];  // neighbor's last node
                    rc[0] += pen * (fc[0] - up);
                } else {
                    const S up = (cell == f.n_cells - 1) ? bc.right[iv] : fc[n_];
                    rc[n_ - 1] += pen * (fc[n_ - 1] - up);
                }
            }
        }
        return r;
    }

    // T1(dt) = (Id + dt L_h)^{-1}, in place.  Cells are visited in the flow
    // direction; each local solve reads the already-updated upstream trace,
    // which is exactly what overwriting in sweep order provides.  Lanes are
    // independent and run in parallel.
    void solve_t1(KineticField<S>& f, const S& dt, const BoundaryEquilibrium<S>& bc) {
        if (dt == S{}) return;
        const Factors& fac = factors(dt);
#pragma omp parallel for schedule(static)
        for (int iv = 0; iv < f.n_vel; ++iv) {
            sweep_lane(f, iv, dt, bc, fac, false);
        }
    }

    // Serial out-of-place reference for the same map; kept for testing the
    // in-place sweep bit-for-bit.
    KineticField<S> solve_t1_reference(const KineticField<S>& f, const S& dt,
                                       const BoundaryEquilibrium<S>& bc) {
        KineticField<S> g = f;
        if (dt == S{}) return g;
        const Factors& fac = factors(dt);
        for (int iv = 0; iv < f.n_vel; ++iv) {
            sweep_lane(g, iv, dt, bc, fac, false);
        }
        return g;
    }

    // T2(dt) = (Id - dt/2 L_h)(Id + dt/2 L_h)^{-1} = 2 T1(dt/2) - Id.
    // The sweep carries the upstream trace of T1's intermediate g, so the
    // 2g - f update can overwrite each cell immediately.
    void solve_t2(KineticField<S>& f, const S& dt, const BoundaryEquilibrium<S>& bc) {
        if (dt == S{}) return;
        const S half = dt / 2.0;
        const Factors& fac = factors(half);
#pragma omp parallel for schedule(static)
        for (int iv = 0; iv < f.n_vel; ++iv) {
            sweep_lane(f, iv, half, bc, fac, true);
        }
    }

    // Signed-time transport: T2 for Re(dt) >= 0, otherwise the stabilized
    // reversal R T2(-dt) R with pair-swapped boundary data.
    void transport_signed(KineticField<S>& f, const S& dt, const BoundaryEquilibrium<S>& bc) {
        if (real_part(dt) >= 0.0) {
            solve_t2(f, dt, bc);
        } else {
            reverse_velocities(f);
            const BoundaryEquilibrium<S> rbc = bc.reversed();
            solve_t2(f, -dt, rbc);
            reverse_velocities(f);
        }
    }

    // Condition-number guard for the local blocks (relevant for complex dt).
    static constexpr double kCondLimit = 1e12;

private:
    struct Factors {
        SmallLu<S> plus;   // velocity +lambda
        SmallLu<S> minus;  // velocity -lambda
    };

    const Factors& factors(const S& dt) {
        const std::complex<double> key(real_part(dt), imag_part(dt));
        auto it = cache_.find(key);
        if (it != cache_.end()) return *it->second;

        auto fac = std::make_unique<Factors>();
        fac->plus = SmallLu<S>(local_matrix(dt, +1), n_);
        fac->minus = SmallLu<S>(local_matrix(dt, -1), n_);
        if (fac->plus.cond_estimate() > kCondLimit || fac->minus.cond_estimate() > kCondLimit) {
            throw SolverError("transport block ill-conditioned for this time step");
        }
        auto [pos, inserted] = cache_.emplace(key, std::move(fac));
        return *pos->second;
    }

    // Id + dt (v D + penalty at the inflow node), on the physical cell.
    std::vector<S> local_matrix(const S& dt, int sign) const {
        const double v = sign * lambda_;
        const double dscale = 2.0 / mesh_->h;
        std::vector<S> a(static_cast<std::size_t>(n_) * n_, S{});
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < n_; ++j) {
                a[static_cast<std::size_t>(i) * n_ + j] =
                    dt * (v * dscale * mesh_->ref.d_at(i, j));
            }
            a[static_cast<std::size_t>(i) * n_ + i] += 1.0;
        }
        const int node = (sign > 0) ? 0 : n_ - 1;
        const double pen = 2.0 * lambda_ / (mesh_->h * mesh_->ref.weights[node]);
        a[static_cast<std::size_t>(node) * n_ + node] += dt * pen;
        return a;
    }

    // One lane of the triangular sweep.  reflect=false writes g (T1);
    // reflect=true writes 2g - f while carrying g's upstream trace (T2).
    void sweep_lane(KineticField<S>& f, int iv, const S& dt, const BoundaryEquilibrium<S>& bc,
                    const Factors& fac, bool reflect) const {
        const bool plus = (iv % 2 == 1);
        const SmallLu<S>& lu = plus ? fac.plus : fac.minus;
        const int node = plus ? 0 : n_ - 1;
        const double pen = 2.0 * lambda_ / (mesh_->h * mesh_->ref.weights[node]);
        const S coeff = dt * pen;
        S* lane = f.lane(iv);
        std::vector<S> rhs(n_);

        S trace = plus ? bc.left[iv] : bc.right[iv];
        const int begin = plus ? 0 : f.n_cells - 1;
        const int end = plus ? f.n_cells : -1;
        const int stride = plus ? 1 : -1;
        for (int cell = begin; cell != end; cell += stride) {
            S* fc = lane + static_cast<std::size_t>(cell) * n_;
            for (int i = 0; i < n_; ++i) rhs[i] = fc[i];
            rhs[node] += coeff * trace;
            lu.solve(rhs.data());
            trace = plus ? rhs[n_ - 1] : rhs[0];
            if (reflect) {
                for (int i = 0; i < n_; ++i) fc[i] = 2.0 * rhs[i] - fc[i];
            } else {
                for (int i = 0; i < n_; ++i) fc[i] = rhs[i];
            }
        }
    }

    const DgMesh* mesh_;
    double lambda_;
    int n_;

    struct KeyLess {
        bool operator()(const std::complex<double>& a, const std::complex<double>& b) const {
            if (a.real() != b.real()) return a.real() < b.real();
            return a.imag() < b.imag();
        }
    };
    std::map<std::complex<double>, std::unique_ptr<Factors>, KeyLess> cache_;
};

}  // namespace paldg

#endif
