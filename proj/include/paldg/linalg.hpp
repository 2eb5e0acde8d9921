#ifndef PALDG_LINALG_HPP
#define PALDG_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "paldg/errors.hpp"
#include "paldg/scalar.hpp"

namespace paldg {

// Dense LU with partial pivoting for the small (d+1)x(d+1) cell blocks.
// Factorized once per distinct time step and reused across cells.
template <class S>
class SmallLu {
public:
    SmallLu() = default;

    // a: row-major n x n, consumed by the factorization.
    SmallLu(std::vector<S> a, int n) : n_(n), lu_(std::move(a)), piv_(n) {
        factor();
    }

    int size() const { return n_; }

    // Crude conditioning estimate from the pivot magnitudes; enough to catch
    // the near-singular complex blocks the sweep must refuse.
    double cond_estimate() const { return cond_; }

    void solve(S* x) const {
        // Pa x: apply recorded row swaps.
        for (int i = 0; i < n_; ++i) {
            if (piv_[i] != i) std::swap(x[i], x[piv_[i]]);
        }
        // Forward substitution, unit lower triangle.
        for (int i = 1; i < n_; ++i) {
            S acc = x[i];
            const S* row = &lu_[static_cast<std::size_t>(i) * n_];
            for (int j = 0; j < i; ++j) acc -= row[j] * x[j];
            x[i] = acc;
        }
        // Back substitution.
        for (int i = n_ - 1; i >= 0; --i) {
            S acc = x[i];
            const S* row = &lu_[static_cast<std::size_t>(i) * n_];
            for (int j = i + 1; j < n_; ++j) acc -= row[j] * x[j];
            x[i] = acc / row[i];
        }
    }

private:
    void factor() {
        double max_piv = 0.0, min_piv = 0.0;
        for (int k = 0; k < n_; ++k) {
            int p = k;
            double best = std::abs(lu_[static_cast<std::size_t>(k) * n_ + k]);
            for (int i = k + 1; i < n_; ++i) {
                const double v = std::abs(lu_[static_cast<std::size_t>(i) * n_ + k]);
                if (v > best) {
                    best = v;
                    p = i;
                }
            }
            piv_[k] = p;
            if (p != k) {
                for (int j = 0; j < n_; ++j) {
                    std::swap(lu_[static_cast<std::size_t>(k) * n_ + j],
                              lu_[static_cast<std::size_t>(p) * n_ + j]);
                }
            }
            const S pivot = lu_[static_cast<std::size_t>(k) * n_ + k];
            if (!(std::abs(pivot) > 0.0)) throw SolverError("singular local transport block");
            if (k == 0) {
                max_piv = min_piv = std::abs(pivot);
            } else {
                max_piv = std::max(max_piv, std::abs(pivot));
                min_piv = std::min(min_piv, std::abs(pivot));
            }
            for (int i = k + 1; i < n_; ++i) {
                S& lik = lu_[static_cast<std::size_t>(i) * n_ + k];
                lik /= pivot;
                for (int j = k + 1; j < n_; ++j) {
                    lu_[static_cast<std::size_t>(i) * n_ + j] -=
                        lik * lu_[static_cast<std::size_t>(k) * n_ + j];
                }
            }
        }
        cond_ = (min_piv > 0.0) ? max_piv / min_piv : std::numeric_limits<double>::infinity();
    }

    int n_ = 0;
    std::vector<S> lu_;
    std::vector<int> piv_;
    double cond_ = 0.0;
};

}  // namespace paldg

#endif
