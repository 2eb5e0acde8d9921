#ifndef PALDG_SCALAR_HPP
#define PALDG_SCALAR_HPP

#include <cmath>
#include <complex>
#include <type_traits>

namespace paldg {

// The solver is generic over the working scalar: double for ordinary runs,
// std::complex<double> when a composition scheme uses complex time steps.

template <class S>
struct scalar_traits {
    static constexpr bool is_complex = false;
    using real_type = S;
};

template <class R>
struct scalar_traits<std::complex<R>> {
    static constexpr bool is_complex = true;
    using real_type = R;
};

template <class S>
inline constexpr bool is_complex_v = scalar_traits<S>::is_complex;

inline double real_part(double x) { return x; }
inline double real_part(const std::complex<double>& x) { return x.real(); }

inline double imag_part(double) { return 0.0; }
inline double imag_part(const std::complex<double>& x) { return x.imag(); }

inline double abs2(double x) { return x * x; }
inline double abs2(const std::complex<double>& x) { return std::norm(x); }

// Narrowing conversion from the plan's complex stage step to the field scalar.
// For real fields the imaginary part must be exactly zero; callers validate
// that before reaching here.
template <class S>
inline S to_scalar(const std::complex<double>& z) {
    if constexpr (is_complex_v<S>) {
        return z;
    } else {
        return z.real();
    }
}

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const std::complex<double>& x) {
    return std::isfinite(x.real()) && std::isfinite(x.imag());
}

}  // namespace paldg

#endif
