#ifndef PALDG_COMPOSITION_HPP
#define PALDG_COMPOSITION_HPP

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "paldg/collision.hpp"
#include "paldg/errors.hpp"
#include "paldg/field.hpp"
#include "paldg/scalar.hpp"
#include "paldg/transport.hpp"

namespace paldg {

enum class SchemeFamily { order2, triple_jump_real, triple_jump_complex, suzuki4, kahan_li6 };

// Palindromic sequence of step fractions gamma_0..gamma_s applied to the
// elementary second-order brick.
struct CompositionScheme {
    std::vector<std::complex<double>> gammas;
    int nominal_order = 2;
    SchemeFamily family = SchemeFamily::order2;
    std::string tag = "m2";

    bool is_complex() const;
    bool is_palindromic() const;
    std::complex<double> gamma_sum() const;
};

// Raising a symmetric method of even order p by two: M_{p+2}(t) =
// M_p(a t) M_p(b t) M_p(a t) with 2a + b = 1 and 2 a^{p+1} + b^{p+1} = 0.
std::pair<double, double> triple_jump_real(int p);
std::pair<std::complex<double>, std::complex<double>> triple_jump_complex(int p);

CompositionScheme order2_scheme();
CompositionScheme triple_jump_scheme(int order, bool complex_steps);
CompositionScheme suzuki4();
CompositionScheme kahan_li6();

// Tags accepted by the CLI: m2, tj4_real, tj4_complex, tj6_real,
// tj6_complex, suzuki4, kahanli6.
CompositionScheme scheme_by_name(const std::string& tag);
std::vector<std::string> scheme_names();

enum class StageKind { transport, collide };

struct Stage {
    StageKind kind;
    std::complex<double> dt;
    int m2_index;  // which elementary step the stage came from
};

struct StepPlan {
    std::vector<Stage> stages;
    std::complex<double> dt{};
    std::string scheme_tag;
    bool fused = true;
    int n_m2_steps = 0;

    int count(StageKind kind) const;
    bool is_palindromic() const;
    bool needs_complex() const;
};

// Expands the composition into the elementary-brick stage list
//   T(g dt/4) C(g dt/2) T(g dt/2) C(g dt/2) T(g dt/4)
// per fraction.  `fuse` merges adjacent transports across brick boundaries
// into one solve with summed dt.  That merge is exact for characteristic
// transport but not for the Crank-Nicolson solve (the Pade factors do not
// compose), and it costs the composition its high order, so plans are
// unfused by default; the fused variant stays available for step-count
// diagnostics and cost comparisons.
StepPlan build_plan(const CompositionScheme& scheme, std::complex<double> dt, bool fuse = false);

// Plan-time denominator guard: throws SingularCollisionError naming the
// stage whose |2 tau + dt| falls under the tolerance.
void validate_plan_collisions(const StepPlan& plan, const RelaxationParams& params);

// Applies a plan: transports via the signed-time wrapper, collisions via C2.
template <class S>
void step(KineticField<S>& f, const StepPlan& plan, TransportSolver<S>& transport,
          const LatticeModel<S>& model, const RelaxationParams& params,
          const BoundaryEquilibrium<S>& bc) {
    if constexpr (!is_complex_v<S>) {
        if (plan.needs_complex()) {
            throw ConfigError("complex step plan requires a complex field");
        }
    }
    for (std::size_t i = 0; i < plan.stages.size(); ++i) {
        const Stage& st = plan.stages[i];
        const S dt = to_scalar<S>(st.dt);
        try {
            if (st.kind == StageKind::transport) {
                transport.transport_signed(f, dt, bc);
            } else {
                collide_c2_field(model, params, dt, f, static_cast<int>(i));
            }
        } catch (SingularCollisionError&) {
            throw;
        } catch (const Error& e) {
            throw SolverError(std::string(e.what()) + " (composition stage " +
                              std::to_string(i) + ")");
        }
    }
}

// Diagnostic first-order Lie step M1 = C1(dt) T1(dt).
template <class S>
void step_m1(KineticField<S>& f, const S& dt, TransportSolver<S>& transport,
             const LatticeModel<S>& model, const RelaxationParams& params,
             const BoundaryEquilibrium<S>& bc) {
    transport.solve_t1(f, dt, bc);
    collide_c1_field(model, params, dt, f);
}

// Diagnostic Strang step T2(dt/2) C2(dt) T2(dt/2); loses second order as
// tau -> 0, which the symmetrized brick above repairs.
template <class S>
void step_m2_strang(KineticField<S>& f, const S& dt, TransportSolver<S>& transport,
                    const LatticeModel<S>& model, const RelaxationParams& params,
                    const BoundaryEquilibrium<S>& bc) {
    transport.transport_signed(f, dt / 2.0, bc);
    collide_c2_field(model, params, dt, f);
    transport.transport_signed(f, dt / 2.0, bc);
}

}  // namespace paldg

#endif
