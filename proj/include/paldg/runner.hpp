#ifndef PALDG_RUNNER_HPP
#define PALDG_RUNNER_HPP

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "paldg/collision.hpp"
#include "paldg/composition.hpp"
#include "paldg/config.hpp"
#include "paldg/errors.hpp"
#include "paldg/field.hpp"
#include "paldg/mesh.hpp"
#include "paldg/models.hpp"
#include "paldg/reference.hpp"
#include "paldg/transport.hpp"

namespace paldg {

struct RunReport {
    std::string status = "completed";  // completed | unstable | error
    std::string message;

    int steps = 0;
    int stages_per_step = 0;
    int stages_per_step_fused = 0;  // what transport fusion would give
    double dt = 0.0;
    double final_time = 0.0;
    double initial_margin = 0.0;  // sub-characteristic margin at t=0
    double final_margin = 0.0;    // same, evaluated on the final state
    double norm_initial = 0.0;
    double norm_final = 0.0;

    double wall_transport = 0.0;  // seconds spent per stage kind
    double wall_collide = 0.0;

    std::vector<double> max_im_w;  // complex mode: max |Im| per macro variable
    double max_im_rho_x = 0.0;     // location of the density maximum above

    bool has_error_norms = false;
    ErrorNorms error;

    std::vector<double> total_w_initial;  // GL integral of each w component
    std::vector<double> total_w_final;

    std::vector<double> norm_history;
    std::vector<std::string> csv_files;

    // converge
    struct StudyRow {
        int n_cells = 0;
        double h = 0.0;
        double dt = 0.0;
        double error = 0.0;
        std::string status;
    };
    std::vector<StudyRow> rows;
    std::vector<double> orders;
    double reference_shift = 0.0;  // self-reference validity: norm change on dt halving

    // riemann
    double shock_x_exact = 0.0;
    double shock_x_est = 0.0;
    double rarefaction_l1_rel = 0.0;
};

// The initial macro state, the fixed boundary states, and the exact-solution
// hook (when one exists) for a configured experiment.
struct InitialData {
    std::function<std::vector<double>(double)> w0;
    std::function<std::vector<double>(double, double)> exact;  // (x,t), may be null
};

InitialData make_initial_data(const RunConfig& cfg);

// Time integration of a single configured run.  Templated on the working
// scalar; the CSV-level drivers below dispatch on cfg.complex_mode.
template <class S>
class SimDriver {
public:
    explicit SimDriver(const RunConfig& cfg)
        : cfg_(cfg),
          mesh_(make_mesh(cfg.domain_a, cfg.domain_b, cfg.n_cells, cfg.degree)),
          model_(make_model<S>(cfg.model, cfg.model_param(), cfg.lambda)),
          real_model_(make_model<double>(cfg.model, cfg.model_param(), cfg.lambda)),
          relax_{cfg.tau, cfg.singular_tol},
          transport_(mesh_, cfg.lambda),
          field_(cfg.n_cells, cfg.degree + 1, 2 * model_.m),
          init_(make_initial_data(cfg)) {
        const MacroState<double> wa = init_.w0(mesh_.a);
        const MacroState<double> wb = init_.w0(mesh_.b);
        bc_ = make_boundary(model_, promote(wa), promote(wb));
        init_equilibrium(field_, mesh_, model_, init_.w0);

        std::vector<MacroState<double>> states;
        states.reserve(static_cast<std::size_t>(mesh_.n_cells) * mesh_.n_nodes());
        for (int cell = 0; cell < mesh_.n_cells; ++cell)
            for (int node = 0; node < mesh_.n_nodes(); ++node)
                states.push_back(init_.w0(mesh_.node_x(cell, node)));
        margin_ = check_subcharacteristic(real_model_, states);
        if (margin_ <= 0.0) {
            throw ConfigError("sub-characteristic margin " + std::to_string(margin_) +
                              " <= 0: increase lambda");
        }
    }

    RunReport run() {
        RunReport rep;
        rep.initial_margin = margin_;
        rep.dt = cfl_dt(cfg_.beta, mesh_, cfg_.lambda);
        rep.norm_initial = field_norm(field_, mesh_);
        rep.total_w_initial = total_w();

        const CompositionScheme scheme = scheme_by_name(cfg_.scheme);
        const double dt = rep.dt;
        int n_steps = 0;
        double dt_last = 0.0;
        if (cfg_.t_max > 0.0) {
            n_steps = static_cast<int>(std::ceil(cfg_.t_max / dt - 1e-9));
            n_steps = std::max(n_steps, 1);
            dt_last = cfg_.t_max - (n_steps - 1) * dt;
        }

        StepPlan plan = build_plan(scheme, dt);
        validate_plan_collisions(plan, relax_);
        rep.stages_per_step = static_cast<int>(plan.stages.size());
        rep.stages_per_step_fused = rep.stages_per_step - (plan.n_m2_steps - 1);
        StepPlan last_plan;
        if (n_steps > 0) {
            last_plan = build_plan(scheme, dt_last);
            try {
                validate_plan_collisions(last_plan, relax_);
            } catch (const SingularCollisionError& e) {
                throw SingularCollisionError(
                    std::string(e.what()) + " [reduced final step landing on t_max = " +
                        std::to_string(cfg_.t_max) + "]",
                    e.stage_index);
            }
        }

        const double norm_limit = 1e6 * std::max(1.0, rep.norm_initial);
        double t = 0.0;
        for (int s = 0; s < n_steps; ++s) {
            const bool last = (s == n_steps - 1);
            run_step(last ? last_plan : plan, rep);
            t = last ? cfg_.t_max : t + dt;
            ++rep.steps;
            const double norm = field_norm(field_, mesh_);
            if (cfg_.norm_history) rep.norm_history.push_back(norm);
            if (!std::isfinite(norm) || norm > norm_limit) {
                rep.status = "unstable";
                rep.message = "discrete norm " + std::to_string(norm) + " at t = " +
                              std::to_string(t) + " exceeded the growth limit";
                break;
            }
            if (cfg_.check_nan && !field_.all_finite()) {
                rep.status = "unstable";
                rep.message = "non-finite field value at t = " + std::to_string(t);
                break;
            }
            if (cfg_.check_admissibility) check_admissibility(t);
        }
        rep.final_time = t;
        rep.norm_final = field_norm(field_, mesh_);
        rep.total_w_final = total_w();
        rep.final_margin = final_margin();
        collect_imaginary_diagnostics(rep);
        return rep;
    }

    const KineticField<S>& field() const { return field_; }
    const DgMesh& mesh() const { return mesh_; }
    const LatticeModel<S>& model() const { return model_; }
    const InitialData& init() const { return init_; }
    const BoundaryEquilibrium<S>& boundary() const { return bc_; }
    TransportSolver<S>& transport() { return transport_; }
    const RelaxationParams& relaxation() const { return relax_; }

    // Macro moments at a node of the current field.
    MacroState<S> w_at(int cell, int node) const {
        MacroState<S> f(2 * model_.m), w(model_.m), z(model_.m);
        for (int iv = 0; iv < 2 * model_.m; ++iv) f[iv] = field_.at(iv, cell, node);
        moments_node(model_, std::span<const S>(f.data(), f.size()), std::span<S>(w),
                     std::span<S>(z));
        return w;
    }

private:
    static MacroState<S> promote(const MacroState<double>& w) {
        MacroState<S> out(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) out[i] = static_cast<S>(w[i]);
        return out;
    }

    void run_step(const StepPlan& plan, RunReport& rep) {
        using clock = std::chrono::steady_clock;
        for (std::size_t i = 0; i < plan.stages.size(); ++i) {
            const Stage& st = plan.stages[i];
            const S sdt = to_scalar<S>(st.dt);
            const auto t0 = clock::now();
            if (st.kind == StageKind::transport) {
                transport_.transport_signed(field_, sdt, bc_);
                rep.wall_transport += std::chrono::duration<double>(clock::now() - t0).count();
            } else {
                collide_c2_field(model_, relax_, sdt, field_, static_cast<int>(i));
                rep.wall_collide += std::chrono::duration<double>(clock::now() - t0).count();
            }
        }
    }

    std::vector<double> total_w() const {
        std::vector<double> total(model_.m, 0.0);
        for (int cell = 0; cell < mesh_.n_cells; ++cell) {
            for (int node = 0; node < mesh_.n_nodes(); ++node) {
                for (int k = 0; k < model_.m; ++k) {
                    const S wk = field_.at(2 * k, cell, node) + field_.at(2 * k + 1, cell, node);
                    total[k] += mesh_.node_w(node) * real_part(wk);
                }
            }
        }
        return total;
    }

    // Margin of the (real part of the) current state; reported, not enforced.
    double final_margin() const {
        double margin = std::numeric_limits<double>::infinity();
        for (int cell = 0; cell < mesh_.n_cells; ++cell) {
            for (int node = 0; node < mesh_.n_nodes(); ++node) {
                MacroState<S> w = w_at(cell, node);
                MacroState<double> wr(model_.m);
                for (int k = 0; k < model_.m; ++k) wr[k] = real_part(w[k]);
                try {
                    margin = std::min(margin, model_.lambda - real_model_.max_wave_speed(wr));
                } catch (const ModelError&) {
                    return -std::numeric_limits<double>::infinity();
                }
            }
        }
        return margin;
    }

    void check_admissibility(double t) const {
        for (int cell = 0; cell < mesh_.n_cells; ++cell) {
            for (int node = 0; node < mesh_.n_nodes(); ++node) {
                MacroState<S> w = w_at(cell, node);
                MacroState<double> wr(model_.m);
                for (int k = 0; k < model_.m; ++k) wr[k] = real_part(w[k]);
                real_model_.max_wave_speed(wr);  // throws ModelError if inadmissible
                (void)t;
            }
        }
    }

    void collect_imaginary_diagnostics(RunReport& rep) const {
        if constexpr (!is_complex_v<S>) return;
        rep.max_im_w.assign(model_.m, 0.0);
        for (int cell = 0; cell < mesh_.n_cells; ++cell) {
            for (int node = 0; node < mesh_.n_nodes(); ++node) {
                const MacroState<S> w = w_at(cell, node);
                for (int k = 0; k < model_.m; ++k) {
                    const double im = std::abs(imag_part(w[k]));
                    if (im > rep.max_im_w[k]) {
                        rep.max_im_w[k] = im;
                        if (k == 0) rep.max_im_rho_x = mesh_.node_x(cell, node);
                    }
                }
            }
        }
    }

    RunConfig cfg_;
    DgMesh mesh_;
    LatticeModel<S> model_;
    LatticeModel<double> real_model_;
    RelaxationParams relax_;
    TransportSolver<S> transport_;
    KineticField<S> field_;
    InitialData init_;
    BoundaryEquilibrium<S> bc_;
    double margin_ = 0.0;
};

// File-emitting drivers used by the CLI.  `run` writes the final macro
// profile as CSV; `converge` sweeps the study meshes at fixed beta and emits
// a (N_x, dt, error, slope) table; `riemann_compare` overlays the exact
// Riemann solution and reports shock/imaginary-part diagnostics.
RunReport run(const RunConfig& cfg);
RunReport converge(const RunConfig& cfg);
RunReport riemann_compare(const RunConfig& cfg);

// Output directory after the environment override (PALDG_OUT_DIR).
std::string effective_out_dir(const RunConfig& cfg);

void print_report(const RunReport& rep, const RunConfig& cfg);

}  // namespace paldg

#endif
