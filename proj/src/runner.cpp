#include "paldg/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "paldg/riemann.hpp"

namespace paldg {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15e", v);
    return buf;
}

std::string fmt_key(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<double> load_table(const std::string& path, int m) {
    std::ifstream in(path);
    if (!in.is_open()) throw ConfigError("init table: cannot open " + path);
    std::vector<double> flat;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ss(line);
        double v;
        std::vector<double> row;
        while (ss >> v) row.push_back(v);
        if (row.empty()) continue;
        if (static_cast<int>(row.size()) != m + 1) {
            throw ConfigError("init table: expected x plus " + std::to_string(m) +
                              " state columns");
        }
        flat.insert(flat.end(), row.begin(), row.end());
    }
    if (flat.size() < 2 * static_cast<std::size_t>(m + 1)) {
        throw ConfigError("init table: need at least two rows");
    }
    return flat;
}

}  // namespace

InitialData make_initial_data(const RunConfig& cfg) {
    InitialData data;
    if (cfg.init == "smooth_pulse") {
        data.w0 = [](double x) { return smooth_pulse_init(x); };
    } else if (cfg.init == "riemann") {
        const std::vector<double> wl = cfg.wl;
        const std::vector<double> wr = cfg.wr;
        data.w0 = [wl, wr](double x) { return x < 0.0 ? wl : wr; };
        if (cfg.model == "isothermal") {
            const RiemannSolutionIsothermal sol = solve_riemann_isothermal(
                wl[0], wl[1] / wl[0], wr[0], wr[1] / wr[0], cfg.c);
            data.exact = [sol](double x, double t) {
                const auto [rho, u] = sol.sample(x, t);
                return std::vector<double>{rho, rho * u};
            };
        }
    } else if (cfg.init == "contact_wave") {
        ContactWaveParams p;
        p.gamma = cfg.gamma;
        data.w0 = [p](double x) { return contact_wave_exact(x, 0.0, p); };
        data.exact = [p](double x, double t) { return contact_wave_exact(x, t, p); };
    } else if (cfg.init == "table") {
        const int m = cfg.m();
        const std::vector<double> flat = load_table(cfg.table_path, m);
        const int cols = m + 1;
        const int rows = static_cast<int>(flat.size()) / cols;
        data.w0 = [flat, cols, rows, m](double x) {
            // Piecewise-linear interpolation in x, clamped at the table ends.
            auto xi = [&](int r) { return flat[static_cast<std::size_t>(r) * cols]; };
            if (x <= xi(0)) {
                return std::vector<double>(flat.begin() + 1, flat.begin() + 1 + m);
            }
            for (int r = 0; r + 1 < rows; ++r) {
                if (x <= xi(r + 1)) {
                    const double s = (x - xi(r)) / (xi(r + 1) - xi(r));
                    std::vector<double> w(m);
                    for (int k = 0; k < m; ++k) {
                        const double a = flat[static_cast<std::size_t>(r) * cols + 1 + k];
                        const double b = flat[static_cast<std::size_t>(r + 1) * cols + 1 + k];
                        w[k] = a + s * (b - a);
                    }
                    return w;
                }
            }
            return std::vector<double>(flat.end() - m, flat.end());
        };
    } else {
        throw ConfigError("unknown init '" + cfg.init + "'");
    }
    return data;
}

std::string effective_out_dir(const RunConfig& cfg) {
    if (const char* env = std::getenv("PALDG_OUT_DIR"); env && *env) return env;
    return cfg.out_dir;
}

namespace {

// ---------------------------------------------------------------------------
// CSV emission
// ---------------------------------------------------------------------------

std::ofstream open_out(const std::string& dir, const std::string& name, RunReport& rep) {
    std::filesystem::create_directories(dir);
    const std::string path = dir + "/" + name;
    std::ofstream out(path, std::ios::binary);  // '\n' endings on every platform
    if (!out.is_open()) throw Error("cannot write " + path);
    rep.csv_files.push_back(path);
    return out;
}

std::vector<std::string> primitive_names(const RunConfig& cfg) {
    if (cfg.model == "euler") return {"rho", "u", "p"};
    return {"rho", "u"};
}

template <class S>
std::vector<S> primitives(const RunConfig& cfg, const MacroState<S>& w) {
    const S u = w[1] / w[0];
    if (cfg.model == "euler") {
        const S p = (cfg.gamma - 1.0) * (w[2] - w[1] * u * 0.5);
        return {w[0], u, p};
    }
    return {w[0], u};
}

template <class S>
void write_profile_csv(std::ofstream& out, const RunConfig& cfg, const SimDriver<S>& sim) {
    const std::vector<std::string> names = primitive_names(cfg);
    out << "x";
    for (const auto& n : names) {
        if constexpr (is_complex_v<S>) {
            out << "," << n << "_re," << n << "_im";
        } else {
            out << "," << n;
        }
    }
    out << "\n";
    const DgMesh& mesh = sim.mesh();
    for (int cell = 0; cell < mesh.n_cells; ++cell) {
        for (int node = 0; node < mesh.n_nodes(); ++node) {
            const auto prim = primitives(cfg, sim.w_at(cell, node));
            out << fmt(mesh.node_x(cell, node));
            for (const auto& v : prim) {
                if constexpr (is_complex_v<S>) {
                    out << "," << fmt(real_part(v)) << "," << fmt(imag_part(v));
                } else {
                    out << "," << fmt(v);
                }
            }
            out << "\n";
        }
    }
}

void write_plot_script(const std::string& dir, const std::string& csv_name,
                       const std::vector<std::string>& names, RunReport& rep) {
    std::ofstream out = open_out(dir, csv_name + ".gp", rep);
    out << "set datafile separator ','\nset key autotitle columnhead\nset grid\n";
    out << "plot ";
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out << ", ";
        out << "'" << csv_name << "' using 1:" << i + 2 << " with lines";
    }
    out << "\n";
}

// ---------------------------------------------------------------------------
// Reference handling for convergence studies
// ---------------------------------------------------------------------------

using RefSampler = std::function<std::complex<double>(double, int)>;

RunConfig reference_config(const RunConfig& cfg) {
    RunConfig ref = cfg;
    int finest = cfg.n_cells;
    for (int n : cfg.study_meshes) finest = std::max(finest, n);
    ref.n_cells = finest * cfg.reference_refine;
    ref.scheme = cfg.reference_scheme;
    ref.complex_mode = scheme_by_name(cfg.reference_scheme).is_complex();
    if (cfg.reference_beta > 0.0) ref.beta = cfg.reference_beta;
    ref.write_profile = false;
    ref.norm_history = false;
    ref.study_meshes.clear();
    return ref;
}

std::string reference_key(const RunConfig& ref) {
    std::ostringstream key;
    key << "model=" << ref.model << " param=" << fmt_key(ref.model_param())
        << " lambda=" << fmt_key(ref.lambda) << " tau=" << fmt_key(ref.tau)
        << " scheme=" << ref.scheme << " beta=" << fmt_key(ref.beta)
        << " n_cells=" << ref.n_cells << " degree=" << ref.degree
        << " a=" << fmt_key(ref.domain_a) << " b=" << fmt_key(ref.domain_b)
        << " t_max=" << fmt_key(ref.t_max) << " init=" << ref.init;
    for (double v : ref.wl) key << " wl=" << fmt_key(v);
    for (double v : ref.wr) key << " wr=" << fmt_key(v);
    return key.str();
}

// Columnar text cache of a reference field: x then the 2m components
// (re and im) per node.
void save_reference(const std::string& path, const std::string& key, const DgMesh& mesh,
                    const ComplexField& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out.is_open()) throw Error("cannot write reference cache " + path);
    out << "# paldg reference v1\n# " << key << "\n";
    char buf[64];
    for (int cell = 0; cell < mesh.n_cells; ++cell) {
        for (int node = 0; node < mesh.n_nodes(); ++node) {
            out << fmt_key(mesh.node_x(cell, node));
            for (int iv = 0; iv < f.n_vel; ++iv) {
                const auto v = f.at(iv, cell, node);
                std::snprintf(buf, sizeof(buf), " %.17g %.17g", v.real(), v.imag());
                out << buf;
            }
            out << "\n";
        }
    }
}

bool load_reference(const std::string& path, const std::string& key, const DgMesh& mesh,
                    ComplexField& f) {
    std::ifstream in(path);
    if (!in.is_open()) return false;
    std::string line;
    if (!std::getline(in, line) || line != "# paldg reference v1") return false;
    if (!std::getline(in, line) || line != "# " + key) return false;
    for (int cell = 0; cell < mesh.n_cells; ++cell) {
        for (int node = 0; node < mesh.n_nodes(); ++node) {
            if (!std::getline(in, line)) return false;
            std::istringstream ss(line);
            double x;
            if (!(ss >> x)) return false;
            for (int iv = 0; iv < f.n_vel; ++iv) {
                double re, im;
                if (!(ss >> re >> im)) return false;
                f.at(iv, cell, node) = {re, im};
            }
        }
    }
    return true;
}

template <class S>
ComplexField to_complex_field(const KineticField<S>& f) {
    ComplexField out(f.n_cells, f.n_nodes, f.n_vel);
    for (std::size_t i = 0; i < f.data.size(); ++i) {
        out.data[i] = std::complex<double>(real_part(f.data[i]), imag_part(f.data[i]));
    }
    return out;
}

ComplexField compute_reference_field(const RunConfig& ref) {
    if (ref.complex_mode) {
        SimDriver<std::complex<double>> sim(ref);
        const RunReport rep = sim.run();
        if (rep.status != "completed") throw Error("reference run failed: " + rep.message);
        return sim.field();
    }
    SimDriver<double> sim(ref);
    const RunReport rep = sim.run();
    if (rep.status != "completed") throw Error("reference run failed: " + rep.message);
    return to_complex_field(sim.field());
}

RefSampler build_self_reference(const RunConfig& cfg, RunReport& rep) {
    const RunConfig ref_cfg = reference_config(cfg);
    auto mesh = std::make_shared<DgMesh>(
        make_mesh(ref_cfg.domain_a, ref_cfg.domain_b, ref_cfg.n_cells, ref_cfg.degree));
    auto field = std::make_shared<ComplexField>(ref_cfg.n_cells, ref_cfg.degree + 1,
                                                2 * cfg.m());

    const std::string key = reference_key(ref_cfg);
    const std::string cache = effective_out_dir(cfg) + "/" + cfg.prefix + "_reference.txt";
    if (!load_reference(cache, key, *mesh, *field)) {
        *field = compute_reference_field(ref_cfg);
        std::filesystem::create_directories(effective_out_dir(cfg));
        save_reference(cache, key, *mesh, *field);
        rep.csv_files.push_back(cache);
    }

    if (cfg.validate_reference) {
        RunConfig half = ref_cfg;
        half.beta = ref_cfg.beta / 2.0;  // halved reference time step
        const ComplexField f2 = compute_reference_field(half);
        rep.reference_shift = l2_error(*field, f2, *mesh, cfg.m()).total;
    }

    FieldSampler<std::complex<double>> sampler(*field, *mesh);
    return [field, mesh, sampler](double x, int iv) { return sampler(x, iv); };
}

RefSampler make_exact_sampler(const RunConfig& cfg, const InitialData& init) {
    if (!init.exact) throw ConfigError("config: no exact solution available for this init");
    auto model = make_model<double>(cfg.model, cfg.model_param(), cfg.lambda);
    const double t = cfg.t_max;
    auto exact = init.exact;
    return [model, exact, t](double x, int iv) {
        const std::vector<double> w = exact(x, t);
        const MacroState<double> feq = maxwellian(model, w);
        return std::complex<double>(feq[iv], 0.0);
    };
}

// ---------------------------------------------------------------------------
// Drivers
// ---------------------------------------------------------------------------

template <class S>
RunReport run_typed(const RunConfig& cfg) {
    SimDriver<S> sim(cfg);
    RunReport rep = sim.run();

    if (sim.init().exact && rep.status == "completed") {
        RefSampler exact = make_exact_sampler(cfg, sim.init());
        rep.error = l2_error_vs(sim.field(), sim.mesh(), cfg.m(), exact);
        rep.has_error_norms = true;
    }

    if (cfg.write_profile) {
        const std::string dir = effective_out_dir(cfg);
        const std::string name = cfg.prefix + "_profile.csv";
        std::ofstream out = open_out(dir, name, rep);
        write_profile_csv(out, cfg, sim);
        if (cfg.plot_script) write_plot_script(dir, name, primitive_names(cfg), rep);
    }
    if (cfg.norm_history && !rep.norm_history.empty()) {
        std::ofstream out = open_out(effective_out_dir(cfg), cfg.prefix + "_norms.csv", rep);
        out << "step,norm\n";
        for (std::size_t i = 0; i < rep.norm_history.size(); ++i) {
            out << i + 1 << "," << fmt(rep.norm_history[i]) << "\n";
        }
    }
    return rep;
}

template <class S>
RunReport converge_typed(const RunConfig& cfg) {
    RunReport rep;
    if (cfg.study_meshes.size() < 3) {
        throw ConfigError("converge: need at least 3 study meshes");
    }

    RefSampler sampler;
    if (cfg.reference == "exact") {
        const InitialData init = make_initial_data(cfg);
        sampler = make_exact_sampler(cfg, init);
    } else {
        sampler = build_self_reference(cfg, rep);
    }

    std::vector<double> errors, hs;
    for (int n : cfg.study_meshes) {
        RunConfig c = cfg;
        c.n_cells = n;
        c.write_profile = false;
        c.study_meshes.clear();
        RunReport::StudyRow row;
        row.n_cells = n;
        row.h = (cfg.domain_b - cfg.domain_a) / n;
        try {
            SimDriver<S> sim(c);
            const RunReport r = sim.run();
            row.dt = r.dt;
            row.status = r.status;
            rep.wall_transport += r.wall_transport;
            rep.wall_collide += r.wall_collide;
            if (r.status == "completed") {
                row.error = l2_error_vs(sim.field(), sim.mesh(), cfg.m(), sampler).total;
                errors.push_back(row.error);
                hs.push_back(row.h);
            } else {
                row.error = std::numeric_limits<double>::quiet_NaN();
            }
        } catch (const Error& e) {
            row.status = std::string("error: ") + e.what();
            row.error = std::numeric_limits<double>::quiet_NaN();
        }
        rep.rows.push_back(row);
    }

    if (errors.size() >= 2) {
        rep.orders = observed_order(errors, hs).slopes;
    }

    const std::string dir = effective_out_dir(cfg);
    std::ofstream out = open_out(dir, cfg.prefix + "_convergence.csv", rep);
    out << "n_cells,h,dt,error,slope,status\n";
    std::size_t stable = 0;
    for (const auto& row : rep.rows) {
        out << row.n_cells << "," << fmt(row.h) << "," << fmt(row.dt) << ",";
        if (row.status == "completed") {
            out << fmt(row.error) << ",";
            if (stable > 0 && stable - 1 < rep.orders.size()) out << fmt(rep.orders[stable - 1]);
            ++stable;
        } else {
            out << ",";
        }
        out << "," << (row.status.empty() ? "skipped" : row.status) << "\n";
    }
    rep.status = "completed";
    return rep;
}

int locate_shock_cell(const RunConfig& cfg, const DgMesh& mesh,
                      const std::vector<double>& rho, double* x_best) {
    // Steepest density gradient over all cells via the nodal derivative.
    const int n = mesh.n_nodes();
    double best = -1.0;
    int best_cell = 0;
    *x_best = mesh.a;
    for (int cell = 0; cell < mesh.n_cells; ++cell) {
        for (int i = 0; i < n; ++i) {
            double d = 0.0;
            for (int j = 0; j < n; ++j) {
                d += mesh.ref.d_at(i, j) * rho[static_cast<std::size_t>(cell) * n + j];
            }
            d *= 2.0 / mesh.h;
            if (std::abs(d) > best) {
                best = std::abs(d);
                best_cell = cell;
                *x_best = mesh.node_x(cell, i);
            }
        }
    }
    (void)cfg;
    return best_cell;
}

template <class S>
RunReport riemann_typed(const RunConfig& cfg) {
    SimDriver<S> sim(cfg);
    RunReport rep = sim.run();
    const DgMesh& mesh = sim.mesh();

    if (sim.init().exact && rep.status == "completed") {
        RefSampler exact = make_exact_sampler(cfg, sim.init());
        rep.error = l2_error_vs(sim.field(), sim.mesh(), cfg.m(), exact);
        rep.has_error_norms = true;
    }

    const double rho_l = cfg.wl[0], u_l = cfg.wl[1] / cfg.wl[0];
    const double rho_r = cfg.wr[0], u_r = cfg.wr[1] / cfg.wr[0];
    const RiemannSolutionIsothermal sol =
        solve_riemann_isothermal(rho_l, u_l, rho_r, u_r, cfg.c);
    const double t = cfg.t_max;

    // Numerical density (real part) at every node.
    const int n = mesh.n_nodes();
    std::vector<double> rho_num(static_cast<std::size_t>(mesh.n_cells) * n);
    for (int cell = 0; cell < mesh.n_cells; ++cell) {
        for (int node = 0; node < n; ++node) {
            rho_num[static_cast<std::size_t>(cell) * n + node] =
                real_part(sim.w_at(cell, node)[0]);
        }
    }

    if (sol.wave2 == WaveType::shock) {
        rep.shock_x_exact = sol.head2 * t;
    } else if (sol.wave1 == WaveType::shock) {
        rep.shock_x_exact = sol.head1 * t;
    }
    locate_shock_cell(cfg, mesh, rho_num, &rep.shock_x_est);

    // Mean |density error| across the rarefaction fan, relative to the jump.
    if (sol.wave1 == WaveType::rarefaction && sol.tail1 > sol.head1) {
        const double x0 = sol.head1 * t, x1 = sol.tail1 * t;
        double acc = 0.0, width = 0.0;
        for (int cell = 0; cell < mesh.n_cells; ++cell) {
            for (int node = 0; node < n; ++node) {
                const double x = mesh.node_x(cell, node);
                if (x < x0 || x > x1) continue;
                const double wq = mesh.node_w(node);
                acc += wq * std::abs(rho_num[static_cast<std::size_t>(cell) * n + node] -
                                     sol.sample(x, t)[0]);
                width += wq;
            }
        }
        const double jump = std::abs(rho_l - rho_r);
        if (width > 0.0 && jump > 0.0) rep.rarefaction_l1_rel = acc / width / jump;
    }

    const std::string dir = effective_out_dir(cfg);
    std::ofstream out = open_out(dir, cfg.prefix + "_riemann.csv", rep);
    if constexpr (is_complex_v<S>) {
        out << "x,rho_re,rho_im,u_re,u_im,rho_exact,u_exact\n";
    } else {
        out << "x,rho,u,rho_exact,u_exact\n";
    }
    for (int cell = 0; cell < mesh.n_cells; ++cell) {
        for (int node = 0; node < n; ++node) {
            const double x = mesh.node_x(cell, node);
            const auto w = sim.w_at(cell, node);
            const auto u = w[1] / w[0];
            const auto [re, ue] = sol.sample(x, t);
            out << fmt(x) << ",";
            if constexpr (is_complex_v<S>) {
                out << fmt(real_part(w[0])) << "," << fmt(imag_part(w[0])) << ","
                    << fmt(real_part(u)) << "," << fmt(imag_part(u)) << ",";
            } else {
                out << fmt(w[0]) << "," << fmt(u) << ",";
            }
            out << fmt(re) << "," << fmt(ue) << "\n";
        }
    }
    return rep;
}

}  // namespace

RunReport run(const RunConfig& cfg) {
    cfg.validate();
    return cfg.complex_mode ? run_typed<std::complex<double>>(cfg) : run_typed<double>(cfg);
}

RunReport converge(const RunConfig& cfg) {
    cfg.validate();
    return cfg.complex_mode ? converge_typed<std::complex<double>>(cfg)
                            : converge_typed<double>(cfg);
}

RunReport riemann_compare(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.model != "isothermal" || cfg.init != "riemann") {
        throw ConfigError("riemann subcommand needs the isothermal model with a riemann init");
    }
    return cfg.complex_mode ? riemann_typed<std::complex<double>>(cfg) : riemann_typed<double>(cfg);
}

void print_report(const RunReport& rep, const RunConfig& cfg) {
    std::cout << "status: " << rep.status;
    if (!rep.message.empty()) std::cout << " (" << rep.message << ")";
    std::cout << "\n";
    std::cout << "steps: " << rep.steps << "  dt: " << rep.dt
              << "  final time: " << rep.final_time << "\n";
    if (rep.stages_per_step > 0) {
        std::cout << "stages per step: " << rep.stages_per_step << " (fusion would give "
                  << rep.stages_per_step_fused << ")\n";
    }
    std::cout << "sub-characteristic margin: " << rep.initial_margin << " at init, "
              << rep.final_margin << " at t_max\n";
    std::cout << "field norm: " << rep.norm_initial << " -> " << rep.norm_final << "\n";
    if (!rep.total_w_initial.empty()) {
        std::cout << "total w drift:";
        for (std::size_t k = 0; k < rep.total_w_initial.size(); ++k) {
            std::cout << " " << rep.total_w_final[k] - rep.total_w_initial[k];
        }
        std::cout << "\n";
    }
    std::cout << "wall seconds: transport " << rep.wall_transport << ", collision "
              << rep.wall_collide << "\n";
    if (!rep.max_im_w.empty()) {
        std::cout << "max |Im|:";
        for (double v : rep.max_im_w) std::cout << " " << v;
        std::cout << "  (|Im rho| peak at x = " << rep.max_im_rho_x << ")\n";
    }
    if (rep.has_error_norms) {
        std::cout << "L2 error vs exact: " << rep.error.total << " (per w:";
        for (double v : rep.error.per_w) std::cout << " " << v;
        std::cout << ")\n";
    }
    if (!rep.rows.empty()) {
        std::cout << "convergence study (" << cfg.scheme << "):\n";
        std::cout << "  n_cells      error        slope   status\n";
        std::size_t stable = 0;
        for (const auto& row : rep.rows) {
            std::printf("  %7d  %12.5e  ", row.n_cells, row.error);
            if (row.status == "completed" && stable > 0 && stable - 1 < rep.orders.size()) {
                std::printf("%7.3f", rep.orders[stable - 1]);
            } else {
                std::printf("      -");
            }
            if (row.status == "completed") ++stable;
            std::printf("  %s\n", row.status.c_str());
        }
        if (rep.reference_shift > 0.0) {
            std::cout << "  reference dt-halving shift: " << rep.reference_shift << "\n";
        }
    }
    if (rep.shock_x_exact != 0.0 || rep.shock_x_est != 0.0) {
        std::cout << "shock position: exact " << rep.shock_x_exact << ", steepest-gradient "
                  << rep.shock_x_est << "\n";
        std::cout << "rarefaction mean |drho| / jump: " << rep.rarefaction_l1_rel << "\n";
    }
    for (const auto& f : rep.csv_files) std::cout << "wrote " << f << "\n";
}

}  // namespace paldg
