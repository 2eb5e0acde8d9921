#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "paldg/config.hpp"
#include "paldg/runner.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string scheme;
    std::string out_dir;
    int n_cells = -1;
    double beta = -1.0;
    double tau = -1.0;
    double t_max = -1.0;
};

void add_common(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("-c,--config", opt.config_path, "configuration file (key = value lines)")
        ->required();
    cmd->add_option("--set", opt.overrides, "override a config key, e.g. --set scheme=suzuki4");
    cmd->add_option("--scheme", opt.scheme, "time integration scheme");
    cmd->add_option("--n-cells", opt.n_cells, "number of DG cells");
    cmd->add_option("--beta", opt.beta, "CFL number");
    cmd->add_option("--tau", opt.tau, "relaxation time");
    cmd->add_option("--t-max", opt.t_max, "final time");
    cmd->add_option("--out-dir", opt.out_dir, "output directory");
}

paldg::RunConfig build_config(const CliOptions& opt) {
    paldg::RunConfig cfg = paldg::load_config_file(opt.config_path);
    for (const std::string& kv : opt.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw paldg::ConfigError("--set expects key=value, got: " + kv);
        }
        paldg::apply_config_entry(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!opt.scheme.empty()) cfg.scheme = opt.scheme;
    if (opt.n_cells > 0) cfg.n_cells = opt.n_cells;
    if (opt.beta > 0.0) cfg.beta = opt.beta;
    if (opt.tau >= 0.0) cfg.tau = opt.tau;
    if (opt.t_max >= 0.0) cfg.t_max = opt.t_max;
    if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"1D conservation-law solver: implicit upwind DG transport on a "
                 "two-speed kinetic representation with palindromic composition "
                 "time integrators"};
    app.require_subcommand(1);

    CliOptions opt;
    CLI::App* cmd_run = app.add_subcommand("run", "single simulation, writes the macro profile");
    CLI::App* cmd_conv =
        app.add_subcommand("converge", "mesh-refinement study at fixed CFL number");
    CLI::App* cmd_riem =
        app.add_subcommand("riemann", "compare against the exact isothermal Riemann solution");
    add_common(cmd_run, opt);
    add_common(cmd_conv, opt);
    add_common(cmd_riem, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        const paldg::RunConfig cfg = build_config(opt);
        paldg::RunReport rep;
        if (cmd_run->parsed()) {
            rep = paldg::run(cfg);
        } else if (cmd_conv->parsed()) {
            rep = paldg::converge(cfg);
        } else {
            rep = paldg::riemann_compare(cfg);
        }
        paldg::print_report(rep, cfg);
        if (rep.status != "completed") return 2;
    } catch (const paldg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
