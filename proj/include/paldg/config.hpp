#ifndef PALDG_CONFIG_HPP
#define PALDG_CONFIG_HPP

#include <string>
#include <vector>

#include "paldg/errors.hpp"

namespace paldg {

// A full experiment description.  Parsed from line-oriented key=value text
// ('#' comments, optional [section] headers); CLI flags override keys.
struct RunConfig {
    // model
    std::string model = "isothermal";
    double c = 0.6;
    double gamma = 1.4;
    double lambda = 2.0;

    // relaxation
    double tau = 0.0;
    double singular_tol = 1e-12;

    // space
    int n_cells = 100;
    int degree = 5;
    double domain_a = -1.0;
    double domain_b = 1.0;

    // time
    std::string scheme = "m2";
    double beta = 5.0;
    double t_max = 0.0;
    bool complex_mode = false;

    // initial data
    std::string init = "smooth_pulse";  // smooth_pulse | riemann | contact_wave | table
    std::vector<double> wl;
    std::vector<double> wr;
    std::string table_path;

    // convergence study
    std::vector<int> study_meshes;
    std::string reference = "self";  // self | exact
    int reference_refine = 4;
    std::string reference_scheme = "kahanli6";
    double reference_beta = 0.0;  // 0: reuse beta
    bool validate_reference = false;

    // output
    std::string out_dir = "out";
    std::string prefix = "run";
    bool write_profile = true;
    bool norm_history = false;
    bool plot_script = false;

    // diagnostics
    bool check_admissibility = false;
    bool check_nan = false;

    int m() const { return model == "euler" ? 3 : 2; }
    double model_param() const { return model == "euler" ? gamma : c; }

    // Throws ConfigError on any inconsistency; called before any allocation.
    void validate() const;
};

// One key=value assignment (also the CLI override syntax).
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

RunConfig parse_config_text(const std::string& text);
RunConfig load_config_file(const std::string& path);

}  // namespace paldg

#endif
