#include "paldg/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "paldg/composition.hpp"

namespace paldg {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') {
        throw ConfigError("config: bad number for '" + key + "': " + value);
    }
    return v;
}

int parse_int(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const long v = std::strtol(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0') {
        throw ConfigError("config: bad integer for '" + key + "': " + value);
    }
    return static_cast<int>(v);
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw ConfigError("config: bad boolean for '" + key + "': " + value);
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
    return out;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
    std::vector<int> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_int(key, trim(item)));
    return out;
}

}  // namespace

void apply_config_entry(RunConfig& cfg, const std::string& raw_key, const std::string& value) {
    // Section-qualified keys are accepted; only the final component matters.
    std::string key = raw_key;
    const auto dot = key.rfind('.');
    if (dot != std::string::npos) key = key.substr(dot + 1);

    if (key == "model") cfg.model = value;
    else if (key == "c") cfg.c = parse_double(key, value);
    else if (key == "gamma") cfg.gamma = parse_double(key, value);
    else if (key == "lambda") cfg.lambda = parse_double(key, value);
    else if (key == "tau") cfg.tau = parse_double(key, value);
    else if (key == "singular_tol") cfg.singular_tol = parse_double(key, value);
    else if (key == "n_cells") cfg.n_cells = parse_int(key, value);
    else if (key == "degree") cfg.degree = parse_int(key, value);
    else if (key == "domain_a") cfg.domain_a = parse_double(key, value);
    else if (key == "domain_b") cfg.domain_b = parse_double(key, value);
    else if (key == "scheme") cfg.scheme = value;
    else if (key == "beta") cfg.beta = parse_double(key, value);
    else if (key == "t_max") cfg.t_max = parse_double(key, value);
    else if (key == "scalar") {
        if (value == "real") cfg.complex_mode = false;
        else if (value == "complex") cfg.complex_mode = true;
        else throw ConfigError("config: scalar must be 'real' or 'complex'");
    }
    else if (key == "init") cfg.init = value;
    else if (key == "wl") cfg.wl = parse_double_list(key, value);
    else if (key == "wr") cfg.wr = parse_double_list(key, value);
    else if (key == "table_path") cfg.table_path = value;
    else if (key == "meshes") cfg.study_meshes = parse_int_list(key, value);
    else if (key == "reference") cfg.reference = value;
    else if (key == "reference_refine") cfg.reference_refine = parse_int(key, value);
    else if (key == "reference_scheme") cfg.reference_scheme = value;
    else if (key == "reference_beta") cfg.reference_beta = parse_double(key, value);
    else if (key == "validate_reference") cfg.validate_reference = parse_bool(key, value);
    else if (key == "dir") cfg.out_dir = value;
    else if (key == "prefix") cfg.prefix = value;
    else if (key == "write_profile") cfg.write_profile = parse_bool(key, value);
    else if (key == "norm_history") cfg.norm_history = parse_bool(key, value);
    else if (key == "plot_script") cfg.plot_script = parse_bool(key, value);
    else if (key == "check_admissibility") cfg.check_admissibility = parse_bool(key, value);
    else if (key == "check_nan") cfg.check_nan = parse_bool(key, value);
    else throw ConfigError("config: unknown key '" + raw_key + "'");
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::stringstream ss(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("config: malformed section at line " + std::to_string(lineno));
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: expected key=value at line " + std::to_string(lineno));
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        apply_config_entry(cfg, section.empty() ? key : section + "." + key, value);
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open()) throw ConfigError("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void RunConfig::validate() const {
    if (model != "isothermal" && model != "euler") {
        throw ConfigError("config: model must be isothermal or euler");
    }
    if (model == "isothermal" && c <= 0.0) throw ConfigError("config: c must be > 0");
    if (model == "euler" && gamma <= 1.0) throw ConfigError("config: gamma must be > 1");
    if (lambda <= 0.0) throw ConfigError("config: lambda must be > 0");
    if (tau < 0.0) throw ConfigError("config: tau must be >= 0");
    if (singular_tol <= 0.0) throw ConfigError("config: singular_tol must be > 0");
    if (n_cells < 1) throw ConfigError("config: n_cells must be >= 1");
    if (degree < 1 || degree > 8) throw ConfigError("config: degree must be in [1,8]");
    if (!(domain_b > domain_a)) throw ConfigError("config: domain_b must exceed domain_a");
    if (beta <= 0.0) throw ConfigError("config: beta must be > 0");
    if (t_max < 0.0) throw ConfigError("config: t_max must be >= 0");

    const CompositionScheme s = scheme_by_name(scheme);  // throws on unknown tag
    if (s.is_complex() && !complex_mode) {
        throw ConfigError("config: scheme " + scheme + " uses complex time steps; set scalar=complex");
    }

    if (init == "smooth_pulse") {
        if (model != "isothermal") throw ConfigError("config: smooth_pulse needs the isothermal model");
    } else if (init == "riemann") {
        const std::size_t want = model == "euler" ? 3 : 2;
        if (wl.size() != want || wr.size() != want) {
            throw ConfigError("config: riemann init needs wl/wr with " + std::to_string(want) +
                              " components");
        }
    } else if (init == "contact_wave") {
        if (model != "euler") throw ConfigError("config: contact_wave needs the euler model");
    } else if (init == "table") {
        if (table_path.empty()) throw ConfigError("config: table init needs table_path");
    } else {
        throw ConfigError("config: unknown init '" + init + "'");
    }

    if (reference != "self" && reference != "exact") {
        throw ConfigError("config: reference must be self or exact");
    }
    if (reference == "exact" && init != "contact_wave" && init != "riemann") {
        throw ConfigError("config: exact reference needs a contact_wave or riemann init");
    }
    if (reference_refine < 2) throw ConfigError("config: reference_refine must be >= 2");
    scheme_by_name(reference_scheme);
    for (int n : study_meshes) {
        if (n < 1) throw ConfigError("config: study meshes must be positive");
    }
}

}  // namespace paldg
