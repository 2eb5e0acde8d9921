#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "paldg/runner.hpp"

using namespace paldg;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.is_open());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunConfig smooth_config() {
    RunConfig cfg;
    cfg.model = "isothermal";
    cfg.c = 0.6;
    cfg.lambda = 2.0;
    cfg.tau = 0.0;
    cfg.n_cells = 40;
    cfg.degree = 3;
    cfg.domain_a = -2.0;
    cfg.domain_b = 2.0;
    cfg.scheme = "m2";
    cfg.beta = 5.0;
    cfg.t_max = 0.1;
    cfg.init = "smooth_pulse";
    cfg.out_dir = "test_out";
    cfg.prefix = "unit";
    cfg.write_profile = false;
    return cfg;
}

}  // namespace

TEST_CASE("config text parsing with sections, comments and overrides") {
    const std::string text = R"(
# experiment
[model]
model = euler
gamma = 1.4
lambda = 2.0

[time]
scheme = kahanli6
beta = 10.0        # CFL number
t_max = 0.2

[init]
init = riemann
wl = 2, 0, 5
wr = 1, 0, 2.5

[space]
n_cells = 100
degree = 5
domain_a = -0.5
domain_b = 0.5
)";
    RunConfig cfg = parse_config_text(text);
    CHECK(cfg.model == "euler");
    CHECK(cfg.gamma == 1.4);
    CHECK(cfg.scheme == "kahanli6");
    CHECK(cfg.beta == 10.0);
    CHECK(cfg.wl == std::vector<double>{2.0, 0.0, 5.0});
    CHECK(cfg.wr == std::vector<double>{1.0, 0.0, 2.5});
    CHECK_NOTHROW(cfg.validate());

    apply_config_entry(cfg, "beta", "5.5");
    CHECK(cfg.beta == 5.5);

    CHECK_THROWS_AS(apply_config_entry(cfg, "betaa", "5"), ConfigError);
    CHECK_THROWS_AS(apply_config_entry(cfg, "beta", "fast"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("n_cells 100\n"), ConfigError);
}

TEST_CASE("config validation rejects inconsistent setups") {
    RunConfig cfg = smooth_config();
    CHECK_NOTHROW(cfg.validate());

    RunConfig bad = cfg;
    bad.scheme = "tj6_complex";  // complex scheme in real mode
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad.complex_mode = true;
    CHECK_NOTHROW(bad.validate());

    bad = cfg;
    bad.model = "euler";  // smooth pulse is isothermal-only
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    bad = cfg;
    bad.beta = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    bad = cfg;
    bad.init = "riemann";  // missing states
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("a violated sub-characteristic condition is a configuration error") {
    RunConfig cfg = smooth_config();
    cfg.lambda = 0.5;  // slower than the fastest wave
    CHECK_THROWS_AS(SimDriver<double>{cfg}, ConfigError);
}

TEST_CASE("t_max = 0 returns the initial condition unchanged") {
    RunConfig cfg = smooth_config();
    cfg.t_max = 0.0;
    SimDriver<double> sim(cfg);
    const auto before = sim.field().data;
    const RunReport rep = sim.run();
    CHECK(rep.steps == 0);
    CHECK(rep.status == "completed");
    CHECK(sim.field().data == before);
}

TEST_CASE("constant equilibrium run shows zero drift") {
    RunConfig cfg = smooth_config();
    cfg.init = "riemann";  // equal states -> constant field
    cfg.wl = {1.5, 0.3};
    cfg.wr = {1.5, 0.3};
    cfg.scheme = "suzuki4";
    SimDriver<double> sim(cfg);
    const RunReport rep = sim.run();
    CHECK(rep.status == "completed");
    CHECK(rep.steps > 0);
    CHECK(std::abs(rep.norm_final - rep.norm_initial) < 1e-12 * rep.norm_initial);
    for (std::size_t k = 0; k < rep.total_w_initial.size(); ++k) {
        CHECK(std::abs(rep.total_w_final[k] - rep.total_w_initial[k]) < 1e-12);
    }
}

TEST_CASE("the final step lands exactly on t_max") {
    RunConfig cfg = smooth_config();
    cfg.t_max = 0.1;
    SimDriver<double> sim(cfg);
    const RunReport rep = sim.run();
    CHECK(rep.final_time == cfg.t_max);
    CHECK(rep.steps == static_cast<int>(std::ceil(cfg.t_max / rep.dt - 1e-9)));
}

TEST_CASE("compact smooth run conserves total w before waves reach the boundary") {
    RunConfig cfg = smooth_config();
    cfg.n_cells = 80;
    cfg.degree = 5;
    cfg.scheme = "kahanli6";
    cfg.t_max = 0.4;
    SimDriver<double> sim(cfg);
    const RunReport rep = sim.run();
    CHECK(rep.status == "completed");
    for (std::size_t k = 0; k < rep.total_w_initial.size(); ++k) {
        CHECK(std::abs(rep.total_w_final[k] - rep.total_w_initial[k]) <= 1e-10);
    }
}

TEST_CASE("cross-scheme consistency on the smooth pulse") {
    RunConfig a = smooth_config();
    a.scheme = "m2";
    RunConfig b = a;
    b.scheme = "suzuki4";

    auto diff_at_beta = [&](double beta) {
        RunConfig ca = a, cb = b;
        ca.beta = beta;
        cb.beta = beta;
        SimDriver<double> sa(ca), sb(cb);
        sa.run();
        sb.run();
        return l2_error(sa.field(), sb.field(), sa.mesh(), 2).total;
    };
    const double coarse = diff_at_beta(5.0);
    const double fine = diff_at_beta(2.5);
    CHECK(fine < coarse);
}

TEST_CASE("run driver emits a deterministic profile") {
    std::filesystem::remove_all("test_out");
    RunConfig cfg = smooth_config();
    cfg.write_profile = true;
    cfg.prefix = "det";
    const RunReport r1 = run(cfg);
    REQUIRE_FALSE(r1.csv_files.empty());
    const std::string first = read_file(r1.csv_files.front());
    CHECK(first.substr(0, 6) == "x,rho,");

    const RunReport r2 = run(cfg);
    CHECK(read_file(r2.csv_files.front()) == first);
}

TEST_CASE("complex run reports imaginary-part diagnostics") {
    RunConfig cfg = smooth_config();
    cfg.scheme = "tj4_complex";
    cfg.complex_mode = true;
    cfg.t_max = 0.05;
    cfg.write_profile = true;
    cfg.prefix = "cplx";
    const RunReport rep = run(cfg);
    CHECK(rep.status == "completed");
    REQUIRE(rep.max_im_w.size() == 2);
    CHECK(rep.max_im_w[0] < 1e-2);  // small imaginary residue
    const std::string csv = read_file(rep.csv_files.front());
    CHECK(csv.substr(0, 23) == "x,rho_re,rho_im,u_re,u_");
}

TEST_CASE("converge emits a study table and caches its reference") {
    std::filesystem::remove_all("test_out_conv");
    RunConfig cfg = smooth_config();
    cfg.out_dir = "test_out_conv";
    cfg.prefix = "study";
    cfg.scheme = "m2";
    cfg.degree = 3;
    cfg.t_max = 0.3;
    cfg.study_meshes = {20, 40, 80};
    cfg.reference = "self";
    cfg.reference_refine = 4;
    cfg.reference_scheme = "kahanli6";

    const RunReport rep = converge(cfg);
    REQUIRE(rep.rows.size() == 3);
    for (const auto& row : rep.rows) CHECK(row.status == "completed");
    REQUIRE(rep.orders.size() == 2);
    CHECK(rep.orders[1] > 1.5);  // second order brick

    // cache reuse keeps the table byte-identical
    const std::string table = read_file("test_out_conv/study_convergence.csv");
    const RunReport rep2 = converge(cfg);
    CHECK(read_file("test_out_conv/study_convergence.csv") == table);
    CHECK(std::filesystem::exists("test_out_conv/study_reference.txt"));
}

TEST_CASE("riemann comparison on symmetric data reduces to a constant state") {
    RunConfig cfg;
    cfg.model = "isothermal";
    cfg.c = 0.6;
    cfg.lambda = 2.0;
    cfg.n_cells = 20;
    cfg.degree = 2;
    cfg.domain_a = -1.0;
    cfg.domain_b = 1.0;
    cfg.scheme = "m2";
    cfg.beta = 3.0;
    cfg.t_max = 0.1;
    cfg.init = "riemann";
    cfg.wl = {1.0, 0.0};
    cfg.wr = {1.0, 0.0};
    cfg.out_dir = "test_out";
    cfg.prefix = "riem";
    const RunReport rep = riemann_compare(cfg);
    CHECK(rep.status == "completed");
    CHECK(rep.has_error_norms);
    CHECK(rep.error.total < 1e-12);
    CHECK(rep.rarefaction_l1_rel == 0.0);
}

TEST_CASE("riemann subcommand rejects non-riemann configs") {
    RunConfig cfg = smooth_config();
    CHECK_THROWS_AS(riemann_compare(cfg), ConfigError);
}

TEST_CASE("the output directory honors the environment override") {
    RunConfig cfg = smooth_config();
    cfg.write_profile = true;
    cfg.prefix = "envtest";
    setenv("PALDG_OUT_DIR", "test_out_env", 1);
    const RunReport rep = run(cfg);
    unsetenv("PALDG_OUT_DIR");
    REQUIRE_FALSE(rep.csv_files.empty());
    CHECK(rep.csv_files.front().rfind("test_out_env/", 0) == 0);
    CHECK(std::filesystem::exists("test_out_env/envtest_profile.csv"));
}

TEST_CASE("table initial data interpolates between rows") {
    const std::string path = "test_out/init_table.txt";
    std::filesystem::create_directories("test_out");
    {
        std::ofstream out(path);
        out << "# x rho rho_u\n";
        out << "-1.0 1.0 0.0\n";
        out << " 0.0 2.0 0.2\n";
        out << " 1.0 1.0 0.0\n";
    }
    RunConfig cfg = smooth_config();
    cfg.init = "table";
    cfg.table_path = path;
    cfg.domain_a = -1.0;
    cfg.domain_b = 1.0;
    const InitialData data = make_initial_data(cfg);
    CHECK(data.w0(-1.0)[0] == 1.0);
    CHECK(data.w0(0.0)[0] == 2.0);
    CHECK(data.w0(-0.5)[0] == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(data.w0(0.5)[1] == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(data.w0(3.0)[0] == 1.0);  // clamped

    cfg.t_max = 0.01;
    const RunReport rep = run(cfg);
    CHECK(rep.status == "completed");
}

TEST_CASE("a final step landing on the collision singularity names t_max") {
    RunConfig cfg = smooth_config();
    cfg.scheme = "kahanli6";
    cfg.singular_tol = 1e-4;

    SimDriver<double> probe(cfg);
    const double dt = cfl_dt(cfg.beta, probe.mesh(), cfg.lambda);
    const double gamma2 = std::abs(kahan_li6().gammas[2].real());
    // pick tau so the singular step length is half a regular step, then land
    // the final step exactly there
    cfg.tau = gamma2 * dt / 8.0;
    cfg.t_max = 2.0 * dt + 4.0 * cfg.tau / gamma2;

    try {
        SimDriver<double> sim(cfg);
        sim.run();
        FAIL("expected a singular-collision error");
    } catch (const SingularCollisionError& e) {
        CHECK(std::string(e.what()).find("t_max") != std::string::npos);
    }
}

TEST_CASE("the self-reference dt-halving shift is recorded and small") {
    std::filesystem::remove_all("test_out_refcheck");
    RunConfig cfg = smooth_config();
    cfg.out_dir = "test_out_refcheck";
    cfg.prefix = "refcheck";
    cfg.t_max = 0.2;
    cfg.study_meshes = {10, 20, 40};
    cfg.validate_reference = true;

    const RunReport rep = converge(cfg);
    REQUIRE_FALSE(rep.rows.empty());
    double min_err = rep.rows.front().error;
    for (const auto& row : rep.rows) min_err = std::min(min_err, row.error);
    CHECK(rep.reference_shift > 0.0);
    CHECK(rep.reference_shift < 0.01 * min_err);
}

TEST_CASE("run reports the final sub-characteristic margin") {
    RunConfig cfg = smooth_config();
    SimDriver<double> sim(cfg);
    const RunReport rep = sim.run();
    CHECK(rep.initial_margin == doctest::Approx(2.0 - 0.6).epsilon(0.2));
    CHECK(rep.final_margin > 0.0);
    CHECK(rep.final_margin <= rep.initial_margin + 0.1);
}
