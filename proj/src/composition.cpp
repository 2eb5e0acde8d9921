#include "paldg/composition.hpp"

#include <cmath>
#include <cstdio>

namespace paldg {

bool CompositionScheme::is_complex() const {
    for (const auto& g : gammas)
        if (g.imag() != 0.0) return true;
    return false;
}

bool CompositionScheme::is_palindromic() const {
    const std::size_t s = gammas.size();
    for (std::size_t i = 0; i < s; ++i) {
        if (gammas[i] != gammas[s - 1 - i]) return false;
    }
    return true;
}

std::complex<double> CompositionScheme::gamma_sum() const {
    std::complex<double> sum{};
    for (const auto& g : gammas) sum += g;
    return sum;
}

std::pair<double, double> triple_jump_real(int p) {
    if (p < 2 || p % 2 != 0) throw ConfigError("triple_jump_real: order must be even, >= 2");
    const double r = std::pow(2.0, 1.0 / (p + 1));
    const double alpha = 1.0 / (2.0 - r);
    const double beta = -r / (2.0 - r);
    return {alpha, beta};
}

std::pair<std::complex<double>, std::complex<double>> triple_jump_complex(int p) {
    if (p < 2 || p % 2 != 0) throw ConfigError("triple_jump_complex: order must be even, >= 2");
    const double pi = std::acos(-1.0);
    const std::complex<double> phase = std::polar(1.0, pi / (p + 1));
    const double r = std::pow(2.0, 1.0 / (p + 1));
    const std::complex<double> denom = 2.0 * phase + r;
    return {phase / denom, r / denom};
}

CompositionScheme order2_scheme() {
    CompositionScheme s;
    s.gammas = {1.0};
    s.nominal_order = 2;
    s.family = SchemeFamily::order2;
    s.tag = "m2";
    return s;
}

namespace {

// One triple-jump level: each fraction g becomes (a g, b g, a g).
std::vector<std::complex<double>> jump(const std::vector<std::complex<double>>& gammas,
                                       std::complex<double> a, std::complex<double> b) {
    std::vector<std::complex<double>> out;
    out.reserve(gammas.size() * 3);
    for (const auto& g : gammas) out.push_back(a * g);
    for (const auto& g : gammas) out.push_back(b * g);
    for (const auto& g : gammas) out.push_back(a * g);
    return out;
}

}  // namespace

CompositionScheme triple_jump_scheme(int order, bool complex_steps) {
    if (order != 4 && order != 6) throw ConfigError("triple_jump_scheme: order must be 4 or 6");
    std::vector<std::complex<double>> gammas = {1.0};
    for (int p = 2; p < order; p += 2) {
        std::complex<double> a, b;
        if (complex_steps) {
            std::tie(a, b) = triple_jump_complex(p);
        } else {
            const auto [ar, br] = triple_jump_real(p);
            a = ar;
            b = br;
        }
        gammas = jump(gammas, a, b);
    }
    CompositionScheme s;
    s.gammas = std::move(gammas);
    s.nominal_order = order;
    s.family = complex_steps ? SchemeFamily::triple_jump_complex : SchemeFamily::triple_jump_real;
    s.tag = "tj" + std::to_string(order) + (complex_steps ? "_complex" : "_real");
    return s;
}

CompositionScheme suzuki4() {
    const double r = std::pow(4.0, 1.0 / 3.0);
    const double g0 = 1.0 / (4.0 - r);
    const double g2 = -r / (4.0 - r);
    CompositionScheme s;
    s.gammas = {g0, g0, g2, g0, g0};
    s.nominal_order = 4;
    s.family = SchemeFamily::suzuki4;
    s.tag = "suzuki4";
    return s;
}

CompositionScheme kahan_li6() {
    // Nine-stage sixth-order palindromic coefficients (Kahan & Li),
    // tabulated constants.
    const double g0 = 0.392161444007314139275655330038380932595385404354442882183619;
    const double g1 = 0.332599136789359438604272125325790569941599549617156528439173;
    const double g2 = -0.706246172557639359809845337222763994485425050210063375842163;
    const double g3 = 0.0822135962935508002304427053341134143428469807222103772811280;
    const double g4 = 0.798543990934829963398950353048958155211186231032507175876486;
    CompositionScheme s;
    s.gammas = {g0, g1, g2, g3, g4, g3, g2, g1, g0};
    s.nominal_order = 6;
    s.family = SchemeFamily::kahan_li6;
    s.tag = "kahanli6";
    return s;
}

CompositionScheme scheme_by_name(const std::string& tag) {
    if (tag == "m2") return order2_scheme();
    if (tag == "tj4_real") return triple_jump_scheme(4, false);
    if (tag == "tj4_complex") return triple_jump_scheme(4, true);
    if (tag == "tj6_real") return triple_jump_scheme(6, false);
    if (tag == "tj6_complex") return triple_jump_scheme(6, true);
    if (tag == "suzuki4") return suzuki4();
    if (tag == "kahanli6") return kahan_li6();
    throw ConfigError("unknown scheme: " + tag);
}

std::vector<std::string> scheme_names() {
    return {"m2", "tj4_real", "tj4_complex", "tj6_real", "tj6_complex", "suzuki4", "kahanli6"};
}

int StepPlan::count(StageKind kind) const {
    int n = 0;
    for (const auto& st : stages)
        if (st.kind == kind) ++n;
    return n;
}

bool StepPlan::is_palindromic() const {
    const std::size_t s = stages.size();
    for (std::size_t i = 0; i < s; ++i) {
        const Stage& a = stages[i];
        const Stage& b = stages[s - 1 - i];
        if (a.kind != b.kind || a.dt != b.dt) return false;
    }
    return true;
}

bool StepPlan::needs_complex() const {
    for (const auto& st : stages)
        if (st.dt.imag() != 0.0) return true;
    return false;
}

StepPlan build_plan(const CompositionScheme& scheme, std::complex<double> dt, bool fuse) {
    if (scheme.gammas.empty()) throw ConfigError("build_plan: empty scheme");
    if (!scheme.is_palindromic()) throw ConfigError("build_plan: scheme is not palindromic");

    StepPlan plan;
    plan.dt = dt;
    plan.scheme_tag = scheme.tag;
    plan.fused = fuse;
    plan.n_m2_steps = static_cast<int>(scheme.gammas.size());

    const std::size_t s = scheme.gammas.size();
    for (std::size_t i = 0; i < s; ++i) {
        const std::complex<double> g = scheme.gammas[i] * dt;
        const std::complex<double> quarter = g / 4.0;
        const std::complex<double> half = g / 2.0;
        const int mi = static_cast<int>(i);
        if (fuse && i > 0) {
            // Merge with the trailing quarter-transport of the previous brick.
            plan.stages.back().dt += quarter;
        } else {
            plan.stages.push_back({StageKind::transport, quarter, mi});
        }
        plan.stages.push_back({StageKind::collide, half, mi});
        plan.stages.push_back({StageKind::transport, half, mi});
        plan.stages.push_back({StageKind::collide, half, mi});
        plan.stages.push_back({StageKind::transport, quarter, mi});
    }
    return plan;
}

void validate_plan_collisions(const StepPlan& plan, const RelaxationParams& params) {
    if (params.tau == 0.0) return;  // dt-free involution form, no denominator
    for (std::size_t i = 0; i < plan.stages.size(); ++i) {
        const Stage& st = plan.stages[i];
        if (st.kind != StageKind::collide) continue;
        const std::complex<double> denom = 2.0 * params.tau + st.dt;
        if (!collision_denominator_ok(denom, st.dt, params)) {
            char buf[200];
            std::snprintf(buf, sizeof(buf),
                          "collision stage %zu of scheme %s is singular: "
                          "|2*tau + dt_stage| = %.3e with tau = %.6e, dt_stage = (%.6e,%.6e)",
                          i, plan.scheme_tag.c_str(), std::abs(denom), params.tau,
                          st.dt.real(), st.dt.imag());
            throw SingularCollisionError(buf, static_cast<int>(i));
        }
    }
}

}  // namespace paldg
