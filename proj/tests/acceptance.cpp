// SPDX-License-Identifier: MIT
//
// Acceptance runner: one PASS/FAIL line per criterion, each with its own time
// budget. Exits nonzero if any criterion fails.
#include "gls/cli.hpp"
#include "gls/fenchel.hpp"
#include "gls/riesz_operator.hpp"
#include "gls/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace gls;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, i / (n - 1.0)));
    return out;
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// 1. layer-cake round trips on the exact tail
Outcome stein_identity() {
    double worst = 0.0;
    bool ok = true;
    for (auto [a, g] : {std::pair{1.0, 0.0}, {1.0, 1.0}, {2.0, 0.5}}) {
        for (int d : {1, 2}) {
            const OuterModel m{a, g, d};
            const double lo = a * d;
            for (double p : {lo * 1.25, lo * 2.0, lo * 4.0}) {
                const VerificationReport r = stein_roundtrip(m, p, 1e-6);
                worst = std::max(worst, r.rel_discrepancy);
                ok = ok && r.pass;
            }
        }
    }
    return {ok, "18 cases, worst rel " + sci(worst)};
}

// 2. int_0^inf e^{-lambda u} u^alpha du = Gamma(alpha+1) lambda^{-alpha-1}
Outcome gamma_identity() {
    double worst = 0.0;
    for (double lambda : {0.5, 1.0, 3.0}) {
        for (double alpha : {0.0, 1.0, 2.5, 7.0}) {
            const auto r = integrate_semi_infinite(
                [=](double u) { return std::exp(-lambda * u) * std::pow(u, alpha); }, 0.0,
                DecayHint::exp_decay, 1e-11);
            const double ref = std::exp(std::lgamma(alpha + 1.0) - (alpha + 1.0) * std::log(lambda));
            worst = std::max(worst, std::abs(r.value - ref) / ref);
        }
    }
    return {worst <= 1e-8, "12 cases, worst rel " + sci(worst)};
}

// 3. conjugate of p ln p / m and the Gaussian-type envelope
Outcome fenchel_closed_form() {
    const SearchPolicy policy;
    bool ok = true;
    double worst = 0.0;
    for (double m : {1.0, 2.0, 3.0}) {
        const double lo = 1.0 / m + 0.1;
        const double hi = std::min(5.0, (1.0 + std::log(policy.p_max)) / m - 0.1);
        std::vector<double> ys;
        for (int i = 0; i <= 40; ++i) ys.push_back(lo + (hi - lo) * i / 40.0);
        for (const auto& r : fenchel_closed_form_check(m, ys, policy, 1e-6)) {
            worst = std::max(worst, r.rel_discrepancy);
            ok = ok && r.pass;
        }
    }
    const std::vector<double> ts = {2.0, 3.0, 5.0};
    const BoundReport env = tail_envelope(GeneratingFunction::power(2.0), 1.0, ts, policy);
    double env_worst = 0.0;
    for (const auto& pt : env.points) {
        const double ref = std::exp(-pt.t * pt.t / (2.0 * std::numbers::e));
        env_worst = std::max(env_worst, std::abs(pt.R - ref) / ref);
    }
    ok = ok && env_worst <= 1e-5;
    return {ok, "nu* worst rel " + sci(worst) + ", envelope worst rel " + sci(env_worst)};
}

// 4. R[w](1; t) >= T(t) for every family with its natural function
Outcome dominance() {
    const std::vector<Model> models = {OuterModel{1.0, 0.0, 1}, OuterModel{1.0, 1.0, 2},
                                       InnerModel{1.0, 1.0, 2},
                                       SumModel{{1.0, 1.0, 1}, {2.0, 1.0, 1}}};
    const auto ts = log_grid(1e-6, 1e6, 200);
    bool ok = true;
    double worst = -kInf;
    std::size_t checked = 0;
    for (const Model& m : models) {
        const auto reports = dominance_audit(m, natural_function(m), ts, {}, Execution::parallel, 1e-12);
        for (const auto& r : reports) {
            ok = ok && r.pass;
            if (r.lhs > 0.0 && r.rhs > 0.0) {
                worst = std::max(worst, std::log(r.lhs) - std::log(r.rhs));
                ++checked;
            }
        }
    }
    return {ok, std::to_string(checked) + " points with T > 0, max ln(T/R) " + sci(worst)};
}

// 5. closed-form minimizer of C (p-a1)^-alpha (b1-p)^-beta against the search
Outcome zeta_minimizer() {
    std::mt19937_64 rng(20261016);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst_p = 0.0;
    double worst_v = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double C = 0.1 + 10.0 * unit(rng);
        const double alpha = 0.05 + 3.0 * unit(rng);
        const double beta = 0.05 + 3.0 * unit(rng);
        const double a1 = 1.0 + 5.0 * unit(rng);
        const double b1 = a1 + 0.1 + 20.0 * unit(rng);
        const ZetaMinimum z = zeta_minimize(OperatorProfile::riesz_type(C, alpha, beta, a1, b1));
        worst_p = std::max(worst_p, std::abs(z.numeric.argopt - z.p_star));
        worst_v = std::max(worst_v, std::abs(z.numeric.opt_value / z.min_value - 1.0));
    }
    return {worst_p <= 1e-8 && worst_v <= 1e-10,
            "100 tuples, worst |dp| " + sci(worst_p) + ", worst rel value " + sci(worst_v)};
}

// 6. C_d max{p, p/(p-1)}: minimum 2 C_d at p = 2, endpoint products near C_d
Outcome classical_shape() {
    bool ok = true;
    std::ostringstream detail;
    for (double cd : {1.0, 2.5}) {
        const auto op = OperatorProfile::classical(cd);
        const OptimResult m = maximize_scalar([&op](double p) { return -log_zeta(op, p); }, op.validity());
        const double min_value = std::exp(-m.opt_value);
        const auto [lo_prod, _a] = riesz_endpoint_profile(1.001, cd);
        const auto [_b, hi_prod] = riesz_endpoint_profile(1000.0, cd);
        ok = ok && std::abs(m.argopt - 2.0) <= 1e-6 && std::abs(min_value / (2.0 * cd) - 1.0) <= 1e-10 &&
             lo_prod >= 0.9 * cd && lo_prod <= 1.1 * cd && hi_prod >= 0.9 * cd && hi_prod <= 1.1 * cd;
        detail << "Cd=" << cd << ": argmin " << m.argopt << ", min " << min_value << ", ends " << lo_prod
               << "/" << hi_prod << "; ";
    }
    return {ok, detail.str()};
}

// 7. ||zeta w||_{G(phi)} = 1 and the zeta = 1 pipeline
Outcome transfer_normalization() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const int d = 1 + i % 3;
        Model m;
        if (i % 3 == 0)
            m = OuterModel{0.3 + 1.5 * unit(rng), 2.0 * unit(rng), d};
        else if (i % 3 == 1)
            m = InnerModel{1.2 + 2.0 * unit(rng), 0.2 + 2.0 * unit(rng), d};
        else
            m = SumModel{{0.5, unit(rng), d}, {1.5 + unit(rng), 0.5 + unit(rng), d}};
        const Interval dom = integrability(m);
        const double a1 = std::max(1.0, dom.lo);
        const double b1 = std::isfinite(dom.hi) ? dom.hi : a1 + 2.0 + 10.0 * unit(rng);
        const auto op = OperatorProfile::riesz_type(0.5 + 2.0 * unit(rng), 2.0 * unit(rng),
                                                    2.0 * unit(rng), a1, b1);
        const LpProfile w = LpProfile::of_model(m);
        const TransferResult tr = transfer(op, GeneratingFunction::natural(w));
        const LpProfile image([&](double p) { return log_zeta(op, p) + w.log_norm(p); }, tr.I,
                              LpProfile::Source::derived, "zeta*w");
        worst = std::max(worst, std::abs(gls_norm(image, tr.phi).value - 1.0));
    }

    const auto ts = log_grid(1e-4, 1e4, 60);
    double pipe = 0.0;
    for (const Model& m : {Model{OuterModel{1.0, 1.0, 2}}, Model{InnerModel{1.0, 1.0, 2}},
                           Model{SumModel{{1.0, 0.5, 1}, {3.0, 1.0, 1}}}}) {
        const BoundReport a = theorem_tail_bound(m, OperatorProfile::identity(), ts);
        const BoundReport b = tail_envelope(natural_function(m), 1.0, ts);
        for (std::size_t i = 0; i < ts.size(); ++i)
            pipe = std::max(pipe, std::abs(a.points[i].log_R - b.points[i].log_R) /
                                      std::max(1.0, std::abs(b.points[i].log_R)));
    }
    return {worst <= 1e-12 && pipe <= 1e-12,
            "20 pairs, worst |norm-1| " + sci(worst) + ", zeta=1 pipeline worst " + sci(pipe)};
}

// 8. exact/asymptotic tail ratios across decades
Outcome asymptotic_ratios() {
    std::vector<double> small;
    std::vector<double> large;
    for (int k = 1; k <= 10; ++k) small.push_back(std::pow(10.0, -k));
    for (int k = 2; k <= 10; ++k) large.push_back(std::pow(10.0, k));

    const RatioStudy outer = asymptotic_ratio_study(OuterModel{1.0, 1.0, 1}, AsymptoticVariant::paper, small);
    const double r_out = outer.rows.back().ratio;
    const bool outer_ok = outer.monotone_toward_one && r_out >= 1.0 && r_out <= 1.25;

    const RatioStudy inner = asymptotic_ratio_study(InnerModel{1.0, 1.0, 1}, AsymptoticVariant::paper, large);
    const double r_in = inner.rows.back().ratio;
    const bool inner_ok = inner.monotone_toward_one && r_in >= 1.0 && r_in <= 1.25;

    const OuterModel f{2.0, 1.0, 1};
    const RatioStudy paper = asymptotic_ratio_study(f, AsymptoticVariant::paper, small);
    const RatioStudy corr = asymptotic_ratio_study(f, AsymptoticVariant::corrected, small);
    bool corr_ok = true;
    for (std::size_t i = 0; i < small.size(); ++i)
        corr_ok = corr_ok && std::abs(corr.rows[i].ratio - 1.0) < std::abs(paper.rows[i].ratio - 1.0);

    std::ostringstream detail;
    detail << "outer ratio(1e-10) " << r_out << (outer.monotone_toward_one ? " monotone" : " NOT monotone")
           << (outer_ok ? " ok" : " FAIL") << "; inner ratio(1e10) " << r_in
           << (inner.monotone_toward_one ? " monotone" : " NOT monotone") << (inner_ok ? " ok" : " FAIL")
           << "; corrected closer at every decade " << (corr_ok ? "ok" : "FAIL");
    return {outer_ok && inner_ok && corr_ok, detail.str()};
}

// 9. disjoint supports: ||f+g||_p^p = ||f||_p^p + ||g||_p^p
Outcome additivity() {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const int d = 1 + i % 3;
        const double a = 0.3 + unit(rng);
        const SumModel m{{a, 2.0 * unit(rng), d}, {a + 0.3 + 1.5 * unit(rng), 2.0 * unit(rng), d}};
        const double p = d * (m.outer.a + (m.inner.b - m.outer.a) * (0.05 + 0.9 * unit(rng)));
        const VerificationReport r = additivity_check(m, p, 1e-10);
        ok = ok && r.pass;
        worst = std::max(worst, r.rel_discrepancy);
    }
    return {ok, "50 tuples, worst rel " + sci(worst)};
}

// 10. byte-identical operator-bound output and the exit-code contract
std::pair<int, std::string> run_tool(const std::string& args) {
    const std::string cmd = std::string(GLS_TOOL_PATH) + " " + args + " 2>/dev/null";
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    std::string out;
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe.get())) > 0) out.append(buf, n);
    const int status = pclose(pipe.release());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome cli_determinism() {
    const auto cfg = std::filesystem::temp_directory_path() / "gls_acceptance.cfg";
    std::ofstream(cfg) << "family=outer\na=1\ngamma=1\nd=2\nop=classical\nCd=1\ngrid-n=200\n";
    const auto first = run_tool("operator-bound --config " + cfg.string());
    const auto second = run_tool("operator-bound --config " + cfg.string());
    const bool same = first.first == kExitOk && second.first == kExitOk && !first.second.empty() &&
                      first.second == second.second;
    const auto failing = run_tool("verify --suite additivity --tol 0");
    const auto passing = run_tool("verify --suite additivity");
    const bool codes = failing.first == kExitCheckFailed && passing.first == kExitOk;
    return {same && codes, std::string("byte-identical ") + (same ? "yes" : "no") +
                               ", exit codes (tol 0 -> " + std::to_string(failing.first) +
                               ", default -> " + std::to_string(passing.first) + ")"};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {1, "stein-identity round trips", 5.0, stein_identity},
        {2, "gamma-identity quadrature", 1.0, gamma_identity},
        {3, "fenchel closed form", 1.0, fenchel_closed_form},
        {4, "envelope dominance", 10.0, dominance},
        {5, "zeta minimizer", 2.0, zeta_minimizer},
        {6, "classical riesz shape", 1.0, classical_shape},
        {7, "transfer normalization", 2.0, transfer_normalization},
        {8, "asymptotic ratios", 5.0, asymptotic_ratios},
        {9, "disjoint-support additivity", 1.0, additivity},
        {10, "cli determinism", 2.0, cli_determinism},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.budget_s;
        const bool pass = o.pass && in_time;
        failed += pass ? 0 : 1;
        std::printf("%s  [%2d] %-28s %.3fs/%.0fs%s  %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs,
                    c.budget_s, in_time ? "" : " (over budget)", o.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
    return failed == 0 ? 0 : 1;
}
