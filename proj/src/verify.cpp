// SPDX-License-Identifier: MIT
#include "gls/verify.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>

namespace gls {

namespace {

std::string with_p(const Model& m, double p) {
    std::ostringstream os;
    os << describe(m) << " p=" << p;
    return os.str();
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    return out;
}

// int_0^inf e^{d v} F(e^v)^p dv over v > 0 (outer side, r = e^v) or
// int_0^inf e^{-d v} F(e^{-v})^p dv (inner side, r = e^{-v}). F is evaluated
// pointwise; `log_profile` takes over once r leaves the normal double range.
// The integrand behaves like v^k e^{-lambda v}; v is rescaled by the mode
// (k+1)/lambda so slow decay near the integrability edge stays cheap.
double radial_side(const std::function<double(double)>& F,
                   const std::function<double(double)>& log_profile, int d, double p,
                   bool outward, double lambda, double k, double rel_tol) {
    const double sign = outward ? 1.0 : -1.0;
    const double scale = std::max(1.0, (k + 1.0) / lambda);
    auto integrand = [&](double s) {
        const double v = scale * s;
        const double r = std::exp(sign * v);
        double log_F;
        if (std::isnormal(r)) {  // subnormal r loses digits in r^{-1/b}
            const double f = F(r);
            if (f == 0.0) return 0.0;
            log_F = std::isfinite(f) ? std::log(f) : log_profile(v);
        } else {
            log_F = log_profile(v);
        }
        return scale * std::exp(sign * d * v + p * log_F);
    };
    return integrate_semi_infinite(integrand, 0.0, DecayHint::exp_decay, rel_tol).value;
}

double radial_outer(const OuterModel& m, const std::function<double(double)>& F, double p,
                    double rel_tol) {
    return radial_side(
        F, [&m](double v) { return -v / m.a + m.gamma * std::log(v); }, m.d, p, true,
        p / m.a - m.d, m.gamma * p, rel_tol);
}

double radial_inner(const InnerModel& m, const std::function<double(double)>& F, double p,
                    double rel_tol) {
    return radial_side(
        F, [&m](double v) { return v / m.b + m.nu * std::log(v); }, m.d, p, false,
        m.d - p / m.b, m.nu * p, rel_tol);
}

VerificationReport failed(std::string check, std::string parameters, double tolerance,
                          std::string note) {
    VerificationReport r;
    r.check = std::move(check);
    r.parameters = std::move(parameters);
    r.lhs = r.rhs = std::numeric_limits<double>::quiet_NaN();
    r.abs_discrepancy = r.rel_discrepancy = kInf;
    r.tolerance = tolerance;
    r.pass = false;
    r.note = std::move(note);
    return r;
}

}  // namespace

VerificationReport compare(std::string check, std::string parameters, double lhs, double rhs,
                           double tolerance, std::string note) {
    VerificationReport r;
    r.check = std::move(check);
    r.parameters = std::move(parameters);
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_discrepancy = std::abs(lhs - rhs);
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    r.rel_discrepancy = scale == 0.0 ? 0.0 : r.abs_discrepancy / scale;
    if (std::isnan(r.rel_discrepancy)) r.rel_discrepancy = kInf;
    r.tolerance = tolerance;
    r.pass = r.rel_discrepancy <= tolerance;
    r.note = std::move(note);
    return r;
}

VerificationReport stein_roundtrip(const Model& m, double p, double tolerance,
                                   double quad_rel_tol) {
    const std::string params = with_p(m, p);
    try {
        const double lhs = std::exp(p * log_lp_norm(m, p));
        const QuadratureResult q = stein_moment(model_tail(m, LevelSet::exact), p, quad_rel_tol);
        return compare("stein_roundtrip", params, lhs, q.value, tolerance,
                       std::to_string(q.evaluations) + " tail evaluations");
    } catch (const ConvergenceError& e) {
        return failed("stein_roundtrip", params, tolerance, e.what());
    }
}

VerificationReport quadrature_crosscheck(const Model& m, double p, double tolerance) {
    const std::string params = with_p(m, p);
    constexpr double quad_tol = 1e-12;
    try {
        const double lhs = std::exp(p * log_lp_norm(m, p));
        const double S = sphere_area(dimension(m));
        double integral = 0.0;
        if (const auto* o = std::get_if<OuterModel>(&m)) {
            integral = radial_outer(*o, [o](double r) { return eval_outer(*o, r); }, p, quad_tol);
        } else if (const auto* i = std::get_if<InnerModel>(&m)) {
            integral = radial_inner(*i, [i](double r) { return eval_inner(*i, r); }, p, quad_tol);
        } else {
            const auto& s = std::get<SumModel>(m);
            auto h = [&s](double r) { return eval_sum(s, r); };
            integral = radial_outer(s.outer, h, p, quad_tol) + radial_inner(s.inner, h, p, quad_tol);
        }
        return compare("quadrature_crosscheck", params, lhs, S * integral, tolerance);
    } catch (const ConvergenceError& e) {
        return failed("quadrature_crosscheck", params, tolerance, e.what());
    }
}

VerificationReport additivity_check(const SumModel& m, double p, double tolerance) {
    const std::string params = with_p(Model{m}, p);
    try {
        const double lhs = std::exp(p * log_lp_norm_sum(m, p));
        auto h = [&m](double r) { return eval_sum(m, r); };
        const double integral =
            radial_outer(m.outer, h, p, 1e-13) + radial_inner(m.inner, h, p, 1e-13);
        return compare("additivity", params, lhs, sphere_area(m.outer.d) * integral, tolerance);
    } catch (const ConvergenceError& e) {
        return failed("additivity", params, tolerance, e.what());
    }
}

std::vector<VerificationReport> dominance_audit(const Model& m, const GeneratingFunction& g,
                                                std::span<const double> t_grid,
                                                const SearchPolicy& policy, Execution exec,
                                                double slack) {
    const GlsNorm u = gls_norm(LpProfile::of_model(m), g, policy);
    if (u.infinite || !(u.value > 0.0))
        return {failed("dominance", describe(m) + " psi=" + g.describe(), slack,
                       "model is not in G(psi): " + u.diagnostics)};

    BoundReport report = tail_envelope(g, u.value, t_grid, policy, exec);
    attach_reference(report, model_tail(m, LevelSet::exact), slack);

    std::vector<VerificationReport> out;
    out.reserve(report.points.size());
    for (const EnvelopePoint& pt : report.points) {
        std::ostringstream params;
        params << describe(m) << " psi=" << g.describe() << " t=" << pt.t;
        VerificationReport r;
        r.check = "dominance";
        r.parameters = params.str();
        const double log_T = *pt.log_reference;
        r.lhs = log_T == -kInf ? 0.0 : std::exp(log_T);
        r.rhs = pt.R;
        r.abs_discrepancy = std::max(0.0, r.lhs - r.rhs);
        r.rel_discrepancy = log_T == -kInf ? 0.0 : std::max(0.0, std::expm1(log_T - pt.log_R));
        r.tolerance = slack;
        r.pass = r.rel_discrepancy <= slack;
        std::ostringstream note;
        note << "u=" << u.value << " p*=" << pt.argmax_p;
        r.note = note.str();
        out.push_back(std::move(r));
    }
    return out;
}

RatioStudy asymptotic_ratio_study(const Model& m, AsymptoticVariant variant,
                                  std::span<const double> ts) {
    RatioStudy study;
    study.model = describe(m);
    study.variant = variant;
    const auto* outer = std::get_if<OuterModel>(&m);
    const auto* inner = std::get_if<InnerModel>(&m);
    if (outer == nullptr && inner == nullptr)
        throw DomainError("asymptotic_ratio_study: needs an outer or inner model");

    for (double t : ts) {
        try {
            RatioRow row;
            row.t = t;
            if (outer != nullptr) {
                row.exact = tail_outer(*outer, t, LevelSet::exact);
                row.asymptotic = tail_asymptotic_outer(*outer, t, variant);
            } else {
                row.exact = tail_inner(*inner, t);
                row.asymptotic = tail_asymptotic_inner(*inner, t, variant);
            }
            row.ratio = row.exact / row.asymptotic;
            study.rows.push_back(row);
        } catch (const Error& e) {
            std::ostringstream os;
            os << "t=" << t << ": " << e.what();
            study.failures.push_back(os.str());
        }
    }
    study.monotone_toward_one = study.failures.empty();
    for (std::size_t i = 1; i < study.rows.size(); ++i)
        if (std::abs(study.rows[i].ratio - 1.0) > std::abs(study.rows[i - 1].ratio - 1.0))
            study.monotone_toward_one = false;
    return study;
}

std::vector<VerificationReport> fenchel_closed_form_check(double m, std::span<const double> ys,
                                                          const SearchPolicy& policy,
                                                          double tolerance) {
    const GeneratingFunction psi = GeneratingFunction::power(m);
    const NuFunction nu_m(psi);
    const ClippedRange range = clip_domain(psi.domain(), policy);
    std::vector<VerificationReport> out;
    for (double y : ys) {
        std::ostringstream params;
        params << "m=" << m << " y=" << y;
        const FenchelResult f = fenchel_transform(nu_m, y, policy);
        const double p_stat = std::exp(m * y - 1.0);
        if (p_stat > range.lo && p_stat < range.hi) {
            out.push_back(compare("fenchel_closed_form", params.str(), f.value,
                                  std::exp(m * y - 1.0) / m, tolerance, "interior"));
            continue;
        }
        // Dense geometric grid sup, endpoints included.
        constexpr std::size_t n = 20001;
        const std::vector<double> ps = log_grid(range.lo, range.hi, n);
        double best = -kInf;
        for (double p : ps) best = std::max(best, p * y - p * std::log(p) / m);
        out.push_back(compare("fenchel_closed_form", params.str(), f.value, best, tolerance,
                              std::string("boundary regime, ") + std::string(to_string(f.boundary_hit))));
    }
    return out;
}

std::vector<VerificationReport> run_suite(const std::string& suite,
                                          std::optional<double> tolerance_override,
                                          Execution exec) {
    static const std::vector<std::string> known = {"all",       "stein",    "quadrature",
                                                   "additivity", "dominance", "fenchel",
                                                   "ratio"};
    if (std::find(known.begin(), known.end(), suite) == known.end())
        throw DomainError("unknown verification suite '" + suite + "'");
    auto wants = [&suite](const char* name) { return suite == "all" || suite == name; };

    using Job = std::function<std::vector<VerificationReport>()>;
    std::vector<Job> jobs;

    if (wants("stein")) {
        for (int d : {1, 2}) {
            for (auto [a, gamma] : {std::pair{1.0, 0.0}, {1.0, 1.0}, {2.0, 0.5}}) {
                const OuterModel o{a, gamma, d};
                for (double k : {1.5, 2.0, 3.0})
                    jobs.push_back([o, k] { return std::vector{stein_roundtrip(o, k * o.a * o.d)}; });
            }
            const InnerModel g{1.0, 1.0, d + 1};
            for (double p : {1.0, 1.5})
                jobs.push_back([g, p] { return std::vector{stein_roundtrip(g, p)}; });
        }
        const SumModel s{{1.0, 1.0, 1}, {2.0, 1.0, 1}};
        jobs.push_back([s] { return std::vector{stein_roundtrip(s, 1.5)}; });
    }

    if (wants("quadrature")) {
        for (int d : {1, 2, 3}) {
            for (auto [a, gamma] : {std::pair{1.0, 0.0}, {0.5, 1.0}, {2.0, 2.5}}) {
                const OuterModel o{a, gamma, d};
                jobs.push_back([o] { return std::vector{quadrature_crosscheck(o, 2.0 * o.a * o.d)}; });
            }
            for (auto [b, nu_] : {std::pair{1.5, 1.0}, {2.0, 0.5}}) {
                const InnerModel g{b, nu_, d};
                const double p = 1.0 + 0.5 * (b * d - 1.0);
                jobs.push_back([g, p] { return std::vector{quadrature_crosscheck(g, p)}; });
            }
        }
    }

    if (wants("additivity")) {
        std::mt19937_64 rng(20240601);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int i = 0; i < 10; ++i) {
            SumModel s;
            s.outer.d = s.inner.d = 1 + static_cast<int>(unit(rng) * 3.0) % 3;
            s.outer.a = 0.5 + 1.5 * unit(rng);
            s.outer.gamma = 1.5 * unit(rng);
            s.inner.b = s.outer.a + 0.5 + 1.5 * unit(rng);
            s.inner.nu = 0.5 + unit(rng);
            const double lo = s.outer.a * s.outer.d;
            const double hi = s.inner.b * s.inner.d;
            const double p = std::max(1.0, lo + (0.2 + 0.6 * unit(rng)) * (hi - lo));
            jobs.push_back([s, p] { return std::vector{additivity_check(s, p)}; });
        }
    }

    if (wants("dominance")) {
        const std::vector<Model> models = {OuterModel{1.0, 0.0, 1}, OuterModel{1.0, 1.0, 1},
                                           OuterModel{2.0, 0.5, 2}, InnerModel{1.0, 1.0, 2},
                                           SumModel{{1.0, 1.0, 1}, {2.0, 1.0, 1}}};
        for (const Model& m : models) {
            jobs.push_back([m, exec] {
                double hi = 1e4;
                if (const auto* o = std::get_if<OuterModel>(&m)) hi = 0.99 * sup_norm_outer(*o);
                const std::vector<double> ts = log_grid(1e-4, hi, 100);
                return dominance_audit(m, natural_function(m), ts, {}, exec);
            });
        }
        const OuterModel f{1.0, 0.0, 1};
        jobs.push_back([f, exec] {
            const std::vector<double> ts = log_grid(1e-4, 0.99, 100);
            return dominance_audit(f, natural_function(f).scaled(2.0), ts, {}, exec);
        });
    }

    if (wants("fenchel")) {
        const SearchPolicy policy;
        for (double m : {1.0, 2.0, 3.0}) {
            jobs.push_back([m, policy] {
                const double y_hi = std::min(5.0, (1.0 + std::log(policy.p_max)) / m - 0.1);
                std::vector<double> ys;
                for (int i = 0; i <= 8; ++i) ys.push_back(1.0 / m + 0.1 + (y_hi - 1.0 / m - 0.1) * i / 8.0);
                return fenchel_closed_form_check(m, ys, policy);
            });
        }
        jobs.push_back([] {
            const std::vector<double> ys = {0.2};
            return fenchel_closed_form_check(2.0, ys);
        });
    }

    if (wants("ratio")) {
        jobs.push_back([] {
            const std::vector<double> ts = {1e-2, 1e-4, 1e-6, 1e-8, 1e-10};
            const RatioStudy s = asymptotic_ratio_study(OuterModel{1.0, 1.0, 1},
                                                        AsymptoticVariant::paper, ts);
            VerificationReport r = compare("ratio_monotone", s.model + " t=1e-2..1e-10",
                                           s.rows.back().ratio, 1.0, 0.25,
                                           s.monotone_toward_one ? "monotone" : "not monotone");
            r.pass = r.pass && s.monotone_toward_one;
            return std::vector{r};
        });
        jobs.push_back([] {
            const OuterModel f{1.0, 0.0, 1};
            return std::vector{compare("ratio_exact_inversion", describe(Model{f}) + " t=1e-6",
                                       tail_outer(f, 1e-6), tail_asymptotic_outer(f, 1e-6), 1e-5)};
        });
        jobs.push_back([] {
            const std::vector<double> ts = {1e-1, 1e-2, 1e-4, 1e-6, 1e-8, 1e-10};
            const OuterModel f{2.0, 1.0, 1};
            const RatioStudy paper = asymptotic_ratio_study(f, AsymptoticVariant::paper, ts);
            const RatioStudy corr = asymptotic_ratio_study(f, AsymptoticVariant::corrected, ts);
            std::vector<VerificationReport> out;
            for (std::size_t i = 0; i < paper.rows.size() && i < corr.rows.size(); ++i) {
                std::ostringstream params;
                params << paper.model << " t=" << paper.rows[i].t;
                VerificationReport r =
                    compare("ratio_corrected_closer", params.str(), std::abs(corr.rows[i].ratio - 1.0),
                            std::abs(paper.rows[i].ratio - 1.0), kInf,
                            "lhs |corrected-1|, rhs |paper-1|");
                r.pass = r.lhs < r.rhs;
                out.push_back(r);
            }
            return out;
        });
    }

    const auto batches = kernels::map_indices(exec, jobs.size(), [&jobs](std::size_t i) { return jobs[i](); });
    std::vector<VerificationReport> reports;
    for (const auto& b : batches) reports.insert(reports.end(), b.begin(), b.end());

    if (tolerance_override) {
        for (VerificationReport& r : reports) {
            r.tolerance = *tolerance_override;
            r.pass = r.rel_discrepancy <= r.tolerance;
        }
    }
    return reports;
}

bool all_pass(std::span<const VerificationReport> reports) {
    return std::all_of(reports.begin(), reports.end(),
                       [](const VerificationReport& r) { return r.pass; });
}

void write_jsonl(std::ostream& os, std::span<const VerificationReport> reports) {
    for (const VerificationReport& r : reports) {
        nlohmann::json j = {{"check", r.check},
                            {"parameters", r.parameters},
                            {"lhs", r.lhs},
                            {"rhs", r.rhs},
                            {"abs_discrepancy", r.abs_discrepancy},
                            {"rel_discrepancy", r.rel_discrepancy},
                            {"tolerance", r.tolerance},
                            {"pass", r.pass},
                            {"note", r.note}};
        os << j.dump() << '\n';
    }
}

void write_summary(std::ostream& os, std::span<const VerificationReport> reports) {
    struct Row {
        std::size_t count = 0;
        std::size_t failed = 0;
        double worst = 0.0;
    };
    std::map<std::string, Row> rows;
    std::vector<std::string> order;
    for (const VerificationReport& r : reports) {
        auto [it, inserted] = rows.try_emplace(r.check);
        if (inserted) order.push_back(r.check);
        ++it->second.count;
        if (!r.pass) ++it->second.failed;
        it->second.worst = std::max(it->second.worst, r.rel_discrepancy);
    }
    os << std::left << std::setw(24) << "check" << std::right << std::setw(7) << "runs"
       << std::setw(8) << "failed" << std::setw(14) << "worst rel" << '\n';
    for (const std::string& name : order) {
        const Row& row = rows[name];
        os << std::left << std::setw(24) << name << std::right << std::setw(7) << row.count
           << std::setw(8) << row.failed << std::setw(14) << std::setprecision(3)
           << std::scientific << row.worst << std::defaultfloat << '\n';
    }
}

}  // namespace gls
