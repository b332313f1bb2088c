// SPDX-License-Identifier: MIT
#include "gls/grand_lebesgue.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace gls {

namespace {

constexpr double kLogFloor = -std::numeric_limits<double>::max();

std::string fmt(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

void require_domain(const Interval& d, double p, const char* who) {
    if (!d.contains(p)) {
        std::ostringstream os;
        os << who << ": p = " << p << " outside " << (d.lo_closed ? "[" : "(") << d.lo << ", "
           << d.hi << ")";
        throw DomainError(os.str());
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// LpProfile
// ---------------------------------------------------------------------------

LpProfile::LpProfile(std::function<double(double)> log_norm, Interval domain, Source source,
                     std::string label)
    : log_norm_(std::move(log_norm)), domain_(domain), source_(source), label_(std::move(label)) {
    if (domain_.empty()) throw DomainError("LpProfile: empty domain");
}

LpProfile LpProfile::of_model(const Model& m) {
    const Interval domain = intersect(integrability(m), Interval{1.0, kInf, true});
    if (domain.empty()) throw DomainError("LpProfile: model has no integrability exponent >= 1");
    return LpProfile([m](double p) { return log_lp_norm(m, p); }, domain, Source::closed_form,
                     describe(m));
}

LpProfile LpProfile::from_tail(TailCurve tail, Interval domain, double rel_tol) {
    std::string label = "layer-cake(" + tail.label() + ")";
    return LpProfile(
        [tail = std::move(tail), rel_tol](double p) {
            const double moment = stein_moment(tail, p, rel_tol).value;
            if (!(moment > 0.0)) return -kInf;
            return std::log(moment) / p;
        },
        domain, Source::quadrature, std::move(label));
}

LpProfile LpProfile::scaled(double c) const {
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("LpProfile::scaled: c must be positive");
    const double lc = std::log(c);
    return LpProfile([inner = log_norm_, lc](double p) { return inner(p) + lc; }, domain_,
                     Source::derived, fmt(c) + "*" + label_);
}

double LpProfile::log_norm(double p) const {
    require_domain(domain_, p, "LpProfile");
    return log_norm_(p);
}

double LpProfile::norm(double p) const { return std::exp(log_norm(p)); }

// ---------------------------------------------------------------------------
// GeneratingFunction
// ---------------------------------------------------------------------------

struct GeneratingFunction::Impl {
    Kind kind;
    Interval domain;
    std::function<double(double)> log_eval;
    std::string description;
    double log_scale = 0.0;
};

GeneratingFunction::GeneratingFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

GeneratingFunction GeneratingFunction::parametric(double a, double b, double alpha, double beta) {
    if (!(a >= 1.0) || !(a < b)) throw DomainError("parametric psi: need 1 <= a < b");
    if (!(alpha >= 0.0) || !(beta >= 0.0) || !std::isfinite(alpha) || !std::isfinite(beta))
        throw DomainError("parametric psi: alpha, beta must be nonnegative");
    if (!std::isfinite(b) && beta != 0.0)
        throw DomainError("parametric psi: b = inf requires beta = 0");
    auto log_eval = [a, b, alpha, beta](double p) {
        double v = 0.0;
        if (alpha != 0.0) v -= alpha * std::log(p - a);
        if (beta != 0.0) v -= beta * std::log(b - p);
        return v;
    };
    std::string desc = "parametric(a=" + fmt(a) + ",b=" + fmt(b) + ",alpha=" + fmt(alpha) +
                       ",beta=" + fmt(beta) + ")";
    return GeneratingFunction(std::make_shared<Impl>(
        Impl{Kind::parametric, Interval{a, b, false}, std::move(log_eval), std::move(desc)}));
}

GeneratingFunction GeneratingFunction::power(double m) {
    if (!(m > 0.0) || !std::isfinite(m)) throw DomainError("power psi: m must be positive");
    return GeneratingFunction(std::make_shared<Impl>(
        Impl{Kind::power, Interval{1.0, kInf, true}, [m](double p) { return std::log(p) / m; },
             "power(m=" + fmt(m) + ")"}));
}

GeneratingFunction GeneratingFunction::iwaniec_sbordone(double p, double theta) {
    if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("Iwaniec-Sbordone psi: need 1 < p < inf");
    if (!(theta >= 0.0)) throw DomainError("Iwaniec-Sbordone psi: theta must be nonnegative");
    return GeneratingFunction(std::make_shared<Impl>(
        Impl{Kind::iwaniec_sbordone, Interval{1.0, p, false},
             [p, theta](double q) { return -(theta / q) * std::log(p - q); },
             "iwaniec_sbordone(p=" + fmt(p) + ",theta=" + fmt(theta) + ")"}));
}

GeneratingFunction GeneratingFunction::natural(LpProfile profile) {
    const Interval domain = profile.domain();
    std::string desc = "natural(" + profile.label() + ")";
    return GeneratingFunction(std::make_shared<Impl>(
        Impl{Kind::natural, domain,
             [profile = std::move(profile)](double p) { return profile.log_norm(p); },
             std::move(desc)}));
}

GeneratingFunction GeneratingFunction::product(const GeneratingFunction& x,
                                               const GeneratingFunction& y) {
    const Interval domain = intersect(x.domain(), y.domain());
    if (domain.empty()) {
        std::ostringstream os;
        os << "product psi: I = (" << x.domain().lo << ", " << x.domain().hi << ") & ("
           << y.domain().lo << ", " << y.domain().hi << ") is empty";
        throw DomainError(os.str());
    }
    return GeneratingFunction(std::make_shared<Impl>(
        Impl{Kind::product, domain,
             [x, y](double p) { return x.log_value(p) + y.log_value(p); },
             x.describe() + "*" + y.describe()}));
}

GeneratingFunction GeneratingFunction::tabulated(std::vector<double> p, std::vector<double> psi) {
    if (p.size() != psi.size() || p.size() < 2)
        throw DomainError("tabulated psi: need at least two (p, psi) nodes");
    std::vector<double> log_psi(psi.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(p[i] >= 1.0) || !std::isfinite(p[i])) throw DomainError("tabulated psi: p must be >= 1");
        if (i > 0 && !(p[i] > p[i - 1]))
            throw DomainError("tabulated psi: p column must be strictly increasing");
        if (!(psi[i] > 0.0) || !std::isfinite(psi[i]))
            throw DomainError("tabulated psi: psi must be positive and finite");
        log_psi[i] = std::log(psi[i]);
    }
    const Interval domain{p.front(), std::nextafter(p.back(), kInf), true};
    auto log_eval = [p = std::move(p), log_psi = std::move(log_psi)](double q) {
        auto it = std::upper_bound(p.begin(), p.end(), q);
        auto j = static_cast<std::size_t>(it - p.begin());
        if (j == p.size()) return log_psi.back();
        if (j == 0) return log_psi.front();
        const double w = (q - p[j - 1]) / (p[j] - p[j - 1]);
        return log_psi[j - 1] + w * (log_psi[j] - log_psi[j - 1]);
    };
    return GeneratingFunction(std::make_shared<Impl>(
        Impl{Kind::tabulated, domain, std::move(log_eval), "tabulated"}));
}

GeneratingFunction GeneratingFunction::riesz_max(double cd) {
    if (!(cd > 0.0) || !std::isfinite(cd)) throw DomainError("riesz_max psi: C_d must be positive");
    const double lc = std::log(cd);
    return GeneratingFunction(std::make_shared<Impl>(
        Impl{Kind::riesz_max, Interval{1.0, kInf, false},
             [lc](double p) { return lc + std::log(std::max(p, p / (p - 1.0))); },
             "riesz_max(Cd=" + fmt(cd) + ")"}));
}

GeneratingFunction GeneratingFunction::from_log(std::function<double(double)> log_psi,
                                                Interval domain, std::string description) {
    if (domain.empty() || !(domain.lo >= 1.0))
        throw DomainError("psi: domain must be a nonempty subset of [1, inf)");
    return GeneratingFunction(std::make_shared<Impl>(
        Impl{Kind::custom, domain, std::move(log_psi), std::move(description)}));
}

GeneratingFunction GeneratingFunction::scaled(double c) const {
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("scaled psi: c must be positive");
    Impl copy = *impl_;
    copy.log_scale += std::log(c);
    copy.description = fmt(c) + "*" + copy.description;
    return GeneratingFunction(std::make_shared<Impl>(std::move(copy)));
}

GeneratingFunction::Kind GeneratingFunction::kind() const { return impl_->kind; }
const Interval& GeneratingFunction::domain() const { return impl_->domain; }
std::string GeneratingFunction::describe() const { return impl_->description; }

double GeneratingFunction::log_value(double p) const {
    require_domain(impl_->domain, p, "psi");
    return impl_->log_scale + impl_->log_eval(p);
}

double GeneratingFunction::operator()(double p) const { return std::exp(log_value(p)); }

double eval_psi(const GeneratingFunction& g, double p) { return g(p); }

double sampled_infimum(const GeneratingFunction& g, const SearchPolicy& policy) {
    const OptimResult r =
        maximize_scalar([&g](double p) { return -g.log_value(p); }, g.domain(), policy);
    return std::exp(-r.opt_value);
}

GeneratingFunction natural_function(const Model& m, double clip) {
    if (!(clip >= 0.0 && clip < 0.5)) throw DomainError("natural_function: clip must lie in [0, 0.5)");
    const LpProfile base = LpProfile::of_model(m);
    Interval d = base.domain();
    if (clip > 0.0) {
        d.lo = d.lo * (1.0 + clip);
        d.lo_closed = false;
        if (d.bounded()) d.hi = d.hi * (1.0 - clip);
    }
    if (d.empty()) throw DomainError("natural_function: domain is empty after clipping");
    return GeneratingFunction::natural(
        LpProfile([m](double p) { return log_lp_norm(m, p); }, d, LpProfile::Source::closed_form,
                  describe(m)));
}

// ---------------------------------------------------------------------------
// Norms
// ---------------------------------------------------------------------------

GlsNorm gls_norm(const LpProfile& profile, const GeneratingFunction& g, const SearchPolicy& policy,
                 double divergence_jump) {
    const Interval domain = intersect(profile.domain(), g.domain());
    if (domain.empty()) throw DomainError("gls_norm: profile and psi domains do not intersect");

    auto ratio = [&](double p) {
        const double lf = profile.log_norm(p);
        if (lf == -kInf) return kLogFloor;
        return lf - g.log_value(p);
    };
    const OptimResult best = maximize_scalar(ratio, domain, policy);

    GlsNorm out;
    out.argmax_p = best.argopt;
    out.boundary_hit = best.boundary_hit;
    out.log_value = best.opt_value == kLogFloor ? -kInf : best.opt_value;
    out.value = std::exp(out.log_value);

    const ClippedRange range = clip_domain(domain, policy);
    auto probe_toward = [&](double endpoint) {
        const double gap = std::abs(best.argopt - endpoint);
        const double p = endpoint + (best.argopt - endpoint) * 1e-3;
        if (!(gap > 0.0) || p == endpoint) return;
        double v = -kInf;
        try {
            v = ratio(p);
        } catch (const Error&) {
            return;
        }
        std::ostringstream os;
        os << "sup at clipped endpoint p=" << best.argopt << " (log-ratio " << best.opt_value
           << "); probe p=" << p << " gives " << v;
        out.diagnostics = os.str();
        if (v - best.opt_value > divergence_jump) {
            out.infinite = true;
            out.value = kInf;
            out.log_value = kInf;
        }
    };
    if (best.boundary_hit == BoundaryHit::lower && !domain.lo_closed) {
        probe_toward(domain.lo);
    } else if (best.boundary_hit == BoundaryHit::upper) {
        if (range.capped) {
            out.diagnostics = "sup at the p_max cap p=" + fmt(range.hi);
        } else {
            probe_toward(domain.hi);
        }
    }
    return out;
}

NormFromTail norm_from_tail(const TailCurve& tail, const GeneratingFunction& g,
                            const SearchPolicy& policy, double rel_tol) {
    NormFromTail out;
    const LpProfile reconstructed = LpProfile::from_tail(tail, g.domain(), rel_tol);
    auto guarded = LpProfile(
        [&](double p) {
            try {
                return reconstructed.log_norm(p);
            } catch (const ConvergenceError&) {
                out.failed_p.push_back(p);
                return std::numeric_limits<double>::quiet_NaN();
            } catch (const EvaluationError&) {
                out.failed_p.push_back(p);
                return std::numeric_limits<double>::quiet_NaN();
            }
        },
        g.domain(), LpProfile::Source::quadrature, reconstructed.label());
    out.norm = gls_norm(guarded, g, policy);
    if (!out.failed_p.empty()) {
        std::sort(out.failed_p.begin(), out.failed_p.end());
        out.norm.diagnostics += (out.norm.diagnostics.empty() ? "" : "; ") +
                                std::to_string(out.failed_p.size()) +
                                " exponents skipped after quadrature failure";
    }
    return out;
}

}  // namespace gls
