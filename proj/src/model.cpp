// SPDX-License-Identifier: MIT
#include "gls/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace gls {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kRootTol = 4e-16;

double log_add(double x, double y) {
    if (x == -kInf) return y;
    if (y == -kInf) return x;
    const double hi = std::max(x, y);
    return hi + std::log1p(std::exp(std::min(x, y) - hi));
}

double log_ball_volume(int d) { return log_sphere_area(d) - std::log(static_cast<double>(d)); }

/// (1/p) [ln S + lnGamma(kp+1) - (kp+1) ln lambda]: the Gamma identity
/// int_0^inf e^{-lambda u} u^{kp} du = Gamma(kp+1) lambda^{-kp-1}.
double log_norm_from_gamma_identity(int d, double k, double p, double lambda) {
    return (log_sphere_area(d) + gamma_ln(k * p + 1.0) - (k * p + 1.0) * std::log(lambda)) / p;
}

std::string fmt(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

}  // namespace

void validate(const OuterModel& m) {
    if (!(m.a > 0.0) || !std::isfinite(m.a)) throw DomainError("outer model: a must be positive");
    if (!(m.gamma >= 0.0) || !std::isfinite(m.gamma))
        throw DomainError("outer model: gamma must be nonnegative");
    if (m.d < 1) throw DomainError("outer model: d must be >= 1");
}

void validate(const InnerModel& m) {
    if (!(m.b > 0.0) || !std::isfinite(m.b)) throw DomainError("inner model: b must be positive");
    if (!(m.nu > 0.0) || !std::isfinite(m.nu)) throw DomainError("inner model: nu must be positive");
    if (m.d < 1) throw DomainError("inner model: d must be >= 1");
}

void validate(const SumModel& m) {
    validate(m.outer);
    validate(m.inner);
    if (m.outer.d != m.inner.d) throw DomainError("sum model: outer and inner dimensions differ");
    if (!(m.outer.a < m.inner.b))
        throw DomainError("sum model: integrability interval (ad, bd) is empty (need a < b)");
}

void validate(const Model& m) {
    std::visit([](const auto& x) { validate(x); }, m);
}

std::string describe(const Model& m) {
    return std::visit(
        overloaded{
            [](const OuterModel& x) {
                return "outer(a=" + fmt(x.a) + ",gamma=" + fmt(x.gamma) + ",d=" + fmt(x.d) + ")";
            },
            [](const InnerModel& x) {
                return "inner(b=" + fmt(x.b) + ",nu=" + fmt(x.nu) + ",d=" + fmt(x.d) + ")";
            },
            [](const SumModel& x) {
                return "sum(a=" + fmt(x.outer.a) + ",gamma=" + fmt(x.outer.gamma) +
                       ",b=" + fmt(x.inner.b) + ",nu=" + fmt(x.inner.nu) +
                       ",d=" + fmt(x.outer.d) + ")";
            },
        },
        m);
}

int dimension(const Model& m) {
    return std::visit(overloaded{[](const OuterModel& x) { return x.d; },
                                 [](const InnerModel& x) { return x.d; },
                                 [](const SumModel& x) { return x.outer.d; }},
                      m);
}

// ---------------------------------------------------------------------------

double log_sphere_area(int d) {
    if (d < 1) throw DomainError("sphere_area: d must be >= 1");
    const double half = 0.5 * static_cast<double>(d);
    return std::log(2.0) + half * std::log(std::numbers::pi) - gamma_ln(half);
}

double sphere_area(int d) {
    switch (d) {
        case 1:
            return 2.0;
        case 2:
            return 2.0 * std::numbers::pi;
        case 3:
            return 4.0 * std::numbers::pi;
        default:
            return std::exp(log_sphere_area(d));
    }
}

double eval_outer(const OuterModel& m, double x_norm) {
    if (!(x_norm >= 0.0)) throw DomainError("eval_outer: |x| must be nonnegative");
    if (x_norm <= 1.0) return 0.0;
    return std::pow(x_norm, -1.0 / m.a) * std::pow(std::log(x_norm), m.gamma);
}

double eval_inner(const InnerModel& m, double x_norm) {
    if (!(x_norm >= 0.0)) throw DomainError("eval_inner: |x| must be nonnegative");
    if (x_norm >= 1.0) return 0.0;
    if (x_norm == 0.0) return kInf;
    return std::pow(x_norm, -1.0 / m.b) * std::pow(-std::log(x_norm), m.nu);
}

double eval_sum(const SumModel& m, double x_norm) {
    return eval_outer(m.outer, x_norm) + eval_inner(m.inner, x_norm);
}

// ---------------------------------------------------------------------------

Interval integrability(const Model& m) {
    validate(m);
    return std::visit(
        overloaded{
            [](const OuterModel& x) { return Interval{x.a * x.d, kInf, false}; },
            [](const InnerModel& x) { return Interval{1.0, x.b * x.d, true}; },
            [](const SumModel& x) { return Interval{x.outer.a * x.outer.d, x.inner.b * x.inner.d, false}; },
        },
        m);
}

double log_lp_norm_outer(const OuterModel& m, double p) {
    validate(m);
    const double ad = m.a * m.d;
    if (!(p > ad)) {
        std::ostringstream os;
        os << "outer model: p = " << p << " outside integrability range p > ad = " << ad;
        throw RangeError(os.str());
    }
    if (!std::isfinite(p)) throw RangeError("outer model: p must be finite");
    return log_norm_from_gamma_identity(m.d, m.gamma, p, p / m.a - m.d);
}

namespace {

double log_lp_norm_inner_unchecked(const InnerModel& m, double p) {
    return log_norm_from_gamma_identity(m.d, m.nu, p, m.d - p / m.b);
}

}  // namespace

double log_lp_norm_inner(const InnerModel& m, double p) {
    validate(m);
    if (!(p >= 1.0)) throw DomainError("inner model: p must be >= 1");
    const double bd = m.b * m.d;
    if (!(p < bd)) {
        std::ostringstream os;
        os << "inner model: p = " << p << " outside integrability range p < bd = " << bd;
        throw RangeError(os.str());
    }
    return log_lp_norm_inner_unchecked(m, p);
}

double log_lp_norm_sum(const SumModel& m, double p) {
    validate(m);
    const double ad = m.outer.a * m.outer.d;
    const double bd = m.inner.b * m.inner.d;
    if (!(p > ad && p < bd)) {
        std::ostringstream os;
        os << "sum model: p = " << p << " outside integrability range (" << ad << ", " << bd << ")";
        throw RangeError(os.str());
    }
    // ||h||_p^p = ||f||_p^p + ||g||_p^p (disjoint supports)
    const double lf = p * log_lp_norm_outer(m.outer, p);
    const double lg = p * log_lp_norm_inner_unchecked(m.inner, p);
    return log_add(lf, lg) / p;
}

double log_lp_norm(const Model& m, double p) {
    return std::visit(
        overloaded{[p](const OuterModel& x) { return log_lp_norm_outer(x, p); },
                   [p](const InnerModel& x) { return log_lp_norm_inner(x, p); },
                   [p](const SumModel& x) { return log_lp_norm_sum(x, p); }},
        m);
}

double lp_norm_outer(const OuterModel& m, double p) { return std::exp(log_lp_norm_outer(m, p)); }
double lp_norm_inner(const InnerModel& m, double p) { return std::exp(log_lp_norm_inner(m, p)); }
double lp_norm_sum(const SumModel& m, double p) { return std::exp(log_lp_norm_sum(m, p)); }
double lp_norm(const Model& m, double p) { return std::exp(log_lp_norm(m, p)); }

double sup_norm_outer(const OuterModel& m) {
    validate(m);
    if (m.gamma == 0.0) return 1.0;
    return std::exp(m.gamma * (std::log(m.a * m.gamma) - 1.0));
}

// ---------------------------------------------------------------------------
// Level sets. Work in u = ln r: ln f = -u/a + gamma ln u rises on (0, a gamma)
// and falls afterwards; ln g = u/b + nu ln u (u = -ln r) rises on (0, inf).
// ---------------------------------------------------------------------------

LevelRadii outer_level_radii(const OuterModel& m, double ln_t) {
    validate(m);
    if (m.gamma == 0.0) {
        if (!(ln_t < 0.0)) throw DomainError("outer_level_radii: t must be below the sup-norm");
        return LevelRadii{0.0, -m.a * ln_t};
    }
    const double peak = m.a * m.gamma;
    const double ln_sup = m.gamma * (std::log(peak) - 1.0);
    if (!(ln_t < ln_sup)) throw DomainError("outer_level_radii: t must be below the sup-norm");

    auto level = [&m](double u) { return -u / m.a + m.gamma * std::log(u); };

    LevelRadii out;
    const double right = peak * (1.0 + 1e-12);
    if (!(level(right) > ln_t)) {
        out.u_outer = peak;
    } else {
        double hi = 2.0 * peak;
        while (level(hi) >= ln_t) hi *= 2.0;
        out.u_outer = invert_monotone(level, ln_t, Interval{right, hi}, Monotone::decreasing, kRootTol);
    }
    const double left = peak * (1.0 - 1e-12);
    if (!(level(left) > ln_t)) {
        out.u_inner = peak;
    } else {
        double lo = 0.5 * peak;
        while (lo > 1e-300 && level(lo) >= ln_t) lo *= 0.5;
        out.u_inner = level(lo) >= ln_t
                          ? lo
                          : invert_monotone(level, ln_t, Interval{lo, left}, Monotone::increasing, kRootTol);
    }
    return out;
}

double inner_level_radius(const InnerModel& m, double ln_t) {
    validate(m);
    auto level = [&m](double u) { return u / m.b + m.nu * std::log(u); };
    double lo = 1.0;
    double hi = 1.0;
    const double at_one = level(1.0);
    if (at_one == ln_t) return 1.0;
    if (at_one > ln_t) {
        while (lo > 1e-300 && level(lo) > ln_t) lo *= 0.5;
        if (level(lo) > ln_t) return lo;
    } else {
        while (level(hi) < ln_t) hi *= 2.0;
    }
    return invert_monotone(level, ln_t, Interval{lo, hi}, Monotone::increasing, kRootTol);
}

double log_tail_outer(const OuterModel& m, double ln_t, LevelSet mode) {
    validate(m);
    const double log_vol = log_ball_volume(m.d);
    const double d = m.d;
    const double ln_sup = std::log(sup_norm_outer(m));
    if (ln_t > ln_sup) return -kInf;
    if (ln_t == ln_sup) {
        // The level set is a sphere (null) or, for gamma = 0, empty.
        if (mode == LevelSet::exact || m.gamma == 0.0) return -kInf;
        const double u = m.a * m.gamma;
        return log_vol + std::log(std::expm1(d * u));
    }
    const LevelRadii radii = outer_level_radii(m, ln_t);
    const double base = mode == LevelSet::exact ? radii.u_inner : 0.0;
    const double gap = radii.u_outer - base;
    if (!(gap > 0.0)) return -kInf;
    // (S/d)(e^{d u_out} - e^{d base})
    return log_vol + d * radii.u_outer + std::log(-std::expm1(-d * gap));
}

double log_tail_inner(const InnerModel& m, double ln_t) {
    const double u = inner_level_radius(m, ln_t);
    return log_ball_volume(m.d) - m.d * u;
}

double tail_outer(const OuterModel& m, double t, LevelSet mode) {
    if (!(t > 0.0)) throw DomainError("tail_outer: t must be positive");
    return std::exp(log_tail_outer(m, std::log(t), mode));
}

double tail_inner(const InnerModel& m, double t) {
    if (!(t > 0.0)) throw DomainError("tail_inner: t must be positive");
    return std::exp(log_tail_inner(m, std::log(t)));
}

double tail_sum(const SumModel& m, double t, LevelSet mode) {
    validate(m);
    return tail_outer(m.outer, t, mode) + tail_inner(m.inner, t);
}

double tail_asymptotic_outer(const OuterModel& m, double t, AsymptoticVariant v) {
    validate(m);
    if (!(t > 0.0)) throw DomainError("tail_asymptotic_outer: t must be positive");
    const double ad = m.a * m.d;
    double log_t = log_ball_volume(m.d) - ad * std::log(t);
    if (m.gamma > 0.0) {
        if (!(t < 1.0)) throw DomainError("tail_asymptotic_outer: formula needs t < 1 when gamma > 0");
        double L = -std::log(t);
        if (v == AsymptoticVariant::corrected) L *= m.a;
        log_t += m.a * m.gamma * m.d * std::log(L);
    }
    return std::exp(log_t);
}

double tail_asymptotic_inner(const InnerModel& m, double t, AsymptoticVariant v) {
    validate(m);
    if (!(t > 1.0)) throw DomainError("tail_asymptotic_inner: formula needs t > 1");
    const double bd = m.b * m.d;
    double L = std::log(t);
    if (v == AsymptoticVariant::corrected) L *= m.b;
    return std::exp(log_ball_volume(m.d) - bd * std::log(t) + m.b * m.nu * m.d * std::log(L));
}

TailCurve model_tail(const Model& m, LevelSet mode) {
    validate(m);
    const std::string label =
        describe(m) + (mode == LevelSet::exact ? " exact level set" : " shell level set");
    return std::visit(
        overloaded{
            [&](const OuterModel& x) {
                return TailCurve([x, mode](double y) { return log_tail_outer(x, y, mode); },
                                 sup_norm_outer(x), {}, label);
            },
            [&](const InnerModel& x) {
                return TailCurve([x](double y) { return log_tail_inner(x, y); }, kInf, {1.0}, label);
            },
            [&](const SumModel& x) {
                return TailCurve(
                    [x, mode](double y) {
                        return log_add(log_tail_outer(x.outer, y, mode), log_tail_inner(x.inner, y));
                    },
                    kInf, {sup_norm_outer(x.outer), 1.0}, label);
            },
        },
        m);
}

}  // namespace gls
