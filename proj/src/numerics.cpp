// SPDX-License-Identifier: MIT
#include "gls/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

namespace gls {

Interval make_interval(double lo, double hi, bool lo_closed) {
    if (!(lo < hi) || std::isnan(lo) || std::isnan(hi)) {
        std::ostringstream os;
        os << "invalid interval (" << lo << ", " << hi << ")";
        throw DomainError(os.str());
    }
    return Interval{lo, hi, lo_closed};
}

Interval intersect(const Interval& x, const Interval& y) {
    Interval r;
    if (x.lo > y.lo) {
        r.lo = x.lo;
        r.lo_closed = x.lo_closed;
    } else if (y.lo > x.lo) {
        r.lo = y.lo;
        r.lo_closed = y.lo_closed;
    } else {
        r.lo = x.lo;
        r.lo_closed = x.lo_closed && y.lo_closed;
    }
    r.hi = std::min(x.hi, y.hi);
    return r;
}

// ---------------------------------------------------------------------------
// ln Gamma
// ---------------------------------------------------------------------------

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoef = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_ln_gamma(double z) {
    // valid for z >= 1/2
    const double zm1 = z - 1.0;
    double series = kLanczosCoef[0];
    for (std::size_t i = 1; i < kLanczosCoef.size(); ++i)
        series += kLanczosCoef[i] / (zm1 + static_cast<double>(i));
    const double t = zm1 + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (zm1 + 0.5) * (std::log(t) - 1.0) -
           kLanczosG + std::log(series);
}

}  // namespace

double gamma_ln(double z) {
    if (!(z > 0.0) || !std::isfinite(z))
        throw DomainError("gamma_ln: argument must be positive and finite");
    if (z < 0.5) {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return std::log(std::numbers::pi / std::sin(std::numbers::pi * z)) -
               lanczos_ln_gamma(1.0 - z);
    }
    return lanczos_ln_gamma(z);
}

// ---------------------------------------------------------------------------
// Gauss-Kronrod 7/15
// ---------------------------------------------------------------------------

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

double checked_eval(const ScalarFn& f, double x) {
    const double v = f(x);
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "integrand is not finite at x = " << x;
        throw EvaluationError(os.str());
    }
    return v;
}

Segment gk15(const ScalarFn& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = checked_eval(f, center);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    std::array<double, 7> f1{};
    std::array<double, 7> f2{};
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = checked_eval(f, center - dx);
        f2[j] = checked_eval(f, center + dx);
        const double sum = f1[j] + f2[j];
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * sum;
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (std::size_t j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));

    const double h = std::abs(half);
    resasc *= h;
    resabs *= h;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
        err = std::max(50.0 * kEps * resabs, err);
    return Segment{a, b, resk * half, err};
}

}  // namespace

QuadratureResult integrate_finite(const ScalarFn& f, double lo, double hi, double rel_tol,
                                  std::size_t budget) {
    if (!(rel_tol > 0.0)) throw DomainError("integrate_finite: rel_tol must be positive");
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw DomainError("integrate_finite: endpoints must be finite");
    if (lo == hi) return QuadratureResult{0.0, 0.0, 1};
    if (lo > hi) {
        QuadratureResult r = integrate_finite(f, hi, lo, rel_tol, budget);
        r.value = -r.value;
        return r;
    }

    std::priority_queue<Segment> active;
    std::vector<Segment> frozen;
    std::size_t evals = 15;
    active.push(gk15(f, lo, hi));

    auto totals = [&] {
        double value = 0.0;
        double error = 0.0;
        auto copy = active;
        while (!copy.empty()) {
            value += copy.top().value;
            error += copy.top().error;
            copy.pop();
        }
        for (const auto& s : frozen) {
            value += s.value;
            error += s.error;
        }
        return std::pair{value, error};
    };

    double value = active.top().value;
    double error = active.top().error;
    std::size_t iterations = 0;
    while (true) {
        if (error <= rel_tol * std::abs(value) || error == 0.0) break;
        if (active.empty()) {
            throw ConvergenceError("integrate_finite: roundoff prevents requested accuracy",
                                   QuadratureResult{value, error, evals});
        }
        if (evals + 30 > budget) {
            throw ConvergenceError("integrate_finite: evaluation budget exhausted",
                                   QuadratureResult{value, error, evals});
        }
        Segment worst = active.top();
        active.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const double scale = std::max(std::abs(worst.a), std::abs(worst.b));
        if (!(mid > worst.a && mid < worst.b) || (worst.b - worst.a) < 100.0 * kEps * scale) {
            frozen.push_back(worst);
            continue;
        }
        const Segment left = gk15(f, worst.a, mid);
        const Segment right = gk15(f, mid, worst.b);
        evals += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        active.push(left);
        active.push(right);
        if (++iterations % 64 == 0) std::tie(value, error) = totals();
    }
    std::tie(value, error) = totals();
    return QuadratureResult{value, error, evals};
}

QuadratureResult integrate_semi_infinite(const ScalarFn& f, double lo, DecayHint hint,
                                         double rel_tol, std::size_t budget) {
    if (!(rel_tol > 1e-14 && rel_tol < 1e-2))
        throw DomainError("integrate_semi_infinite: rel_tol must lie in (1e-14, 1e-2)");
    if (!std::isfinite(lo)) throw DomainError("integrate_semi_infinite: lower limit must be finite");

    ScalarFn mapped;
    if (hint == DecayHint::exp_decay) {
        mapped = [&f, lo](double s) {
            const double om = 1.0 - s;
            const double u = lo + s / om;
            if (!std::isfinite(u)) return 0.0;
            return f(u) / (om * om);
        };
    } else {
        mapped = [&f, lo](double s) {
            const double om = 1.0 - s;
            const double x = s / om;
            const double u = lo + std::expm1(x);
            const double jac = std::exp(x) / (om * om);
            if (!std::isfinite(u) || !std::isfinite(jac)) return 0.0;
            const double v = f(u);
            return v == 0.0 ? 0.0 : v * jac;
        };
    }
    return integrate_finite(mapped, 0.0, 1.0, rel_tol, budget);
}

// ---------------------------------------------------------------------------
// Monotone inversion
// ---------------------------------------------------------------------------

double invert_monotone(const ScalarFn& g, double target, const Interval& bracket,
                       Monotone direction, double tol) {
    double lo = bracket.lo;
    double hi = bracket.hi;
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw BracketError("invert_monotone: bracket must be finite with lo < hi");
    if (!(tol > 0.0)) throw DomainError("invert_monotone: tol must be positive");

    const double sign = direction == Monotone::increasing ? 1.0 : -1.0;
    auto F = [&](double x) {
        const double v = g(x);
        if (std::isnan(v)) {
            std::ostringstream os;
            os << "invert_monotone: function is NaN at " << x;
            throw EvaluationError(os.str());
        }
        return sign * (v - target);
    };

    double flo = F(lo);
    double fhi = F(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo > 0.0 && fhi < 0.0) {
        std::ostringstream os;
        os << "invert_monotone: g runs against the declared direction on [" << lo << ", " << hi << "]";
        throw ContractError(os.str());
    }
    if (flo > 0.0 || fhi < 0.0) {
        std::ostringstream os;
        os << "invert_monotone: bracket [" << lo << ", " << hi << "] does not straddle target "
           << target;
        throw BracketError(os.str());
    }
    const double slack = 1e-12 * std::max({std::abs(flo), std::abs(fhi), std::abs(target), 1e-300});

    auto accept = [&](double x, double fx) {
        if (fx < flo - slack || fx > fhi + slack) {
            std::ostringstream os;
            os << "invert_monotone: function is not monotone on the bracket (at x = " << x << ")";
            throw ContractError(os.str());
        }
        if (fx < 0.0) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
    };

    auto done = [&](double x) { return (hi - lo) <= tol * std::max(1.0, std::abs(x)); };

    // Coarse bisection phase.
    for (int it = 0; it < 2000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((hi - lo) <= 1e-3 * std::max(1.0, std::abs(mid)) || done(mid)) break;
        if (!(mid > lo && mid < hi)) break;
        const double fm = F(mid);
        if (fm == 0.0) return mid;
        accept(mid, fm);
    }

    // Secant with bisection fallback.
    double width_two_back = hi - lo;
    double width_one_back = hi - lo;
    for (int it = 0; it < 500; ++it) {
        double x = lo - flo * (hi - lo) / (fhi - flo);
        const bool stalled = (hi - lo) > 0.5 * width_two_back;
        if (!(x > lo && x < hi) || stalled) x = 0.5 * (lo + hi);
        if (!(x > lo && x < hi)) break;
        const double fx = F(x);
        if (fx == 0.0) return x;
        accept(x, fx);
        width_two_back = width_one_back;
        width_one_back = hi - lo;
        if (done(x)) break;
    }
    return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

// ---------------------------------------------------------------------------
// Maximization
// ---------------------------------------------------------------------------

std::string_view to_string(BoundaryHit b) {
    switch (b) {
        case BoundaryHit::lower:
            return "lower";
        case BoundaryHit::upper:
            return "upper";
        case BoundaryHit::none:
            break;
    }
    return "none";
}

namespace {

double lower_gap(const Interval& d, const SearchPolicy& policy) {
    const double scale = d.bounded() ? (d.hi - d.lo) : std::max(1.0, std::abs(d.lo));
    return policy.clip * scale;
}

std::vector<double> geometric_offsets(double from, double to, std::size_t n) {
    std::vector<double> out;
    if (n == 0) return out;
    if (n == 1 || !(to > from)) {
        out.push_back(from);
        return out;
    }
    const double ratio = std::log(to / from);
    for (std::size_t k = 0; k < n; ++k)
        out.push_back(from * std::exp(ratio * static_cast<double>(k) / static_cast<double>(n - 1)));
    out.back() = to;
    return out;
}

std::vector<double> search_grid(const Interval& d, const ClippedRange& r,
                                const SearchPolicy& policy) {
    const std::size_t n = std::max<std::size_t>(policy.grid_size, 3);
    std::vector<double> xs;
    xs.reserve(n + 2);
    const double tiny = 1e-12 * std::max(1.0, std::abs(d.lo));
    const double glo = std::max(r.lo - d.lo, tiny);

    if (r.capped) {
        for (double off : geometric_offsets(glo, r.hi - d.lo, n)) xs.push_back(d.lo + off);
    } else {
        const double half = 0.5 * (d.hi - d.lo);
        const double ghi = std::max(d.hi - r.hi, tiny);
        if (!(glo < half && ghi < half)) {
            for (std::size_t k = 0; k < n; ++k)
                xs.push_back(r.lo + (r.hi - r.lo) * static_cast<double>(k) /
                                        static_cast<double>(n - 1));
        } else {
            const std::size_t n_lo = (n + 1) / 2;
            for (double off : geometric_offsets(glo, half, n_lo)) xs.push_back(d.lo + off);
            for (double off : geometric_offsets(ghi, half, n - n_lo)) xs.push_back(d.hi - off);
        }
    }
    xs.push_back(r.lo);
    xs.push_back(r.hi);
    for (double& x : xs) x = std::clamp(x, r.lo, r.hi);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

double safe_eval(const ScalarFn& h, double x) {
    try {
        const double v = h(x);
        return std::isnan(v) ? -kInf : v;
    } catch (const Error&) {
        return -kInf;
    }
}

/// Richardson-extrapolated central difference.
double slope(const ScalarFn& h, double x, double step) {
    const double d1 = (safe_eval(h, x + step) - safe_eval(h, x - step)) / (2.0 * step);
    const double d2 =
        (safe_eval(h, x + 0.5 * step) - safe_eval(h, x - 0.5 * step)) / step;
    return (4.0 * d2 - d1) / 3.0;
}

}  // namespace

ClippedRange clip_domain(const Interval& domain, const SearchPolicy& policy) {
    if (domain.empty()) throw DomainError("clip_domain: empty interval");
    if (!(policy.clip >= 0.0 && policy.clip < 0.5))
        throw DomainError("clip_domain: clip must lie in [0, 0.5)");
    ClippedRange r;
    if (domain.lo_closed) {
        r.lo = domain.lo;
    } else {
        r.lo = domain.lo + lower_gap(domain, policy);
        if (!(r.lo > domain.lo)) r.lo = std::nextafter(domain.lo, kInf);
    }
    if (domain.bounded()) {
        r.hi = domain.hi - policy.clip * (domain.hi - domain.lo);
        if (!(r.hi < domain.hi)) r.hi = std::nextafter(domain.hi, -kInf);
    } else {
        r.hi = policy.p_max;
        r.capped = true;
    }
    if (!(r.lo < r.hi)) {
        std::ostringstream os;
        os << "clip_domain: nothing left of (" << domain.lo << ", " << domain.hi
           << ") after clipping (p_max = " << policy.p_max << ")";
        throw DomainError(os.str());
    }
    return r;
}

OptimResult maximize_scalar(const ScalarFn& h, const Interval& domain,
                            const SearchPolicy& policy) {
    const ClippedRange range = clip_domain(domain, policy);
    const std::vector<double> xs = search_grid(domain, range, policy);

    std::vector<double> vals(xs.size());
    std::size_t best = xs.size();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        vals[i] = safe_eval(h, xs[i]);
        if (vals[i] > -kInf && (best == xs.size() || vals[i] > vals[best])) best = i;
    }
    if (best == xs.size()) throw EvaluationError("maximize_scalar: objective is NaN on the whole grid");

    const double grid_best = vals[best];
    double x_best = xs[best];
    double f_best = grid_best;
    if (f_best == kInf) return OptimResult{x_best, f_best, true, BoundaryHit::none};

    const double tol = policy.refine_tol;
    double a = xs[best == 0 ? 0 : best - 1];
    double b = xs[best + 1 == xs.size() ? best : best + 1];
    const double bracket0 = b - a;

    // Golden-section refinement.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = safe_eval(h, c);
    double fd = safe_eval(h, d);
    bool converged = false;
    for (int it = 0; it < 400; ++it) {
        if ((b - a) <= tol * std::max(1.0, std::abs(0.5 * (a + b)))) {
            converged = true;
            break;
        }
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = safe_eval(h, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = safe_eval(h, d);
        }
        if (fc > f_best) {
            f_best = fc;
            x_best = c;
        }
        if (fd > f_best) {
            f_best = fd;
            x_best = d;
        }
    }

    // Stationarity polish on the sign of the extrapolated slope.
    const bool interior = x_best > range.lo + bracket0 * 1e-3 && x_best < range.hi - bracket0 * 1e-3;
    if (interior && bracket0 > 0.0) {
        const double step = 1e-3 * bracket0;
        for (double span : {1e-4 * bracket0, 1e-2 * bracket0, 0.5 * bracket0}) {
            double l = std::max(x_best - span, range.lo + step);
            double r = std::min(x_best + span, range.hi - step);
            if (!(l < r)) continue;
            if (!(slope(h, l, step) > 0.0 && slope(h, r, step) < 0.0)) continue;
            for (int it = 0; it < 200; ++it) {
                const double m = 0.5 * (l + r);
                if (!(m > l && m < r)) break;
                if (slope(h, m, step) > 0.0)
                    l = m;
                else
                    r = m;
            }
            const double xp = 0.5 * (l + r);
            const double fp = safe_eval(h, xp);
            const double noise = 4.0 * kEps * (1.0 + std::abs(f_best));
            if (fp >= grid_best && fp >= f_best - noise) {
                x_best = xp;
                f_best = fp;
            }
            break;
        }
    }

    // Endpoint snapping: prefer the exact clipped endpoint when it is no worse.
    BoundaryHit hit = BoundaryHit::none;
    const double snap_lo = tol * std::max(1.0, std::abs(range.lo));
    const double snap_hi = tol * std::max(1.0, std::abs(range.hi));
    if (x_best - range.lo <= std::max(snap_lo, 2.0 * (b - a))) {
        const double fe = safe_eval(h, range.lo);
        if (fe >= f_best) {
            x_best = range.lo;
            f_best = fe;
        }
        if (x_best - range.lo <= snap_lo) hit = BoundaryHit::lower;
    } else if (range.hi - x_best <= std::max(snap_hi, 2.0 * (b - a))) {
        const double fe = safe_eval(h, range.hi);
        if (fe >= f_best) {
            x_best = range.hi;
            f_best = fe;
        }
        if (range.hi - x_best <= snap_hi) hit = BoundaryHit::upper;
    }
    return OptimResult{x_best, f_best, converged, hit};
}

OptimResult maximize_scalar(const ScalarFn& h, const Interval& domain, std::size_t grid_size,
                            double refine_tol) {
    SearchPolicy policy;
    policy.grid_size = grid_size;
    policy.refine_tol = refine_tol;
    return maximize_scalar(h, domain, policy);
}

}  // namespace gls
