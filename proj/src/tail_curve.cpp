// SPDX-License-Identifier: MIT
#include "gls/tail_curve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gls {

TailCurve::TailCurve(LogEvaluator log_tail, double t_max_support, std::vector<double> breakpoints,
                     std::string label)
    : log_tail_(std::move(log_tail)),
      t_max_(t_max_support),
      breakpoints_(std::move(breakpoints)),
      label_(std::move(label)) {
    std::sort(breakpoints_.begin(), breakpoints_.end());
    breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()), breakpoints_.end());
    std::erase_if(breakpoints_, [this](double b) { return !(b > 0.0) || !(b < t_max_); });
}

TailCurve TailCurve::zero() {
    return TailCurve([](double) { return -kInf; }, 1.0, {}, "zero");
}

TailCurve TailCurve::tabulated(std::vector<double> t, std::vector<double> tail) {
    if (t.size() != tail.size() || t.empty())
        throw DomainError("tabulated tail: need matching, nonempty columns");
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(t[i] > 0.0) || !std::isfinite(t[i]))
            throw DomainError("tabulated tail: t must be positive and finite");
        if (!(tail[i] >= 0.0) || !std::isfinite(tail[i]))
            throw DomainError("tabulated tail: T must be nonnegative and finite");
        if (i > 0 && !(t[i] > t[i - 1]))
            throw DomainError("tabulated tail: t column must be strictly increasing");
        if (i > 0 && tail[i] > tail[i - 1])
            throw ContractError("tabulated tail: T must be nonincreasing");
    }
    const double t_max = t.back();
    std::vector<double> knots = t;
    auto log_eval = [t = std::move(t), tail = std::move(tail)](double ln_t) {
        const double x = std::exp(ln_t);
        if (x > t.back()) return -kInf;
        if (x <= t.front()) return std::log(tail.front());
        const auto it = std::upper_bound(t.begin(), t.end(), x);
        const auto j = static_cast<std::size_t>(it - t.begin());
        const double w = (x - t[j - 1]) / (t[j] - t[j - 1]);
        return std::log(tail[j - 1] + w * (tail[j] - tail[j - 1]));
    };
    return TailCurve(std::move(log_eval), t_max, std::move(knots), "tabulated");
}

double TailCurve::operator()(double t) const {
    if (!(t > 0.0)) throw DomainError("tail: t must be positive");
    if (t > t_max_) return 0.0;
    return std::exp(log_tail_(std::log(t)));
}

QuadratureResult stein_moment(const TailCurve& tail, double p, double rel_tol) {
    if (!(p > 0.0)) throw DomainError("stein_moment: p must be positive");
    const double log_p = std::log(p);
    auto integrand = [&](double y) {
        const double lt = tail.log_at(y);
        if (lt == -kInf) return 0.0;
        return std::exp(log_p + p * y + lt);
    };

    std::vector<double> knots;
    for (double b : tail.breakpoints()) knots.push_back(std::log(b));
    const bool bounded = std::isfinite(tail.t_max_support());
    if (bounded) knots.push_back(std::log(tail.t_max_support()));
    if (knots.empty()) knots.push_back(0.0);

    QuadratureResult total{0.0, 0.0, 0};
    auto add = [&total](const QuadratureResult& r) {
        total.value += r.value;
        total.abs_error_estimate += r.abs_error_estimate;
        total.evaluations += r.evaluations;
    };

    const double first = knots.front();
    add(integrate_semi_infinite([&](double v) { return integrand(first - v); }, 0.0,
                                DecayHint::exp_decay, rel_tol));
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
        add(integrate_finite(integrand, knots[i], knots[i + 1], rel_tol));
    if (!bounded) {
        const double last = knots.back();
        add(integrate_semi_infinite([&](double v) { return integrand(last + v); }, 0.0,
                                    DecayHint::exp_decay, rel_tol));
    }
    return total;
}

std::vector<QuadratureResult> stein_moments(const TailCurve& tail, std::span<const double> ps,
                                            double rel_tol, Execution exec) {
    return kernels::map_indices(exec, ps.size(),
                                [&](std::size_t i) { return stein_moment(tail, ps[i], rel_tol); });
}

std::vector<double> sample_tail(const TailCurve& tail, std::span<const double> ts,
                                Execution exec) {
    return kernels::map_indices(exec, ts.size(), [&](std::size_t i) { return tail(ts[i]); });
}

bool sampled_nonincreasing(const TailCurve& tail, std::span<const double> ts) {
    double prev = kInf;
    for (double t : ts) {
        const double v = tail(t);
        if (v > prev) return false;
        prev = v;
    }
    return true;
}

}  // namespace gls
