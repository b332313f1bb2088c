// SPDX-License-Identifier: MIT
#pragma once

#include "gls/kernels.hpp"
#include "gls/numerics.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace gls {

/// Tail function t -> T(t) = |{|f| >= t}|, nonincreasing, zero beyond
/// t_max_support. Evaluated in log-log form so that moments of tails with
/// algebraic singularities at t -> 0 stay finite in floating point.
class TailCurve {
public:
    /// ln t -> ln T(t); -inf where T vanishes.
    using LogEvaluator = std::function<double(double)>;

    TailCurve(LogEvaluator log_tail, double t_max_support, std::vector<double> breakpoints,
              std::string label);

    static TailCurve zero();

    /// Piecewise-linear tail through (t_i, T_i); constant T_0 on (0, t_0],
    /// zero beyond the last node. Nodes must be strictly increasing in t and
    /// T must be nonnegative and nonincreasing.
    static TailCurve tabulated(std::vector<double> t, std::vector<double> tail);

    [[nodiscard]] double operator()(double t) const;
    [[nodiscard]] double log_at(double ln_t) const { return log_tail_(ln_t); }

    [[nodiscard]] double t_min_support() const { return 0.0; }
    [[nodiscard]] double t_max_support() const { return t_max_; }
    /// Points where the tail is not smooth; quadrature splits there.
    [[nodiscard]] const std::vector<double>& breakpoints() const { return breakpoints_; }
    [[nodiscard]] const std::string& label() const { return label_; }

private:
    LogEvaluator log_tail_;
    double t_max_;
    std::vector<double> breakpoints_;
    std::string label_;
};

/// Layer-cake moment p * int_0^inf t^{p-1} T(t) dt, i.e. ||f||_p^p.
QuadratureResult stein_moment(const TailCurve& tail, double p, double rel_tol = 1e-10);

/// Stein moments on a p-grid; parallel and serial kernels agree exactly.
std::vector<QuadratureResult> stein_moments(const TailCurve& tail, std::span<const double> ps,
                                            double rel_tol, Execution exec);

std::vector<double> sample_tail(const TailCurve& tail, std::span<const double> ts,
                                Execution exec = Execution::parallel);

/// True if the sampled values never increase along the (sorted) grid.
bool sampled_nonincreasing(const TailCurve& tail, std::span<const double> ts);

}  // namespace gls
