// SPDX-License-Identifier: MIT
//
// Scalar numerical building blocks shared by every other module:
// log-Gamma, adaptive Gauss-Kronrod quadrature on finite and semi-infinite
// ranges, bracketed inversion of monotone functions and a grid + golden
// section maximizer with endpoint clipping.
#pragma once

#include "gls/error.hpp"

#include <cstddef>
#include <functional>
#include <limits>
#include <string_view>

namespace gls {

using ScalarFn = std::function<double(double)>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Open interval (lo, hi), hi may be +inf. `lo_closed` marks [lo, hi).
struct Interval {
    double lo = 1.0;
    double hi = kInf;
    bool lo_closed = false;

    [[nodiscard]] bool bounded() const { return hi < kInf; }
    [[nodiscard]] bool contains(double p) const {
        return (lo_closed ? p >= lo : p > lo) && p < hi;
    }
    [[nodiscard]] bool empty() const { return !(lo < hi); }
};

/// Validated constructor; throws DomainError unless lo < hi.
Interval make_interval(double lo, double hi, bool lo_closed = false);

/// Intersection of two intervals; the result may be empty().
Interval intersect(const Interval& x, const Interval& y);

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

/// ln Gamma(z) for z > 0 (Lanczos, g = 7, with reflection below 1/2).
double gamma_ln(double z);

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::size_t evaluations = 0;
};

/// Raised when the evaluation budget is exhausted or roundoff prevents the
/// requested accuracy. Carries the best partial result.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, QuadratureResult partial)
        : Error(what), partial_(partial) {}
    [[nodiscard]] const QuadratureResult& partial() const { return partial_; }

private:
    QuadratureResult partial_;
};

enum class DecayHint { exp_decay, power_decay, automatic };

inline constexpr std::size_t kQuadratureBudget = 1'000'000;

/// Globally adaptive Gauss-Kronrod 7/15 on [lo, hi].
QuadratureResult integrate_finite(const ScalarFn& f, double lo, double hi, double rel_tol,
                                  std::size_t budget = kQuadratureBudget);

/// Integral of f over (lo, inf).
///
/// exp_decay maps u = lo + s/(1-s); power_decay and automatic use
/// u = lo + expm1(s/(1-s)), which turns algebraic decay into exponential
/// decay. The mapped integrand on (0,1) goes through integrate_finite.
/// rel_tol must lie in (1e-14, 1e-2).
QuadratureResult integrate_semi_infinite(const ScalarFn& f, double lo, DecayHint hint,
                                         double rel_tol,
                                         std::size_t budget = kQuadratureBudget);

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

enum class Monotone { increasing, decreasing };

/// Solves g(r) = target on the closed bracket [bracket.lo, bracket.hi].
///
/// Bisection until the bracket is below 1e-3 relative, then secant steps
/// with a bisection fallback whenever a step fails to halve the bracket.
/// Stops once the bracket is below tol * max(1, |r|).
double invert_monotone(const ScalarFn& g, double target, const Interval& bracket,
                       Monotone direction, double tol);

// ---------------------------------------------------------------------------
// 1-D maximization
// ---------------------------------------------------------------------------

enum class BoundaryHit { none, lower, upper };

std::string_view to_string(BoundaryHit b);

struct OptimResult {
    double argopt = 0.0;
    double opt_value = -kInf;
    bool converged = false;
    BoundaryHit boundary_hit = BoundaryHit::none;
};

/// Shared policy for suprema over open exponent intervals.
struct SearchPolicy {
    std::size_t grid_size = 256;
    double refine_tol = 1e-10;
    double clip = 1e-6;    // relative margin removed from open endpoints
    double p_max = 1e4;    // cap for unbounded intervals
};

/// Closed search range obtained from an open interval under `policy`.
struct ClippedRange {
    double lo = 0.0;
    double hi = 0.0;
    bool capped = false;  // hi came from p_max
};

ClippedRange clip_domain(const Interval& domain, const SearchPolicy& policy);

/// Grid scan followed by golden-section refinement around the best cell.
///
/// The grid is geometric in the distance to each finite endpoint, so it is
/// dense where suprema over open intervals tend to sit. Points where h throws
/// or returns NaN are skipped; if every grid point is unusable an
/// EvaluationError is raised. The returned value is never below the best grid
/// sample and equals h(argopt).
OptimResult maximize_scalar(const ScalarFn& h, const Interval& domain,
                            const SearchPolicy& policy = {});

OptimResult maximize_scalar(const ScalarFn& h, const Interval& domain, std::size_t grid_size,
                            double refine_tol);

}  // namespace gls
