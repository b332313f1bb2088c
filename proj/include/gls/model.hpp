// SPDX-License-Identifier: MIT
//
// Explicit radial model functions on R^d:
//
//   outer  f(x) = 1{|x|>1} |x|^{-1/a} (ln|x|)^gamma     (a > 0, gamma >= 0)
//   inner  g(x) = 1{|x|<1} |x|^{-1/b} |ln|x||^nu        (b > 0, nu > 0)
//   sum    h = f + g                                     (disjoint supports)
//
// with closed-form L^p norms (assembled in log space), sup-norms, exact tails
// obtained by inverting the radial profile, and the leading-order tail
// asymptotics.
#pragma once

#include "gls/numerics.hpp"
#include "gls/tail_curve.hpp"

#include <string>
#include <variant>

namespace gls {

struct OuterModel {
    double a = 1.0;
    double gamma = 0.0;
    int d = 1;
};

struct InnerModel {
    double b = 1.0;
    double nu = 1.0;
    int d = 1;
};

struct SumModel {
    OuterModel outer;
    InnerModel inner;
};

using Model = std::variant<OuterModel, InnerModel, SumModel>;

void validate(const OuterModel& m);
void validate(const InnerModel& m);
void validate(const SumModel& m);
void validate(const Model& m);

std::string describe(const Model& m);
int dimension(const Model& m);

/// How the super-level set of the outer profile is measured when gamma > 0.
/// `shell` counts {1 < |x| <= r(t)} using the decreasing-branch root only;
/// `exact` subtracts the ball below the rising-branch root as well.
enum class LevelSet { shell, exact };

/// Leading-order tail asymptotics: `paper` uses r(t) ~ t^{-a} ln(1/t)^{a gamma};
/// `corrected` keeps the factor a^{a gamma} that the inversion produces.
enum class AsymptoticVariant { paper, corrected };

// --- geometry -------------------------------------------------------------

/// Surface area S_{d-1} = 2 pi^{d/2} / Gamma(d/2) of the unit sphere in R^d.
double sphere_area(int d);
double log_sphere_area(int d);

// --- pointwise ------------------------------------------------------------

double eval_outer(const OuterModel& m, double x_norm);
double eval_inner(const InnerModel& m, double x_norm);
double eval_sum(const SumModel& m, double x_norm);

// --- L^p norms ------------------------------------------------------------

/// Exponents for which the model is in L^p: (ad, inf), [1, bd), (ad, bd).
Interval integrability(const Model& m);

double log_lp_norm_outer(const OuterModel& m, double p);
double log_lp_norm_inner(const InnerModel& m, double p);
double log_lp_norm_sum(const SumModel& m, double p);
double log_lp_norm(const Model& m, double p);

double lp_norm_outer(const OuterModel& m, double p);
double lp_norm_inner(const InnerModel& m, double p);
double lp_norm_sum(const SumModel& m, double p);
double lp_norm(const Model& m, double p);

/// e^{-gamma} (a gamma)^gamma, or 1 when gamma = 0.
double sup_norm_outer(const OuterModel& m);

// --- tails ----------------------------------------------------------------

/// Roots in u = ln r of the outer level equation; u_inner = 0 when gamma = 0.
struct LevelRadii {
    double u_inner = 0.0;
    double u_outer = 0.0;
};

/// Roots of r^{-1/a} (ln r)^gamma = t for 0 < t < sup-norm.
LevelRadii outer_level_radii(const OuterModel& m, double ln_t);

/// Root u = -ln r of r^{-1/b} |ln r|^nu = t.
double inner_level_radius(const InnerModel& m, double ln_t);

double log_tail_outer(const OuterModel& m, double ln_t, LevelSet mode = LevelSet::shell);
double log_tail_inner(const InnerModel& m, double ln_t);

double tail_outer(const OuterModel& m, double t, LevelSet mode = LevelSet::shell);
double tail_inner(const InnerModel& m, double t);
double tail_sum(const SumModel& m, double t, LevelSet mode = LevelSet::shell);

/// (S_{d-1}/d) t^{-ad} ln(1/t)^{a gamma d}; requires t < 1 unless gamma = 0.
double tail_asymptotic_outer(const OuterModel& m, double t,
                             AsymptoticVariant v = AsymptoticVariant::paper);
/// (S_{d-1}/d) t^{-bd} (ln t)^{b nu d}; requires t > 1.
double tail_asymptotic_inner(const InnerModel& m, double t,
                             AsymptoticVariant v = AsymptoticVariant::paper);

TailCurve model_tail(const Model& m, LevelSet mode = LevelSet::shell);

}  // namespace gls
