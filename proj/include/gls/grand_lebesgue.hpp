// SPDX-License-Identifier: MIT
//
// Grand Lebesgue Space machinery: generating functions psi on an exponent
// interval, L^p profiles p -> ||f||_p, the norm sup_p ||f||_p / psi(p), and
// the same norm reconstructed from a tail function through the layer-cake
// (Stein) identity.
#pragma once

#include "gls/kernels.hpp"
#include "gls/model.hpp"
#include "gls/numerics.hpp"
#include "gls/tail_curve.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace gls {

/// p -> ||f||_p on an exponent interval, evaluated as ln ||f||_p.
class LpProfile {
public:
    enum class Source { closed_form, tabulated, quadrature, derived };

    LpProfile(std::function<double(double)> log_norm, Interval domain, Source source,
              std::string label);

    static LpProfile of_model(const Model& m);

    /// Profile reconstructed from a tail by the layer-cake identity; each
    /// evaluation runs one quadrature at relative tolerance `rel_tol`.
    static LpProfile from_tail(TailCurve tail, Interval domain, double rel_tol = 1e-10);

    /// c * ||f||_p, c > 0.
    [[nodiscard]] LpProfile scaled(double c) const;

    [[nodiscard]] double log_norm(double p) const;
    [[nodiscard]] double norm(double p) const;
    [[nodiscard]] const Interval& domain() const { return domain_; }
    [[nodiscard]] Source source() const { return source_; }
    [[nodiscard]] const std::string& label() const { return label_; }

private:
    std::function<double(double)> log_norm_;
    Interval domain_;
    Source source_;
    std::string label_;
};

/// A positive weight psi on an exponent interval (a, b), 1 <= a < b <= inf.
/// Immutable; copies share state.
class GeneratingFunction {
public:
    enum class Kind {
        parametric,
        power,
        iwaniec_sbordone,
        natural,
        product,
        tabulated,
        riesz_max,
        custom
    };

    /// (p-a)^{-alpha} (b-p)^{-beta} on (a,b); b = inf requires beta = 0.
    static GeneratingFunction parametric(double a, double b, double alpha, double beta);
    /// p^{1/m} on [1, inf).
    static GeneratingFunction power(double m);
    /// (p-q)^{-theta/q} for q in (1, p).
    static GeneratingFunction iwaniec_sbordone(double p, double theta);
    /// psi(p) = ||f||_p on the profile's domain.
    static GeneratingFunction natural(LpProfile profile);
    /// Pointwise product on the intersection of the domains.
    static GeneratingFunction product(const GeneratingFunction& x, const GeneratingFunction& y);
    /// Log-linear interpolation of psi through strictly increasing p nodes.
    static GeneratingFunction tabulated(std::vector<double> p, std::vector<double> psi);
    /// C_d max{p, p/(p-1)} on (1, inf).
    static GeneratingFunction riesz_max(double cd);
    /// Arbitrary positive weight given as p -> ln psi(p) on `domain`.
    static GeneratingFunction from_log(std::function<double(double)> log_psi, Interval domain,
                                       std::string description);

    /// c * psi, c > 0.
    [[nodiscard]] GeneratingFunction scaled(double c) const;

    [[nodiscard]] Kind kind() const;
    [[nodiscard]] const Interval& domain() const;
    [[nodiscard]] std::string describe() const;

    /// ln psi(p); throws DomainError outside the domain.
    [[nodiscard]] double log_value(double p) const;
    [[nodiscard]] double operator()(double p) const;

    struct Impl;

private:
    explicit GeneratingFunction(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

double eval_psi(const GeneratingFunction& g, double p);

/// Smallest psi value seen on the clipped search grid.
double sampled_infimum(const GeneratingFunction& g, const SearchPolicy& policy = {});

/// psi[m](p) = ||m||_p on the integrability interval of m intersected with
/// [1, inf), with each finite endpoint pulled in by the relative margin `clip`.
GeneratingFunction natural_function(const Model& m, double clip = 0.0);

struct GlsNorm {
    double value = 0.0;  // +inf when `infinite`
    double log_value = -kInf;
    double argmax_p = 0.0;
    BoundaryHit boundary_hit = BoundaryHit::none;
    bool infinite = false;
    std::string diagnostics;
};

/// sup over the common domain of ||f||_p / psi(p), maximized in log form.
///
/// When the supremum sits on a clipped endpoint the log-ratio is re-probed
/// three decades closer to that endpoint; growth beyond `divergence_jump`
/// is reported as an infinite norm.
GlsNorm gls_norm(const LpProfile& profile, const GeneratingFunction& g,
                 const SearchPolicy& policy = {}, double divergence_jump = 1e-4);

struct NormFromTail {
    GlsNorm norm;
    std::vector<double> failed_p;  // exponents where the moment quadrature failed
};

NormFromTail norm_from_tail(const TailCurve& tail, const GeneratingFunction& g,
                            const SearchPolicy& policy = {}, double rel_tol = 1e-10);

}  // namespace gls
