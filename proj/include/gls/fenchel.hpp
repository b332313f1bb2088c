// SPDX-License-Identifier: MIT
//
// Young-Fenchel transform of nu(p) = p ln psi(p) and the tail envelope
//
//   R[psi](u; t) = exp(-nu*(ln(t/u))) = inf_p (u psi(p))^p / t^p.
#pragma once

#include "gls/grand_lebesgue.hpp"
#include "gls/kernels.hpp"
#include "gls/numerics.hpp"
#include "gls/tail_curve.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gls {

class NuFunction {
public:
    explicit NuFunction(GeneratingFunction g) : g_(std::move(g)) {}

    [[nodiscard]] double operator()(double p) const { return p * g_.log_value(p); }
    [[nodiscard]] const GeneratingFunction& source() const { return g_; }
    [[nodiscard]] const Interval& domain() const { return g_.domain(); }

private:
    GeneratingFunction g_;
};

/// p ln psi(p); DomainError outside the domain of psi.
double nu(const GeneratingFunction& g, double p);

struct FenchelResult {
    double y = 0.0;
    double value = 0.0;
    double argmax_p = 0.0;
    BoundaryHit boundary_hit = BoundaryHit::none;
    bool converged = false;
};

FenchelResult fenchel_transform(const NuFunction& nu, double y, const SearchPolicy& policy = {});

std::vector<FenchelResult> fenchel_transform(const NuFunction& nu, std::span<const double> ys,
                                             const SearchPolicy& policy = {},
                                             Execution exec = Execution::parallel);

/// Below this ln R the envelope is reported as R = 0.
inline constexpr double kLogUnderflow = -745.0;

struct EnvelopePoint {
    double t = 0.0;
    double log_R = 0.0;
    double R = 0.0;
    double argmax_p = 0.0;
    BoundaryHit boundary_hit = BoundaryHit::none;
    bool underflow = false;
    bool exceeds_one = false;  // vacuous bound
    std::optional<double> log_reference;
    std::optional<bool> dominated;
};

struct BoundReport {
    double u = 1.0;
    std::string psi;
    std::vector<EnvelopePoint> points;
    bool has_reference = false;
};

/// Envelope over `t_grid` for a function with GLS norm `u` in G(psi).
BoundReport tail_envelope(const GeneratingFunction& g, double u, std::span<const double> t_grid,
                          const SearchPolicy& policy = {}, Execution exec = Execution::parallel);

/// Adds the reference tail and checks T(t) <= R(t) in log space with the
/// given relative slack.
void attach_reference(BoundReport& report, const TailCurve& reference, double slack = 1e-12);

/// ||f||_p^p / t^p.
double chebyshev_pointwise(const LpProfile& profile, double t, double p);
double log_chebyshev_pointwise(const LpProfile& profile, double t, double p);

}  // namespace gls
