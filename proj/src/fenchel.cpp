// SPDX-License-Identifier: MIT
#include "gls/fenchel.hpp"

#include <cmath>

namespace gls {

double nu(const GeneratingFunction& g, double p) { return p * g.log_value(p); }

FenchelResult fenchel_transform(const NuFunction& nu, double y, const SearchPolicy& policy) {
    if (!std::isfinite(y)) throw DomainError("fenchel_transform: y must be finite");
    const OptimResult r =
        maximize_scalar([&](double p) { return p * y - nu(p); }, nu.domain(), policy);
    return FenchelResult{y, r.opt_value, r.argopt, r.boundary_hit, r.converged};
}

std::vector<FenchelResult> fenchel_transform(const NuFunction& nu, std::span<const double> ys,
                                             const SearchPolicy& policy, Execution exec) {
    return kernels::map_indices(exec, ys.size(),
                                [&](std::size_t i) { return fenchel_transform(nu, ys[i], policy); });
}

BoundReport tail_envelope(const GeneratingFunction& g, double u, std::span<const double> t_grid,
                          const SearchPolicy& policy, Execution exec) {
    if (!(u > 0.0) || !std::isfinite(u)) throw DomainError("tail_envelope: u must be positive");
    for (double t : t_grid)
        if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("tail_envelope: t must be positive");

    const NuFunction nu_psi(g);
    const double log_u = std::log(u);
    BoundReport report;
    report.u = u;
    report.psi = g.describe();
    report.points = kernels::map_indices(exec, t_grid.size(), [&](std::size_t i) {
        const double t = t_grid[i];
        const FenchelResult f = fenchel_transform(nu_psi, std::log(t) - log_u, policy);
        EnvelopePoint pt;
        pt.t = t;
        pt.log_R = -f.value;
        pt.argmax_p = f.argmax_p;
        pt.boundary_hit = f.boundary_hit;
        pt.underflow = pt.log_R < kLogUnderflow;
        pt.R = pt.underflow ? 0.0 : std::exp(pt.log_R);
        pt.exceeds_one = pt.log_R > 0.0;
        return pt;
    });
    return report;
}

void attach_reference(BoundReport& report, const TailCurve& reference, double slack) {
    for (EnvelopePoint& pt : report.points) {
        const double log_T =
            pt.t > reference.t_max_support() ? -kInf : reference.log_at(std::log(pt.t));
        pt.log_reference = log_T;
        pt.dominated = log_T == -kInf || log_T - pt.log_R <= slack;
    }
    report.has_reference = true;
}

double log_chebyshev_pointwise(const LpProfile& profile, double t, double p) {
    if (!(t > 0.0)) throw DomainError("chebyshev_pointwise: t must be positive");
    return p * (profile.log_norm(p) - std::log(t));
}

double chebyshev_pointwise(const LpProfile& profile, double t, double p) {
    return std::exp(log_chebyshev_pointwise(profile, t, p));
}

}  // namespace gls
