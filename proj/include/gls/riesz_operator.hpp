// SPDX-License-Identifier: MIT
//
// Operators described only by their L^p growth zeta(p), the transfer of a GLS
// bound through such an operator, and the resulting tail bound
//
//   T[U f](t) <= R[phi_f](1; t),   phi_f(p) = zeta(p) ||f||_p.
#pragma once

#include "gls/fenchel.hpp"
#include "gls/grand_lebesgue.hpp"
#include "gls/model.hpp"

#include <span>
#include <string>
#include <utility>

namespace gls {

class OperatorProfile {
public:
    enum class Kind { riesz_type, classical_riesz };

    /// C (p-a1)^{-alpha} (b1-p)^{-beta} on (a1, b1); the lower end is
    /// included when alpha = 0.
    static OperatorProfile riesz_type(double C, double alpha, double beta, double a1, double b1);
    /// C_d max{p, p/(p-1)} on (1, inf).
    static OperatorProfile classical(double cd = 1.0);
    /// zeta = 1 on [1, inf).
    static OperatorProfile identity();

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] const Interval& validity() const { return validity_; }
    [[nodiscard]] double C() const { return c_; }
    [[nodiscard]] double alpha() const { return alpha_; }
    [[nodiscard]] double beta() const { return beta_; }
    [[nodiscard]] double a1() const { return a1_; }
    [[nodiscard]] double b1() const { return b1_; }
    [[nodiscard]] std::string describe() const;

private:
    OperatorProfile() = default;
    Kind kind_ = Kind::riesz_type;
    Interval validity_;
    double c_ = 1.0;
    double alpha_ = 0.0;
    double beta_ = 0.0;
    double a1_ = 1.0;
    double b1_ = kInf;
};

double zeta(const OperatorProfile& op, double p);
double log_zeta(const OperatorProfile& op, double p);

GeneratingFunction as_generating_function(const OperatorProfile& op);

struct ZetaMinimum {
    double p_star = 0.0;     // closed form
    double min_value = 0.0;  // closed form
    OptimResult numeric;     // minimizer of zeta; opt_value holds min zeta
    BoundaryHit boundary_hit = BoundaryHit::none;
    bool degenerate = false;  // alpha = beta = 0
};

/// Closed-form minimizer p* = (alpha b1 + beta a1)/(alpha + beta) with a
/// numeric cross-check. Needs a riesz_type profile with finite b1.
ZetaMinimum zeta_minimize(const OperatorProfile& op, const SearchPolicy& policy = {});

struct TransferResult {
    GeneratingFunction phi;
    Interval I;
    double certificate = 1.0;
    std::string operator_description;
};

/// phi = zeta psi on I = validity & domain(psi); DomainError when I is empty.
TransferResult transfer(const OperatorProfile& op, const GeneratingFunction& psi);

/// Constants c_low T[model] <= T[f] <= c_high T[model] for a function only
/// known up to comparison with a model; the bound uses ||f||_p <= c_high ||model||_p.
struct ComparisonConstants {
    double c_low = 1.0;
    double c_high = 1.0;
};

BoundReport theorem_tail_bound(const LpProfile& w, const OperatorProfile& op,
                               std::span<const double> t_grid, const SearchPolicy& policy = {},
                               Execution exec = Execution::parallel);

BoundReport theorem_tail_bound(const Model& m, const OperatorProfile& op,
                               std::span<const double> t_grid, ComparisonConstants c = {},
                               const SearchPolicy& policy = {},
                               Execution exec = Execution::parallel);

/// (zeta(p) (p-1), zeta(p) / p) for the classical profile.
std::pair<double, double> riesz_endpoint_profile(double p, double cd = 1.0);

/// Joint validity a d > 1 for the Riesz transform of an outer-type function.
bool riesz_hypothesis_holds(const Model& m);

}  // namespace gls
