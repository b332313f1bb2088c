// SPDX-License-Identifier: MIT
#include "gls/riesz_operator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gls {

namespace {

double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

}  // namespace

OperatorProfile OperatorProfile::riesz_type(double C, double alpha, double beta, double a1,
                                            double b1) {
    if (!(C > 0.0) || !std::isfinite(C)) throw DomainError("riesz-type profile: C must be positive");
    if (!(alpha >= 0.0) || !(beta >= 0.0) || !std::isfinite(alpha) || !std::isfinite(beta))
        throw DomainError("riesz-type profile: alpha, beta must be nonnegative");
    if (!(a1 >= 1.0) || !(a1 < b1)) throw DomainError("riesz-type profile: need 1 <= a1 < b1");
    if (!std::isfinite(b1) && beta > 0.0)
        throw DomainError("riesz-type profile: b1 = inf requires beta = 0");
    OperatorProfile op;
    op.kind_ = Kind::riesz_type;
    op.c_ = C;
    op.alpha_ = alpha;
    op.beta_ = beta;
    op.a1_ = a1;
    op.b1_ = b1;
    op.validity_ = Interval{a1, b1, alpha == 0.0};
    return op;
}

OperatorProfile OperatorProfile::classical(double cd) {
    if (!(cd > 0.0) || !std::isfinite(cd)) throw DomainError("classical profile: C_d must be positive");
    OperatorProfile op;
    op.kind_ = Kind::classical_riesz;
    op.c_ = cd;
    op.validity_ = Interval{1.0, kInf, false};
    return op;
}

OperatorProfile OperatorProfile::identity() { return riesz_type(1.0, 0.0, 0.0, 1.0, kInf); }

std::string OperatorProfile::describe() const {
    std::ostringstream os;
    if (kind_ == Kind::classical_riesz) {
        os << "classical(Cd=" << c_ << ")";
    } else {
        os << "riesz_type(C=" << c_ << ",alpha=" << alpha_ << ",beta=" << beta_ << ",a1=" << a1_
           << ",b1=" << b1_ << ")";
    }
    return os.str();
}

double log_zeta(const OperatorProfile& op, double p) {
    if (!op.validity().contains(p)) {
        std::ostringstream os;
        os << "zeta: p = " << p << " outside the validity interval of " << op.describe();
        throw DomainError(os.str());
    }
    if (op.kind() == OperatorProfile::Kind::classical_riesz)
        return std::log(op.C()) + std::log(std::max(p, p / (p - 1.0)));
    double v = std::log(op.C());
    if (op.alpha() != 0.0) v -= op.alpha() * std::log(p - op.a1());
    if (op.beta() != 0.0) v -= op.beta() * std::log(op.b1() - p);
    return v;
}

double zeta(const OperatorProfile& op, double p) { return std::exp(log_zeta(op, p)); }

GeneratingFunction as_generating_function(const OperatorProfile& op) {
    if (op.kind() == OperatorProfile::Kind::classical_riesz)
        return GeneratingFunction::riesz_max(op.C());
    return GeneratingFunction::from_log([op](double p) { return log_zeta(op, p); }, op.validity(),
                                        op.describe());
}

ZetaMinimum zeta_minimize(const OperatorProfile& op, const SearchPolicy& policy) {
    if (op.kind() != OperatorProfile::Kind::riesz_type)
        throw DomainError("zeta_minimize: needs a riesz-type profile");
    if (!std::isfinite(op.b1())) throw DomainError("zeta_minimize: b1 must be finite");

    const double a = op.alpha();
    const double b = op.beta();
    ZetaMinimum out;
    if (a == 0.0 && b == 0.0) {
        out.degenerate = true;
        out.p_star = 0.5 * (op.a1() + op.b1());
        out.min_value = op.C();
    } else {
        out.p_star = (a * op.b1() + b * op.a1()) / (a + b);
        const double log_min = std::log(op.C()) - (a + b) * std::log(op.b1() - op.a1()) +
                               xlogx(a + b) - xlogx(a) - xlogx(b);
        out.min_value = std::exp(log_min);
        if (b == 0.0) out.boundary_hit = BoundaryHit::upper;
        if (a == 0.0) out.boundary_hit = BoundaryHit::lower;
    }

    OptimResult r =
        maximize_scalar([&op](double p) { return -log_zeta(op, p); }, op.validity(), policy);
    r.opt_value = std::exp(-r.opt_value);
    out.numeric = r;
    return out;
}

TransferResult transfer(const OperatorProfile& op, const GeneratingFunction& psi) {
    const Interval I = intersect(op.validity(), psi.domain());
    if (I.empty()) {
        std::ostringstream os;
        os << "transfer: I = empty; validity (" << op.validity().lo << ", " << op.validity().hi
           << ") does not meet the psi domain (" << psi.domain().lo << ", " << psi.domain().hi
           << ")";
        throw DomainError(os.str());
    }
    TransferResult out{GeneratingFunction::product(as_generating_function(op), psi), I, 1.0,
                       op.describe()};
    return out;
}

BoundReport theorem_tail_bound(const LpProfile& w, const OperatorProfile& op,
                               std::span<const double> t_grid, const SearchPolicy& policy,
                               Execution exec) {
    const TransferResult tr = transfer(op, GeneratingFunction::natural(w));
    return tail_envelope(tr.phi, 1.0, t_grid, policy, exec);
}

BoundReport theorem_tail_bound(const Model& m, const OperatorProfile& op,
                               std::span<const double> t_grid, ComparisonConstants c,
                               const SearchPolicy& policy, Execution exec) {
    if (!(c.c_low > 0.0) || !(c.c_low <= c.c_high) || !std::isfinite(c.c_high))
        throw DomainError("comparison constants: need 0 < c_low <= c_high < inf");
    LpProfile w = LpProfile::of_model(m);
    if (c.c_high != 1.0) w = w.scaled(c.c_high);
    return theorem_tail_bound(w, op, t_grid, policy, exec);
}

std::pair<double, double> riesz_endpoint_profile(double p, double cd) {
    if (!(p > 1.0)) throw DomainError("riesz_endpoint_profile: p must exceed 1");
    const double z = zeta(OperatorProfile::classical(cd), p);
    return {z * (p - 1.0), z / p};
}

bool riesz_hypothesis_holds(const Model& m) {
    if (const auto* o = std::get_if<OuterModel>(&m)) return o->a * o->d > 1.0;
    if (const auto* s = std::get_if<SumModel>(&m)) return s->outer.a * s->outer.d > 1.0;
    return true;
}

}  // namespace gls
