// SPDX-License-Identifier: MIT
//
// Independent cross-checks of the pipeline: layer-cake round trips,
// direct radial quadrature, envelope dominance, closed-form conjugates and
// tail asymptotics.
#pragma once

#include "gls/fenchel.hpp"
#include "gls/grand_lebesgue.hpp"
#include "gls/kernels.hpp"
#include "gls/model.hpp"

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace gls {

struct VerificationReport {
    std::string check;
    std::string parameters;
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_discrepancy = 0.0;
    double rel_discrepancy = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

/// Report comparing lhs and rhs by relative discrepancy.
VerificationReport compare(std::string check, std::string parameters, double lhs, double rhs,
                           double tolerance, std::string note = {});

/// Closed-form ||m||_p^p (lhs) against the layer-cake integral of the exact tail (rhs).
VerificationReport stein_roundtrip(const Model& m, double p, double tolerance = 1e-6,
                                   double quad_rel_tol = 1e-10);

/// Closed-form ||m||_p^p (lhs) against S_{d-1} int F(r)^p r^{d-1} dr (rhs).
VerificationReport quadrature_crosscheck(const Model& m, double p, double tolerance = 1e-8);

/// Closed-form sum of p-th powers (lhs) against radial quadrature of the
/// pointwise sum (rhs).
VerificationReport additivity_check(const SumModel& m, double p, double tolerance = 1e-10);

/// One report per t: exact tail (lhs) against the envelope (rhs) with the
/// GLS norm of m in G(psi) as u. The discrepancy is max(0, T/R - 1).
std::vector<VerificationReport> dominance_audit(const Model& m, const GeneratingFunction& g,
                                                std::span<const double> t_grid,
                                                const SearchPolicy& policy = {},
                                                Execution exec = Execution::parallel,
                                                double slack = 1e-12);

struct RatioRow {
    double t = 0.0;
    double exact = 0.0;
    double asymptotic = 0.0;
    double ratio = 0.0;
};

struct RatioStudy {
    std::string model;
    AsymptoticVariant variant = AsymptoticVariant::paper;
    std::vector<RatioRow> rows;
    bool monotone_toward_one = false;  // |ratio - 1| nonincreasing along the given t order
    std::vector<std::string> failures;
};

/// Exact (two-branch) tail over asymptotic tail at each t, in the order given.
/// Outer or inner models only.
RatioStudy asymptotic_ratio_study(const Model& m, AsymptoticVariant variant,
                                  std::span<const double> ts);

/// Numeric nu* for psi = p^{1/m} against e^{my-1}/m where the stationary
/// point lies inside the search range, against a dense grid sup otherwise.
std::vector<VerificationReport> fenchel_closed_form_check(double m, std::span<const double> ys,
                                                          const SearchPolicy& policy = {},
                                                          double tolerance = 1e-6);

/// Suites: all, stein, quadrature, additivity, dominance, fenchel, ratio.
std::vector<VerificationReport> run_suite(const std::string& suite,
                                          std::optional<double> tolerance_override = {},
                                          Execution exec = Execution::parallel);

bool all_pass(std::span<const VerificationReport> reports);

void write_jsonl(std::ostream& os, std::span<const VerificationReport> reports);

/// One line per check name: count, failures, worst relative discrepancy.
void write_summary(std::ostream& os, std::span<const VerificationReport> reports);

}  // namespace gls
