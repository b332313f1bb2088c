// SPDX-License-Identifier: MIT
#include "gls/verify.hpp"

#include <gtest/gtest.h>

#include "json.hpp"

#include <cmath>
#include <sstream>

using namespace gls;

TEST(Verify, CompareUsesRelativeDiscrepancy) {
    const VerificationReport r = compare("x", "", 1.0, 1.0 + 1e-9, 1e-8);
    EXPECT_TRUE(r.pass);
    EXPECT_NEAR(r.rel_discrepancy, 1e-9, 1e-15);
    EXPECT_FALSE(compare("x", "", 1.0, 1.1, 1e-3).pass);
}

TEST(Verify, SteinRoundTrip) {
    for (auto [m, p] : {std::pair{Model{OuterModel{1.0, 0.0, 1}}, 1.5}, {Model{OuterModel{1.0, 1.0, 2}}, 3.0},
                        {Model{InnerModel{1.0, 1.0, 2}}, 1.5}}) {
        const VerificationReport r = stein_roundtrip(m, p);
        EXPECT_TRUE(r.pass) << describe(m) << " rel=" << r.rel_discrepancy;
    }
}

TEST(Verify, QuadratureCrosscheck) {
    const VerificationReport r = quadrature_crosscheck(OuterModel{1.0, 1.0, 2}, 3.0);
    EXPECT_TRUE(r.pass) << r.rel_discrepancy;
    EXPECT_TRUE(quadrature_crosscheck(InnerModel{2.0, 0.5, 3}, 1.2).pass);
}

TEST(Verify, Additivity) {
    const VerificationReport r = additivity_check(SumModel{{1.0, 0.0, 1}, {2.0, 1.0, 1}}, 1.5);
    EXPECT_TRUE(r.pass) << r.rel_discrepancy;
    // 4 + 2 Gamma(5/2) 4^{5/2}, mpmath
    EXPECT_NEAR(r.lhs / 89.077784843464769, 1.0, 1e-13);
}

TEST(Verify, DominanceAudit) {
    const Model m = OuterModel{1.0, 1.0, 2};
    const std::vector<double> ts = {1e-3, 0.1, 1.0, 10.0};
    const auto reports = dominance_audit(m, natural_function(m).scaled(1.5), ts);
    ASSERT_EQ(reports.size(), ts.size());
    for (const auto& r : reports) EXPECT_TRUE(r.pass) << r.parameters;
}

TEST(Verify, FrozenOuterRatios) {
    // exact/asymptotic for f_{1,1}, d = 1; mpmath at 50 digits
    const std::vector<double> ts = {1e-8, 1e-10};
    const RatioStudy s = asymptotic_ratio_study(OuterModel{1.0, 1.0, 1}, AsymptoticVariant::paper, ts);
    EXPECT_NEAR(s.rows[0].ratio, 1.1665249635828205, 1e-9);
    EXPECT_NEAR(s.rows[1].ratio, 1.1419877119483689, 1e-9);
}

TEST(Verify, FrozenInnerRatio) {
    const std::vector<double> ts = {1e10};
    const RatioStudy s = asymptotic_ratio_study(InnerModel{1.0, 1.0, 1}, AsymptoticVariant::paper, ts);
    EXPECT_NEAR(s.rows[0].ratio, 0.86983475547744908, 1e-9);
}

TEST(Verify, OuterRatioMonotone) {
    const std::vector<double> ts = {1e-2, 1e-4, 1e-6, 1e-8, 1e-10};
    const RatioStudy s = asymptotic_ratio_study(OuterModel{1.0, 1.0, 1}, AsymptoticVariant::paper, ts);
    EXPECT_TRUE(s.monotone_toward_one);
    EXPECT_TRUE(s.failures.empty());
}

TEST(Verify, CorrectedOuterAsymptoticIsCloser) {
    const std::vector<double> ts = {1e-2, 1e-4, 1e-6, 1e-8, 1e-10};
    const OuterModel f{2.0, 1.0, 1};
    const RatioStudy paper = asymptotic_ratio_study(f, AsymptoticVariant::paper, ts);
    const RatioStudy corr = asymptotic_ratio_study(f, AsymptoticVariant::corrected, ts);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        EXPECT_NEAR(paper.rows[i].ratio / corr.rows[i].ratio, 4.0, 1e-12);
        EXPECT_LT(std::abs(corr.rows[i].ratio - 1.0), std::abs(paper.rows[i].ratio - 1.0));
    }
    EXPECT_NEAR(corr.rows.back().ratio, 1.37655, 1e-5);
}

TEST(Verify, RatioStudyRejectsSumModels) {
    const std::vector<double> ts = {0.1};
    EXPECT_THROW((void)asymptotic_ratio_study(SumModel{{1.0, 1.0, 1}, {2.0, 1.0, 1}},
                                              AsymptoticVariant::paper, ts),
                 DomainError);
}

TEST(Verify, FenchelClosedForm) {
    const std::vector<double> ys = {-1.0, 0.0, 0.5, 1.0, 2.0, 3.0};
    for (const auto& r : fenchel_closed_form_check(2.0, ys)) EXPECT_TRUE(r.pass) << r.parameters;
}

TEST(Verify, SuiteSelectionAndOverride) {
    const auto stein = run_suite("stein");
    ASSERT_FALSE(stein.empty());
    EXPECT_TRUE(all_pass(stein));
    for (const auto& r : stein) EXPECT_EQ(r.check, "stein_roundtrip");

    const auto strict = run_suite("quadrature", 0.0);
    EXPECT_FALSE(all_pass(strict));
    EXPECT_THROW((void)run_suite("nope"), DomainError);
}

TEST(Verify, JsonlAndSummary) {
    const auto reports = run_suite("additivity");
    std::ostringstream jl;
    write_jsonl(jl, reports);
    std::istringstream in(jl.str());
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        const auto j = nlohmann::json::parse(line);
        EXPECT_EQ(j.at("check"), "additivity");
        EXPECT_TRUE(j.at("pass").get<bool>());
        ++n;
    }
    EXPECT_EQ(n, reports.size());

    std::ostringstream summary;
    write_summary(summary, reports);
    EXPECT_NE(summary.str().find("additivity"), std::string::npos);
}
