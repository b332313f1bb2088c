// SPDX-License-Identifier: MIT
#include "gls/report_io.hpp"

#include <gtest/gtest.h>

#include "json.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace gls;

namespace {

std::string temp_file(const std::string& name, const std::string& body) {
    const auto path = std::filesystem::temp_directory_path() / ("gls_report_io_" + name);
    std::ofstream(path) << body;
    return path.string();
}

}  // namespace

TEST(FormatDouble, RoundTrips) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> unit(-300.0, 300.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = std::pow(10.0, unit(rng)) * (i % 2 ? -1.0 : 1.0);
        const std::string s = format_double(x);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        EXPECT_EQ(back, x);
    }
    EXPECT_EQ(format_double(0.0), "0");
    EXPECT_EQ(format_double(-0.0), "0");
    EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(FormatDouble, RejectsNonFinite) {
    EXPECT_THROW((void)format_double(std::nan("")), RangeError);
    EXPECT_THROW((void)format_double(kInf), RangeError);
}

TEST(Hash, Fnv1aVectors) {
    EXPECT_EQ(hex64(fnv1a("")), "cbf29ce484222325");
    EXPECT_EQ(hex64(fnv1a("a")), "af63dc4c8601ec8c");
    EXPECT_EQ(header_comment("00ff").rfind("# gls-tailbound ", 0), 0u);
}

TEST(Table, CsvAndJson) {
    Table t;
    t.columns = {"t", "flag"};
    t.rows = {{"1.5", "underflow"}, {"2", ""}};
    std::ostringstream csv;
    write_csv(csv, t, "# h");
    EXPECT_EQ(csv.str(), "# h\nt,flag\n1.5,underflow\n2,\n");

    std::ostringstream js;
    write_json(js, t, "abc");
    const auto j = nlohmann::json::parse(js.str());
    EXPECT_EQ(j.at("v"), 1);
    EXPECT_EQ(j.at("config"), "abc");
    EXPECT_EQ(j.at("rows")[0].at("t"), 1.5);
    EXPECT_EQ(j.at("rows")[0].at("flag"), "underflow");
}

TEST(Table, BoundTableColumns) {
    BoundReport r = tail_envelope(GeneratingFunction::power(2), 1.0, std::vector<double>{0.5, 3.0, 1e4});
    const Table plain = bound_table(r);
    EXPECT_EQ(plain.columns, (std::vector<std::string>{"t", "lnR", "R", "argmax_p", "boundary", "flag"}));
    EXPECT_EQ(plain.rows[0][5], "vacuous");
    EXPECT_EQ(plain.rows[1][5], "");
    EXPECT_EQ(plain.rows[2][5], "underflow");

    attach_reference(r, TailCurve::zero());
    const Table ref = bound_table(r);
    ASSERT_EQ(ref.columns.size(), 8u);
    EXPECT_EQ(ref.rows[1][7], "ok");
}

TEST(CsvReaders, PsiAndTail) {
    const auto psi = read_psi_csv(temp_file("psi.csv", "# note\np,psi\n1,1\n3,4\n5,4\n"));
    EXPECT_NEAR(psi(2.0), 2.0, 1e-15);

    const auto tail = read_tail_csv(temp_file("tail.csv", "t,T\n0.5,4\n1,1\n2,0.25\n"));
    EXPECT_NEAR(tail(1.0), 1.0, 1e-15);
    EXPECT_EQ(tail(3.0), 0.0);
}

TEST(CsvReaders, Errors) {
    EXPECT_THROW((void)read_psi_csv(temp_file("bad_header.csv", "x,y\n1,1\n2,2\n")), DomainError);
    EXPECT_THROW((void)read_psi_csv(temp_file("unsorted.csv", "p,psi\n2,1\n1,1\n")), DomainError);
    EXPECT_THROW((void)read_psi_csv(temp_file("junk.csv", "p,psi\n1,abc\n2,1\n")), DomainError);
    EXPECT_THROW((void)read_psi_csv("/nonexistent/psi.csv"), DomainError);
}
