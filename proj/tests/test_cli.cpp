#include "qbch/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qbch;
using namespace qbch::cli;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    const auto p = std::filesystem::temp_directory_path() / ("qbch_test_" + name);
    std::ofstream(p) << content;
    return p;
}

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

template <class Args, class Fn>
Outcome run(Fn fn, const Args& args) {
    std::ostringstream out, err;
    const int code = fn(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST(Rendering, FourDecimalsHalfEven) {
    EXPECT_EQ(to_fixed(make_rational(2, 3)), "0.6667");
    EXPECT_EQ(to_fixed(make_rational(1, 20000)), "0.0000");  // 0.5 ulp rounds to even
    EXPECT_EQ(to_fixed(make_rational(3, 20000)), "0.0002");
    EXPECT_EQ(to_fixed(make_rational(25, 20000)), "0.0012");
    EXPECT_EQ(to_fixed(make_rational(-1, 3)), "-0.3333");
    EXPECT_EQ(to_fixed(Rational(0)), "0.0000");
}

TEST(Rendering, ScientificBelowOneThousandth) {
    EXPECT_EQ(render_decimal(make_rational(1, 1000)), "0.0010");
    EXPECT_EQ(render_decimal(make_rational(1, 1500)), "6.7e-04");
    EXPECT_EQ(render_decimal(make_rational(1, 800000)), "1.2e-06");
    EXPECT_EQ(render_decimal(make_rational(999, 1000000)), "1.0e-03");
    EXPECT_EQ(render_decimal(Rational(0)), "0.0000");
}

TEST(Table, DegreeThreeCsv) {
    TableArgs a;
    a.max_degree = 3;
    a.format = OutputFormat::csv;
    const Outcome r = run(cmd_table, a);
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out,
              "degree,a_exact,a_dec,b_exact,b_dec,catalan_bound\n"
              "1,2,2.0000,2,2.0000,1.0000\n"
              "2,1,1.0000,1/2,0.5000,2.0000\n"
              "3,2/3,0.6667,1/6,0.1667,5.3333\n");
    EXPECT_EQ(r.err.find("discrepancy"), std::string::npos);
}

TEST(Table, DegreeOneIsSingleRow) {
    TableArgs a;
    a.max_degree = 1;
    a.format = OutputFormat::csv;
    const Outcome r = run(cmd_table, a);
    EXPECT_EQ(r.out, "degree,a_exact,a_dec,b_exact,b_dec,catalan_bound\n1,2,2.0000,2,2.0000,1.0000\n");
}

TEST(Table, CapExceeded) {
    TableArgs a;
    a.max_degree = 21;
    const Outcome r = run(cmd_table, a);
    EXPECT_NE(r.code, 0);
    EXPECT_NE(r.err.find("BCH_MAX_DEGREE_CAP"), std::string::npos);
}

TEST(Table, JsonFlagsReferenceDiscrepancies) {
    TableArgs a;
    a.max_degree = 6;
    a.format = OutputFormat::json;
    const Outcome r = run(cmd_table, a);
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j["rows"].size(), 6u);
    EXPECT_EQ(j["rows"][3]["a_exact"], "1/4");
    EXPECT_EQ(j["rows"][3]["b_exact"], "1/24");
    EXPECT_TRUE(j["rows"][5]["reexpansion_checked"].get<bool>());
    bool a4 = false;
    for (const auto& d : j["discrepancies"])
        if (d["degree"] == 4 && d["column"] == "A") {
            a4 = true;
            EXPECT_EQ(d["reference"], "0.4167");
        }
    EXPECT_TRUE(a4);
    EXPECT_TRUE(j.contains("runtime_seconds"));
}

TEST(Table, LieLimitLeavesBColumnEmpty) {
    TableArgs a;
    a.max_degree = 4;
    a.lie_max_degree = 2;
    a.format = OutputFormat::csv;
    const Outcome r = run(cmd_table, a);
    EXPECT_NE(r.out.find("\n3,2/3,0.6667,,,5.3333\n"), std::string::npos);
}

TEST(Table, PlotData) {
    const auto path = std::filesystem::temp_directory_path() / "qbch_test_plot.csv";
    TableArgs a;
    a.max_degree = 5;
    a.plot_data = path.string();
    ASSERT_EQ(run(cmd_table, a).code, 0);
    std::ifstream in(path);
    std::string header, first;
    std::getline(in, header);
    std::getline(in, first);
    EXPECT_EQ(header, "degree,a_n,b_n,catalan_bound,log10_a_n,log10_b_n,log10_catalan_bound");
    EXPECT_EQ(first.substr(0, 8), "1,2,2,1,");
}

TEST(Bounds, BanachConstants) {
    BoundsArgs a;
    a.c_tri = 1.0;
    a.c_mult = 1.0;
    a.format = OutputFormat::json;
    const Outcome r = run(cmd_bounds, a);
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["r_bch"].get<double>(), 0.125, 1e-12);
    EXPECT_NEAR(j["rho_inv"].get<double>(), 1.0 / 144, 1e-12);
    EXPECT_NEAR(j["c_bracket"].get<double>(), 2.0, 1e-12);
}

TEST(Bounds, HumanOutputShowsFormulas) {
    BoundsArgs a;
    a.c_tri = 1.0;
    a.c_bracket = 1.0;
    const Outcome r = run(cmd_bounds, a);
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("r_bch                     0.25"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("1 / (4 C_b)"), std::string::npos);
}

TEST(Bounds, SchattenNoteOnExampleValue) {
    BoundsArgs a;
    a.schatten_p = 0.5;
    a.c_ideal = 1.0;
    const Outcome r = run(cmd_bounds, a);
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("C_tri                     2 "), std::string::npos);
    EXPECT_NE(r.out.find("r_bch                     0.0625"), std::string::npos);
    EXPECT_NE(r.out.find("1/32"), std::string::npos);
}

TEST(Bounds, InvalidConstants) {
    BoundsArgs a;
    a.c_tri = 0.5;
    a.c_mult = 1.0;
    EXPECT_NE(run(cmd_bounds, a).code, 0);
    BoundsArgs b;
    EXPECT_NE(run(cmd_bounds, b).code, 0);
    BoundsArgs c;
    c.schatten_p = 0.5;
    EXPECT_NE(run(cmd_bounds, c).code, 0);
}

TEST(Fit, TableCsvRoundTripsToBuiltin) {
    TableArgs t;
    t.max_degree = 12;
    t.format = OutputFormat::csv;
    const Outcome table = run(cmd_table, t);
    const auto path = temp_file("table.csv", table.out);
    FitArgs from_file;
    from_file.input = path.string();
    from_file.n_min = 5;
    from_file.n_max = 12;
    from_file.format = OutputFormat::json;
    FitArgs builtin = from_file;
    builtin.input.reset();
    builtin.builtin = "a";
    auto a = nlohmann::json::parse(run(cmd_fit, from_file).out);
    auto b = nlohmann::json::parse(run(cmd_fit, builtin).out);
    a.erase("source");
    b.erase("source");
    EXPECT_EQ(a, b);
    from_file.column = "b";
    builtin.builtin = "b";
    a = nlohmann::json::parse(run(cmd_fit, from_file).out);
    b = nlohmann::json::parse(run(cmd_fit, builtin).out);
    a.erase("source");
    b.erase("source");
    EXPECT_EQ(a, b);
    EXPECT_DOUBLE_EQ(a["reference_rate"].get<double>(), 0.29);
}

TEST(Fit, SyntheticFile) {
    std::ostringstream csv;
    csv << "degree,value\n";
    csv.precision(17);
    for (int n = 1; n <= 20; ++n) csv << n << ',' << 2.0 * std::pow(n, -1.5) * std::pow(0.3, n) << '\n';
    FitArgs f;
    f.input = temp_file("synthetic.csv", csv.str()).string();
    f.format = OutputFormat::json;
    const Outcome r = run(cmd_fit, f);
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["rate"].get<double>(), 0.3, 1e-9);
    EXPECT_NEAR(j["r_squared"].get<double>(), 1.0, 1e-12);
    EXPECT_NEAR(j["effective_radius"].get<double>(), 1 / 0.3, 1e-8);
    EXPECT_EQ(j["seed"], kDefaultFitSeed);
}

TEST(Fit, BadData) {
    FitArgs f;
    f.input = temp_file("bad.csv", "degree,value\n1,0.5\n2,abc\n").string();
    EXPECT_NE(run(cmd_fit, f).code, 0);
    f.input = temp_file("noheader.csv", "x,y\n1,2\n").string();
    EXPECT_NE(run(cmd_fit, f).code, 0);
    FitArgs both;
    both.input = "x.csv";
    both.builtin = "a";
    EXPECT_NE(run(cmd_fit, both).code, 0);
    FitArgs none;
    EXPECT_NE(run(cmd_fit, none).code, 0);
}

TEST(Fit, HumanReportNamesReferenceBand) {
    FitArgs f;
    f.builtin = "a";
    f.n_max = 12;
    const Outcome r = run(cmd_fit, f);
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("reference rate    0.36 +/- 0.02"), std::string::npos);
    EXPECT_NE(r.out.find("95% CI"), std::string::npos);
    EXPECT_NE(r.out.find("1/(4 C_b) = 0.2500"), std::string::npos);
}

TEST(Inverse, ZeroMatrix) {
    InverseArgs a;
    a.matrix = temp_file("zero.json", R"({"dim": 3, "entries": [0,0,0,0,0,0,0,0,0]})").string();
    a.format = OutputFormat::json;
    const Outcome r = run(cmd_inverse, a);
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["iterations"], 0);
    EXPECT_EQ(j["w"]["entries"], nlohmann::json::array({0, 0, 0, 0, 0, 0, 0, 0, 0}));
}

TEST(Inverse, NilpotentTrace) {
    InverseArgs a;
    a.matrix = temp_file("nil.json", R"({"dim": 2, "entries": [[0, 0.004], [0, 0]]})").string();
    const Outcome r = run(cmd_inverse, a);
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("predicted ratio u/(1-u)"), std::string::npos);
    EXPECT_NE(r.out.find("||w + x|| = 0.000e+00"), std::string::npos);
}

TEST(Inverse, Errors) {
    InverseArgs missing;
    missing.matrix = "/nonexistent/qbch.json";
    EXPECT_EQ(run(cmd_inverse, missing).code, 2);
    InverseArgs large;
    large.matrix = temp_file("large.json", R"({"dim": 2, "entries": [0, 1, 0, 0]})").string();
    const Outcome r = run(cmd_inverse, large);
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("rho = 1/(8 C_b)"), std::string::npos);
    InverseArgs malformed;
    malformed.matrix = temp_file("malformed.json", R"({"dim": 2, "entries": [0, 1, 0]})").string();
    EXPECT_EQ(run(cmd_inverse, malformed).code, 2);
}

TEST(Verify, DefaultRunPasses) {
    VerifyArgs v;
    v.samples = 200;
    v.format = OutputFormat::json;
    const Outcome r = run(cmd_verify, v);
    EXPECT_EQ(r.code, 0) << r.out;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["seed"], kDefaultSeed);
    for (const auto& c : j["checks"])
        if (!c["informational"].get<bool>()) {
            EXPECT_TRUE(c["passed"].get<bool>()) << c["name"];
        }
}

TEST(DegreeCap, Environment) {
    ::unsetenv(kDegreeCapEnv);
    EXPECT_EQ(degree_cap_from_env().cap, 20);
    ::setenv(kDegreeCapEnv, "8", 1);
    EXPECT_EQ(degree_cap_from_env().cap, 8);
    EXPECT_FALSE(degree_cap_from_env().warning.has_value());
    ::setenv(kDegreeCapEnv, "24", 1);
    const auto c = degree_cap_from_env();
    EXPECT_EQ(c.cap, 24);
    ASSERT_TRUE(c.warning.has_value());
    EXPECT_NE(c.warning->find("MiB"), std::string::npos);
    ::setenv(kDegreeCapEnv, "abc", 1);
    EXPECT_THROW(degree_cap_from_env(), std::invalid_argument);
    ::unsetenv(kDegreeCapEnv);
}

TEST(ReadFitCsv, AcceptsBothLayouts) {
    std::istringstream table("degree,a_exact,a_dec,b_exact,b_dec,catalan_bound\n1,2,2.0000,2,2.0000,1.0000\n"
                             "2,1,1.0000,1/2,0.5000,2.0000\n");
    const auto a = read_fit_csv(table, "b");
    ASSERT_EQ(a.size(), 2u);
    EXPECT_EQ(a[1], std::make_pair(2, 0.5));
    std::istringstream plain("degree,value\n3,0.25\n4,1/8\n");
    const auto b = read_fit_csv(plain, "a");
    EXPECT_EQ(b[1], std::make_pair(4, 0.125));
}
