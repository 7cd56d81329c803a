// Acceptance run: one PASS/FAIL line per criterion, each followed by indented
// detail lines. `acceptance --criterion N` runs a single criterion; with no
// arguments all twelve run in order. Exit status is 0 iff every selected
// criterion passed.

#include "qbch/analysis.hpp"
#include "qbch/bch.hpp"
#include "qbch/bch_eval.hpp"
#include "qbch/cli.hpp"
#include "qbch/reference_table.hpp"
#include "qbch/sampler.hpp"
#include "qbch/verify.hpp"

#include <CLI11.hpp>

#include <sys/resource.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

using namespace qbch;

namespace {

struct Outcome {
    bool passed = true;
    std::vector<std::string> details;

    void require(bool ok, const std::string& what) {
        passed = passed && ok;
        details.push_back(std::string(ok ? "ok    " : "FAILED") + "  " + what);
    }
    void note(const std::string& what) { details.push_back("info    " + what); }
    void add(const CheckResult& c) {
        if (c.informational) note(c.name + ": " + c.detail);
        else require(c.passed, c.name + ": " + c.detail);
    }
};

double peak_rss_mib() {
    rusage u{};
    getrusage(RUSAGE_SELF, &u);
    return static_cast<double>(u.ru_maxrss) / 1024.0;
}

void time_limit(Outcome& o, double seconds, double limit) {
    o.require(seconds < limit, "runtime " + format_double(seconds, "%.2f") + " s < " + format_double(limit, "%g") + " s");
}

const BchData& data12() {
    static const BchData d = compute_bch_data(12);
    return d;
}

// ------------------------------------------------------------- criteria

Outcome low_degree() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    TableOptions opts;
    opts.lie_max_degree = 3;
    opts.certify_max_degree = 3;
    const BchData d = compute_bch_data(3, opts);
    const FreeSeries x = FreeSeries::letter(Letter::X, 3);
    const FreeSeries y = FreeSeries::letter(Letter::Y, 3);
    const FreeSeries xy = commutator(x, y);
    const FreeSeries z3 =
        series_scale(commutator(x, xy), make_rational(1, 12)) - series_scale(commutator(y, xy), make_rational(1, 12));
    o.require(d.components[0] == x + y, "Z_1 = X + Y");
    o.require(d.components[1] == FreeSeries::parse("1/2 XY - 1/2 YX", 3), "Z_2 = 1/2 XY - 1/2 YX");
    o.require(d.components[2] == z3 && expand_lie(d.lie[2], 3) == z3,
              "Z_3 re-expands to (1/12)[X,[X,Y]] - (1/12)[Y,[X,Y]]");
    const char* a[] = {"2", "1", "2/3"};
    const char* b[] = {"2", "1/2", "1/6"};
    for (int n = 1; n <= 3; ++n) {
        const auto& r = d.rows[static_cast<std::size_t>(n - 1)];
        o.require(r.a_n == parse_rational(a[n - 1]) && r.b_n && *r.b_n == parse_rational(b[n - 1]),
                  "A_" + std::to_string(n) + " = " + to_string(r.a_n) + ", B_" + std::to_string(n) + " = " +
                      (r.b_n ? to_string(*r.b_n) : std::string("-")));
    }
    time_limit(o, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 1.0);
    return o;
}

Outcome table_reproduction() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    TableOptions opts;
    opts.lie_max_degree = 12;
    opts.certify_max_degree = 12;
    const BchData d = compute_bch_data(20, opts);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    int a_match = 0;
    std::string a_mismatch;
    for (const auto& r : d.rows) {
        const auto& ref = kReferenceRows[static_cast<std::size_t>(r.degree - 1)];
        const std::string got = to_fixed(r.a_n, 4);
        if (got == ref.a_dec) ++a_match;
        else a_mismatch += " n=" + std::to_string(r.degree) + ":" + got + "/" + std::string(ref.a_dec);
    }
    o.require(a_match == 20, "A_n (n = 1..20) rendered to 4 decimals matches the reference column on " +
                                 std::to_string(a_match) + "/20 rows");
    if (!a_mismatch.empty()) o.note("computed/reference A:" + a_mismatch);

    bool certified = true;
    for (const auto& r : d.rows)
        if (r.degree <= 12) certified = certified && r.b_n && r.primitivity_checked && r.reexpansion_checked;
    o.require(certified, "B_n (n = 1..12) certified by zero coproduct defect and exact re-expansion");

    std::string b_disc;
    int b_count = 0;
    for (const auto& r : d.rows) {
        if (!r.b_n) continue;
        const std::string got = render_decimal(*r.b_n);
        const auto& ref = kReferenceRows[static_cast<std::size_t>(r.degree - 1)];
        if (got != ref.b_dec) {
            ++b_count;
            b_disc += " n=" + std::to_string(r.degree) + ":" + got + "/" + std::string(ref.b_dec);
        }
    }
    o.note("B_n discrepancies against the printed column (reported, not asserted): " + std::to_string(b_count) +
           (b_disc.empty() ? "" : " ->" + b_disc));
    o.require(seconds < 300.0, "runtime " + format_double(seconds, "%.1f") + " s < 300 s");
    const double mib = peak_rss_mib();
    o.require(mib < 4096.0, "peak RSS " + format_double(mib, "%.0f") + " MiB < 4096 MiB");
    return o;
}

Outcome catalan_suite() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<long> known{1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796};
    bool values = true;
    for (std::size_t i = 0; i < known.size(); ++i) values = values && catalan(static_cast<long>(i)) == known[i];
    o.require(values, "C_0 .. C_10 exact");
    o.add(check_catalan_convolution(64));
    o.add(check_catalan_bound_column());
    o.require(to_fixed(catalan_bound(10), 4) == "26214.4000", "row 10 bound = " + to_fixed(catalan_bound(10), 4));
    time_limit(o, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 1.0);
    return o;
}

Outcome majorant() {
    Outcome o;
    o.add(check_dynkin_bound(data12(), 12));
    for (const auto& lie : data12().lie) {
        if (lie.degree < 2) continue;
        const auto r = dynkin_bound_check(lie);
        o.note("n = " + std::to_string(lie.degree) + ": " + to_string(r.lhs) + " <= " + r.rhs.get_str());
    }
    return o;
}

Outcome constants() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    o.add(check_banach_constants());
    time_limit(o, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 1.0);
    return o;
}

NumericCheckOptions numeric_options() { return NumericCheckOptions{}; }

Outcome group_law() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto opts = numeric_options();
    o.add(check_group_law(opts, BchEvaluator::up_to(opts.truncation)));
    time_limit(o, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 30.0);
    return o;
}

Outcome associativity() {
    Outcome o;
    const auto opts = numeric_options();
    o.add(check_associativity(opts, BchEvaluator::up_to(10)));
    return o;
}

Outcome inverse_solver() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto opts = numeric_options();
    o.add(check_inverse_solver(opts, BchEvaluator::up_to(opts.truncation)));
    time_limit(o, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 30.0);
    return o;
}

Outcome samplers() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    auto opts = numeric_options();
    opts.sampler_samples = 1000;
    for (const auto& c : check_samplers(opts, false)) o.add(c);

    // The same bound under the entrywise quasi-norm, reported only.
    for (double p : {0.5, 0.8}) {
        SamplerConfig cfg;
        cfg.inequality = "a";
        cfg.samples = 1000;
        cfg.seed = opts.seed;
        cfg.spec = QuasiNormSpec::entrywise(p);
        const auto rep = inequality_sampler(cfg);
        o.note("sampler (a) under entrywise p = " + format_double(p, "%.1f") + ": max ratio " +
               format_double(rep.max_ratio, "%.4f") + " (the component bound uses the plain triangle inequality)");
    }
    time_limit(o, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 120.0);
    return o;
}

Outcome subadditivity() {
    Outcome o;
    o.add(check_subadditivity(numeric_options()));
    return o;
}

Outcome fit_recovery() {
    Outcome o;
    std::vector<std::pair<int, double>> synthetic;
    for (int n = 1; n <= 20; ++n) synthetic.emplace_back(n, 2.0 * std::pow(n, -1.5) * std::pow(0.3, n));
    const FitResult s = fit_geometric(synthetic, 5, 20);
    o.require(std::abs(s.rate - 0.3) <= 1e-9 && std::abs(s.r_squared - 1.0) <= 1e-12,
              "noiseless rate 0.3 recovered as " + format_double(s.rate, "%.12f") + ", r^2 = " +
                  format_double(s.r_squared, "%.15f"));

    TableOptions opts;
    opts.lie_max_degree = 0;
    const BchData d = compute_bch_data(20, opts);
    std::vector<std::pair<int, double>> a;
    for (const auto& r : d.rows) a.emplace_back(r.degree, r.a_n.get_d());
    const FitResult f = fit_geometric(a, 5, 20, 1000);
    const bool ci_ok = std::isfinite(f.rate_ci.first) && std::isfinite(f.rate_ci.second) &&
                       f.rate_ci.first <= f.rate && f.rate <= f.rate_ci.second;
    o.require(f.points == 16 && std::isfinite(f.rate) && ci_ok,
              "A_n fit (n = 5..20) rate " + format_double(f.rate, "%.4f") + ", 95% CI [" +
                  format_double(f.rate_ci.first, "%.4f") + ", " + format_double(f.rate_ci.second, "%.4f") +
                  "], r^2 = " + format_double(f.r_squared, "%.4f") + ", seed " + std::to_string(f.seed));
    const bool inside = std::abs(f.rate - kReferenceRateA) <= kReferenceRateAHalfWidth;
    o.note("reference rate " + format_double(kReferenceRateA, "%.2f") + " +/- " +
           format_double(kReferenceRateAHalfWidth, "%.2f") + ": fitted rate is " + (inside ? "inside" : "outside") +
           " that band; effective radius 1/rate = " + format_double(effective_radius(f.rate), "%.4f") +
           " vs the proven 1/(4 C_b) = 0.25 for C_b = 1");
    return o;
}

Outcome excluded() {
    Outcome o;
    std::vector<std::pair<int, double>> b;
    for (const auto& r : data12().rows) b.emplace_back(r.degree, r.b_n->get_d());
    const FitResult f = fit_geometric(b, 5, 12, 1000);
    o.note("B_n fit (n = 5..12, certified values) rate " + format_double(f.rate, "%.4f") + " vs reference " +
           format_double(kReferenceRateB, "%.2f") + " +/- " + format_double(kReferenceRateBHalfWidth, "%.2f") +
           "; not asserted");
    o.note("d_p-completeness in infinite dimensions: not testable on finite matrices; covered by the sampler and "
           "subadditivity suites");
    o.note("sharpness of the 1/4 constant: not testable numerically; the effective radius is reported in criterion 11");
    return o;
}

struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all{
        {1, "exact low-degree BCH", low_degree},
        {2, "table reproduction through degree 20", table_reproduction},
        {3, "Catalan suite", catalan_suite},
        {4, "majorant inequality lie_sum(n) <= C_{n-1}", majorant},
        {5, "Banach constants", constants},
        {6, "group law at desk scale", group_law},
        {7, "associativity residual decay", associativity},
        {8, "inverse solver", inverse_solver},
        {9, "inequality samplers (a)-(f)", samplers},
        {10, "p-subadditivity of the entrywise p-norm", subadditivity},
        {11, "fit recovery", fit_recovery},
        {12, "excluded from pass/fail (informational)", excluded},
    };
    return all;
}

bool run_one(const Criterion& c) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = c.run();
    } catch (const std::exception& ex) {
        o.require(false, std::string("exception: ") + ex.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %02d %s  %s  [%.2f s, peak RSS %.0f MiB]\n", c.id, o.passed ? "PASS" : "FAIL", c.title,
                seconds, peak_rss_mib());
    for (const auto& d : o.details) std::printf("    %s\n", d.c_str());
    std::fflush(stdout);
    return o.passed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    int only = 0;
    app.add_option("--criterion", only, "Run a single criterion (1-12)")->check(CLI::Range(1, 12));
    CLI11_PARSE(app, argc, argv);

    bool all_passed = true;
    for (const auto& c : criteria())
        if (only == 0 || c.id == only) all_passed = run_one(c) && all_passed;
    return all_passed ? 0 : 1;
}
