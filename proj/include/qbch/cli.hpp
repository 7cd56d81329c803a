// Command implementations behind the `qbch` executable. Each command writes
// its report to `out`, diagnostics to `err`, and returns the exit code.

#ifndef QBCH_CLI_HPP
#define QBCH_CLI_HPP

#include "qbch/analysis.hpp"
#include "qbch/bch.hpp"
#include "qbch/bch_eval.hpp"
#include "qbch/bounds.hpp"
#include "qbch/errors.hpp"
#include "qbch/matrix_io.hpp"
#include "qbch/rational.hpp"
#include "qbch/reference_table.hpp"
#include "qbch/verify.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace qbch::cli {

enum class OutputFormat { csv, json, human };

inline OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    if (s == "human") return OutputFormat::human;
    throw std::invalid_argument("unknown format '" + s + "' (expected csv, json or human)");
}

/// Settings shared by the commands. Defaults are part of the interface.
struct RunConfig {
    int max_degree = 12;
    std::uint64_t seed = kDefaultSeed;
    double tol_exact = 1e-12;
    double tol_numeric = 1e-10;
    OutputFormat format = OutputFormat::human;
};

inline constexpr int kDefaultDegreeCap = 20;
inline constexpr const char* kDegreeCapEnv = "BCH_MAX_DEGREE_CAP";

struct DegreeCap {
    int cap = kDefaultDegreeCap;
    std::optional<std::string> warning;
};

/// Rough peak size of the truncated series: about 2^{D+1} words with a
/// rational coefficient each.
inline double estimated_series_mib(int degree) { return std::ldexp(1.0, degree + 1) * 96.0 / (1024.0 * 1024.0); }

inline DegreeCap degree_cap_from_env() {
    DegreeCap c;
    const char* v = std::getenv(kDegreeCapEnv);
    if (!v || !*v) return c;
    char* end = nullptr;
    const long parsed = std::strtol(v, &end, 10);
    if (*end != '\0' || parsed < 1 || parsed > Word::kMaxLength - 1)
        throw std::invalid_argument(std::string(kDegreeCapEnv) + " must be an integer in [1, 62], got '" + v + "'");
    c.cap = static_cast<int>(parsed);
    if (c.cap > kDefaultDegreeCap) {
        std::ostringstream os;
        os << "warning: degree cap raised to " << c.cap << "; the series alone needs about " << std::fixed
           << std::setprecision(0) << estimated_series_mib(c.cap) << " MiB at that degree";
        c.warning = os.str();
    }
    return c;
}

// ------------------------------------------------------------------- table

struct TableArgs {
    int max_degree = 12;
    OutputFormat format = OutputFormat::human;
    std::optional<int> lie_max_degree;  // defaults to max_degree
    int certify_max_degree = 12;
    std::optional<std::string> plot_data;
    int degree_cap = kDefaultDegreeCap;
};

struct Discrepancy {
    int degree;
    std::string column;
    std::string computed;
    std::string reference;
};

inline std::vector<Discrepancy> reference_discrepancies(const std::vector<CoefficientRow>& rows) {
    std::vector<Discrepancy> out;
    for (const auto& row : rows) {
        if (row.degree < 1 || row.degree > static_cast<int>(kReferenceRows.size())) continue;
        const auto& ref = kReferenceRows[static_cast<std::size_t>(row.degree - 1)];
        const std::string a = to_fixed(row.a_n, 4);
        if (a != ref.a_dec) out.push_back({row.degree, "A", a + " (" + to_string(row.a_n) + ")", std::string(ref.a_dec)});
        if (row.b_n) {
            const std::string b = render_decimal(*row.b_n);
            if (b != ref.b_dec)
                out.push_back({row.degree, "B", b + " (" + to_string(*row.b_n) + ")", std::string(ref.b_dec)});
        }
        const std::string cat = to_fixed(row.catalan_bound, 4);
        if (cat != ref.catalan) out.push_back({row.degree, "catalan_bound", cat, std::string(ref.catalan)});
    }
    return out;
}

inline const char* kTableHeader = "degree,a_exact,a_dec,b_exact,b_dec,catalan_bound";

inline void write_table_csv(const std::vector<CoefficientRow>& rows, std::ostream& out) {
    out << kTableHeader << '\n';
    for (const auto& r : rows) {
        out << r.degree << ',' << to_string(r.a_n) << ',' << render_decimal(r.a_n) << ',';
        if (r.b_n) out << to_string(*r.b_n) << ',' << render_decimal(*r.b_n);
        else out << ',';
        out << ',' << to_fixed(r.catalan_bound, 4) << '\n';
    }
}

/// Log-plot data: the same columns as floating values plus base-10 logarithms.
inline void write_plot_data(const std::vector<CoefficientRow>& rows, std::ostream& out) {
    out << "degree,a_n,b_n,catalan_bound,log10_a_n,log10_b_n,log10_catalan_bound\n";
    out << std::setprecision(10);
    for (const auto& r : rows) {
        const double a = r.a_n.get_d();
        const double c = r.catalan_bound.get_d();
        out << r.degree << ',' << a << ',';
        if (r.b_n) out << r.b_n->get_d();
        out << ',' << c << ',' << std::log10(a) << ',';
        if (r.b_n) out << std::log10(r.b_n->get_d());
        out << ',' << std::log10(c) << '\n';
    }
}

inline int cmd_table(const TableArgs& args, std::ostream& out, std::ostream& err) {
    if (args.max_degree < 1 || args.max_degree > args.degree_cap) {
        err << "error: --max-degree " << args.max_degree << " outside [1, " << args.degree_cap << "]; raise "
            << kDegreeCapEnv << " to go further\n";
        return 2;
    }
    const auto start = std::chrono::steady_clock::now();
    TableOptions opts;
    opts.degree_cap = args.degree_cap;
    opts.lie_max_degree = args.lie_max_degree.value_or(args.max_degree);
    opts.certify_max_degree = args.certify_max_degree;
    BchData data;
    try {
        data = compute_bch_data(args.max_degree, opts);
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return 1;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto disc = reference_discrepancies(data.rows);

    if (args.plot_data) {
        std::ofstream pf(*args.plot_data);
        if (!pf) {
            err << "error: cannot write plot data to '" << *args.plot_data << "'\n";
            return 1;
        }
        write_plot_data(data.rows, pf);
    }

    switch (args.format) {
        case OutputFormat::csv:
            write_table_csv(data.rows, out);
            for (const auto& d : disc)
                err << "discrepancy: degree " << d.degree << " " << d.column << " computed " << d.computed
                    << " reference " << d.reference << '\n';
            err << "runtime: " << std::fixed << std::setprecision(3) << seconds << " s\n";
            break;
        case OutputFormat::json: {
            nlohmann::json j;
            j["max_degree"] = args.max_degree;
            j["runtime_seconds"] = seconds;
            j["lie_max_degree"] = opts.lie_max_degree;
            j["certify_max_degree"] = opts.certify_max_degree;
            for (const auto& r : data.rows) {
                nlohmann::json row{{"degree", r.degree},
                                   {"a_exact", to_string(r.a_n)},
                                   {"a_dec", render_decimal(r.a_n)},
                                   {"catalan_bound", to_fixed(r.catalan_bound, 4)},
                                   {"primitivity_checked", r.primitivity_checked},
                                   {"reexpansion_checked", r.reexpansion_checked}};
                row["b_exact"] = r.b_n ? nlohmann::json(to_string(*r.b_n)) : nlohmann::json();
                row["b_dec"] = r.b_n ? nlohmann::json(render_decimal(*r.b_n)) : nlohmann::json();
                j["rows"].push_back(row);
            }
            j["discrepancies"] = nlohmann::json::array();
            for (const auto& d : disc)
                j["discrepancies"].push_back(
                    {{"degree", d.degree}, {"column", d.column}, {"computed", d.computed}, {"reference", d.reference}});
            out << j.dump(2) << '\n';
            break;
        }
        case OutputFormat::human: {
            out << std::left << std::setw(4) << "n" << std::setw(34) << "A_n exact" << std::setw(10) << "A_n"
                << std::setw(34) << "B_n exact" << std::setw(10) << "B_n" << "4^{n-1}/n\n";
            for (const auto& r : data.rows) {
                out << std::setw(4) << r.degree << std::setw(34) << to_string(r.a_n) << std::setw(10)
                    << render_decimal(r.a_n) << std::setw(34) << (r.b_n ? to_string(*r.b_n) : "-") << std::setw(10)
                    << (r.b_n ? render_decimal(*r.b_n) : "-") << to_fixed(r.catalan_bound, 4) << '\n';
            }
            out << "\ncertified (coproduct defect 0 and exact re-expansion) through degree "
                << std::min(opts.certify_max_degree, std::min(opts.lie_max_degree, args.max_degree)) << '\n';
            if (!disc.empty()) {
                out << "\nreference discrepancies (" << disc.size() << "):\n";
                for (const auto& d : disc)
                    out << "  n = " << std::setw(3) << d.degree << std::setw(14) << d.column << " computed "
                        << std::setw(34) << d.computed << " reference " << d.reference << '\n';
            }
            out << "\nruntime " << std::fixed << std::setprecision(3) << seconds << " s\n";
            break;
        }
    }
    return 0;
}

// ------------------------------------------------------------------ bounds

struct BoundsArgs {
    std::optional<double> c_tri;
    std::optional<double> c_mult;
    std::optional<double> c_bracket;
    std::optional<double> schatten_p;
    std::optional<double> c_ideal;
    OutputFormat format = OutputFormat::human;
};

inline int cmd_bounds(const BoundsArgs& args, std::ostream& out, std::ostream& err) {
    ConstantSet c;
    std::optional<std::string> note;
    try {
        if (args.schatten_p) {
            if (!args.c_ideal) throw std::invalid_argument("--schatten-p needs --c-ideal");
            c = schatten_constants(*args.schatten_p, *args.c_ideal);
            const double p = *args.schatten_p;
            std::ostringstream os;
            os << "note: the chain C_b = 2 C_tri C_ideal, r = 1/(4 C_b) gives r_bch = " << radii(c).r_bch;
            if (std::abs(p - 0.5) < 1e-12 && std::abs(*args.c_ideal - 1.0) < 1e-12)
                os << "; the weighted-shift example quotes 2^{-3}/4 = 1/32 for p = 1/2, half of the chain's 1/16";
            else
                os << "; the weighted-shift example's 1/4 * 2^{-1/p} form gives " << 0.25 * std::exp2(-1.0 / p);
            note = os.str();
        } else {
            if (!args.c_tri) throw std::invalid_argument("--c-tri is required (or --schatten-p with --c-ideal)");
            c = derive_constants(*args.c_tri, args.c_mult, args.c_bracket);
        }
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return 2;
    }
    const auto r = radii(c);
    const double tail_r = r.r_bch / 2;
    const double tail = pnorm_tail_bound(c, tail_r, 1);
    const auto spec = spectral_bound(c, 1.0);

    if (args.format == OutputFormat::json) {
        nlohmann::json j{{"c_tri", c.c_tri},
                         {"c_bracket", c.c_bracket},
                         {"p", c.p},
                         {"c1", c.c1},
                         {"c2", c.c2},
                         {"c_total", c.c_total},
                         {"r_bch", r.r_bch},
                         {"r_conservative", r.r_conservative},
                         {"rho", r.rho},
                         {"rho0", r.rho0},
                         {"rho_inv", r.rho_inv},
                         {"lipschitz_L0", r.lipschitz_L0},
                         {"neumann_radius", neumann_radius(c)},
                         {"spectral_bound_unit_norm", spec.bracket_bound},
                         {"pnorm_tail_half_radius", tail}};
        j["c_mult"] = c.c_mult ? nlohmann::json(*c.c_mult) : nlohmann::json();
        j["r_assoc"] = r.r_assoc ? nlohmann::json(*r.r_assoc) : nlohmann::json();
        if (note) j["note"] = *note;
        out << j.dump(2) << '\n';
        return 0;
    }
    auto line = [&](const std::string& name, double v, const std::string& formula) {
        out << std::left << std::setw(26) << name << std::setw(22) << format_double(v, "%.12g") << formula << '\n';
    };
    line("C_tri", c.c_tri, "quasi-triangle constant");
    if (c.c_mult) line("C_m", *c.c_mult, "submultiplicativity constant");
    line("C_b", c.c_bracket, c.c_mult && !args.c_bracket ? "2 C_tri C_m" : "bracket constant");
    line("p", c.p, "1 / log2(2 C_tri)");
    line("c1", c.c1, "1");
    line("c2", c.c2, "2^{1/p} = 2 C_tri");
    line("C_total", c.c_total, "C_tri C_b");
    line("r_bch", r.r_bch, "1 / (4 C_b)");
    line("r_conservative", r.r_conservative, "1 / (4 C_tri C_b)");
    if (r.r_assoc) line("r_assoc", *r.r_assoc, "1 / (8 C_tri^2 C_m)");
    line("rho", r.rho, "1 / (8 C_b)");
    line("rho0", r.rho0, "1 / (16 C_b)");
    line("rho_inv", r.rho_inv, "1 / (8 C_b (1 + 2 C_tri)^2)");
    line("L0", r.lipschitz_L0, "Lipschitz constant of Z(x, .) on B(0, rho0)");
    line("neumann_radius", neumann_radius(c), "2^{-1/p}");
    line("spectral_bound(||x||=1)", spec.bracket_bound, "C_b ||x||");
    if (spec.associative_bound) line("spectral_bound_assoc", *spec.associative_bound, "2 C_tri C_m ||x||");
    line("pnorm_tail(r_bch/2)", tail, "(2 C_tri r)^p / (1 - (4 C_b r)^p)");
    if (note) out << note.value() << '\n';
    return 0;
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
    int max_degree = 12;
    std::uint64_t seed = kDefaultSeed;
    OutputFormat format = OutputFormat::human;
    int degree_cap = kDefaultDegreeCap;
    int samples = 1000;  // per sampler
};

inline void emit_checks(const std::vector<CheckResult>& checks, std::uint64_t seed, OutputFormat format,
                        std::ostream& out) {
    if (format == OutputFormat::json) {
        nlohmann::json j;
        j["seed"] = seed;
        j["checks"] = nlohmann::json::array();
        for (const auto& c : checks)
            j["checks"].push_back(
                {{"name", c.name}, {"passed", c.passed}, {"informational", c.informational}, {"detail", c.detail}});
        out << j.dump(2) << '\n';
        return;
    }
    for (const auto& c : checks) {
        const char* tag = c.informational ? "INFO" : (c.passed ? "PASS" : "FAIL");
        out << "[" << tag << "] " << c.name << ": " << c.detail << '\n';
    }
}

inline int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
    if (args.max_degree < 2 || args.max_degree > args.degree_cap) {
        err << "error: --max-degree " << args.max_degree << " outside [2, " << args.degree_cap << "]\n";
        return 2;
    }
    std::vector<CheckResult> checks;
    try {
        TableOptions opts;
        opts.degree_cap = args.degree_cap;
        opts.lie_max_degree = args.max_degree;
        opts.certify_max_degree = std::min(args.max_degree, 12);
        const BchData data = compute_bch_data(args.max_degree, opts);
        checks.push_back(check_certified_projection(data, opts.certify_max_degree));
        checks.push_back(check_catalan_convolution());
        checks.push_back(check_catalan_bound_column());
        checks.push_back(check_dynkin_bound(data, args.max_degree));
        checks.push_back(check_symmetry(data));
        checks.push_back(check_dynkin_recursion(data));

        NumericCheckOptions o;
        o.seed = args.seed;
        o.sampler_samples = args.samples;
        const BchEvaluator ev = BchEvaluator::up_to(o.truncation);
        checks.push_back(check_group_law(o, ev));
        checks.push_back(check_group_law_commuting(o, ev));
        checks.push_back(check_associativity(o, ev));
        checks.push_back(check_inverse_solver(o, ev));
        for (auto& c : check_samplers(o)) checks.push_back(std::move(c));
        checks.push_back(check_subadditivity(o));
        checks.push_back(check_banach_constants());
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return 1;
    }
    emit_checks(checks, args.seed, args.format, out);
    bool ok = true;
    for (const auto& c : checks) ok = ok && (c.informational || c.passed);
    if (args.format != OutputFormat::json) out << (ok ? "all checks passed\n" : "some checks FAILED\n");
    return ok ? 0 : 1;
}

// --------------------------------------------------------------------- fit

struct FitArgs {
    std::optional<std::string> input;
    std::optional<std::string> builtin;  // "a" or "b"
    std::string column = "a";            // column of a table CSV
    int n_min = 5;
    int n_max = 20;
    int bootstrap = 1000;
    double exponent = kDefaultFitExponent;
    std::uint64_t seed = kDefaultFitSeed;
    OutputFormat format = OutputFormat::human;
    int degree_cap = kDefaultDegreeCap;
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

inline double parse_value(const std::string& s) {
    if (s.find('/') != std::string::npos) return parse_rational(s).get_d();
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad number '" + s + "'");
    return v;
}

}  // namespace detail

/// Reads either a table CSV (exact column `<column>_exact`) or a two-column
/// `degree,value` CSV.
inline std::vector<std::pair<int, double>> read_fit_csv(std::istream& in, const std::string& column) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty input");
    const auto header = detail::split_csv_line(line);
    int deg_col = -1, val_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "degree" || header[i] == "n") deg_col = static_cast<int>(i);
        if (header[i] == column + "_exact") val_col = static_cast<int>(i);
    }
    if (val_col < 0)
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == "value") val_col = static_cast<int>(i);
    if (deg_col < 0 || val_col < 0)
        throw std::invalid_argument("CSV needs a 'degree' column and '" + column + "_exact' or 'value'");
    std::vector<std::pair<int, double>> values;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto f = detail::split_csv_line(line);
        if (static_cast<int>(f.size()) <= std::max(deg_col, val_col))
            throw std::invalid_argument("line " + std::to_string(lineno) + ": too few fields");
        if (f[static_cast<std::size_t>(val_col)].empty()) continue;
        try {
            values.emplace_back(std::stoi(f[static_cast<std::size_t>(deg_col)]),
                                detail::parse_value(f[static_cast<std::size_t>(val_col)]));
        } catch (const std::exception& ex) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": " + ex.what());
        }
    }
    return values;
}

/// A_n or B_n for n = 1..n_max from the exact pipeline.
inline std::vector<std::pair<int, double>> builtin_column(const std::string& which, int n_max, int degree_cap) {
    TableOptions opts;
    opts.degree_cap = degree_cap;
    opts.lie_max_degree = which == "b" ? n_max : 0;
    opts.certify_max_degree = std::min(n_max, 12);
    if (which != "b") opts.certify_max_degree = 0;
    std::vector<std::pair<int, double>> values;
    for (const auto& r : compute_bch_data(n_max, opts).rows) {
        if (which == "b") values.emplace_back(r.degree, r.b_n->get_d());
        else values.emplace_back(r.degree, r.a_n.get_d());
    }
    return values;
}

inline int cmd_fit(const FitArgs& args, std::ostream& out, std::ostream& err) {
    std::vector<std::pair<int, double>> values;
    std::string source;
    std::string column = args.column;
    try {
        if (args.input.has_value() == args.builtin.has_value())
            throw std::invalid_argument("give exactly one of --input or --builtin");
        if (args.builtin) {
            if (*args.builtin != "a" && *args.builtin != "b") throw std::invalid_argument("--builtin must be a or b");
            if (args.n_max > args.degree_cap)
                throw std::invalid_argument("--n-max " + std::to_string(args.n_max) + " exceeds the degree cap " +
                                            std::to_string(args.degree_cap));
            column = *args.builtin;
            values = builtin_column(column, args.n_max, args.degree_cap);
            source = "builtin " + column;
        } else {
            std::ifstream in(*args.input);
            if (!in) throw std::runtime_error("cannot open '" + *args.input + "'");
            values = read_fit_csv(in, args.column);
            source = *args.input;
        }
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return 2;
    }
    FitResult f;
    try {
        f = fit_geometric(values, args.n_min, args.n_max, args.bootstrap, args.exponent, args.seed);
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return 1;
    }
    const double eff = effective_radius(f.rate);
    const double normalized = 1.0 / (4.0 * 1.0);  // 1/(4 C_b) with C_b = 1
    std::optional<std::pair<double, double>> reference;
    if (column == "a") reference = {kReferenceRateA, kReferenceRateAHalfWidth};
    if (column == "b") reference = {kReferenceRateB, kReferenceRateBHalfWidth};

    if (args.format == OutputFormat::json) {
        nlohmann::json j{{"source", source},
                         {"rate", f.rate},
                         {"rate_ci", {f.rate_ci.first, f.rate_ci.second}},
                         {"prefactor", f.prefactor},
                         {"r_squared", f.r_squared},
                         {"n_range", {f.n_range.first, f.n_range.second}},
                         {"bootstrap_iterations", f.bootstrap_iterations},
                         {"exponent", args.exponent},
                         {"seed", f.seed},
                         {"effective_radius", eff},
                         {"normalized_radius", normalized}};
        if (reference) {
            j["reference_rate"] = reference->first;
            j["reference_half_width"] = reference->second;
            j["within_reference_band"] = std::abs(f.rate - reference->first) <= reference->second;
        }
        out << j.dump(2) << '\n';
        return 0;
    }
    out << "source            " << source << '\n';
    out << "n range           " << f.n_range.first << ".." << f.n_range.second << " (" << f.points << " points)\n";
    out << "model             v_n ~ K n^{" << args.exponent << "} rate^n\n";
    out << "rate              " << format_double(f.rate, "%.6f") << '\n';
    out << "95% CI            [" << format_double(f.rate_ci.first, "%.6f") << ", "
        << format_double(f.rate_ci.second, "%.6f") << "] (" << f.bootstrap_iterations
        << " residual-bootstrap draws, seed " << f.seed << ")\n";
    out << "prefactor         " << format_double(f.prefactor, "%.6g") << '\n';
    out << "r_squared         " << format_double(f.r_squared, "%.6f") << '\n';
    out << "effective radius  " << format_double(eff, "%.4f") << " (1/rate); 1/(4 C_b) = "
        << format_double(normalized, "%.4f") << " with C_b = 1\n";
    if (reference) {
        const bool inside = std::abs(f.rate - reference->first) <= reference->second;
        out << "reference rate    " << reference->first << " +/- " << reference->second << ": fitted rate is "
            << (inside ? "inside" : "outside") << " this band\n";
    }
    return 0;
}

// ----------------------------------------------------------------- inverse

struct InverseArgs {
    std::string matrix;
    double c_tri = 1.0;
    double c_bracket = 2.0;
    int degree = 12;
    double tol = 1e-10;
    int max_iter = 200;
    OutputFormat format = OutputFormat::human;
};

inline int cmd_inverse(const InverseArgs& args, std::ostream& out, std::ostream& err) {
    DenseMatrix x;
    ConstantSet c;
    try {
        x = read_matrix_file(args.matrix);
        c = derive_constants(args.c_tri, std::nullopt, args.c_bracket);
        if (args.degree < 1 || args.degree > kDefaultDegreeCap)
            throw std::invalid_argument("--degree must lie in [1, 20]");
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return 2;
    }
    InverseSolverOptions opt;
    opt.degree = args.degree;
    opt.tol = args.tol;
    opt.max_iter = args.max_iter;
    InverseResult r;
    try {
        const BchEvaluator ev = BchEvaluator::up_to(args.degree);
        r = bch_inverse_solver(x, c, ev, opt);
    } catch (const DomainError& ex) {
        err << "error: " << ex.what() << '\n';
        return 1;
    } catch (const IterationLimitError& ex) {
        err << "error: " << ex.what() << " (last update " << format_double(ex.last_residual()) << ")\n";
        return 1;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return 1;
    }
    for (const auto& w : r.warnings) err << "warning: " << w << '\n';
    if (args.format == OutputFormat::json) {
        nlohmann::json j{{"iterations", r.iterations},
                         {"update_norms", r.update_norms},
                         {"contraction_ratios", r.contraction_ratios},
                         {"observed_ratio", r.observed_ratio},
                         {"x_norm", r.x_norm},
                         {"u", r.u},
                         {"predicted_ratio", r.predicted_ratio},
                         {"rho_inv", r.rho_inv},
                         {"rho", r.rho},
                         {"distance_to_minus_x", r.distance_to_minus_x},
                         {"post_check_residual", r.post_check_residual},
                         {"post_check_passed", r.post_check_passed},
                         {"w", matrix_to_json(r.w)},
                         {"warnings", r.warnings}};
        out << j.dump(2) << '\n';
    } else {
        out << "||x|| = " << format_double(r.x_norm) << ", rho_inv = " << format_double(r.rho_inv)
            << ", rho = " << format_double(r.rho) << '\n';
        out << "u = 4 C_b (1 + 2 C_tri) ||x|| = " << format_double(r.u) << ", predicted ratio u/(1-u) = "
            << format_double(r.predicted_ratio) << '\n';
        for (std::size_t k = 0; k < r.update_norms.size(); ++k)
            out << "iteration " << std::setw(3) << k + 1 << "  ||w_k - w_{k-1}|| = " << format_double(r.update_norms[k])
                << '\n';
        out << "iterations " << r.iterations << ", observed max ratio " << format_double(r.observed_ratio)
            << (r.contraction_ratios.empty() ? " (no update above the noise floor)" : "") << '\n';
        out << "w =\n";
        for (int i = 0; i < r.w.dim(); ++i) {
            out << "  ";
            for (int j = 0; j < r.w.dim(); ++j) out << std::setw(14) << format_double(r.w(i, j), "%.6e");
            out << '\n';
        }
        out << "||w + x|| = " << format_double(r.distance_to_minus_x) << ", ||Z_N(x, w)|| = "
            << format_double(r.post_check_residual) << '\n';
    }
    return r.post_check_passed ? 0 : 1;
}

}  // namespace qbch::cli

#endif  // QBCH_CLI_HPP
