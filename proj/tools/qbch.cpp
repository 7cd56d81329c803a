// qbch: exact BCH tables, explicit quasi-Banach constants and numeric checks.

#include "qbch/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <map>
#include <iostream>
#include <optional>
#include <string>

namespace {

using qbch::cli::OutputFormat;

// Scans argv for --config before CLI11 runs, so flag values override it.
std::optional<std::string> find_config_path(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--config" && i + 1 < argc) return std::string(argv[i + 1]);
        if (a.rfind("--config=", 0) == 0) return a.substr(9);
    }
    return std::nullopt;
}

nlohmann::json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config '" + path + "'");
    nlohmann::json j = nlohmann::json::parse(in);
    if (!j.is_object()) throw std::runtime_error("config '" + path + "' must be a flat JSON object");
    for (const auto& [k, v] : j.items())
        if (v.is_object() || v.is_array()) throw std::runtime_error("config key '" + k + "' must be a scalar");
    return j;
}

template <class T>
void from_config(const nlohmann::json& cfg, const char* key, T& dst) {
    if (cfg.contains(key)) dst = cfg.at(key).get<T>();
}

template <class T>
void from_config(const nlohmann::json& cfg, const char* key, std::optional<T>& dst) {
    if (cfg.contains(key)) dst = cfg.at(key).get<T>();
}

void format_from_config(const nlohmann::json& cfg, OutputFormat& dst) {
    if (cfg.contains("format")) dst = qbch::cli::parse_format(cfg.at("format").get<std::string>());
}

const std::map<std::string, OutputFormat> kFormats{
    {"csv", OutputFormat::csv}, {"json", OutputFormat::json}, {"human", OutputFormat::human}};

}  // namespace

int main(int argc, char** argv) {
    using namespace qbch::cli;

    nlohmann::json cfg = nlohmann::json::object();
    DegreeCap cap;
    try {
        if (auto path = find_config_path(argc, argv)) cfg = load_config(*path);
        cap = degree_cap_from_env();
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 2;
    }
    if (cap.warning) std::cerr << *cap.warning << '\n';

    TableArgs table;
    BoundsArgs bounds;
    VerifyArgs verify;
    FitArgs fit;
    InverseArgs inverse;
    try {
        from_config(cfg, "max_degree", table.max_degree);
        from_config(cfg, "lie_max_degree", table.lie_max_degree);
        from_config(cfg, "certify_max_degree", table.certify_max_degree);
        from_config(cfg, "plot_data", table.plot_data);
        format_from_config(cfg, table.format);
        from_config(cfg, "c_tri", bounds.c_tri);
        from_config(cfg, "c_mult", bounds.c_mult);
        from_config(cfg, "c_bracket", bounds.c_bracket);
        from_config(cfg, "schatten_p", bounds.schatten_p);
        from_config(cfg, "c_ideal", bounds.c_ideal);
        format_from_config(cfg, bounds.format);
        from_config(cfg, "max_degree", verify.max_degree);
        from_config(cfg, "seed", verify.seed);
        from_config(cfg, "samples", verify.samples);
        format_from_config(cfg, verify.format);
        from_config(cfg, "input", fit.input);
        from_config(cfg, "builtin", fit.builtin);
        from_config(cfg, "column", fit.column);
        from_config(cfg, "n_min", fit.n_min);
        from_config(cfg, "n_max", fit.n_max);
        from_config(cfg, "bootstrap", fit.bootstrap);
        from_config(cfg, "exponent", fit.exponent);
        from_config(cfg, "seed", fit.seed);
        format_from_config(cfg, fit.format);
        from_config(cfg, "matrix", inverse.matrix);
        from_config(cfg, "c_tri", inverse.c_tri);
        from_config(cfg, "c_bracket", inverse.c_bracket);
        from_config(cfg, "degree", inverse.degree);
        from_config(cfg, "tol", inverse.tol);
        from_config(cfg, "max_iter", inverse.max_iter);
        format_from_config(cfg, inverse.format);
    } catch (const std::exception& ex) {
        std::cerr << "error: bad config value: " << ex.what() << '\n';
        return 2;
    }
    table.degree_cap = verify.degree_cap = fit.degree_cap = cap.cap;

    CLI::App app{"Exact Baker-Campbell-Hausdorff coefficients and quasi-Banach bounds"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path;
    app.add_option("--config", config_path, "Flat JSON file of defaults; flags take precedence");
    auto fmt = [&](CLI::App* sub, OutputFormat& dst) {
        sub->add_option("--format", dst, "Output format")->transform(CLI::CheckedTransformer(kFormats));
    };

    auto* t = app.add_subcommand("table", "Exact A_n, B_n and Catalan bound per degree");
    t->add_option("--max-degree", table.max_degree, "Highest degree")->capture_default_str();
    t->add_option("--lie-max-degree", table.lie_max_degree, "Highest degree projected to B_n (default: all)");
    t->add_option("--certify-max-degree", table.certify_max_degree, "Highest degree certified")
        ->capture_default_str();
    t->add_option("--plot-data", table.plot_data, "Also write log-plot CSV to this path");
    fmt(t, table.format);

    auto* b = app.add_subcommand("bounds", "Constants and radii with their formulas");
    b->add_option("--c-tri", bounds.c_tri, "Quasi-triangle constant C_tri >= 1");
    auto* cm = b->add_option("--c-mult", bounds.c_mult, "Submultiplicativity constant");
    auto* cb = b->add_option("--c-bracket", bounds.c_bracket, "Bracket constant");
    cm->excludes(cb);
    b->add_option("--schatten-p", bounds.schatten_p, "Schatten exponent p in (0, 1)");
    b->add_option("--c-ideal", bounds.c_ideal, "Ideal constant of the Schatten class");
    fmt(b, bounds.format);

    auto* v = app.add_subcommand("verify", "Run the exact and numeric consistency checks");
    v->add_option("--max-degree", verify.max_degree, "Highest degree for exact checks")->capture_default_str();
    v->add_option("--seed", verify.seed, "Master seed")->capture_default_str();
    v->add_option("--samples", verify.samples, "Samples per inequality sampler")->capture_default_str();
    fmt(v, verify.format);

    auto* f = app.add_subcommand("fit", "Geometric rate fit with residual bootstrap");
    auto* fi = f->add_option("--input", fit.input, "CSV from `table --format csv` or degree,value");
    auto* fb = f->add_option("--builtin", fit.builtin, "Computed column")->check(CLI::IsMember({"a", "b"}));
    fi->excludes(fb);
    f->add_option("--column", fit.column, "Column of a table CSV (a or b)")->check(CLI::IsMember({"a", "b"}));
    f->add_option("--n-min", fit.n_min, "First degree in the fit")->capture_default_str();
    f->add_option("--n-max", fit.n_max, "Last degree in the fit")->capture_default_str();
    f->add_option("--bootstrap", fit.bootstrap, "Bootstrap draws")->capture_default_str();
    f->add_option("--exponent", fit.exponent, "Polynomial correction exponent")->capture_default_str();
    f->add_option("--seed", fit.seed, "Bootstrap seed")->capture_default_str();
    fmt(f, fit.format);

    auto* inv = app.add_subcommand("inverse", "Fixed-point solver for Z(x, w) = 0");
    auto* im = inv->add_option("--matrix", inverse.matrix, "JSON matrix file");
    inv->add_option("--c-tri", inverse.c_tri, "Quasi-triangle constant")->capture_default_str();
    inv->add_option("--c-bracket", inverse.c_bracket, "Bracket constant")->capture_default_str();
    inv->add_option("--degree", inverse.degree, "Truncation degree N")->capture_default_str();
    inv->add_option("--tol", inverse.tol, "Stopping tolerance")->capture_default_str();
    inv->add_option("--max-iter", inverse.max_iter, "Iteration limit")->capture_default_str();
    fmt(inv, inverse.format);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    if (inv->parsed() && inverse.matrix.empty() && im->count() == 0) {
        std::cerr << "error: inverse needs --matrix\n";
        return 2;
    }

    if (t->parsed()) return cmd_table(table, std::cout, std::cerr);
    if (b->parsed()) return cmd_bounds(bounds, std::cout, std::cerr);
    if (v->parsed()) return cmd_verify(verify, std::cout, std::cerr);
    if (f->parsed()) return cmd_fit(fit, std::cout, std::cerr);
    return cmd_inverse(inverse, std::cout, std::cerr);
}
