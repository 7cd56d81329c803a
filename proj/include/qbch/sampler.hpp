// Seeded random matrix families, empirical constants, and sampling checks of
// the quasi-Banach inequalities.

#ifndef QBCH_SAMPLER_HPP
#define QBCH_SAMPLER_HPP

#include "qbch/bch_eval.hpp"
#include "qbch/bounds.hpp"
#include "qbch/matrix.hpp"
#include "qbch/matrix_series.hpp"
#include "qbch/quasinorm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbch {

enum class MatrixFamily { dense, weighted_shift, diagonal, nilpotent };

inline MatrixFamily parse_matrix_family(const std::string& s) {
    if (s == "dense") return MatrixFamily::dense;
    if (s == "weighted_shift") return MatrixFamily::weighted_shift;
    if (s == "diagonal") return MatrixFamily::diagonal;
    if (s == "nilpotent") return MatrixFamily::nilpotent;
    throw std::invalid_argument("unknown matrix family '" + s + "'");
}

inline std::string to_string(MatrixFamily f) {
    switch (f) {
        case MatrixFamily::dense: return "dense";
        case MatrixFamily::weighted_shift: return "weighted_shift";
        case MatrixFamily::diagonal: return "diagonal";
        case MatrixFamily::nilpotent: return "nilpotent";
    }
    return "?";
}

using Rng = std::mt19937_64;

/// Gaussian entries on the family's support pattern.
inline DenseMatrix random_matrix(Rng& rng, int dim, MatrixFamily family) {
    std::normal_distribution<double> g(0.0, 1.0);
    DenseMatrix m(dim);
    switch (family) {
        case MatrixFamily::dense:
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) m(i, j) = g(rng);
            break;
        case MatrixFamily::weighted_shift:
            for (int i = 0; i + 1 < dim; ++i) m(i + 1, i) = g(rng);
            break;
        case MatrixFamily::diagonal:
            for (int i = 0; i < dim; ++i) m(i, i) = g(rng);
            break;
        case MatrixFamily::nilpotent:
            for (int i = 0; i < dim; ++i)
                for (int j = i + 1; j < dim; ++j) m(i, j) = g(rng);
            break;
    }
    return m;
}

/// Random element of the family with quasi-norm uniform in (0, radius].
inline DenseMatrix random_in_ball(Rng& rng, int dim, MatrixFamily family, const QuasiNormSpec& spec, double radius) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int attempt = 0; attempt < 64; ++attempt) {
        DenseMatrix m = random_matrix(rng, dim, family);
        const double n = quasi_norm(m, spec);
        if (n == 0.0) continue;
        const double target = radius * (1.0 - u(rng));
        m *= target / n;
        return m;
    }
    throw std::runtime_error("random_in_ball: family produced only zero matrices");
}

/// Random element with quasi-norm exactly `norm`.
inline DenseMatrix random_on_sphere(Rng& rng, int dim, MatrixFamily family, const QuasiNormSpec& spec, double norm) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        DenseMatrix m = random_matrix(rng, dim, family);
        const double n = quasi_norm(m, spec);
        if (n == 0.0) continue;
        m *= norm / n;
        return m;
    }
    throw std::runtime_error("random_on_sphere: family produced only zero matrices");
}

struct MeasuredConstants {
    double c_tri_hat = 0;      // max ||a + b|| / (||a|| + ||b||)
    double c_mult_hat = 0;     // max ||ab|| / (||a|| ||b||)
    double c_bracket_hat = 0;  // max ||ab - ba|| / (||a|| ||b||)
    int samples = 0;
    int skipped = 0;
    std::uint64_t seed = 0;

    /// Constant set built from the empirical maxima; c_tri is raised to 1.
    ConstantSet as_constants() const {
        return derive_constants(std::max(1.0, c_tri_hat), c_mult_hat > 0 ? std::optional(c_mult_hat) : std::nullopt,
                                c_bracket_hat > 0 ? std::optional(c_bracket_hat) : std::nullopt);
    }
};

/// Empirical lower bounds for the constants of `spec` on pairs from `family`.
inline MeasuredConstants measure_constants(MatrixFamily family, const QuasiNormSpec& spec, int samples,
                                           std::uint64_t seed, int dim = 3) {
    if (samples < 2) throw std::invalid_argument("measure_constants: need at least 2 samples");
    Rng rng(seed);
    MeasuredConstants m;
    m.seed = seed;
    for (int s = 0; s < samples; ++s) {
        const DenseMatrix a = random_matrix(rng, dim, family);
        const DenseMatrix b = random_matrix(rng, dim, family);
        const double na = quasi_norm(a, spec);
        const double nb = quasi_norm(b, spec);
        if (na == 0.0 || nb == 0.0) {
            ++m.skipped;
            continue;
        }
        ++m.samples;
        m.c_tri_hat = std::max(m.c_tri_hat, quasi_norm(a + b, spec) / (na + nb));
        m.c_mult_hat = std::max(m.c_mult_hat, quasi_norm(a * b, spec) / (na * nb));
        m.c_bracket_hat = std::max(m.c_bracket_hat, quasi_norm(commutator(a, b), spec) / (na * nb));
    }
    if (m.samples == 0) throw std::invalid_argument("measure_constants: every sample was degenerate");
    return m;
}

/// Spectral radius of ad_x on matrices, estimated by power iteration as
/// (||A^K v|| / ||A^{K/2} v||)^{2/K} in the Frobenius norm.
inline double adjoint_spectral_radius(const DenseMatrix& x, int iterations = 400) {
    const int n = x.dim();
    DenseMatrix v(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) v(i, j) = 1.0 + 0.5 * std::sin(1.0 + i * n + j);
    v *= 1.0 / v.frobenius();
    double log_growth = 0;
    const int half = iterations / 2;
    for (int k = 1; k <= iterations; ++k) {
        v = commutator(x, v);
        const double g = v.frobenius();
        if (g == 0.0) return 0.0;
        if (k > half) log_growth += std::log(g);
        v *= 1.0 / g;
    }
    return std::exp(log_growth / (iterations - half));
}

enum class ConstantSource { theoretical, measured };

struct SamplerConfig {
    std::string inequality = "a";
    int samples = 1000;
    std::uint64_t seed = 20240601;
    int dim = 3;
    MatrixFamily family = MatrixFamily::dense;
    QuasiNormSpec spec = QuasiNormSpec::operator_norm();
    int degree = 8;        // highest n in (a) and (f)
    int truncation = 12;   // N in the truncated BCH product for (b), (d), bilipschitz
    ConstantSource source = ConstantSource::theoretical;
    std::optional<ConstantSet> constants;  // overrides `source`
};

struct SamplerReport {
    std::string inequality;
    std::string statement;
    int samples = 0;
    std::uint64_t seed = 0;
    double max_ratio = 0;
    double min_ratio = 0;
    std::vector<DenseMatrix> witness;  // inputs attaining max_ratio
    ConstantSet constants;
    std::string constant_source;
    bool asserted = true;  // false for measured-only quantities
    bool passed = false;   // max_ratio <= 1 + 1e-9 when asserted
};

inline constexpr double kSamplerTolerance = 1e-9;

inline std::string canonical_inequality(const std::string& name) {
    if (name == "a" || name == "tree_bound") return "a";
    if (name == "b" || name == "bch_lipschitz") return "b";
    if (name == "c" || name == "bracket_continuity") return "c";
    if (name == "d" || name == "translation_lipschitz") return "d";
    if (name == "e" || name == "spectral") return "e";
    if (name == "f" || name == "power_bound") return "f";
    if (name == "exp_bilipschitz" || name == "g") return "exp_bilipschitz";
    throw std::invalid_argument("unknown inequality '" + name + "'");
}

inline SamplerReport inequality_sampler(const SamplerConfig& cfg) {
    const std::string which = canonical_inequality(cfg.inequality);
    if (cfg.samples < 1) throw std::invalid_argument("inequality_sampler: samples must be positive");
    if (cfg.dim < 1 || cfg.dim > kMaxJacobiDim) throw std::invalid_argument("inequality_sampler: bad dimension");

    SamplerReport rep;
    rep.inequality = which;
    rep.samples = cfg.samples;
    rep.seed = cfg.seed;
    rep.min_ratio = HUGE_VAL;
    if (cfg.constants) {
        rep.constants = *cfg.constants;
        rep.constant_source = "given";
    } else if (cfg.source == ConstantSource::theoretical && theoretical_constants(cfg.spec)) {
        rep.constants = *theoretical_constants(cfg.spec);
        rep.constant_source = "theoretical";
    } else {
        rep.constants = measure_constants(cfg.family, cfg.spec, std::max(cfg.samples, 2), cfg.seed ^ 0x5eedULL, cfg.dim)
                            .as_constants();
        rep.constant_source = "measured";
    }
    const ConstantSet& c = rep.constants;
    const auto rad = radii(c);
    const auto& spec = cfg.spec;
    auto norm = [&](const DenseMatrix& m) { return quasi_norm(m, spec); };

    Rng rng(cfg.seed);
    const int need = which == "a" ? cfg.degree : cfg.truncation;
    const std::optional<BchEvaluator> ev =
        (which == "a" || which == "b" || which == "d" || which == "exp_bilipschitz")
            ? std::optional<BchEvaluator>(BchEvaluator::up_to(need))
            : std::nullopt;

    auto record = [&](double ratio, std::vector<DenseMatrix> inputs) {
        rep.min_ratio = std::min(rep.min_ratio, ratio);
        if (ratio > rep.max_ratio || rep.witness.empty()) {
            rep.max_ratio = std::max(rep.max_ratio, ratio);
            rep.witness = std::move(inputs);
        }
    };

    for (int s = 0; s < cfg.samples; ++s) {
        if (which == "a") {
            rep.statement = "||Z_n(x,y)|| <= 4^{n-1} C_b^{n-1} (||x||+||y||)^n, n = 1.." + std::to_string(cfg.degree);
            const DenseMatrix x = random_in_ball(rng, cfg.dim, cfg.family, spec, rad.r_bch);
            const DenseMatrix y = random_in_ball(rng, cfg.dim, cfg.family, spec, rad.r_bch);
            const double t = norm(x) + norm(y);
            const auto comps = ev->components(x, y, cfg.degree);
            double worst = 0;
            for (int n = 1; n <= cfg.degree; ++n) {
                const double rhs = std::pow(4.0 * c.c_bracket, n - 1) * std::pow(t, n);
                worst = std::max(worst, norm(comps[static_cast<std::size_t>(n - 1)]) / rhs);
            }
            record(worst, {x, y});
        } else if (which == "b" || which == "d") {
            const bool translation = which == "d";
            const double radius = translation ? rad.rho / 2.0 : rad.rho0;
            rep.statement = translation ? "d_p(x*y, x*z) <= 2^p d_p(y,z) on B(0, rho/2)"
                                        : "||Z(x,y) - Z(x,z)|| <= 2 ||y - z|| on B(0, rho0)";
            const DenseMatrix x = random_in_ball(rng, cfg.dim, cfg.family, spec, radius);
            const DenseMatrix y = random_in_ball(rng, cfg.dim, cfg.family, spec, radius);
            const DenseMatrix z = random_in_ball(rng, cfg.dim, cfg.family, spec, radius);
            const double dyz = norm(y - z);
            if (dyz == 0.0) continue;
            const double lhs = norm(ev->evaluate(x, y, cfg.truncation) - ev->evaluate(x, z, cfg.truncation));
            const double ratio = translation ? std::pow(lhs / dyz, c.p) / std::exp2(c.p) : lhs / (2.0 * dyz);
            record(ratio, {x, y, z});
        } else if (which == "c") {
            rep.statement = "||[x,y]-[x',y']|| <= C_tri C_b (||x-x'||(||y||+||y'||) + ||y-y'||(||x||+||x'||))";
            const DenseMatrix x = random_in_ball(rng, cfg.dim, cfg.family, spec, 1.0);
            const DenseMatrix y = random_in_ball(rng, cfg.dim, cfg.family, spec, 1.0);
            const DenseMatrix x2 = random_in_ball(rng, cfg.dim, cfg.family, spec, 1.0);
            const DenseMatrix y2 = random_in_ball(rng, cfg.dim, cfg.family, spec, 1.0);
            const double rhs =
                c.c_tri * c.c_bracket * (norm(x - x2) * (norm(y) + norm(y2)) + norm(y - y2) * (norm(x) + norm(x2)));
            if (rhs == 0.0) continue;
            record(norm(commutator(x, y) - commutator(x2, y2)) / rhs, {x, y, x2, y2});
        } else if (which == "e") {
            rep.statement = "rho(ad_x) <= C_b ||x||";
            const DenseMatrix x = random_in_ball(rng, cfg.dim, cfg.family, spec, 1.0);
            const double rhs = c.c_bracket * norm(x);
            record(rhs == 0.0 ? 0.0 : adjoint_spectral_radius(x) / rhs, {x});
        } else if (which == "f") {
            rep.statement = "||x^n|| <= C_m^{n-1} ||x||^n, n = 2.." + std::to_string(cfg.degree);
            if (!c.c_mult) throw std::invalid_argument("inequality_sampler: (f) needs a submultiplicativity constant");
            const DenseMatrix x = random_in_ball(rng, cfg.dim, cfg.family, spec, 1.0);
            const double nx = norm(x);
            DenseMatrix power = x;
            double worst = 0;
            for (int n = 2; n <= cfg.degree; ++n) {
                power = power * x;
                worst = std::max(worst, norm(power) / (std::pow(*c.c_mult, n - 1) * std::pow(nx, n)));
            }
            record(worst, {x});
        } else {
            rep.statement = "||exp(x) - exp(y)||^p / ||x - y||^p on B(0, rho/2), measured";
            rep.asserted = false;
            const DenseMatrix x = random_in_ball(rng, cfg.dim, cfg.family, spec, rad.rho / 2.0);
            const DenseMatrix y = random_in_ball(rng, cfg.dim, cfg.family, spec, rad.rho / 2.0);
            const double dxy = norm(x - y);
            if (dxy == 0.0) continue;
            const double lhs = norm(matrix_exp_series(x) - matrix_exp_series(y));
            record(std::pow(lhs / dxy, c.p), {x, y});
        }
    }
    if (rep.min_ratio == HUGE_VAL) rep.min_ratio = 0;
    rep.passed = !rep.asserted || rep.max_ratio <= 1.0 + kSamplerTolerance;
    return rep;
}

}  // namespace qbch

#endif  // QBCH_SAMPLER_HPP
