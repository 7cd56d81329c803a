// Closed-form constants for quasi-Banach Lie algebras: Aoki-Rolewicz data,
// BCH convergence radii, Lipschitz and inverse radii, spectral and resolvent
// bounds.

#ifndef QBCH_BOUNDS_HPP
#define QBCH_BOUNDS_HPP

#include "qbch/errors.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace qbch {

/// Identity tolerance for relations between the transcendental constants.
inline constexpr double kConstantTolerance = 1e-12;

struct ConstantSet {
    double c_tri = 1.0;                // quasi-triangle constant
    std::optional<double> c_mult;      // submultiplicativity constant
    double c_bracket = 1.0;            // bracket continuity constant
    double p = 1.0;                    // Aoki-Rolewicz exponent, 1 / log2(2 c_tri)
    double c1 = 1.0;                   // lower p-norm equivalence constant
    double c2 = 2.0;                   // upper p-norm equivalence constant, 2^{1/p}
    double c_total = 1.0;              // c_tri * c_bracket
};

struct RadiusReport {
    double r_bch = 0;           // 1 / (4 C_b)
    double r_conservative = 0;  // 1 / (4 C_tri C_b)
    std::optional<double> r_assoc;  // 1 / (8 C_tri^2 C_m)
    double rho = 0;             // 1 / (8 C_b), local group ball
    double rho0 = 0;            // 1 / (16 C_b), Lipschitz ball
    double rho_inv = 0;         // 1 / (8 C_b (1 + 2 C_tri)^2)
    double lipschitz_L0 = 2.0;  // Lipschitz constant of Z(x, .) on B(0, rho0)
};

inline double aoki_rolewicz_exponent(double c_tri) { return 1.0 / std::log2(2.0 * c_tri); }

inline ConstantSet derive_constants(double c_tri, std::optional<double> c_mult, std::optional<double> c_bracket) {
    if (!(c_tri >= 1.0) || !std::isfinite(c_tri))
        throw std::invalid_argument("derive_constants: quasi-triangle constant must be >= 1, got " +
                                    std::to_string(c_tri));
    if (!c_mult && !c_bracket)
        throw std::invalid_argument("derive_constants: need a submultiplicativity or a bracket constant");
    if (c_mult && !(*c_mult > 0.0)) throw std::invalid_argument("derive_constants: C_m must be positive");
    if (c_bracket && !(*c_bracket > 0.0)) throw std::invalid_argument("derive_constants: C_b must be positive");
    ConstantSet c;
    c.c_tri = c_tri;
    c.c_mult = c_mult;
    c.c_bracket = c_bracket ? *c_bracket : 2.0 * c_tri * *c_mult;
    c.p = aoki_rolewicz_exponent(c_tri);
    c.c1 = 1.0;
    c.c2 = std::exp2(1.0 / c.p);
    c.c_total = c.c_tri * c.c_bracket;
    return c;
}

/// Checks the stored relations: p = 1/log2(2 C_tri), c2 = 2 C_tri, and
/// C_b <= 2 C_tri C_m when C_m is known.
inline bool constants_consistent(const ConstantSet& c, double tol = kConstantTolerance) {
    bool ok = std::abs(c.p - aoki_rolewicz_exponent(c.c_tri)) <= tol;
    ok = ok && std::abs(c.c2 - std::exp2(1.0 / c.p)) <= tol * c.c2;
    ok = ok && std::abs(c.c2 - 2.0 * c.c_tri) <= tol * c.c2;
    if (c.c_mult) ok = ok && c.c_bracket <= 2.0 * c.c_tri * *c.c_mult + tol;
    return ok;
}

inline RadiusReport radii(const ConstantSet& c) {
    RadiusReport r;
    r.r_bch = 1.0 / (4.0 * c.c_bracket);
    r.r_conservative = 1.0 / (4.0 * c.c_total);
    if (c.c_mult) r.r_assoc = 1.0 / (8.0 * c.c_tri * c.c_tri * *c.c_mult);
    r.rho = 1.0 / (8.0 * c.c_bracket);
    r.rho0 = 1.0 / (16.0 * c.c_bracket);
    const double k = 1.0 + 2.0 * c.c_tri;
    r.rho_inv = 1.0 / (8.0 * c.c_bracket * k * k);
    r.lipschitz_L0 = 2.0;
    return r;
}

/// Contraction radius 1/(8 C_b (1 + 2 C_tri)) of the inverse iteration; the
/// ball-invariance radius rho_inv is the smaller of the two.
inline double inverse_contraction_radius(const ConstantSet& c) {
    return 1.0 / (8.0 * c.c_bracket * (1.0 + 2.0 * c.c_tri));
}

/// sum_{n >= first} (2 C_tri)^p (4 C_b)^{p(n-1)} r^{pn}, the p-norm tail
/// majorant of the BCH series, in closed geometric form.
inline double pnorm_tail_bound(const ConstantSet& c, double r, int first) {
    if (first < 1) throw std::invalid_argument("pnorm_tail_bound: first degree must be >= 1");
    if (!(r >= 0.0)) throw std::invalid_argument("pnorm_tail_bound: radius must be nonnegative");
    const double q = 4.0 * c.c_bracket * r;
    if (!(q < 1.0)) throw DomainError("4 C_b r", q, "1", 1.0);
    if (r == 0.0) return 0.0;
    const double ratio = std::pow(q, c.p);
    // First term: (2 C_tri)^p (4 C_b)^{p(N-1)} r^{pN} = (2 C_tri r)^p * ratio^{N-1}
    const double head = std::pow(2.0 * c.c_tri * r, c.p) * std::pow(ratio, first - 1);
    return head / (1.0 - ratio);
}

/// 1 / (1 - 4 C_b s): Lipschitz constant of Z(x, .) for s = ||x|| + max(||y||, ||z||).
inline double lipschitz_bound(const ConstantSet& c, double s) {
    if (!(s >= 0.0)) throw std::invalid_argument("lipschitz_bound: s must be nonnegative");
    const double u = 4.0 * c.c_bracket * s;
    if (!(u < 1.0)) throw DomainError("s", s, "1/(4 C_b)", 1.0 / (4.0 * c.c_bracket));
    return 1.0 / (1.0 - u);
}

/// Neumann series radius 2^{-1/p} = 1/c2 in the original quasi-norm.
inline double neumann_radius(const ConstantSet& c) { return 1.0 / c.c2; }

/// Resolvent bound 1 / (1 - 2^{1/p} ||T||) for ||T|| below the Neumann radius.
inline double neumann_resolvent_bound(const ConstantSet& c, double t_norm) {
    if (!(t_norm >= 0.0)) throw std::invalid_argument("neumann_resolvent_bound: norm must be nonnegative");
    if (!(t_norm < neumann_radius(c))) throw DomainError("||T||", t_norm, "2^{-1/p}", neumann_radius(c));
    return 1.0 / (1.0 - c.c2 * t_norm);
}

/// ||(mu - T)^{-1}|| <= 1 / (|mu| - 2^{1/p} alpha) for |mu| > 2^{1/p} alpha, ||T|| <= alpha.
inline double resolvent_bound(const ConstantSet& c, double alpha, double mu_abs) {
    const double edge = c.c2 * alpha;
    if (!(mu_abs > edge)) throw DomainError("2^{1/p} alpha", edge, "|mu|", mu_abs);
    return 1.0 / (mu_abs - edge);
}

struct SpectralBound {
    double bracket_bound = 0;                // C_b ||x||
    std::optional<double> associative_bound;  // 2 C_tri C_m ||x||
};

inline SpectralBound spectral_bound(const ConstantSet& c, double x_norm) {
    if (!(x_norm >= 0.0)) throw std::invalid_argument("spectral_bound: norm must be nonnegative");
    SpectralBound b;
    b.bracket_bound = c.c_bracket * x_norm;
    if (c.c_mult) b.associative_bound = 2.0 * c.c_tri * *c.c_mult * x_norm;
    return b;
}

/// Constants for a Lie subalgebra of the weak Schatten ideal L_{p,inf} with
/// ideal-type submultiplicativity constant c_ideal.
inline ConstantSet schatten_constants(double p, double c_ideal) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("schatten_constants: p must lie in (0, 1)");
    if (!(c_ideal > 0.0)) throw std::invalid_argument("schatten_constants: c_ideal must be positive");
    const double c_tri = std::exp2(1.0 / p - 1.0);
    return derive_constants(c_tri, c_ideal, 2.0 * c_tri * c_ideal);
}

}  // namespace qbch

#endif  // QBCH_BOUNDS_HPP
