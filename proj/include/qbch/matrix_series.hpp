// Power-series evaluation of exp, log(1 + .) and the Neumann inverse on matrices.

#ifndef QBCH_MATRIX_SERIES_HPP
#define QBCH_MATRIX_SERIES_HPP

#include "qbch/errors.hpp"
#include "qbch/matrix.hpp"
#include "qbch/quasinorm.hpp"

#include <cmath>
#include <string>

namespace qbch {

/// Increment tolerance used where the caller does not choose one.
inline constexpr double kSeriesTolerance = 1e-16;
inline constexpr int kSeriesIterationCap = 10000;

namespace detail {

/// Stopping measure for series increments. For the operator norm the Frobenius
/// norm is used, which dominates it and avoids an SVD per term.
inline double increment_norm(const DenseMatrix& m, const QuasiNormSpec& spec) {
    if (spec.kind == QuasiNormKind::operator_2norm) return m.frobenius();
    return quasi_norm(m, spec);
}

inline double spec_exponent(const QuasiNormSpec& spec) {
    return spec.kind == QuasiNormKind::operator_2norm ? 1.0 : spec.p;
}

}  // namespace detail

/// Partial sums of sum_k x^k / k! until the increment drops below tol.
inline DenseMatrix matrix_exp_series(const DenseMatrix& x, double tol = kSeriesTolerance,
                                     const QuasiNormSpec& spec = QuasiNormSpec::operator_norm()) {
    x.require_finite("matrix_exp_series");
    if (!(tol > 0.0)) throw std::invalid_argument("matrix_exp_series: tol must be positive");
    const int n = x.dim();
    DenseMatrix sum = DenseMatrix::identity(n);
    DenseMatrix term = DenseMatrix::identity(n);
    // Terms can grow while k < ||x||; do not stop before that.
    const double growth_edge = x.frobenius();
    double last = 0;
    for (int k = 1; k <= kSeriesIterationCap; ++k) {
        term = term * x;
        term *= 1.0 / k;
        if (!term.is_finite()) throw IterationLimitError("matrix_exp_series: overflow", k, HUGE_VAL);
        sum += term;
        last = detail::increment_norm(term, spec);
        if (last < tol && k >= growth_edge) return sum;
    }
    throw IterationLimitError("matrix_exp_series: no convergence", kSeriesIterationCap, last);
}

/// sum_k (-1)^{k+1} (m - I)^k / k, requiring ||m - I|| below the Neumann radius 2^{-1/p}.
inline DenseMatrix matrix_log_series(const DenseMatrix& m, double tol = kSeriesTolerance,
                                     const QuasiNormSpec& spec = QuasiNormSpec::operator_norm()) {
    m.require_finite("matrix_log_series");
    if (!(tol > 0.0)) throw std::invalid_argument("matrix_log_series: tol must be positive");
    const int n = m.dim();
    const DenseMatrix a = m - DenseMatrix::identity(n);
    const double radius = std::exp2(-1.0 / detail::spec_exponent(spec));
    const double a_norm = quasi_norm(a, spec);
    if (!(a_norm < radius)) throw DomainError("||m - I||", a_norm, "2^{-1/p}", radius);
    DenseMatrix sum(n);
    DenseMatrix power = DenseMatrix::identity(n);
    double last = 0;
    for (int k = 1; k <= kSeriesIterationCap; ++k) {
        power = power * a;
        DenseMatrix term = power;
        term *= (k % 2 == 1 ? 1.0 : -1.0) / k;
        sum += term;
        last = detail::increment_norm(term, spec);
        if (last < tol) return sum;
    }
    throw IterationLimitError("matrix_log_series: no convergence", kSeriesIterationCap, last);
}

/// (I - t)^{-1} = sum_k t^k under the sufficient condition ||t|| < 2^{-1/p}.
inline DenseMatrix neumann_inverse(const DenseMatrix& t, const QuasiNormSpec& spec, double tol = kSeriesTolerance) {
    t.require_finite("neumann_inverse");
    if (!(tol > 0.0)) throw std::invalid_argument("neumann_inverse: tol must be positive");
    const double radius = std::exp2(-1.0 / detail::spec_exponent(spec));
    const double t_norm = quasi_norm(t, spec);
    if (!(t_norm < radius)) throw DomainError("||T||", t_norm, "2^{-1/p}", radius);
    const int n = t.dim();
    DenseMatrix sum = DenseMatrix::identity(n);
    DenseMatrix power = DenseMatrix::identity(n);
    double last = 0;
    for (int k = 1; k <= kSeriesIterationCap; ++k) {
        power = power * t;
        sum += power;
        last = detail::increment_norm(power, spec);
        if (last < tol) return sum;
    }
    throw IterationLimitError("neumann_inverse: no convergence", kSeriesIterationCap, last);
}

}  // namespace qbch

#endif  // QBCH_MATRIX_SERIES_HPP
