// Singular values and the quasi-norms used on matrix stand-ins.

#ifndef QBCH_QUASINORM_HPP
#define QBCH_QUASINORM_HPP

#include "qbch/bounds.hpp"
#include "qbch/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbch {

inline constexpr int kMaxJacobiDim = 32;

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, unsorted.
inline std::vector<double> symmetric_eigenvalues(DenseMatrix a) {
    const int n = a.dim();
    if (n > kMaxJacobiDim) throw std::invalid_argument("symmetric_eigenvalues: dimension above 32");
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        double diag = 0;
        for (int i = 0; i < n; ++i) {
            diag += a(i, i) * a(i, i);
            for (int j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        }
        if (off == 0.0 || off <= 1e-32 * diag) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = a(i, i);
    return ev;
}

/// Singular values in decreasing order, from the eigenvalues of m^T m.
inline std::vector<double> singular_values(const DenseMatrix& m) {
    m.require_finite("singular_values");
    std::vector<double> ev = symmetric_eigenvalues(m.transpose() * m);
    for (double& v : ev) v = std::sqrt(std::max(v, 0.0));
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
}

enum class QuasiNormKind { entrywise_p, weak_schatten_p, operator_2norm };

struct QuasiNormSpec {
    QuasiNormKind kind = QuasiNormKind::operator_2norm;
    double p = 1.0;  // ignored for operator_2norm

    static QuasiNormSpec entrywise(double p) { return {QuasiNormKind::entrywise_p, p}; }
    static QuasiNormSpec weak_schatten(double p) { return {QuasiNormKind::weak_schatten_p, p}; }
    static QuasiNormSpec operator_norm() { return {QuasiNormKind::operator_2norm, 1.0}; }

    void validate() const {
        if (kind != QuasiNormKind::operator_2norm && !(p > 0.0 && p <= 1.0))
            throw std::invalid_argument("quasi-norm exponent p must lie in (0, 1], got " + std::to_string(p));
    }

    std::string name() const {
        switch (kind) {
            case QuasiNormKind::entrywise_p: return "entrywise_p(p=" + std::to_string(p) + ")";
            case QuasiNormKind::weak_schatten_p: return "weak_schatten_p(p=" + std::to_string(p) + ")";
            case QuasiNormKind::operator_2norm: return "operator_2norm";
        }
        return "?";
    }
};

inline QuasiNormKind parse_quasi_norm_kind(const std::string& s) {
    if (s == "entrywise_p" || s == "entrywise") return QuasiNormKind::entrywise_p;
    if (s == "weak_schatten_p" || s == "weak_schatten") return QuasiNormKind::weak_schatten_p;
    if (s == "operator_2norm" || s == "operator") return QuasiNormKind::operator_2norm;
    throw std::invalid_argument("unknown quasi-norm '" + s + "'");
}

inline double quasi_norm(const DenseMatrix& m, const QuasiNormSpec& spec) {
    spec.validate();
    m.require_finite("quasi_norm");
    switch (spec.kind) {
        case QuasiNormKind::entrywise_p: {
            if (spec.p == 1.0) {
                double s = 0;
                for (double v : m.entries()) s += std::abs(v);
                return s;
            }
            // Scale by the largest entry so the power sum neither overflows nor underflows.
            const double scale = m.max_abs();
            if (scale == 0.0) return 0.0;
            double s = 0;
            for (double v : m.entries()) s += std::pow(std::abs(v) / scale, spec.p);
            return scale * std::pow(s, 1.0 / spec.p);
        }
        case QuasiNormKind::weak_schatten_p: {
            const auto sv = singular_values(m);
            double best = 0;
            for (std::size_t k = 0; k < sv.size(); ++k)
                best = std::max(best, std::pow(static_cast<double>(k + 1), 1.0 / spec.p) * sv[k]);
            return best;
        }
        case QuasiNormKind::operator_2norm: return singular_values(m).front();
    }
    return 0.0;
}

/// Exact constants where they are known: the operator norm is a submultiplicative
/// norm; the entrywise p-norm is p-subadditive and submultiplicative in p-th
/// powers. Absent for the weak Schatten quasi-norm on matrices, whose constants
/// are measured instead.
inline std::optional<ConstantSet> theoretical_constants(const QuasiNormSpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case QuasiNormKind::operator_2norm: return derive_constants(1.0, 1.0, 2.0);
        case QuasiNormKind::entrywise_p: {
            const double c_tri = std::exp2(1.0 / spec.p - 1.0);
            return derive_constants(c_tri, 1.0, std::exp2(1.0 / spec.p));
        }
        case QuasiNormKind::weak_schatten_p: return std::nullopt;
    }
    return std::nullopt;
}

/// ||a + b||_p^p <= ||a||_p^p + ||b||_p^p + 1e-12 for the entrywise p-norm.
inline bool pnorm_subadditivity_check(const DenseMatrix& a, const DenseMatrix& b, double p) {
    if (a.dim() != b.dim()) throw std::invalid_argument("pnorm_subadditivity_check: dimension mismatch");
    QuasiNormSpec::entrywise(p).validate();
    auto pow_p = [p](const DenseMatrix& m) {
        m.require_finite("pnorm_subadditivity_check");
        double s = 0;
        for (double v : m.entries()) s += std::pow(std::abs(v), p);
        return s;
    };
    return pow_p(a + b) <= pow_p(a) + pow_p(b) + 1e-12;
}

}  // namespace qbch

#endif  // QBCH_QUASINORM_HPP
