// Truncated BCH evaluation on matrices: group-law and associativity residuals
// and the fixed-point solver for the local inverse.

#ifndef QBCH_BCH_EVAL_HPP
#define QBCH_BCH_EVAL_HPP

#include "qbch/bch.hpp"
#include "qbch/bounds.hpp"
#include "qbch/errors.hpp"
#include "qbch/matrix.hpp"
#include "qbch/matrix_series.hpp"
#include "qbch/quasinorm.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <vector>

namespace qbch {

/// Coefficient conversion: nearest double for floating types, exact
/// construction otherwise (e.g. mpf_class).
template <class T>
T scalar_from_rational(const Rational& q) {
    if constexpr (std::is_floating_point_v<T>)
        return static_cast<T>(q.get_d());
    else
        return T(q);
}

/// Lyndon-basis forms of Z_1..Z_N, computed once per process and extended on demand.
inline std::shared_ptr<const std::vector<LieCombination>> shared_bch_basis(int max_degree) {
    static std::mutex mutex;
    static std::shared_ptr<const std::vector<LieCombination>> cache;
    std::lock_guard lock(mutex);
    if (!cache || static_cast<int>(cache->size()) < max_degree)
        cache = std::make_shared<const std::vector<LieCombination>>(bch_lie_basis(max_degree));
    return cache;
}

/// Substitutes matrices into the Lyndon-basis form of each Z_n, evaluating
/// bracketed Lyndon words as nested commutators.
class BchEvaluator {
public:
    explicit BchEvaluator(std::vector<LieCombination> basis) : basis_(std::move(basis)) {
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i].degree != static_cast<int>(i) + 1)
                throw std::invalid_argument("BchEvaluator: basis entry " + std::to_string(i) + " has wrong degree");
        for (int n = 2; n <= max_degree(); ++n)
            for (Word w : lyndon_words(n, Word::kMaxLength)) factors_.emplace(w, standard_factorization(w));
    }

    /// Evaluator over the shared basis of Z_1..Z_N.
    static BchEvaluator up_to(int max_degree) {
        auto basis = shared_bch_basis(max_degree);
        return BchEvaluator(std::vector<LieCombination>(basis->begin(), basis->begin() + max_degree));
    }

    int max_degree() const { return static_cast<int>(basis_.size()); }
    const std::vector<LieCombination>& basis() const { return basis_; }

    /// Z_1(x, y) .. Z_N(x, y).
    template <class T>
    std::vector<BasicMatrix<T>> components(const BasicMatrix<T>& x, const BasicMatrix<T>& y, int n_max) const {
        if (x.dim() != y.dim()) throw std::invalid_argument("bch_evaluate: dimension mismatch");
        if (n_max < 1 || n_max > max_degree())
            throw std::out_of_range("bch_evaluate: truncation " + std::to_string(n_max) + " outside [1, " +
                                    std::to_string(max_degree()) + "]");
        std::unordered_map<Word, BasicMatrix<T>> memo;
        memo.emplace(Word::letter(Letter::X), x);
        memo.emplace(Word::letter(Letter::Y), y);
        std::vector<BasicMatrix<T>> out;
        out.reserve(static_cast<std::size_t>(n_max));
        for (int n = 1; n <= n_max; ++n) {
            BasicMatrix<T> z(x.dim());
            for (const auto& [w, c] : basis_[static_cast<std::size_t>(n - 1)].coords)
                z += scalar_from_rational<T>(c) * bracket(w, memo);
            out.push_back(std::move(z));
        }
        return out;
    }

    template <class T>
    BasicMatrix<T> evaluate(const BasicMatrix<T>& x, const BasicMatrix<T>& y, int n_max) const {
        BasicMatrix<T> z(x.dim());
        for (const auto& c : components(x, y, n_max)) z += c;
        return z;
    }

private:
    template <class T>
    const BasicMatrix<T>& bracket(Word w, std::unordered_map<Word, BasicMatrix<T>>& memo) const {
        if (auto it = memo.find(w); it != memo.end()) return it->second;
        const Factorization& f = factors_.at(w);
        BasicMatrix<T> value = commutator(bracket(f.left, memo), bracket(f.right, memo));
        return memo.emplace(w, std::move(value)).first->second;
    }

    std::vector<LieCombination> basis_;
    std::unordered_map<Word, Factorization> factors_;
};

/// Z_1 + ... + Z_N evaluated at (x, y).
inline DenseMatrix bch_evaluate(const DenseMatrix& x, const DenseMatrix& y, int n_max, const BchEvaluator& ev) {
    return ev.evaluate(x, y, n_max);
}

inline DenseMatrix bch_evaluate(const DenseMatrix& x, const DenseMatrix& y, int n_max,
                                const std::vector<LieCombination>& basis) {
    return BchEvaluator(basis).evaluate(x, y, n_max);
}

struct GroupLawReport {
    double residual = 0;        // ||exp(Z_N(x, y)) - exp(x) exp(y)||
    int truncation_degree = 0;
    bool radius_check = false;  // ||x|| + ||y|| < 1/(4 C_b)
    double norm_sum = 0;
    double radius = 0;
};

inline GroupLawReport group_law_check(const DenseMatrix& x, const DenseMatrix& y, int n_max, const QuasiNormSpec& spec,
                                      const BchEvaluator& ev, std::optional<ConstantSet> constants = std::nullopt) {
    if (!constants) constants = theoretical_constants(spec);
    GroupLawReport r;
    r.truncation_degree = n_max;
    const DenseMatrix z = ev.evaluate(x, y, n_max);
    const DenseMatrix lhs = matrix_exp_series(z);
    const DenseMatrix rhs = matrix_exp_series(x) * matrix_exp_series(y);
    r.residual = quasi_norm(lhs - rhs, spec);
    r.norm_sum = quasi_norm(x, spec) + quasi_norm(y, spec);
    if (constants) {
        r.radius = radii(*constants).r_bch;
        r.radius_check = r.norm_sum < r.radius;
    }
    return r;
}

template <class T>
DenseMatrix to_dense(const BasicMatrix<T>& m) {
    std::vector<double> e;
    e.reserve(m.entries().size());
    for (const T& v : m.entries()) {
        if constexpr (std::is_floating_point_v<T>)
            e.push_back(static_cast<double>(v));
        else
            e.push_back(v.get_d());
    }
    return DenseMatrix(m.dim(), std::move(e));
}

/// ||Z_N(Z_N(x, y), z) - Z_N(x, Z_N(y, z))||, evaluated in scalar type T.
template <class T = double>
double associativity_residual(const DenseMatrix& x, const DenseMatrix& y, const DenseMatrix& z, int n_max,
                              const QuasiNormSpec& spec, const BchEvaluator& ev) {
    const auto X = x.template cast<T>();
    const auto Y = y.template cast<T>();
    const auto W = z.template cast<T>();
    const auto left = ev.evaluate(ev.evaluate(X, Y, n_max), W, n_max);
    const auto right = ev.evaluate(X, ev.evaluate(Y, W, n_max), n_max);
    return quasi_norm(to_dense(left - right), spec);
}

/// Sets the default GMP float precision for the lifetime of the guard.
class MpfPrecisionGuard {
public:
    explicit MpfPrecisionGuard(mp_bitcnt_t bits) : saved_(mpf_get_default_prec()) { mpf_set_default_prec(bits); }
    ~MpfPrecisionGuard() { mpf_set_default_prec(saved_); }
    MpfPrecisionGuard(const MpfPrecisionGuard&) = delete;
    MpfPrecisionGuard& operator=(const MpfPrecisionGuard&) = delete;

private:
    mp_bitcnt_t saved_;
};

inline constexpr int kExtendedPrecisionBits = 256;

/// Associativity residual with the inputs rounded exactly into GMP floats of
/// `bits` precision. Truncation residuals at desk-scale radii sit far below
/// double rounding error, so their decay in N is only visible here.
inline double associativity_residual_extended(const DenseMatrix& x, const DenseMatrix& y, const DenseMatrix& z,
                                              int n_max, const QuasiNormSpec& spec, const BchEvaluator& ev,
                                              int bits = kExtendedPrecisionBits) {
    MpfPrecisionGuard guard(static_cast<mp_bitcnt_t>(bits));
    return associativity_residual<mpf_class>(x, y, z, n_max, spec, ev);
}

struct InverseSolverOptions {
    int degree = 12;
    double tol = 1e-12;
    int max_iter = 200;
    QuasiNormSpec spec = QuasiNormSpec::operator_norm();
    /// Starting point; -x when absent.
    std::optional<DenseMatrix> initial_guess;
    /// Update norms below noise_floor * ||x|| are excluded from ratio measurement.
    double noise_floor = 1e-12;
};

struct InverseResult {
    DenseMatrix w;
    int iterations = 0;
    std::vector<double> update_norms;
    std::vector<double> contraction_ratios;  // successive update-norm ratios above the noise floor
    double observed_ratio = 0;               // max of contraction_ratios, 0 if none
    double x_norm = 0;
    double u = 0;                            // 4 C_b (1 + 2 C_tri) ||x||
    double predicted_ratio = 0;              // u / (1 - u)
    double rho_inv = 0;
    double rho = 0;
    double distance_to_minus_x = 0;
    double post_check_residual = 0;          // ||Z_N(x, w)||
    bool post_check_passed = false;          // post_check_residual < 10 tol
    std::vector<std::string> warnings;
};

/// Fixed-point iteration w <- -x - sum_{n=2}^N Z_n(x, w) for the inverse of x
/// in the local group.
inline InverseResult bch_inverse_solver(const DenseMatrix& x, const ConstantSet& c, const BchEvaluator& ev,
                                        const InverseSolverOptions& opt = {}) {
    if (opt.max_iter < 1) throw std::invalid_argument("bch_inverse_solver: max_iter must be positive");
    if (!(opt.tol > 0.0)) throw std::invalid_argument("bch_inverse_solver: tol must be positive");
    const auto& spec = opt.spec;
    InverseResult r;
    const auto rad = radii(c);
    r.rho = rad.rho;
    r.rho_inv = rad.rho_inv;
    r.x_norm = quasi_norm(x, spec);
    r.u = 4.0 * c.c_bracket * (1.0 + 2.0 * c.c_tri) * r.x_norm;
    r.predicted_ratio = r.u < 1.0 ? r.u / (1.0 - r.u) : HUGE_VAL;
    if (!(r.x_norm < r.rho)) throw DomainError("||x||", r.x_norm, "rho = 1/(8 C_b)", r.rho);
    if (!(r.x_norm < r.rho_inv))
        r.warnings.push_back("||x|| = " + std::to_string(r.x_norm) + " lies between rho_inv = " +
                             std::to_string(r.rho_inv) + " and rho = " + std::to_string(r.rho) +
                             "; convergence is not guaranteed");

    if (x.is_zero()) {
        r.w = DenseMatrix(x.dim());
        r.post_check_passed = true;
        return r;
    }

    DenseMatrix w = opt.initial_guess ? *opt.initial_guess : -x;
    if (w.dim() != x.dim()) throw std::invalid_argument("bch_inverse_solver: initial guess dimension mismatch");
    if (opt.initial_guess && quasi_norm(w + x, spec) > r.x_norm)
        r.warnings.push_back("initial guess lies outside the closed ball B(-x, ||x||)");

    const double floor = opt.noise_floor * r.x_norm;
    double last = HUGE_VAL;
    for (int k = 1; k <= opt.max_iter; ++k) {
        const auto comps = ev.components(x, w, opt.degree);
        DenseMatrix next = -x;
        for (std::size_t n = 1; n < comps.size(); ++n) next -= comps[n];
        if (!next.is_finite()) throw IterationLimitError("bch_inverse_solver: iterate diverged", k, HUGE_VAL);
        const double step = quasi_norm(next - w, spec);
        if (!r.update_norms.empty()) {
            const double prev = r.update_norms.back();
            if (prev > floor && step > floor) r.contraction_ratios.push_back(step / prev);
        }
        r.update_norms.push_back(step);
        w = std::move(next);
        r.iterations = k;
        last = step;
        if (step < opt.tol) break;
    }
    if (!(last < opt.tol))
        throw IterationLimitError("bch_inverse_solver: no convergence after " + std::to_string(opt.max_iter) +
                                      " iterations",
                                  opt.max_iter, last);
    for (double q : r.contraction_ratios) r.observed_ratio = std::max(r.observed_ratio, q);
    r.distance_to_minus_x = quasi_norm(w + x, spec);
    r.post_check_residual = quasi_norm(ev.evaluate(x, w, opt.degree), spec);
    r.post_check_passed = r.post_check_residual < 10.0 * opt.tol;
    r.w = std::move(w);
    return r;
}

}  // namespace qbch

#endif  // QBCH_BCH_EVAL_HPP
