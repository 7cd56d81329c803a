// BCH expansion log(e^X e^Y) in the free associative algebra, its projection
// onto the Lyndon basis of the free Lie algebra, and the coefficient sums and
// Catalan majorants built on top of it.

#ifndef QBCH_BCH_HPP
#define QBCH_BCH_HPP

#include "qbch/errors.hpp"
#include "qbch/freeseries.hpp"
#include "qbch/rational.hpp"
#include "qbch/words.hpp"

#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qbch {

/// Lie element of a fixed degree in Lyndon-basis coordinates; each key stands
/// for the bracketing of that Lyndon word.
struct LieCombination {
    int degree = 0;
    std::vector<std::pair<Word, Rational>> coords;  // sorted by word

    Rational coeff(Word w) const {
        for (const auto& [k, c] : coords)
            if (k == w) return c;
        return Rational(0);
    }

    friend bool operator==(const LieCombination&, const LieCombination&) = default;
};

/// Expands bracketed Lyndon words P(w) = [P(u), P(v)] into integer word
/// combinations. P(w) = w + (larger words of the same length), which is what
/// makes the projection triangular. Short expansions are memoized.
class BracketExpander {
public:
    /// (packed bits, coefficient) sorted by bits; all words have the same length.
    using Expansion = std::vector<std::pair<std::uint64_t, std::int64_t>>;

    explicit BracketExpander(int memo_limit = 14) : memo_limit_(memo_limit) {}

    std::shared_ptr<const Expansion> expand(Word lyndon) {
        if (lyndon.length() <= memo_limit_) {
            if (auto it = memo_.find(lyndon); it != memo_.end()) return it->second;
        }
        auto result = std::make_shared<const Expansion>(compute(lyndon));
        if (lyndon.length() <= memo_limit_) memo_.emplace(lyndon, result);
        return result;
    }

private:
    Expansion compute(Word w) {
        if (w.length() == 1) return {{w.bits(), 1}};
        const auto [u, v] = standard_factorization(w);
        const auto pu = expand(u);
        const auto pv = expand(v);
        const int n = w.length();
        auto& scratch = scratch_for(n);
        std::vector<std::uint64_t> touched;
        touched.reserve(2 * pu->size() * pv->size());
        const int lu = u.length();
        const int lv = v.length();
        for (const auto& [a, ca] : *pu) {
            for (const auto& [b, cb] : *pv) {
                const std::int64_t c = ca * cb;
                const std::uint64_t uv = (a << lv) | b;
                const std::uint64_t vu = (b << lu) | a;
                touched.push_back(uv);
                touched.push_back(vu);
                scratch[uv] += c;
                scratch[vu] -= c;
            }
        }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        Expansion out;
        for (std::uint64_t t : touched) {
            if (scratch[t] != 0) out.emplace_back(t, scratch[t]);
            scratch[t] = 0;
        }
        return out;
    }

    std::vector<std::int64_t>& scratch_for(int n) {
        if (static_cast<int>(scratch_.size()) <= n) scratch_.resize(static_cast<std::size_t>(n) + 1);
        auto& s = scratch_[static_cast<std::size_t>(n)];
        if (s.empty()) s.assign(std::size_t{1} << n, 0);
        return s;
    }

    int memo_limit_;
    std::unordered_map<Word, std::shared_ptr<const Expansion>> memo_;
    std::vector<std::vector<std::int64_t>> scratch_;
};

/// Sum of c_w * P(w) as a series truncated at max_degree.
inline FreeSeries expand_lie(const LieCombination& lie, int max_degree, BracketExpander& expander) {
    SeriesBuilder acc(max_degree);
    for (const auto& [w, c] : lie.coords) {
        if (w.length() > max_degree) continue;
        const auto expansion = expander.expand(w);
        for (const auto& [bits, d] : *expansion)
            acc.add_product(Word::from_bits(bits, w.length()), c, Rational(static_cast<long>(d)));
    }
    return std::move(acc).build();
}

inline FreeSeries expand_lie(const LieCombination& lie, int max_degree) {
    BracketExpander expander;
    return expand_lie(lie, max_degree, expander);
}

inline FreeSeries expand_tree(const BracketTree& t, int max_degree) {
    if (t.is_leaf()) return FreeSeries::letter(t.letter(), max_degree);
    return commutator(expand_tree(t.left(), max_degree), expand_tree(t.right(), max_degree));
}

/// log(e^X e^Y) truncated at max_degree.
inline FreeSeries bch_series(int max_degree, int degree_cap = kDefaultDegreeCap) {
    if (max_degree < 1 || max_degree > degree_cap)
        throw std::out_of_range("bch_series: degree " + std::to_string(max_degree) + " outside [1, " +
                                std::to_string(degree_cap) + "]");
    const FreeSeries x = FreeSeries::letter(Letter::X, max_degree);
    const FreeSeries y = FreeSeries::letter(Letter::Y, max_degree);
    return series_log(series_exp(x) * series_exp(y));
}

namespace detail {

/// Common degree of a homogeneous series; throws otherwise.
inline int homogeneous_degree(const FreeSeries& z, const char* op) {
    if (z.is_zero()) throw std::invalid_argument(std::string(op) + ": zero series has no degree");
    const int n = z.terms().front().first.length();
    if (z.terms().back().first.length() != n)
        throw std::invalid_argument(std::string(op) + ": series is not homogeneous");
    return n;
}

}  // namespace detail

/// A_n: l1 norm of the word coefficients of a homogeneous component.
inline Rational associative_sum(const FreeSeries& z_n) {
    if (z_n.is_zero()) return Rational(0);
    detail::homogeneous_degree(z_n, "associative_sum");
    Rational s(0);
    for (const auto& t : z_n.terms()) s += abs(t.second);
    return s;
}

struct LieProjectOptions {
    /// Run the coproduct (Friedrichs) test before projecting, up to this degree.
    int primitivity_check_limit = 12;
    int expander_memo_limit = 14;
};

/// Coordinates of a homogeneous Lie polynomial in the Lyndon basis.
///
/// Processes Lyndon words in increasing order: the coefficient of the current
/// word in the remainder is its coordinate, then the full expansion of its
/// bracketing is subtracted. Runs on integer numerators scaled by the common
/// denominator. A nonzero remainder at the end proves the input was not a Lie
/// element.
inline LieCombination lie_project(const FreeSeries& z_n, BracketExpander& expander,
                                  const LieProjectOptions& options = {}) {
    const int n = detail::homogeneous_degree(z_n, "lie_project");
    if (n > 26) throw std::out_of_range("lie_project: degree too large for dense elimination");
    if (n <= options.primitivity_check_limit) {
        const Rational defect = coproduct_primitivity_defect(z_n);
        if (sgn(defect) != 0)
            throw NotALieElementError("lie_project: primitivity defect " + defect.get_str() + " at degree " +
                                      std::to_string(n));
    }
    BigInt common(1);
    for (const auto& t : z_n.terms()) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), t.second.get_den_mpz_t());
    std::vector<BigInt> rem(std::size_t{1} << n);
    for (const auto& [w, c] : z_n.terms()) rem[w.bits()] = c.get_num() * (common / c.get_den());

    LieCombination out;
    out.degree = n;
    for (Word l : lyndon_words(n, Word::kMaxLength)) {
        const BigInt c = rem[l.bits()];
        if (sgn(c) == 0) continue;
        out.coords.emplace_back(l, Rational(c, common));
        out.coords.back().second.canonicalize();
        const auto expansion = expander.expand(l);
        for (const auto& [bits, d] : *expansion) {
            if (d > 0)
                mpz_submul_ui(rem[bits].get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(d));
            else
                mpz_addmul_ui(rem[bits].get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(-d));
        }
        if (sgn(rem[l.bits()]) != 0) throw std::logic_error("lie_project: bracket expansion is not unitriangular");
    }
    for (std::size_t i = 0; i < rem.size(); ++i)
        if (sgn(rem[i]) != 0)
            throw NotALieElementError("lie_project: remainder nonzero at word " +
                                      Word::from_bits(i, n).str() + " after Lyndon elimination");
    return out;
}

inline LieCombination lie_project(const FreeSeries& z_n, const LieProjectOptions& options = {}) {
    BracketExpander expander(options.expander_memo_limit);
    return lie_project(z_n, expander, options);
}

/// B_n: l1 norm of Lyndon coordinates.
inline Rational lie_sum(const LieCombination& c) {
    Rational s(0);
    for (const auto& kv : c.coords) s += abs(kv.second);
    return s;
}

inline BigInt catalan(long n) {
    if (n < 0) throw std::out_of_range("catalan: negative index");
    BigInt b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(2 * n), static_cast<unsigned long>(n));
    return b / (n + 1);
}

/// 4^{n-1} / n, the majorant column.
inline Rational catalan_bound(int n) {
    if (n < 1) throw std::out_of_range("catalan_bound: degree must be positive");
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 4, static_cast<unsigned long>(n - 1));
    Rational q(p, BigInt(n));
    q.canonicalize();
    return q;
}

/// sum_{k=1}^{n-1} C_{k-1} C_{n-k-1} == C_{n-1}
inline bool catalan_convolution_check(int n) {
    if (n < 2) throw std::out_of_range("catalan_convolution_check: n must be >= 2");
    BigInt s(0);
    for (int k = 1; k <= n - 1; ++k) s += catalan(k - 1) * catalan(n - k - 1);
    return s == catalan(n - 1);
}

struct DynkinBoundResult {
    int degree = 0;
    Rational lhs;  // lie_sum of the degree-n projection
    BigInt rhs;    // C_{n-1}
    bool holds = false;
    /// Coefficient sum when x + y at degree 1 is counted as one leaf tree.
    Rational single_leaf_lhs;
};

inline DynkinBoundResult dynkin_bound_check(const LieCombination& z_n) {
    DynkinBoundResult r;
    r.degree = z_n.degree;
    r.lhs = lie_sum(z_n);
    r.rhs = catalan(z_n.degree - 1);
    r.holds = r.lhs <= Rational(r.rhs);
    r.single_leaf_lhs = z_n.degree == 1 ? Rational(1) : r.lhs;
    return r;
}

inline DynkinBoundResult dynkin_bound_check(int n, int degree_cap = kDefaultDegreeCap) {
    const FreeSeries z = bch_series(n, degree_cap);
    return dynkin_bound_check(lie_project(homogeneous_component(z, n)));
}

struct CoefficientRow {
    int degree = 0;
    Rational a_n;
    std::optional<Rational> b_n;  // absent above the projection limit
    Rational catalan_bound;
    bool primitivity_checked = false;  // coproduct defect computed and zero
    bool reexpansion_checked = false;  // expand(lie_project(Z_n)) == Z_n verified
};

struct TableOptions {
    int degree_cap = kDefaultDegreeCap;
    /// Highest degree projected onto the Lyndon basis (B_n column).
    int lie_max_degree = 12;
    /// Highest degree certified by the coproduct test and re-expansion.
    int certify_max_degree = 12;
};

/// Everything derived from one BCH expansion.
struct BchData {
    int max_degree = 0;
    FreeSeries series{0};
    std::vector<FreeSeries> components;  // components[n-1] = Z_n
    std::vector<LieCombination> lie;     // lie[n-1] for n <= lie_max_degree
    std::vector<CoefficientRow> rows;
};

inline BchData compute_bch_data(int max_degree, const TableOptions& options = {}) {
    BchData data;
    data.max_degree = max_degree;
    data.series = bch_series(max_degree, options.degree_cap);
    BracketExpander expander;
    for (int n = 1; n <= max_degree; ++n) {
        data.components.push_back(homogeneous_component(data.series, n));
        const FreeSeries& zn = data.components.back();
        CoefficientRow row;
        row.degree = n;
        row.a_n = associative_sum(zn);
        row.catalan_bound = catalan_bound(n);
        if (n <= options.lie_max_degree) {
            const bool certify = n <= options.certify_max_degree;
            LieProjectOptions lp;
            lp.primitivity_check_limit = certify ? n : 0;
            LieCombination lie = lie_project(zn, expander, lp);
            row.primitivity_checked = certify;
            if (certify) {
                if (expand_lie(lie, max_degree, expander) != zn)
                    throw std::logic_error("re-expansion of degree " + std::to_string(n) + " projection differs");
                row.reexpansion_checked = true;
            }
            row.b_n = lie_sum(lie);
            data.lie.push_back(std::move(lie));
        }
        data.rows.push_back(std::move(row));
    }
    return data;
}

inline std::vector<CoefficientRow> coefficient_table(int max_degree, const TableOptions& options = {}) {
    return compute_bch_data(max_degree, options).rows;
}

/// Lyndon-basis forms of Z_1 .. Z_n (index n-1).
inline std::vector<LieCombination> bch_lie_basis(int max_degree, int degree_cap = kDefaultDegreeCap) {
    TableOptions opts;
    opts.degree_cap = degree_cap;
    opts.lie_max_degree = max_degree;
    opts.certify_max_degree = 0;
    return compute_bch_data(max_degree, opts).lie;
}

/// Checks Z(-Y, -X) = -Z(X, Y) exactly on a truncated expansion.
inline bool bch_symmetry_holds(const FreeSeries& z) { return swap_letters(z, -1) == -z; }

struct DynkinRecursionReport {
    int degree = 0;
    bool agrees = false;
    Rational recursion_l1;  // l1 norm of the recursion's value
    Rational actual_l1;     // A_n
};

/// Evaluates (1/n) sum_{k=1}^{n-1} ([Z_k, Z_{n-k}] - [Z_{n-k}, Z_k]) from the true
/// lower components and compares it with Z_n.
inline DynkinRecursionReport dynkin_recursion_check(const std::vector<FreeSeries>& components, int n) {
    if (n < 2 || n > static_cast<int>(components.size()))
        throw std::out_of_range("dynkin_recursion_check: degree out of range");
    const int d = components.front().max_degree();
    FreeSeries sum(d);
    for (int k = 1; k <= n - 1; ++k) {
        const FreeSeries& a = components[static_cast<std::size_t>(k - 1)];
        const FreeSeries& b = components[static_cast<std::size_t>(n - k - 1)];
        sum = sum + commutator(a, b) - commutator(b, a);
    }
    sum = series_scale(sum, Rational(1, n));
    DynkinRecursionReport r;
    r.degree = n;
    r.agrees = sum == components[static_cast<std::size_t>(n - 1)];
    r.recursion_l1 = associative_sum(sum);
    r.actual_l1 = associative_sum(components[static_cast<std::size_t>(n - 1)]);
    return r;
}

/// sum_{n=1}^{terms} C_{n-1} t^n, exactly.
inline Rational catalan_gf_partial_sum(int terms, const Rational& t) {
    Rational s(0);
    Rational power = t;
    for (int n = 1; n <= terms; ++n) {
        s += Rational(catalan(n - 1)) * power;
        power *= t;
    }
    return s;
}

/// Closed form (1 - sqrt(1 - 4t)) / 2 of the Catalan generating function, t <= 1/4.
inline double catalan_gf_closed_form(double t) { return (1.0 - std::sqrt(1.0 - 4.0 * t)) / 2.0; }

}  // namespace qbch

#endif  // QBCH_BCH_HPP
