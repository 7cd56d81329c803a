// Degree-truncated formal series in two noncommuting variables with exact
// rational coefficients.

#ifndef QBCH_FREESERIES_HPP
#define QBCH_FREESERIES_HPP

#include "qbch/rational.hpp"
#include "qbch/words.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qbch {

/// Sparse series sum_w c_w w truncated at max_degree. Terms are kept sorted in
/// Word order with no zero coefficients, so equality is structural.
class FreeSeries {
public:
    using Term = std::pair<Word, Rational>;

    explicit FreeSeries(int max_degree) : max_degree_(check_degree(max_degree)) {}

    static FreeSeries one(int max_degree) { return monomial(Word(), Rational(1), max_degree); }

    static FreeSeries letter(Letter l, int max_degree) { return monomial(Word::letter(l), Rational(1), max_degree); }

    static FreeSeries monomial(Word w, const Rational& c, int max_degree) {
        return from_terms(max_degree, {Term{w, c}});
    }

    /// Sorts, merges duplicate words and drops zeros. Words longer than
    /// max_degree are rejected rather than truncated.
    static FreeSeries from_terms(int max_degree, std::vector<Term> terms) {
        FreeSeries s(max_degree);
        for (const auto& [w, c] : terms)
            if (w.length() > max_degree)
                throw std::invalid_argument("word '" + w.str() + "' exceeds truncation degree " +
                                            std::to_string(max_degree));
        for (auto& t : terms) t.second.canonicalize();
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
        for (auto& t : terms) {
            if (!s.terms_.empty() && s.terms_.back().first == t.first)
                s.terms_.back().second += t.second;
            else
                s.terms_.push_back(std::move(t));
        }
        std::erase_if(s.terms_, [](const Term& t) { return sgn(t.second) == 0; });
        return s;
    }

    /// Parses e.g. "X + Y + 1/2 XY - 1/2 YX" (whitespace-separated coefficient
    /// and word; "1" denotes the empty word).
    static FreeSeries parse(const std::string& text, int max_degree);

    int max_degree() const { return max_degree_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    Rational coeff(Word w) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), w,
                                   [](const Term& t, Word key) { return t.first < key; });
        return it != terms_.end() && it->first == w ? it->second : Rational(0);
    }

    Rational constant_term() const { return coeff(Word()); }

    /// Smallest word length carrying a nonzero coefficient (-1 for zero).
    int min_degree() const { return terms_.empty() ? -1 : terms_.front().first.length(); }

    std::string str() const;

    friend bool operator==(const FreeSeries& a, const FreeSeries& b) {
        return a.max_degree_ == b.max_degree_ && a.terms_ == b.terms_;
    }

private:
    friend class SeriesBuilder;

    static int check_degree(int d) {
        if (d < 0 || d > Word::kMaxLength) throw std::out_of_range("truncation degree out of range");
        return d;
    }

    int max_degree_;
    std::vector<Term> terms_;
};

/// Accumulates coefficients per word and emits a canonical FreeSeries.
/// Short degrees use dense buffers indexed by the packed bits.
class SeriesBuilder {
public:
    explicit SeriesBuilder(int max_degree)
        : max_degree_(max_degree),
          dense_(static_cast<std::size_t>(max_degree) + 1),
          sparse_(static_cast<std::size_t>(max_degree) + 1) {}

    void add(Word w, const Rational& c) {
        if (w.length() > max_degree_) return;
        mpq_add(slot(w).get_mpq_t(), slot(w).get_mpq_t(), c.get_mpq_t());
    }

    /// slot(w) += a * b
    void add_product(Word w, const Rational& a, const Rational& b) {
        if (w.length() > max_degree_) return;
        mpq_mul(scratch_.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
        Rational& s = slot(w);
        mpq_add(s.get_mpq_t(), s.get_mpq_t(), scratch_.get_mpq_t());
    }

    FreeSeries build() && {
        FreeSeries out(max_degree_);
        for (int n = 0; n <= max_degree_; ++n) {
            auto& dense = dense_[static_cast<std::size_t>(n)];
            for (std::size_t i = 0; i < dense.size(); ++i)
                if (sgn(dense[i]) != 0)
                    out.terms_.emplace_back(Word::from_bits(i, n), std::move(dense[i]));
            auto& sparse = sparse_[static_cast<std::size_t>(n)];
            std::vector<std::pair<std::uint64_t, Rational>> items;
            items.reserve(sparse.size());
            for (auto& [bits, c] : sparse)
                if (sgn(c) != 0) items.emplace_back(bits, std::move(c));
            std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            for (auto& [bits, c] : items) out.terms_.emplace_back(Word::from_bits(bits, n), std::move(c));
        }
        return out;
    }

private:
    static constexpr int kDenseLimit = 22;

    Rational& slot(Word w) {
        const auto n = static_cast<std::size_t>(w.length());
        if (w.length() <= kDenseLimit) {
            auto& dense = dense_[n];
            if (dense.empty()) dense.resize(std::size_t{1} << n);
            return dense[w.bits()];
        }
        return sparse_[n][w.bits()];
    }

    int max_degree_;
    std::vector<std::vector<Rational>> dense_;
    std::vector<std::unordered_map<std::uint64_t, Rational>> sparse_;
    Rational scratch_;
};

namespace detail {

inline void require_same_degree(const FreeSeries& a, const FreeSeries& b, const char* op) {
    if (a.max_degree() != b.max_degree())
        throw std::invalid_argument(std::string(op) + ": truncation degrees differ (" +
                                    std::to_string(a.max_degree()) + " vs " + std::to_string(b.max_degree()) + ")");
}

/// Product truncated at `limit` (<= max degree); result keeps a's max degree.
inline FreeSeries mul_truncated(const FreeSeries& a, const FreeSeries& b, int limit) {
    SeriesBuilder acc(a.max_degree());
    const auto& bt = b.terms();
    for (const auto& [u, cu] : a.terms()) {
        const int room = limit - u.length();
        if (room < 0) break;
        for (const auto& [v, cv] : bt) {
            if (v.length() > room) break;
            acc.add_product(u + v, cu, cv);
        }
    }
    return std::move(acc).build();
}

inline FreeSeries truncate(const FreeSeries& a, int limit) {
    if (limit >= a.max_degree()) return a;
    std::vector<FreeSeries::Term> kept;
    for (const auto& t : a.terms()) {
        if (t.first.length() > limit) break;
        kept.push_back(t);
    }
    return FreeSeries::from_terms(a.max_degree(), std::move(kept));
}

}  // namespace detail

inline FreeSeries series_scale(const FreeSeries& a, const Rational& c) {
    std::vector<FreeSeries::Term> terms;
    if (sgn(c) != 0) {
        terms.reserve(a.size());
        for (const auto& [w, x] : a.terms()) terms.emplace_back(w, x * c);
    }
    return FreeSeries::from_terms(a.max_degree(), std::move(terms));
}

inline FreeSeries series_add(const FreeSeries& a, const FreeSeries& b) {
    detail::require_same_degree(a, b, "series_add");
    std::vector<FreeSeries::Term> terms;
    terms.reserve(a.size() + b.size());
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    while (ia != a.terms().end() || ib != b.terms().end()) {
        if (ib == b.terms().end() || (ia != a.terms().end() && ia->first < ib->first)) {
            terms.push_back(*ia++);
        } else if (ia == a.terms().end() || ib->first < ia->first) {
            terms.push_back(*ib++);
        } else {
            Rational s = ia->second + ib->second;
            if (sgn(s) != 0) terms.emplace_back(ia->first, std::move(s));
            ++ia;
            ++ib;
        }
    }
    return FreeSeries::from_terms(a.max_degree(), std::move(terms));
}

inline FreeSeries series_sub(const FreeSeries& a, const FreeSeries& b) {
    detail::require_same_degree(a, b, "series_sub");
    return series_add(a, series_scale(b, Rational(-1)));
}

inline FreeSeries series_mul(const FreeSeries& a, const FreeSeries& b) {
    detail::require_same_degree(a, b, "series_mul");
    return detail::mul_truncated(a, b, a.max_degree());
}

inline FreeSeries operator+(const FreeSeries& a, const FreeSeries& b) { return series_add(a, b); }
inline FreeSeries operator-(const FreeSeries& a, const FreeSeries& b) { return series_sub(a, b); }
inline FreeSeries operator-(const FreeSeries& a) { return series_scale(a, Rational(-1)); }
inline FreeSeries operator*(const FreeSeries& a, const FreeSeries& b) { return series_mul(a, b); }
inline FreeSeries operator*(const Rational& c, const FreeSeries& a) { return series_scale(a, c); }

/// [a, b] = ab - ba
inline FreeSeries commutator(const FreeSeries& a, const FreeSeries& b) { return a * b - b * a; }

/// Horner evaluation of sum_k a^k / k!. Each nested level is truncated to the
/// degree it can still reach once multiplied by the remaining powers of a.
inline FreeSeries series_exp(const FreeSeries& a) {
    if (sgn(a.constant_term()) != 0) throw std::invalid_argument("series_exp: nonzero constant term");
    const int d = a.max_degree();
    FreeSeries one = FreeSeries::one(d);
    if (a.is_zero()) return one;
    const int m = a.min_degree();
    const int top = d / m;
    FreeSeries h = one;
    for (int k = top; k >= 1; --k) {
        const int limit = d - (k - 1) * m;
        FreeSeries ah = detail::mul_truncated(a, h, limit);
        h = one + series_scale(ah, Rational(1, k));
    }
    return h;
}

/// Horner evaluation of log(a) = sum_k (-1)^{k+1} (a-1)^k / k.
inline FreeSeries series_log(const FreeSeries& a) {
    if (a.constant_term() != 1) throw std::invalid_argument("series_log: constant term must be exactly 1");
    const int d = a.max_degree();
    FreeSeries b = a - FreeSeries::one(d);
    if (b.is_zero()) return FreeSeries(d);
    const int m = b.min_degree();
    const int top = d / m;
    auto coefficient = [](int k) { return Rational(k % 2 == 1 ? 1 : -1, k); };
    FreeSeries h = FreeSeries::monomial(Word(), coefficient(top), d);
    for (int k = top - 1; k >= 1; --k) {
        const int limit = d - k * m;
        FreeSeries bh = detail::mul_truncated(b, h, limit);
        h = FreeSeries::monomial(Word(), coefficient(k), d) + bh;
    }
    return detail::mul_truncated(b, h, d);
}

inline FreeSeries homogeneous_component(const FreeSeries& a, int n) {
    if (n < 0 || n > a.max_degree())
        throw std::out_of_range("homogeneous_component: degree " + std::to_string(n) + " outside [0, " +
                                std::to_string(a.max_degree()) + "]");
    std::vector<FreeSeries::Term> terms;
    for (const auto& t : a.terms())
        if (t.first.length() == n) terms.push_back(t);
    return FreeSeries::from_terms(a.max_degree(), std::move(terms));
}

/// Coefficient-wise image under X -> Y, Y -> X, each letter also scaled by `sign`.
inline FreeSeries swap_letters(const FreeSeries& a, int sign = 1) {
    std::vector<FreeSeries::Term> terms;
    terms.reserve(a.size());
    for (const auto& [w, c] : a.terms()) {
        const bool flip = sign < 0 && (w.length() % 2 == 1);
        terms.emplace_back(w.swapped(), flip ? Rational(-c) : c);
    }
    return FreeSeries::from_terms(a.max_degree(), std::move(terms));
}

/// l1 norm of Delta(a) - a(x)1 - 1(x)a under the unshuffle coproduct, where
/// Delta(letter) = letter(x)1 + 1(x)letter. Zero exactly when a is a Lie element.
///
/// A word w of length n contributes its coefficient to every pair (u, v) obtained
/// by sending each letter of w to u or to v; the two splits with u or v empty
/// cancel against a(x)1 and 1(x)a. Work is done per degree on integer numerators
/// scaled by the common denominator.
inline Rational coproduct_primitivity_defect(const FreeSeries& a) {
    if (sgn(a.constant_term()) != 0)
        throw std::invalid_argument("coproduct_primitivity_defect: nonzero constant term");
    Rational total(0);
    const auto& terms = a.terms();
    std::size_t begin = 0;
    while (begin < terms.size()) {
        const int n = terms[begin].first.length();
        std::size_t end = begin;
        BigInt lcm_den(1);
        while (end < terms.size() && terms[end].first.length() == n) {
            mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), terms[end].second.get_den_mpz_t());
            ++end;
        }
        if (n >= 2) {
            if (n > 24) throw std::out_of_range("coproduct_primitivity_defect: degree too large to enumerate");
            const std::size_t block = std::size_t{1} << n;
            // acc[k * block + ((u << (n - k)) | v)] for |u| = k in [1, n-1]
            std::vector<BigInt> acc(static_cast<std::size_t>(n) * block);
            for (std::size_t i = begin; i < end; ++i) {
                const Word w = terms[i].first;
                BigInt scaled = terms[i].second.get_num() * (lcm_den / terms[i].second.get_den());
                const std::uint64_t bits = w.bits();
                // Depth-first over letters: each letter goes to u or v.
                auto visit = [&](auto&& self, int pos, std::uint64_t u, int ulen, std::uint64_t v) -> void {
                    if (pos == n) {
                        if (ulen == 0 || ulen == n) return;
                        const std::size_t idx = static_cast<std::size_t>(ulen) * block +
                                                static_cast<std::size_t>((u << (n - ulen)) | v);
                        acc[idx] += scaled;
                        return;
                    }
                    const std::uint64_t bit = (bits >> (n - 1 - pos)) & 1u;
                    self(self, pos + 1, (u << 1) | bit, ulen + 1, v);
                    self(self, pos + 1, u, ulen, (v << 1) | bit);
                };
                visit(visit, 0, 0, 0, 0);
            }
            BigInt sum(0);
            for (const auto& z : acc) sum += abs(z);
            total += Rational(sum, lcm_den);
        }
        begin = end;
    }
    total.canonicalize();
    return total;
}

inline std::string FreeSeries::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [w, c] : terms_) {
        const bool neg = sgn(c) < 0;
        Rational mag = abs(c);
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (w.empty())
            out += mag.get_str();
        else if (mag == 1)
            out += w.str();
        else
            out += mag.get_str() + " " + w.str();
    }
    return out;
}

inline FreeSeries FreeSeries::parse(const std::string& text, int max_degree) {
    std::vector<Term> terms;
    std::size_t i = 0;
    int sign = 1;
    Rational pending(1);
    bool have_coeff = false;
    auto skip = [&] { while (i < text.size() && text[i] == ' ') ++i; };
    while (true) {
        skip();
        if (i >= text.size()) break;
        const char c = text[i];
        if (c == '+' || c == '-') {
            sign = c == '-' ? -sign : sign;
            ++i;
        } else if (c == 'X' || c == 'Y') {
            std::size_t j = i;
            while (j < text.size() && (text[j] == 'X' || text[j] == 'Y')) ++j;
            terms.emplace_back(Word::parse(text.substr(i, j - i)), sign * pending);
            i = j;
            sign = 1;
            pending = 1;
            have_coeff = false;
        } else if ((c >= '0' && c <= '9')) {
            std::size_t j = i;
            while (j < text.size() && ((text[j] >= '0' && text[j] <= '9') || text[j] == '/')) ++j;
            if (have_coeff) throw std::invalid_argument("FreeSeries::parse: two coefficients in a row");
            pending = parse_rational(text.substr(i, j - i));
            have_coeff = true;
            i = j;
            skip();
            if (i >= text.size() || text[i] == '+' || text[i] == '-') {
                terms.emplace_back(Word(), sign * pending);
                sign = 1;
                pending = 1;
                have_coeff = false;
            }
        } else {
            throw std::invalid_argument(std::string("FreeSeries::parse: unexpected character '") + c + "'");
        }
    }
    if (have_coeff) throw std::invalid_argument("FreeSeries::parse: dangling coefficient");
    return from_terms(max_degree, std::move(terms));
}

}  // namespace qbch

#endif  // QBCH_FREESERIES_HPP
