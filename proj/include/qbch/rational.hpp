// Exact rational helpers on top of GMP.

#ifndef QBCH_RATIONAL_HPP
#define QBCH_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace qbch {

/// Always canonical: lowest terms, positive denominator.
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational parse_rational(const std::string& text) {
    Rational q;
    if (q.set_str(text, 10) != 0 || q.get_den() == 0)
        throw std::invalid_argument("not a rational number: '" + text + "'");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const BigInt& z) { return z.get_str(); }

inline Rational pow_rational(const Rational& base, unsigned long exponent) {
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
    return out;
}

/// Round-half-even of q * 10^digits to an integer.
inline BigInt round_scaled_half_even(const Rational& q, unsigned digits) {
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    Rational scaled = q * scale;
    BigInt floor_part;
    mpz_fdiv_q(floor_part.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    Rational frac = scaled - floor_part;
    const int c = cmp(frac, Rational(1, 2));
    if (c > 0 || (c == 0 && mpz_odd_p(floor_part.get_mpz_t()))) floor_part += 1;
    return floor_part;
}

/// Fixed-point decimal with round-half-even, e.g. 2/3 -> "0.6667".
inline std::string to_fixed(const Rational& q, unsigned digits = 4) {
    const bool negative = sgn(q) < 0;
    BigInt r = round_scaled_half_even(abs(q), digits);
    std::string s = r.get_str();
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    if (digits > 0) s.insert(s.size() - digits, ".");
    if (negative && r != 0) s.insert(0, "-");
    return s;
}

/// Scientific notation "m.mme-XX" with round-half-even on the mantissa.
inline std::string to_scientific(const Rational& q, unsigned mantissa_digits = 1) {
    if (sgn(q) == 0) return to_fixed(q, mantissa_digits) + "e+00";
    const bool negative = sgn(q) < 0;
    Rational a = abs(q);
    int exponent = 0;
    while (a >= 10) { a /= 10; ++exponent; }
    while (a < 1) { a *= 10; --exponent; }
    BigInt r = round_scaled_half_even(a, mantissa_digits);
    BigInt limit;
    mpz_ui_pow_ui(limit.get_mpz_t(), 10, mantissa_digits + 1);
    if (r >= limit) {  // rounded up to 10.0
        a /= 10;
        ++exponent;
        r = round_scaled_half_even(a, mantissa_digits);
    }
    std::string s = r.get_str();
    if (mantissa_digits > 0) s.insert(1, ".");
    char buf[16];
    std::snprintf(buf, sizeof buf, "e%c%02d", exponent < 0 ? '-' : '+', exponent < 0 ? -exponent : exponent);
    return (negative ? "-" : "") + s + buf;
}

/// Four decimals, switching to one-digit-mantissa scientific notation for
/// nonzero magnitudes below 1e-3.
inline std::string render_decimal(const Rational& q) {
    if (sgn(q) != 0 && abs(q) < Rational(1, 1000)) return to_scientific(q, 1);
    return to_fixed(q, 4);
}

}  // namespace qbch

#endif  // QBCH_RATIONAL_HPP
