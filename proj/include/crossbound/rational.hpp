#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace crossbound {

/// Arbitrary-precision rational; always kept in canonical form.
using Rational = mpq_class;

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition.
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// A structural certificate (decomposition, order, clique-sum tree) was rejected.
class CertificateError : public Error {
  public:
    using Error::Error;
};

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    if (den == 0) throw InvalidArgument("rational with zero denominator");
    Rational q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    q.canonicalize();
    return q;
}

/// "num/den" with den >= 1.
inline std::string to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    try {
        mpz_class num(s.substr(0, slash));
        mpz_class den(slash == std::string::npos ? std::string("1") : s.substr(slash + 1));
        if (den == 0) throw InvalidArgument("rational with zero denominator: " + s);
        Rational q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw InvalidArgument("malformed rational: " + s);
    }
}

inline double to_double(const Rational& q) { return q.get_d(); }

/// Largest "nice" rational r with r*r <= q, accurate to roughly 2^-40 relative.
inline Rational sqrt_lower(const Rational& q) {
    if (q <= 0) return Rational(0);
    // Work in mantissa/exponent so that tiny values survive the double conversion.
    long exp = 0;
    double mant = mpq_get_d(q.get_mpq_t());
    if (mant < 1e-200 || !std::isfinite(mant) || mant > 1e200) {
        // Rescale by a power of four until the double conversion is meaningful.
        Rational s = q;
        long shift = 0;
        while (s.get_d() < 1e-200) {
            s *= 4;
            ++shift;
        }
        while (!std::isfinite(s.get_d()) || s.get_d() > 1e200) {
            s /= 4;
            --shift;
        }
        Rational r = sqrt_lower(s);
        mpz_class two_pow;
        mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(shift < 0 ? -shift : shift));
        return shift >= 0 ? Rational(r / Rational(two_pow)) : Rational(r * Rational(two_pow));
    }
    double root = std::sqrt(mant);
    int e2 = 0;
    double frac = std::frexp(root, &e2);
    // Keep 40 significant bits.
    auto scaled = static_cast<std::int64_t>(std::ldexp(frac, 40));
    exp = e2 - 40;
    Rational r(mpz_class(static_cast<long>(scaled)));
    if (exp >= 0) {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(exp));
        r *= p;
    } else {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(-exp));
        r /= p;
    }
    while (r * r > q) r = r * Rational(1023, 1024);
    return r;
}

}  // namespace crossbound
