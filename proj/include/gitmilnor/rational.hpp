#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace gitmilnor {

/// Exact arbitrary-precision rational. All coefficient arithmetic in the
/// library is exact; there is no floating point anywhere.
using Rational = mpq_class;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};
struct DegreeMismatch : Error {
    using Error::Error;
};
struct ZeroPolynomial : Error {
    using Error::Error;
};
struct NotRegular : Error {
    using Error::Error;
};
struct MultipleMissing : Error {
    using Error::Error;
};
struct CapExceeded : Error {
    using Error::Error;
};
struct PreconditionFailed : Error {
    using Error::Error;
};

inline Rational rational(long num, long den = 1) {
    if (den == 0) throw Error("rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// mpq_class lacks a long long constructor; weights are long long throughout.
inline Rational to_rational(long long v) { return Rational(static_cast<long>(v)); }

/// Canonical text form: "p" or "p/q" with q > 0.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational parse_rational(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw Error("bad rational literal: '" + text + "'");
    if (q.get_den() == 0) throw Error("bad rational literal (zero denominator): '" + text + "'");
    q.canonicalize();
    return q;
}

inline mpz_class factorial(unsigned long k) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), k);
    return f;
}

inline long long to_long_long(const mpz_class& z) {
    if (!z.fits_slong_p()) throw Error("integer certificate overflows machine word");
    return static_cast<long long>(z.get_si());
}

/// Scale a rational vector to a primitive integer vector (clear denominators,
/// divide by the content). Direction is preserved; the zero vector maps to zero.
inline std::vector<long long> clear_denominators(const std::vector<Rational>& v) {
    mpz_class lcm = 1;
    for (const auto& q : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<mpz_class> ints;
    ints.reserve(v.size());
    mpz_class content = 0;
    for (const auto& q : v) {
        mpz_class z = q.get_num() * (lcm / q.get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z.get_mpz_t());
        ints.push_back(z);
    }
    std::vector<long long> out;
    out.reserve(v.size());
    for (auto& z : ints) out.push_back(content == 0 ? 0 : to_long_long(z / content));
    return out;
}

}  // namespace gitmilnor
