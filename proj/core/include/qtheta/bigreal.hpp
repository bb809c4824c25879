#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <mpfr.h>

#include <qtheta/rational.hpp>

namespace qtheta {

/// Working precision in decimal digits.
struct Precision {
    int digits = 80;

    /// Binary precision for `digits` decimal digits plus `guard` extra.
    mpfr_prec_t bits(int guard = 0) const;
};

/// Guard digits carried on top of the requested precision.
constexpr int guard_digits = 10;

/// Arbitrary-precision real with its own binary precision.
class BigReal {
public:
    explicit BigReal(mpfr_prec_t bits = 64);
    BigReal(long v, mpfr_prec_t bits);
    BigReal(const Rational &r, mpfr_prec_t bits);
    BigReal(std::string_view decimal, mpfr_prec_t bits);
    BigReal(const BigReal &o);
    BigReal(BigReal &&o) noexcept;
    BigReal &operator=(const BigReal &o);
    BigReal &operator=(BigReal &&o) noexcept;
    ~BigReal();

    static BigReal pi(mpfr_prec_t bits);

    mpfr_prec_t bits() const { return mpfr_get_prec(v_); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    /// Scientific notation with `digits` significant digits.
    std::string to_string(int digits) const;

    BigReal &operator+=(const BigReal &o);
    BigReal &operator-=(const BigReal &o);
    BigReal &operator*=(const BigReal &o);
    BigReal &operator/=(const BigReal &o);

private:
    mpfr_t v_;
};

BigReal operator+(BigReal a, const BigReal &b);
BigReal operator-(BigReal a, const BigReal &b);
BigReal operator*(BigReal a, const BigReal &b);
BigReal operator/(BigReal a, const BigReal &b);
BigReal operator-(BigReal a);

bool operator<(const BigReal &a, const BigReal &b);
bool operator>(const BigReal &a, const BigReal &b);
bool operator<=(const BigReal &a, const BigReal &b);
bool operator>=(const BigReal &a, const BigReal &b);
bool operator==(const BigReal &a, const BigReal &b);

BigReal abs(BigReal a);
BigReal sqrt(const BigReal &a);
BigReal exp(const BigReal &a);
BigReal log(const BigReal &a);
BigReal pow(const BigReal &a, const BigReal &b);
BigReal pow(const BigReal &a, long n);
BigReal root(const BigReal &a, unsigned long k);
BigReal max(const BigReal &a, const BigReal &b);

/// 10^e at the given precision.
BigReal ten_pow(long e, mpfr_prec_t bits);

/// Number of matching leading decimal digits, capped at 10^6.
long agreeing_digits(const BigReal &a, const BigReal &b);

} // namespace qtheta
