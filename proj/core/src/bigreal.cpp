#include <qtheta/bigreal.hpp>

#include <cmath>
#include <string>
#include <utility>

#include <qtheta/errors.hpp>

namespace qtheta {

mpfr_prec_t Precision::bits(int guard) const
{
    // log2(10) = 3.3219...
    return static_cast<mpfr_prec_t>(std::ceil((digits + guard) * 3.3219280948873623)) + 8;
}

BigReal::BigReal(mpfr_prec_t bits)
{
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
}

BigReal::BigReal(long v, mpfr_prec_t bits)
{
    mpfr_init2(v_, bits);
    mpfr_set_si(v_, v, MPFR_RNDN);
}

BigReal::BigReal(const Rational &r, mpfr_prec_t bits)
{
    mpfr_init2(v_, bits);
    mpfr_set_q(v_, r.get_mpq_t(), MPFR_RNDN);
}

BigReal::BigReal(std::string_view decimal, mpfr_prec_t bits)
{
    mpfr_init2(v_, bits);
    std::string s(decimal);
    if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
        mpfr_clear(v_);
        throw domain_error("not a decimal number: '" + s + "'");
    }
}

BigReal::BigReal(const BigReal &o)
{
    mpfr_init2(v_, o.bits());
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigReal::BigReal(BigReal &&o) noexcept
{
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

BigReal &BigReal::operator=(const BigReal &o)
{
    if (this != &o) {
        mpfr_set_prec(v_, o.bits());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigReal &BigReal::operator=(BigReal &&o) noexcept
{
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

BigReal BigReal::pi(mpfr_prec_t bits)
{
    BigReal r(bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

std::string BigReal::to_string(int digits) const
{
    if (digits < 1) digits = 1;
    std::string fmt = "%." + std::to_string(digits - 1) + "Re";
    int n = mpfr_snprintf(nullptr, 0, fmt.c_str(), v_);
    std::string out(static_cast<std::size_t>(n) + 1, '\0');
    mpfr_snprintf(out.data(), out.size(), fmt.c_str(), v_);
    out.resize(static_cast<std::size_t>(n));
    return out;
}

namespace {

mpfr_prec_t wider(const BigReal &a, const BigReal &b) { return std::max(a.bits(), b.bits()); }

} // namespace

BigReal &BigReal::operator+=(const BigReal &o)
{
    if (o.bits() > bits()) mpfr_prec_round(v_, o.bits(), MPFR_RNDN);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigReal &BigReal::operator-=(const BigReal &o)
{
    if (o.bits() > bits()) mpfr_prec_round(v_, o.bits(), MPFR_RNDN);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigReal &BigReal::operator*=(const BigReal &o)
{
    if (o.bits() > bits()) mpfr_prec_round(v_, o.bits(), MPFR_RNDN);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigReal &BigReal::operator/=(const BigReal &o)
{
    if (o.is_zero()) throw domain_error("division by zero");
    if (o.bits() > bits()) mpfr_prec_round(v_, o.bits(), MPFR_RNDN);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigReal operator+(BigReal a, const BigReal &b) { return a += b; }
BigReal operator-(BigReal a, const BigReal &b) { return a -= b; }
BigReal operator*(BigReal a, const BigReal &b) { return a *= b; }
BigReal operator/(BigReal a, const BigReal &b) { return a /= b; }

BigReal operator-(BigReal a)
{
    mpfr_neg(a.get(), a.get(), MPFR_RNDN);
    return a;
}

bool operator<(const BigReal &a, const BigReal &b) { return mpfr_less_p(a.get(), b.get()) != 0; }
bool operator>(const BigReal &a, const BigReal &b) { return mpfr_greater_p(a.get(), b.get()) != 0; }
bool operator<=(const BigReal &a, const BigReal &b) { return mpfr_lessequal_p(a.get(), b.get()) != 0; }
bool operator>=(const BigReal &a, const BigReal &b) { return mpfr_greaterequal_p(a.get(), b.get()) != 0; }
bool operator==(const BigReal &a, const BigReal &b) { return mpfr_equal_p(a.get(), b.get()) != 0; }

BigReal abs(BigReal a)
{
    mpfr_abs(a.get(), a.get(), MPFR_RNDN);
    return a;
}

BigReal sqrt(const BigReal &a)
{
    if (a.sign() < 0) throw domain_error("square root of a negative number");
    BigReal r(a.bits());
    mpfr_sqrt(r.get(), a.get(), MPFR_RNDN);
    return r;
}

BigReal exp(const BigReal &a)
{
    BigReal r(a.bits());
    mpfr_exp(r.get(), a.get(), MPFR_RNDN);
    return r;
}

BigReal log(const BigReal &a)
{
    if (a.sign() <= 0) throw domain_error("logarithm of a non-positive number");
    BigReal r(a.bits());
    mpfr_log(r.get(), a.get(), MPFR_RNDN);
    return r;
}

BigReal pow(const BigReal &a, const BigReal &b)
{
    BigReal r(wider(a, b));
    mpfr_pow(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

BigReal pow(const BigReal &a, long n)
{
    if (n < 0 && a.is_zero()) throw domain_error("negative power of zero");
    BigReal r(a.bits());
    mpfr_pow_si(r.get(), a.get(), n, MPFR_RNDN);
    return r;
}

BigReal root(const BigReal &a, unsigned long k)
{
    if (a.sign() < 0) throw domain_error("root of a negative number");
    BigReal r(a.bits());
    mpfr_rootn_ui(r.get(), a.get(), k, MPFR_RNDN);
    return r;
}

BigReal max(const BigReal &a, const BigReal &b) { return a < b ? b : a; }

BigReal ten_pow(long e, mpfr_prec_t bits)
{
    BigReal r(10, bits);
    mpfr_pow_si(r.get(), r.get(), e, MPFR_RNDN);
    return r;
}

long agreeing_digits(const BigReal &a, const BigReal &b)
{
    BigReal d = abs(a - b);
    if (d.is_zero()) return 1000000;
    BigReal scale = max(abs(a), abs(b));
    if (scale.is_zero()) return 1000000;
    double rel = mpfr_get_d(log(d / scale).get(), MPFR_RNDN) / std::log(10.0);
    return static_cast<long>(std::floor(-rel));
}

} // namespace qtheta
