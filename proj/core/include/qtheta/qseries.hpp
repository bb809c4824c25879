#pragma once

#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include <qtheta/rational.hpp>

namespace qtheta {

/// Truncated Laurent-Puiseux series in q with exact rational coefficients.
///
/// Exponents live on the grid (1/denom)Z. Entry i of coeffs() is the
/// coefficient of q^((min_exp()+i)/denom()). Every coefficient with exponent
/// index strictly below valid_to() is exact; nothing is known beyond it.
/// An exact series (a polynomial or a constant) has valid_to() == exact.
///
/// Values are immutable; all operations return fresh series.
class QSeries {
public:
    /// Sentinel validity index of an exact series.
    static constexpr std::int64_t exact = std::numeric_limits<std::int64_t>::max() / 4;

    /// The exact zero series.
    QSeries();

    /// Builds a series and normalizes it. Coefficients at or beyond valid_to
    /// are discarded.
    QSeries(std::int64_t denom, std::int64_t min_exp, std::vector<Rational> coeffs,
            std::int64_t valid_to);

    static QSeries constant(const Rational &c);
    /// c * q^e, exact.
    static QSeries monomial(const Rational &c, const Rational &e);
    /// Zero, known to be zero below exponent bound (a rational exponent).
    static QSeries zero_to(const Rational &bound);
    /// Exact polynomial from integer-exponent coefficients c[0] + c[1] q + ...
    static QSeries polynomial(const std::vector<Rational> &c);

    std::int64_t denom() const noexcept { return denom_; }
    std::int64_t min_exp() const noexcept { return min_exp_; }
    const std::vector<Rational> &coeffs() const noexcept { return coeffs_; }
    std::int64_t valid_to() const noexcept { return valid_to_; }

    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_exact() const noexcept { return valid_to_ == exact; }
    bool is_monomial() const noexcept { return coeffs_.size() == 1; }

    /// Exponent of the leading term. Requires !is_zero().
    Rational valuation() const;
    /// Exponent bound valid_to()/denom(). Requires !is_exact().
    Rational validity() const;
    /// Leading coefficient. Requires !is_zero().
    const Rational &leading() const;

    /// Exact coefficient of q^e. Throws beyond_validity_error when e is at or
    /// past the validity bound. Exponents off the grid have coefficient 0.
    Rational coefficient(const Rational &e) const;

    /// The same series with validity lowered to exponent bound (no-op when
    /// the bound is not lower).
    QSeries truncate(const Rational &bound) const;

    /// Coefficients at exponents start, start+step, ... (count entries).
    std::vector<Rational> coefficients(const Rational &start, const Rational &step,
                                       std::size_t count) const;

    QSeries operator-() const;
    QSeries scaled(const Rational &c) const;

    friend QSeries operator+(const QSeries &a, const QSeries &b);
    friend QSeries operator-(const QSeries &a, const QSeries &b);
    friend QSeries operator*(const QSeries &a, const QSeries &b);

    /// Values and validity bounds agree (grids compared on their lcm).
    friend bool operator==(const QSeries &a, const QSeries &b);
    friend bool operator!=(const QSeries &a, const QSeries &b) { return !(a == b); }

    /// True when both agree on every exponent below both validity bounds.
    bool agrees_with(const QSeries &other) const;

    std::string to_string(std::size_t max_terms = 12) const;

private:
    void normalize();

    std::int64_t denom_ = 1;
    std::int64_t min_exp_ = 0;
    std::vector<Rational> coeffs_;
    std::int64_t valid_to_ = exact;
};

QSeries add(const QSeries &a, const QSeries &b);
QSeries mul(const QSeries &a, const QSeries &b);

/// Multiplicative inverse. Throws zero_series_error for an empty series and
/// unbounded_result_error for an exact series with more than one term.
QSeries invert(const QSeries &a);

/// a^n by repeated squaring; negative n inverts first.
QSeries int_pow(const QSeries &a, std::int64_t n);

/// Square root with positive leading coefficient. Exact polynomials succeed
/// only if they are perfect squares (unbounded_result_error otherwise).
QSeries sqrt(const QSeries &a);

/// q -> q^m for positive rational m.
QSeries substitute_power(const QSeries &a, const Rational &m);

/// q -> -q. Requires an integer grid.
QSeries substitute_negate(const QSeries &a);

inline Rational coefficient(const QSeries &a, const Rational &e) { return a.coefficient(e); }

std::ostream &operator<<(std::ostream &os, const QSeries &s);

} // namespace qtheta
