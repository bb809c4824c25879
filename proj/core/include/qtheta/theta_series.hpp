#pragma once

#include <cstdint>
#include <string>

#include <qtheta/qseries.hpp>
#include <qtheta/rational.hpp>

namespace qtheta {

/// Signed monomial sign * q^exponent, used as an argument of f(a, b).
struct Monomial {
    int sign = 1;
    Rational exponent = 1;

    friend bool operator==(const Monomial &, const Monomial &) = default;
};

/// A theta-function building block of the identity language.
struct ThetaAtom {
    enum class Kind { phi, psi, fneg, fab, monomial };

    Kind kind = Kind::monomial;
    int arg_sign = 1;           // phi, psi: argument sign * q^arg_power
    std::int64_t arg_power = 1; // phi, psi, fneg
    Monomial a, b;              // fab
    Rational exponent = 0;      // monomial q^exponent

    static ThetaAtom phi(int sign, std::int64_t k);
    static ThetaAtom psi(int sign, std::int64_t k);
    static ThetaAtom fneg(std::int64_t k);
    static ThetaAtom fab(Monomial a, Monomial b);
    static ThetaAtom monomial(const Rational &r);

    /// Identity-language spelling, e.g. "phi(-q^5)", "f(-q^2)", "q^(1/6)".
    std::string to_string() const;

    friend bool operator==(const ThetaAtom &, const ThetaAtom &) = default;
};

/// phi(sign q^k) with every exponent below `order` exact.
QSeries phi_series(int sign, std::int64_t k, std::int64_t order);
/// psi(sign q^k) with every exponent below `order` exact.
QSeries psi_series(int sign, std::int64_t k, std::int64_t order);
/// f(-q^k), the pentagonal series.
QSeries fneg_series(std::int64_t k, std::int64_t order);
/// Bilateral f(a, b). Throws divergent_pair_error unless exp(a)+exp(b) > 0.
QSeries fab_series(const Monomial &a, const Monomial &b, std::int64_t order);

/// Dispatch on the atom kind. Monomials are exact.
QSeries atom_series(const ThetaAtom &atom, std::int64_t order);

} // namespace qtheta
