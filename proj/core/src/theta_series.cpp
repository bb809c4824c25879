#include <qtheta/theta_series.hpp>

#include <stdexcept>
#include <vector>

#include <qtheta/errors.hpp>

namespace qtheta {

namespace {

void check_args(std::int64_t k, std::int64_t order)
{
    if (k < 1) throw std::invalid_argument("theta argument power must be at least 1");
    if (order < 0) throw std::invalid_argument("series order must be non-negative");
}

int sign_pow(int sign, std::int64_t e) { return (sign < 0 && (e & 1)) ? -1 : 1; }

} // namespace

ThetaAtom ThetaAtom::phi(int sign, std::int64_t k)
{
    ThetaAtom t;
    t.kind = Kind::phi;
    t.arg_sign = sign < 0 ? -1 : 1;
    t.arg_power = k;
    return t;
}

ThetaAtom ThetaAtom::psi(int sign, std::int64_t k)
{
    ThetaAtom t = phi(sign, k);
    t.kind = Kind::psi;
    return t;
}

ThetaAtom ThetaAtom::fneg(std::int64_t k)
{
    ThetaAtom t;
    t.kind = Kind::fneg;
    t.arg_sign = -1;
    t.arg_power = k;
    return t;
}

ThetaAtom ThetaAtom::fab(Monomial a, Monomial b)
{
    ThetaAtom t;
    t.kind = Kind::fab;
    t.a = std::move(a);
    t.b = std::move(b);
    return t;
}

ThetaAtom ThetaAtom::monomial(const Rational &r)
{
    ThetaAtom t;
    t.kind = Kind::monomial;
    t.exponent = r;
    return t;
}

namespace {

std::string arg_string(int sign, const Rational &e)
{
    std::string s = sign < 0 ? "-q" : "q";
    if (e == 1) return s;
    if (is_integer(e) && sgn(e) > 0) return s + "^" + qtheta::to_string(e);
    return s + "^(" + qtheta::to_string(e) + ")";
}

} // namespace

std::string ThetaAtom::to_string() const
{
    switch (kind) {
    case Kind::phi:
        return "phi(" + arg_string(arg_sign, arg_power) + ")";
    case Kind::psi:
        return "psi(" + arg_string(arg_sign, arg_power) + ")";
    case Kind::fneg:
        return "f(" + arg_string(-1, arg_power) + ")";
    case Kind::fab:
        return "f(" + arg_string(a.sign, a.exponent) + ", " + arg_string(b.sign, b.exponent) + ")";
    case Kind::monomial:
        return arg_string(1, exponent);
    }
    return {};
}

QSeries phi_series(int sign, std::int64_t k, std::int64_t order)
{
    check_args(k, order);
    std::vector<Rational> c(static_cast<std::size_t>(order));
    for (std::int64_t n = 0; k * n * n < order; ++n) {
        std::int64_t e = n * n;
        c[static_cast<std::size_t>(k * e)] = n == 0 ? 1 : 2 * sign_pow(sign, e);
    }
    return QSeries(1, 0, std::move(c), order);
}

QSeries psi_series(int sign, std::int64_t k, std::int64_t order)
{
    check_args(k, order);
    std::vector<Rational> c(static_cast<std::size_t>(order));
    for (std::int64_t n = 0; k * n * (n + 1) / 2 < order; ++n) {
        std::int64_t e = n * (n + 1) / 2;
        c[static_cast<std::size_t>(k * e)] = sign_pow(sign, e);
    }
    return QSeries(1, 0, std::move(c), order);
}

QSeries fneg_series(std::int64_t k, std::int64_t order)
{
    check_args(k, order);
    std::vector<Rational> c(static_cast<std::size_t>(order));
    // n(3n-1)/2 for n = 0, 1, -1, 2, -2, ...
    for (std::int64_t n = 0;; ++n) {
        bool any = false;
        for (int side = 0; side < (n == 0 ? 1 : 2); ++side) {
            std::int64_t m = side == 0 ? n : -n;
            std::int64_t e = k * (m * (3 * m - 1) / 2);
            if (e < order) {
                c[static_cast<std::size_t>(e)] += (n & 1) ? -1 : 1;
                any = true;
            }
        }
        if (!any) break;
    }
    return QSeries(1, 0, std::move(c), order);
}

QSeries fab_series(const Monomial &a, const Monomial &b, std::int64_t order)
{
    if (order < 0) throw std::invalid_argument("series order must be non-negative");
    Rational s = a.exponent + b.exponent;
    if (sgn(s) <= 0) {
        throw divergent_pair_error("f(a, b) needs exp(a) + exp(b) > 0, got " + qtheta::to_string(s));
    }
    // Term n: exponent E(n) = a n(n+1)/2 + b n(n-1)/2 = s n^2/2 + (a-b) n/2.
    Integer d = lcm(Integer(a.exponent.get_den()), Integer(b.exponent.get_den()));
    std::int64_t den = to_int64(d);
    std::int64_t vt = order * den;
    Rational t = a.exponent - b.exponent;
    std::vector<std::pair<std::int64_t, int>> terms;
    std::int64_t lo = 0;
    for (int dir : {1, -1}) {
        for (std::int64_t n = dir == 1 ? 0 : -1;; n += dir) {
            Rational e = s * Rational(n * n, 2) + t * Rational(n, 2);
            Rational idx = e * den;
            if (idx >= vt) {
                // E(n) is convex in n; once past the vertex it only grows.
                Rational vertex = -t / (2 * s);
                if ((dir == 1 && n > vertex) || (dir == -1 && n < vertex)) break;
                continue;
            }
            std::int64_t i = to_int64(idx);
            int sign = sign_pow(a.sign, n * (n + 1) / 2) * sign_pow(b.sign, n * (n - 1) / 2);
            terms.emplace_back(i, sign);
            lo = std::min(lo, i);
        }
    }
    std::vector<Rational> c(static_cast<std::size_t>(vt - lo));
    for (auto [i, sign] : terms) c[static_cast<std::size_t>(i - lo)] += sign;
    return QSeries(den, lo, std::move(c), vt);
}

QSeries atom_series(const ThetaAtom &atom, std::int64_t order)
{
    switch (atom.kind) {
    case ThetaAtom::Kind::phi:
        return phi_series(atom.arg_sign, atom.arg_power, order);
    case ThetaAtom::Kind::psi:
        return psi_series(atom.arg_sign, atom.arg_power, order);
    case ThetaAtom::Kind::fneg:
        return fneg_series(atom.arg_power, order);
    case ThetaAtom::Kind::fab:
        return fab_series(atom.a, atom.b, order);
    case ThetaAtom::Kind::monomial:
        return QSeries::monomial(1, atom.exponent);
    }
    throw std::logic_error("unknown atom kind");
}

} // namespace qtheta
