#include <qtheta/numeric.hpp>

#include <qtheta/errors.hpp>

namespace qtheta {

namespace {

mpfr_prec_t working_bits(Precision P) { return P.bits(guard_digits); }

BigReal at_bits(const BigReal &a, mpfr_prec_t bits)
{
    BigReal r(bits);
    mpfr_set(r.get(), a.get(), MPFR_RNDN);
    return r;
}

// Summation stops once a term drops below this.
BigReal epsilon(Precision P, mpfr_prec_t bits) { return ten_pow(-(P.digits + guard_digits + 2), bits); }

void require_unit_disc(const BigReal &q, const char *what)
{
    BigReal one(1, q.bits());
    if (abs(q) >= one) throw domain_error(std::string(what) + " needs |q| < 1, got " + q.to_string(12));
}

BigReal agm(const BigReal &a, const BigReal &b)
{
    BigReal r(std::max(a.bits(), b.bits()));
    mpfr_agm(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

} // namespace

BigReal eval_phi(const BigReal &q_in, Precision P)
{
    require_unit_disc(q_in, "phi");
    mpfr_prec_t W = working_bits(P);
    BigReal q = at_bits(q_in, W);
    BigReal one(1, W);
    BigReal eps = epsilon(P, W);
    // Tail after term n is at most |term| |q| / (1 - |q|).
    BigReal slack = (one - abs(q)) / BigReal(2, W);
    BigReal sum(1, W);
    BigReal q2 = q * q;
    BigReal step = q;  // q^(2n+1)
    BigReal term = q;  // q^(n^2)
    for (long n = 1;; ++n) {
        sum += term + term;
        if (abs(term) < eps * slack) break;
        step *= q2;
        term *= step;
    }
    return sum;
}

BigReal eval_psi(const BigReal &q_in, Precision P)
{
    require_unit_disc(q_in, "psi");
    mpfr_prec_t W = working_bits(P);
    BigReal q = at_bits(q_in, W);
    BigReal one(1, W);
    BigReal eps = epsilon(P, W);
    BigReal slack = one - abs(q);
    BigReal sum(1, W);
    BigReal step = q; // q^(n+1)
    BigReal term = q; // q^(n(n+1)/2)
    for (;;) {
        sum += term;
        if (abs(term) < eps * slack) break;
        step *= q;
        term *= step;
    }
    return sum;
}

BigReal eval_fab(const BigReal &a_in, const BigReal &b_in, Precision P)
{
    mpfr_prec_t W = working_bits(P);
    BigReal a = at_bits(a_in, W);
    BigReal b = at_bits(b_in, W);
    BigReal ab = a * b;
    BigReal one(1, W);
    if (abs(ab) >= one) throw domain_error("f(a, b) needs |ab| < 1, got |ab| = " + abs(ab).to_string(12));
    BigReal eps = epsilon(P, W);
    BigReal half(Rational(1, 2), W);
    BigReal slack = one - abs(ab);
    BigReal sum(1, W);
    // n >= 1: term(n) = term(n-1) a (ab)^(n-1).
    // n <= -1: term(n) = term(n+1) b (ab)^(-n-1).
    for (const BigReal *lead : {&a, &b}) {
        BigReal ratio = *lead;
        BigReal term(1, W);
        for (long guard = 0;; ++guard) {
            term *= ratio;
            sum += term;
            if (abs(ratio) < half && abs(term) < eps * slack) break;
            if (term.is_zero()) break;
            ratio *= ab;
            if (guard > 100000000) throw domain_error("f(a, b) summation did not converge");
        }
    }
    return sum;
}

BigReal eval_f_onearg(const BigReal &u, Precision P) { return eval_fab(u, -(u * u), P); }

BigReal eval_f_recorded(const BigReal &u, Precision P) { return eval_fab(u, u * u, P); }

BigReal eval_b(const Rational &s, const Rational &t, Precision P)
{
    if (sgn(s) <= 0) throw domain_error("b(s, t) needs s > 0, got s = " + to_string(s));
    if (t < 1) throw domain_error("b(s, t) needs t >= 1, got t = " + to_string(t));
    mpfr_prec_t W = working_bits(P);
    BigReal pi = BigReal::pi(W);
    BigReal S(s, W), T(t, W);
    BigReal rst = sqrt(S * T);
    BigReal rs_t = sqrt(S / T);
    BigReal q1 = -exp(-(pi * rst));
    BigReal q2 = -exp(-(pi * rs_t));
    BigReal pre = T * exp(-((T - BigReal(1, W)) * pi * rs_t / BigReal(4, W)));
    BigReal psi1 = eval_psi(q1, P), phi1 = eval_phi(-(q1 * q1), P);
    BigReal psi2 = eval_psi(q2, P), phi2 = eval_phi(-(q2 * q2), P);
    BigReal num = psi1 * psi1 * phi1 * phi1;
    BigReal den = psi2 * psi2 * phi2 * phi2;
    return pre * num / den;
}

BigReal eval_K(const BigReal &k_in, Precision P)
{
    mpfr_prec_t W = working_bits(P);
    BigReal k = at_bits(k_in, W);
    BigReal one(1, W);
    if (k.sign() < 0 || k >= one) throw domain_error("K(k) needs 0 <= k < 1, got " + k.to_string(12));
    BigReal kp = sqrt(one - k * k);
    return BigReal::pi(W) / (BigReal(2, W) * agm(one, kp));
}

BigReal eval_2F1_half_series(const BigReal &x_in, Precision P)
{
    mpfr_prec_t W = working_bits(P);
    BigReal x = at_bits(x_in, W);
    if (x.sign() < 0 || x > BigReal(Rational(1, 2), W)) {
        throw domain_error("2F1 series route needs 0 <= x <= 1/2, got " + x.to_string(12));
    }
    BigReal eps = epsilon(P, W);
    BigReal sum(1, W);
    BigReal term(1, W);
    for (long n = 0;; ++n) {
        BigReal c(Rational(2 * n + 1, 2 * n + 2), W);
        term *= c * c * x;
        sum += term;
        if (term < eps) break;
    }
    return sum;
}

BigReal eval_2F1_half(const BigReal &x_in, Precision P)
{
    mpfr_prec_t W = working_bits(P);
    BigReal x = at_bits(x_in, W);
    BigReal one(1, W);
    if (x.sign() < 0 || x >= one) throw domain_error("2F1(1/2,1/2;1;x) needs 0 <= x < 1, got " + x.to_string(12));
    if (x <= BigReal(Rational(1, 2), W)) return eval_2F1_half_series(x, P);
    return BigReal(2, W) * eval_K(sqrt(x), P) / BigReal::pi(W);
}

namespace {

void require_open_unit(const BigReal &x, const char *what)
{
    BigReal one(1, x.bits());
    if (x.sign() <= 0 || x >= one) throw domain_error(std::string(what) + " needs a value in (0, 1), got " + x.to_string(12));
}

// y = pi 2F1(1-x)/2F1(x), both hypergeometric values taken as 1/agm.
BigReal nome_exponent(const BigReal &x, mpfr_prec_t W)
{
    BigReal one(1, W);
    return BigReal::pi(W) * agm(one, sqrt(one - x)) / agm(one, sqrt(x));
}

} // namespace

BigReal q_from_x(const BigReal &x_in, Precision P)
{
    require_open_unit(x_in, "q_from_x");
    mpfr_prec_t W = working_bits(P);
    return exp(-nome_exponent(at_bits(x_in, W), W));
}

BigReal x_from_q(const BigReal &q_in, Precision P)
{
    require_open_unit(q_in, "x_from_q");
    mpfr_prec_t W = working_bits(P);
    BigReal q = at_bits(q_in, W);
    // Compare exponents rather than nomes to keep relative accuracy for tiny q.
    BigReal target = -log(q);
    BigReal lo(0, W), hi(1, W);
    BigReal half(Rational(1, 2), W);
    for (mpfr_prec_t i = 0; i < W + 4; ++i) {
        BigReal mid = (lo + hi) * half;
        if (mid == lo || mid == hi) break;
        // y decreases as x grows.
        if (nome_exponent(mid, W) > target) lo = mid;
        else hi = mid;
    }
    return (lo + hi) * half;
}

ModularPoint modular_point(const BigReal &x_in, Precision P)
{
    require_open_unit(x_in, "modular_point");
    mpfr_prec_t W = working_bits(P);
    BigReal x = at_bits(x_in, W);
    BigReal one(1, W);
    BigReal z = eval_2F1_half(x, P);
    BigReal y = BigReal::pi(W) * eval_2F1_half(one - x, P) / z;
    BigReal q = exp(-y);
    return {x, z, y, q};
}

Degree5Values degree5_values(const BigReal &x_in, Precision P)
{
    require_open_unit(x_in, "degree5_values");
    mpfr_prec_t W = working_bits(P);
    BigReal alpha = at_bits(x_in, W);
    BigReal q = q_from_x(alpha, P);
    BigReal beta = x_from_q(pow(q, 5), P);
    BigReal p1 = eval_phi(q, P), p5 = eval_phi(pow(q, 5), P);
    BigReal m = p1 * p1 / (p5 * p5);
    return {alpha, beta, m};
}

BigReal Degree5Residuals::max() const { return qtheta::max(qtheta::max(r1, r2), r3); }

Degree5Residuals check_degree5(const BigReal &x, Precision P, const Rational &multiplier_shift)
{
    Degree5Values v = degree5_values(x, P);
    mpfr_prec_t W = working_bits(P);
    BigReal one(1, W), five(5, W);
    BigReal m = v.m + BigReal(multiplier_shift, W);
    BigReal a = v.alpha, b = v.beta;
    BigReal ba = root(b / a, 4);
    BigReal cb = root((one - b) / (one - a), 4);
    BigReal w = root(a * (one - a) / (b * (one - b)), 4);
    BigReal r1 = abs(ba + cb - one / w - m);
    BigReal r2 = abs(one / ba + one / cb - w - five / m);
    BigReal r3 = abs(m * w + one - five / m - w);
    return {r1, r2, r3};
}

BigReal check_quartic(const BigReal &h_in, const Rational &a, const Rational &b, const Rational &c, Precision P)
{
    mpfr_prec_t W = working_bits(P);
    BigReal h = at_bits(h_in, W);
    if (h.sign() <= 0) throw domain_error("check_quartic needs h > 0, got " + h.to_string(12));
    BigReal h2 = h * h;
    BigReal t = h2 + BigReal(1, W) / h2;
    return abs(BigReal(a, W) * t * t + BigReal(b, W) * t + BigReal(c, W));
}

} // namespace qtheta
