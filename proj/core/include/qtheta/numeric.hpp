#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <qtheta/bigreal.hpp>
#include <qtheta/identity.hpp>
#include <qtheta/rational.hpp>

namespace qtheta {

// Every routine below works at P.digits + guard_digits decimal digits and
// returns a value carrying that precision.

/// phi(q) = sum over all n of q^(n^2). Throws domain_error if |q| >= 1.
BigReal eval_phi(const BigReal &q, Precision P);
/// psi(q) = sum over n >= 0 of q^(n(n+1)/2).
BigReal eval_psi(const BigReal &q, Precision P);
/// Bilateral f(a, b). Throws domain_error unless |ab| < 1.
BigReal eval_fab(const BigReal &a, const BigReal &b, Precision P);
/// f(u) = f(u, -u^2); equals the pentagonal series f(-q) at u = -q.
BigReal eval_f_onearg(const BigReal &u, Precision P);
/// f(u, u^2), the alternative one-argument reading.
BigReal eval_f_recorded(const BigReal &u, Precision P);

/// b(s, t) for s > 0, t >= 1. Throws domain_error otherwise.
BigReal eval_b(const Rational &s, const Rational &t, Precision P);

/// Complete elliptic integral of the first kind via the AGM, 0 <= k < 1.
BigReal eval_K(const BigReal &k, Precision P);
/// 2F1(1/2, 1/2; 1; x) for 0 <= x < 1: direct series up to 1/2, AGM above.
BigReal eval_2F1_half(const BigReal &x, Precision P);
/// Direct hypergeometric series, 0 <= x <= 1/2 (cross-check route).
BigReal eval_2F1_half_series(const BigReal &x, Precision P);

/// Nome q = exp(-pi K(k')/K(k)) for x = k^2 in (0, 1).
BigReal q_from_x(const BigReal &x, Precision P);
/// Inverse of q_from_x by bisection, q in (0, 1).
BigReal x_from_q(const BigReal &q, Precision P);

struct ModularPoint {
    BigReal x, z, y, q;
};

/// x, z = 2F1(1/2,1/2;1;x), y = pi 2F1(..;1-x)/z and q = e^-y.
ModularPoint modular_point(const BigReal &x, Precision P);

struct Degree5Values {
    BigReal alpha, beta, m;
};

/// alpha = x, beta of degree 5 over alpha, and m = phi^2(q)/phi^2(q^5).
Degree5Values degree5_values(const BigReal &x, Precision P);

struct Degree5Residuals {
    BigReal r1, r2, r3;
    BigReal max() const;
};

/// Residuals of the three degree-5 relations between alpha, beta and m.
/// `multiplier_shift` perturbs m before the residuals are formed.
Degree5Residuals check_degree5(const BigReal &x, Precision P, const Rational &multiplier_shift = 0);

/// |a t^2 + b t + c| with t = h^2 + 1/h^2.
BigReal check_quartic(const BigReal &h, const Rational &a, const Rational &b, const Rational &c, Precision P);

using NumericEnv = std::map<std::string, BigReal>;

/// Evaluates e with names taken from `env` or the document bindings. Theta
/// atoms need `q`; without it they raise domain_error.
BigReal eval_numeric(const ExprPtr &e, const Bindings &bindings, const NumericEnv &env, Precision P,
                     const std::optional<BigReal> &q = std::nullopt);

struct SampleResidual {
    std::string sample;
    BigReal residual;
    std::vector<std::pair<std::string, BigReal>> values;
};

struct NumericReport {
    Status status = Status::error;
    BigReal residual;
    BigReal tolerance;
    int guard = 20;
    std::vector<SampleResidual> samples;
    std::string message;
};

/// Default guard for numeric documents without a "guard" attribute.
constexpr int default_numeric_guard = 20;

/// Evaluates a numeric document at every sample point and compares the
/// largest |relation| with 10^-(P - guard).
NumericReport check_numeric_identity(const IdentityDoc &doc, Precision P);

/// Same, with explicit sample points overriding the "samples" attribute.
NumericReport check_numeric_identity(const IdentityDoc &doc, const std::vector<Rational> &samples, Precision P);

/// Comma separated rationals, e.g. "1/2, 1, 2".
std::vector<Rational> parse_rational_list(const std::string &text);

} // namespace qtheta
