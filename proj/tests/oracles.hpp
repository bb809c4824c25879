#pragma once

// Brute-force reference computations on plain int64 coefficient vectors.
// They share no code with the library.

#include <cstdint>
#include <vector>

#include <qtheta/qseries.hpp>

namespace oracle {

using Poly = std::vector<std::int64_t>;

// Coefficients of sum over n in Z of sign^(n^2) q^(k n^2), below q^N.
inline Poly phi(int sign, int k, int N)
{
    Poly c(N, 0);
    for (std::int64_t n = -N; n <= N; ++n) {
        std::int64_t e = k * n * n;
        if (e < N) c[e] += (sign < 0 && (n * n) % 2) ? -1 : 1;
    }
    return c;
}

// Coefficients of sum over n >= 0 of sign^(n(n+1)/2) q^(k n(n+1)/2).
inline Poly psi(int sign, int k, int N)
{
    Poly c(N, 0);
    for (std::int64_t n = 0; n <= N; ++n) {
        std::int64_t t = n * (n + 1) / 2;
        if (k * t < N) c[k * t] += (sign < 0 && t % 2) ? -1 : 1;
    }
    return c;
}

// Truncated product of (1 - q^(k n)) over n >= 1.
inline Poly euler_product(int k, int N)
{
    Poly c(N, 0);
    c[0] = 1;
    for (int n = 1; k * n < N; ++n) {
        int step = k * n;
        for (int i = N - 1; i >= step; --i) c[i] -= c[i - step];
    }
    return c;
}

inline Poly mul(const Poly &a, const Poly &b)
{
    int N = static_cast<int>(std::min(a.size(), b.size()));
    Poly c(N, 0);
    for (int i = 0; i < N; ++i) {
        if (!a[i]) continue;
        for (int j = 0; i + j < N; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

inline Poly pow(const Poly &a, int n)
{
    Poly r(a.size(), 0);
    r[0] = 1;
    for (int i = 0; i < n; ++i) r = mul(r, a);
    return r;
}

// Inverse of a power series with a[0] = +-1, by long division.
inline Poly invert(const Poly &a)
{
    int N = static_cast<int>(a.size());
    Poly b(N, 0);
    b[0] = a[0];
    for (int n = 1; n < N; ++n) {
        std::int64_t s = 0;
        for (int j = 1; j <= n; ++j) s += a[j] * b[n - j];
        b[n] = -s * a[0];
    }
    return b;
}

// Coefficients of q^0 .. q^(N-1) of a series on the integer grid.
inline std::vector<qtheta::Rational> rationals(const Poly &p)
{
    return std::vector<qtheta::Rational>(p.begin(), p.end());
}

inline std::vector<qtheta::Rational> coeffs(const qtheta::QSeries &s, int N)
{
    return s.coefficients(0, 1, static_cast<std::size_t>(N));
}

} // namespace oracle
