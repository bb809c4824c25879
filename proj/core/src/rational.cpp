#include <qtheta/rational.hpp>

#include <limits>
#include <numeric>
#include <stdexcept>

namespace qtheta {

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    while (!s.empty() && s.back() == ' ') s.pop_back();
    if (s.empty()) throw std::invalid_argument("empty rational");
    if (s.front() == '+') s.erase(s.begin());
    Rational r;
    if (r.set_str(s, 10) != 0 || r.get_den() == 0) {
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    r.canonicalize();
    return r;
}

std::string to_string(const Rational &r)
{
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

bool is_integer(const Rational &r) { return r.get_den() == 1; }

std::int64_t to_int64(const Integer &z)
{
    if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits");
    return z.get_si();
}

std::int64_t to_int64(const Rational &r)
{
    if (!is_integer(r)) throw std::overflow_error("rational " + to_string(r) + " is not an integer");
    return to_int64(r.get_num());
}

std::int64_t floor_int64(const Rational &r)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return to_int64(q);
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm64(std::int64_t a, std::int64_t b)
{
    if (a == 0 || b == 0) return 0;
    return std::lcm(a, b);
}

bool rational_sqrt(const Rational &r, Rational &root)
{
    if (sgn(r) < 0) return false;
    if (!mpz_perfect_square_p(r.get_num_mpz_t()) || !mpz_perfect_square_p(r.get_den_mpz_t())) {
        return false;
    }
    Integer n, d;
    mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), r.get_den_mpz_t());
    root = Rational(n, d);
    root.canonicalize();
    return true;
}

} // namespace qtheta
