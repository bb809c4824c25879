#include <qtheta/qseries.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <qtheta/errors.hpp>

namespace qtheta {

namespace {

using idx_t = std::int64_t;

idx_t sat_add(idx_t vt, idx_t x)
{
    if (vt == QSeries::exact) return vt;
    idx_t r = vt + x;
    if (r >= QSeries::exact || r <= -QSeries::exact) throw std::overflow_error("exponent index overflow");
    return r;
}

idx_t sat_mul(idx_t vt, idx_t k)
{
    if (vt == QSeries::exact) return vt;
    if (k != 0 && (vt > QSeries::exact / k || vt < -QSeries::exact / k)) {
        throw std::overflow_error("exponent index overflow");
    }
    return vt * k;
}

idx_t floor_div(idx_t a, idx_t b)
{
    idx_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Coefficients scaled to integers: c[i] = num[i] / den.
struct IntForm {
    std::vector<mpz_class> num;
    mpz_class den = 1;
    std::vector<std::size_t> nonzero;
};

IntForm integer_form(const std::vector<Rational> &c)
{
    IntForm f;
    for (const auto &x : c) {
        if (x.get_den() != 1) mpz_lcm(f.den.get_mpz_t(), f.den.get_mpz_t(), x.get_den_mpz_t());
    }
    f.num.resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (sgn(c[i]) == 0) continue;
        f.nonzero.push_back(i);
        if (f.den == 1) {
            f.num[i] = c[i].get_num();
        } else {
            mpz_class t;
            mpz_divexact(t.get_mpz_t(), f.den.get_mpz_t(), c[i].get_den_mpz_t());
            f.num[i] = c[i].get_num() * t;
        }
    }
    return f;
}

Rational make_rational(const mpz_class &n, const mpz_class &d)
{
    if (d == 1) return Rational(n);
    Rational r(n, d);
    r.canonicalize();
    return r;
}

idx_t add_index(idx_t x, idx_t y)
{
    if (x == QSeries::exact || y == QSeries::exact) return QSeries::exact;
    return sat_add(x, y);
}

// Lowest index that still carries information, for validity propagation.
idx_t low_index(const QSeries &a) { return a.is_zero() ? a.valid_to() : a.min_exp(); }

} // namespace

QSeries::QSeries() = default;

QSeries::QSeries(std::int64_t denom, std::int64_t min_exp, std::vector<Rational> coeffs,
                 std::int64_t valid_to)
    : denom_(denom), min_exp_(min_exp), coeffs_(std::move(coeffs)), valid_to_(valid_to)
{
    if (denom_ < 1) throw std::invalid_argument("series grid denominator must be positive");
    normalize();
}

void QSeries::normalize()
{
    if (valid_to_ != exact) {
        idx_t room = valid_to_ - min_exp_;
        if (room <= 0) {
            coeffs_.clear();
        } else if (static_cast<idx_t>(coeffs_.size()) > room) {
            coeffs_.resize(static_cast<std::size_t>(room));
        }
    }
    while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
    std::size_t lead = 0;
    while (lead < coeffs_.size() && sgn(coeffs_[lead]) == 0) ++lead;
    if (lead > 0) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
        min_exp_ += static_cast<idx_t>(lead);
    }
    if (coeffs_.empty()) min_exp_ = 0;

    idx_t g = denom_;
    if (valid_to_ != exact) g = std::gcd(g, valid_to_);
    for (std::size_t i = 0; i < coeffs_.size() && g > 1; ++i) {
        if (sgn(coeffs_[i]) != 0) g = std::gcd(g, min_exp_ + static_cast<idx_t>(i));
    }
    if (g > 1) {
        std::vector<Rational> reduced;
        if (!coeffs_.empty()) {
            reduced.resize((coeffs_.size() - 1) / static_cast<std::size_t>(g) + 1);
            for (std::size_t i = 0; i < coeffs_.size(); i += static_cast<std::size_t>(g)) {
                reduced[i / static_cast<std::size_t>(g)] = coeffs_[i];
            }
        }
        coeffs_ = std::move(reduced);
        min_exp_ /= g;
        denom_ /= g;
        if (valid_to_ != exact) valid_to_ /= g;
    }
}

QSeries QSeries::constant(const Rational &c)
{
    if (sgn(c) == 0) return QSeries();
    return QSeries(1, 0, {c}, exact);
}

QSeries QSeries::monomial(const Rational &c, const Rational &e)
{
    if (sgn(c) == 0) return QSeries();
    return QSeries(to_int64(Integer(e.get_den())), to_int64(Integer(e.get_num())), {c}, exact);
}

QSeries QSeries::zero_to(const Rational &bound)
{
    return QSeries(to_int64(Integer(bound.get_den())), 0, {}, to_int64(Integer(bound.get_num())));
}

QSeries QSeries::polynomial(const std::vector<Rational> &c) { return QSeries(1, 0, c, exact); }

Rational QSeries::valuation() const
{
    if (is_zero()) throw zero_series_error("valuation of a zero series");
    Rational r(min_exp_, denom_);
    r.canonicalize();
    return r;
}

Rational QSeries::validity() const
{
    if (is_exact()) throw std::logic_error("exact series has no validity bound");
    Rational r(valid_to_, denom_);
    r.canonicalize();
    return r;
}

const Rational &QSeries::leading() const
{
    if (is_zero()) throw zero_series_error("leading coefficient of a zero series");
    return coeffs_.front();
}

Rational QSeries::coefficient(const Rational &e) const
{
    Rational scaled = e * denom_;
    if (!is_exact() && scaled >= valid_to_) {
        throw beyond_validity_error("coefficient of q^" + qtheta::to_string(e) +
                                    " requested but series is only valid below q^" +
                                    qtheta::to_string(validity()));
    }
    if (!is_integer(scaled)) return 0;
    idx_t i = to_int64(scaled) - min_exp_;
    if (i < 0 || i >= static_cast<idx_t>(coeffs_.size())) return 0;
    return coeffs_[static_cast<std::size_t>(i)];
}

QSeries QSeries::truncate(const Rational &bound) const
{
    Rational scaled = bound * denom_;
    Integer c;
    mpz_cdiv_q(c.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    idx_t vt = to_int64(c);
    if (vt >= valid_to_) return *this;
    return QSeries(denom_, min_exp_, coeffs_, vt);
}

std::vector<Rational> QSeries::coefficients(const Rational &start, const Rational &step,
                                            std::size_t count) const
{
    std::vector<Rational> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) out.push_back(coefficient(start + step * Rational(k)));
    return out;
}

QSeries QSeries::operator-() const
{
    QSeries r = *this;
    for (auto &c : r.coeffs_) c = -c;
    return r;
}

QSeries QSeries::scaled(const Rational &c) const
{
    if (sgn(c) == 0) return mul(QSeries(), *this);
    QSeries r = *this;
    for (auto &x : r.coeffs_) x *= c;
    return r;
}

QSeries operator+(const QSeries &a, const QSeries &b)
{
    idx_t L = std::lcm(a.denom_, b.denom_);
    idx_t ka = L / a.denom_, kb = L / b.denom_;
    idx_t vt = std::min(sat_mul(a.valid_to_, ka), sat_mul(b.valid_to_, kb));
    if (a.is_zero() && b.is_zero()) return QSeries(L, 0, {}, vt);

    idx_t lo = QSeries::exact, hi = -QSeries::exact;
    for (const QSeries *s : {&a, &b}) {
        if (s->is_zero()) continue;
        idx_t k = s == &a ? ka : kb;
        lo = std::min(lo, s->min_exp_ * k);
        hi = std::max(hi, (s->min_exp_ + static_cast<idx_t>(s->coeffs_.size()) - 1) * k + 1);
    }
    hi = std::min(hi, vt);
    if (hi <= lo) return QSeries(L, 0, {}, vt);

    std::vector<Rational> out(static_cast<std::size_t>(hi - lo));
    for (const QSeries *s : {&a, &b}) {
        idx_t k = s == &a ? ka : kb;
        for (std::size_t i = 0; i < s->coeffs_.size(); ++i) {
            idx_t at = (s->min_exp_ + static_cast<idx_t>(i)) * k;
            if (at >= hi) break;
            out[static_cast<std::size_t>(at - lo)] += s->coeffs_[i];
        }
    }
    return QSeries(L, lo, std::move(out), vt);
}

QSeries operator-(const QSeries &a, const QSeries &b) { return a + (-b); }

QSeries operator*(const QSeries &a, const QSeries &b)
{
    idx_t L = std::lcm(a.denom_, b.denom_);
    idx_t ka = L / a.denom_, kb = L / b.denom_;
    idx_t va = sat_mul(a.valid_to_, ka), vb = sat_mul(b.valid_to_, kb);
    idx_t la = sat_mul(low_index(a), ka), lb = sat_mul(low_index(b), kb);
    idx_t vt = std::min(add_index(va, lb), add_index(vb, la));
    if (a.is_zero() || b.is_zero()) {
        if (vt == QSeries::exact) return QSeries();
        return QSeries(L, 0, {}, vt);
    }

    idx_t lo = a.min_exp_ * ka + b.min_exp_ * kb;
    idx_t span = (static_cast<idx_t>(a.coeffs_.size()) - 1) * ka +
                 (static_cast<idx_t>(b.coeffs_.size()) - 1) * kb + 1;
    if (vt != QSeries::exact) span = std::min(span, vt - lo);
    if (span <= 0) return QSeries(L, 0, {}, vt);

    IntForm fa = integer_form(a.coeffs_);
    IntForm fb = integer_form(b.coeffs_);
    std::vector<mpz_class> acc(static_cast<std::size_t>(span));
    for (std::size_t i : fa.nonzero) {
        idx_t base = static_cast<idx_t>(i) * ka;
        if (base >= span) break;
        mpz_srcptr x = fa.num[i].get_mpz_t();
        for (std::size_t j : fb.nonzero) {
            idx_t at = base + static_cast<idx_t>(j) * kb;
            if (at >= span) break;
            mpz_addmul(acc[static_cast<std::size_t>(at)].get_mpz_t(), x, fb.num[j].get_mpz_t());
        }
    }
    mpz_class den = fa.den * fb.den;
    std::vector<Rational> out(acc.size());
    for (std::size_t k = 0; k < acc.size(); ++k) {
        if (acc[k] != 0) out[k] = make_rational(acc[k], den);
    }
    return QSeries(L, lo, std::move(out), vt);
}

bool operator==(const QSeries &a, const QSeries &b)
{
    return a.denom_ == b.denom_ && a.min_exp_ == b.min_exp_ && a.valid_to_ == b.valid_to_ &&
           a.coeffs_ == b.coeffs_;
}

bool QSeries::agrees_with(const QSeries &other) const { return (*this - other).is_zero(); }

std::string QSeries::to_string(std::size_t max_terms) const
{
    std::ostringstream os;
    std::size_t shown = 0;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size() && shown < max_terms; ++i) {
        const Rational &c = coeffs_[i];
        if (sgn(c) == 0) continue;
        Rational e(min_exp_ + static_cast<idx_t>(i), denom_);
        e.canonicalize();
        Rational mag = abs(c);
        os << (sgn(c) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        bool unit = mag == 1;
        if (!unit || sgn(e) == 0) os << qtheta::to_string(mag);
        if (sgn(e) != 0) {
            os << "q";
            if (e != 1) {
                if (is_integer(e) && sgn(e) > 0)
                    os << "^" << qtheta::to_string(e);
                else
                    os << "^(" << qtheta::to_string(e) << ")";
            }
        }
        first = false;
        ++shown;
    }
    if (shown < static_cast<std::size_t>(std::count_if(coeffs_.begin(), coeffs_.end(),
                                                        [](const Rational &c) { return sgn(c) != 0; }))) {
        os << (first ? "" : " + ") << "...";
        first = false;
    }
    if (!is_exact()) {
        Rational v = validity();
        os << (first ? "" : " + ") << "O(q^";
        if (is_integer(v) && sgn(v) >= 0)
            os << qtheta::to_string(v) << ")";
        else
            os << "(" << qtheta::to_string(v) << "))";
    } else if (first) {
        os << "0";
    }
    return os.str();
}

QSeries add(const QSeries &a, const QSeries &b) { return a + b; }
QSeries mul(const QSeries &a, const QSeries &b) { return a * b; }

QSeries invert(const QSeries &a)
{
    if (a.is_zero()) throw zero_series_error("cannot invert a zero series");
    const idx_t v = a.min_exp();
    const idx_t d = a.denom();
    if (a.is_exact()) {
        if (!a.is_monomial()) {
            throw unbounded_result_error("inverse of an exact series with several terms is infinite; "
                                         "truncate it first");
        }
        return QSeries(d, -v, {1 / a.leading()}, QSeries::exact);
    }
    const idx_t n = a.valid_to() - v;
    IntForm f = integer_form(a.coeffs());
    f.num.resize(static_cast<std::size_t>(n));
    const mpz_class L = f.num[0];

    // B_i = b_i L^{i+1} stays integral: B_i = -sum_j (A_j L^{j-1}) B_{i-j}.
    std::vector<std::size_t> nz;
    std::vector<mpz_class> w(static_cast<std::size_t>(n));
    {
        mpz_class p = 1;
        for (std::size_t j = 1; j < static_cast<std::size_t>(n); ++j) {
            if (f.num[j] != 0) {
                w[j] = f.num[j] * p;
                nz.push_back(j);
            }
            if (L != 1) p *= L;
        }
    }
    std::vector<mpz_class> B(static_cast<std::size_t>(n));
    B[0] = 1;
    mpz_class acc;
    for (std::size_t i = 1; i < static_cast<std::size_t>(n); ++i) {
        acc = 0;
        for (std::size_t j : nz) {
            if (j > i) break;
            if (B[i - j] != 0) mpz_addmul(acc.get_mpz_t(), w[j].get_mpz_t(), B[i - j].get_mpz_t());
        }
        B[i] = -acc;
    }
    std::vector<Rational> out(static_cast<std::size_t>(n));
    mpz_class Lp = L;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (B[i] != 0) out[i] = make_rational(B[i] * f.den, Lp);
        if (L != 1) Lp *= L;
    }
    return QSeries(d, -v, std::move(out), a.valid_to() - 2 * v);
}

QSeries int_pow(const QSeries &a, std::int64_t n)
{
    if (n == 0) return QSeries::constant(1);
    QSeries base = n < 0 ? invert(a) : a;
    std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
    QSeries result;
    bool have = false;
    while (true) {
        if (e & 1U) {
            result = have ? result * base : base;
            have = true;
        }
        e >>= 1U;
        if (e == 0) break;
        base = base * base;
    }
    return result;
}

namespace {

std::vector<Rational> sqrt_terms(const std::vector<Rational> &a, const Rational &root, std::size_t n)
{
    std::vector<Rational> b(n);
    if (n == 0) return b;
    b[0] = root;
    Rational two_root = 2 * root;
    for (std::size_t i = 1; i < n; ++i) {
        Rational s = i < a.size() ? a[i] : Rational(0);
        for (std::size_t j = 1; j < i; ++j) {
            if (sgn(b[j]) != 0 && sgn(b[i - j]) != 0) s -= b[j] * b[i - j];
        }
        b[i] = s / two_root;
    }
    return b;
}

} // namespace

QSeries sqrt(const QSeries &a)
{
    const idx_t d = a.denom();
    if (a.is_zero()) {
        if (a.is_exact()) return QSeries();
        return QSeries(2 * d, 0, {}, a.valid_to());
    }
    const idx_t v = a.min_exp();
    if (v % 2 != 0) {
        throw odd_valuation_error("square root needs an even valuation index, got q^" +
                                  qtheta::to_string(a.valuation()));
    }
    Rational root;
    if (!rational_sqrt(a.leading(), root)) {
        throw non_square_leading_error("leading coefficient " + qtheta::to_string(a.leading()) +
                                       " is not the square of a rational");
    }
    if (a.is_exact()) {
        std::size_t n = (a.coeffs().size() - 1) / 2 + 1;
        QSeries cand(d, v / 2, sqrt_terms(a.coeffs(), root, n), QSeries::exact);
        if (cand * cand == a) return cand;
        throw unbounded_result_error("exact series is not a perfect square; truncate it first");
    }
    std::size_t n = static_cast<std::size_t>(a.valid_to() - v);
    return QSeries(d, v / 2, sqrt_terms(a.coeffs(), root, n), a.valid_to() - v / 2);
}

QSeries substitute_power(const QSeries &a, const Rational &m)
{
    if (sgn(m) <= 0) throw std::invalid_argument("substitution power must be positive");
    idx_t p = to_int64(Integer(m.get_num()));
    idx_t r = to_int64(Integer(m.get_den()));
    idx_t d = a.denom() * r;
    idx_t vt = sat_mul(a.valid_to(), p);
    if (a.is_zero()) return QSeries(d, 0, {}, vt);
    std::vector<Rational> out((a.coeffs().size() - 1) * static_cast<std::size_t>(p) + 1);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) out[i * static_cast<std::size_t>(p)] = a.coeffs()[i];
    return QSeries(d, a.min_exp() * p, std::move(out), vt);
}

QSeries substitute_negate(const QSeries &a)
{
    const idx_t d = a.denom();
    if (d > 1) {
        // Only the validity bound can keep the grid fractional; drop to the
        // integer grid below it.
        for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
            if (sgn(a.coeffs()[i]) != 0 && (a.min_exp() + static_cast<idx_t>(i)) % d != 0) {
                throw fractional_grid_error("q -> -q is ambiguous on the grid q^(1/" +
                                            std::to_string(d) + ")");
            }
        }
        idx_t vt = a.is_exact() ? QSeries::exact : floor_div(a.valid_to(), d);
        std::vector<Rational> out;
        for (std::size_t i = 0; i < a.coeffs().size(); i += static_cast<std::size_t>(d)) out.push_back(a.coeffs()[i]);
        QSeries reduced(1, a.is_zero() ? 0 : a.min_exp() / d, std::move(out), vt);
        return substitute_negate(reduced);
    }
    std::vector<Rational> out = a.coeffs();
    for (std::size_t i = 0; i < out.size(); ++i) {
        if ((a.min_exp() + static_cast<idx_t>(i)) % 2 != 0) out[i] = -out[i];
    }
    return QSeries(1, a.min_exp(), std::move(out), a.valid_to());
}

std::ostream &operator<<(std::ostream &os, const QSeries &s) { return os << s.to_string(); }

} // namespace qtheta
