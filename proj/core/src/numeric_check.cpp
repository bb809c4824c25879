#include <qtheta/numeric.hpp>

#include <functional>
#include <sstream>

#include <qtheta/errors.hpp>
#include <qtheta/radical.hpp>

namespace qtheta {

namespace {

mpfr_prec_t working_bits(Precision P) { return P.bits(guard_digits); }

std::string trim(const std::string &s)
{
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &text, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

BigReal signed_power(int sign, const BigReal &q, const Rational &e, Precision P)
{
    mpfr_prec_t W = working_bits(P);
    BigReal r(W);
    if (is_integer(e)) {
        r = pow(q, to_int64(e));
    } else {
        if (q.sign() <= 0) throw domain_error("fractional power q^(" + to_string(e) + ") needs q > 0");
        r = pow(q, BigReal(e, W));
    }
    return sign < 0 ? -r : r;
}

BigReal eval_atom(const ThetaAtom &a, const BigReal &q, Precision P)
{
    using K = ThetaAtom::Kind;
    switch (a.kind) {
    case K::phi:
        return eval_phi(signed_power(a.arg_sign, q, a.arg_power, P), P);
    case K::psi:
        return eval_psi(signed_power(a.arg_sign, q, a.arg_power, P), P);
    case K::fneg:
        return eval_f_onearg(signed_power(-1, q, a.arg_power, P), P);
    case K::fab:
        return eval_fab(signed_power(a.a.sign, q, a.a.exponent, P), signed_power(a.b.sign, q, a.b.exponent, P), P);
    case K::monomial:
        return signed_power(1, q, a.exponent, P);
    }
    throw std::logic_error("unknown atom kind");
}

} // namespace

BigReal eval_numeric(const ExprPtr &e, const Bindings &bindings, const NumericEnv &env, Precision P,
                     const std::optional<BigReal> &q)
{
    mpfr_prec_t W = working_bits(P);
    auto rec = [&](const ExprPtr &x) { return eval_numeric(x, bindings, env, P, q); };
    using K = Expr::Kind;
    switch (e->kind) {
    case K::constant:
        return BigReal(e->value, W);
    case K::atom:
        if (!q) throw domain_error("theta atom " + e->atom.to_string() + " needs a value of q");
        return eval_atom(e->atom, *q, P);
    case K::name: {
        if (auto it = env.find(e->name); it != env.end()) return it->second;
        for (const auto &[name, def] : bindings) {
            if (name == e->name) return rec(def);
        }
        throw unknown_name_error("no value for '" + e->name + "'");
    }
    case K::add:
        return rec(e->lhs) + rec(e->rhs);
    case K::sub:
        return rec(e->lhs) - rec(e->rhs);
    case K::mul:
        return rec(e->lhs) * rec(e->rhs);
    case K::div:
        return rec(e->lhs) / rec(e->rhs);
    case K::pow:
        return pow(rec(e->lhs), static_cast<long>(e->exponent));
    case K::neg:
        return -rec(e->lhs);
    }
    throw std::logic_error("unknown expression kind");
}

std::vector<Rational> parse_rational_list(const std::string &text)
{
    std::vector<Rational> out;
    for (const auto &item : split(text, ',')) out.push_back(parse_rational(item));
    return out;
}

namespace {

struct SamplePoint {
    std::string label;
    NumericEnv env;
};

const std::string &required_attr(const IdentityDoc &doc, const char *key)
{
    const std::string *v = doc.attr(key);
    if (!v) throw domain_error(doc.id + ": missing attribute '" + key + "'");
    return *v;
}

Rational attr_rational(const IdentityDoc &doc, const char *key, const Rational &fallback)
{
    const std::string *v = doc.attr(key);
    return v ? parse_rational(*v) : fallback;
}

std::vector<SamplePoint> sample_points(const IdentityDoc &doc, const std::vector<Rational> &samples, Precision P)
{
    const std::string &check = required_attr(doc, "check");
    mpfr_prec_t W = working_bits(P);
    Rational t = attr_rational(doc, "t", 5);
    std::vector<SamplePoint> pts;

    if (check == "b-involution") {
        for (const auto &s : samples) {
            pts.push_back({"s=" + to_string(s), {{"B1", eval_b(2 * s, t, P)}, {"B2", eval_b(Rational(2) / s, t, P)}}});
        }
    } else if (check == "b-range") {
        BigReal one(1, W);
        for (const auto &s : samples) {
            BigReal b = eval_b(s, t, P);
            BigReal v = b.sign() > 0 ? max(b - one, BigReal(0, W)) : one - b;
            pts.push_back({"s=" + to_string(s), {{"V", v}, {"b", b}}});
        }
    } else if (check == "b-theorem") {
        Rational ratio = parse_rational(required_attr(doc, "ratio"));
        for (const auto &s : samples) {
            BigReal b1 = eval_b(s, t, P), b2 = eval_b(ratio * s, t, P);
            pts.push_back({"s=" + to_string(s), {{"X", sqrt(b1 * b2)}, {"Y", sqrt(b1 / b2)}}});
        }
    } else if (check == "closed-form") {
        Rational s = parse_rational(required_attr(doc, "s"));
        RadicalPtr r = parse_radical(required_attr(doc, "radical"));
        pts.push_back({"s=" + to_string(s), {{"B", eval_b(s, t, P)}, {"R", eval_radical(r, W)}}});
    } else if (check == "quartic") {
        auto ss = parse_rational_list(required_attr(doc, "s"));
        auto rs = split(required_attr(doc, "radicals"), ';');
        if (ss.size() != rs.size()) throw domain_error(doc.id + ": s and radicals differ in length");
        SamplePoint pt;
        pt.label = "s=" + required_attr(doc, "s");
        for (std::size_t i = 0; i < ss.size(); ++i) {
            std::string k = std::to_string(i + 1);
            pt.env.emplace("H" + k, eval_b(ss[i], t, P));
            pt.env.emplace("T" + k, eval_radical(parse_radical(rs[i]), W));
        }
        pts.push_back(std::move(pt));
    } else if (check == "degree5") {
        BigReal one(1, W);
        for (const auto &x : samples) {
            Degree5Values v = degree5_values(BigReal(x, W), P);
            BigReal p = root(v.beta / v.alpha, 4);
            BigReal q = root((one - v.beta) / (one - v.alpha), 4);
            pts.push_back({"x=" + to_string(x), {{"P", p}, {"Q", q}, {"M", v.m}}});
        }
    } else if (check == "theta-k") {
        for (const auto &k : samples) {
            BigReal kk(k, W);
            BigReal z = BigReal(2, W) * eval_K(kk, P) / BigReal::pi(W);
            BigReal f = eval_phi(q_from_x(kk * kk, P), P);
            pts.push_back({"k=" + to_string(k), {{"Z", z}, {"F", f}}});
        }
    } else if (check == "entry12") {
        BigReal one(1, W);
        for (const auto &x : samples) {
            ModularPoint mp = modular_point(BigReal(x, W), P);
            BigReal base = mp.x * (one - mp.x) * exp(mp.y);
            BigReal sz = sqrt(mp.z);
            BigReal r1 = sz * pow(BigReal(2, W), BigReal(Rational(-1, 6), W)) * pow(base, BigReal(Rational(1, 24), W));
            BigReal r2 = sz * pow(BigReal(2, W), BigReal(Rational(-1, 3), W)) * pow(base, BigReal(Rational(1, 12), W));
            pts.push_back({"x=" + to_string(x),
                           {{"F1", eval_f_onearg(mp.q, P)}, {"R1", r1}, {"F2", eval_f_onearg(-(mp.q * mp.q), P)}, {"R2", r2}}});
        }
    } else {
        throw domain_error(doc.id + ": unknown numeric check '" + check + "'");
    }
    return pts;
}

} // namespace

NumericReport check_numeric_identity(const IdentityDoc &doc, Precision P)
{
    std::vector<Rational> samples;
    if (const std::string *s = doc.attr("samples")) samples = parse_rational_list(*s);
    return check_numeric_identity(doc, samples, P);
}

NumericReport check_numeric_identity(const IdentityDoc &doc, const std::vector<Rational> &samples, Precision P)
{
    NumericReport rep;
    mpfr_prec_t W = working_bits(P);
    rep.residual = BigReal(0, W);
    try {
        if (doc.mode != Mode::numeric) throw domain_error(doc.id + " is not a numeric document");
        rep.guard = static_cast<int>(to_int64(attr_rational(doc, "guard", default_numeric_guard)));
        rep.tolerance = ten_pow(-(P.digits - rep.guard), W);
        for (auto &pt : sample_points(doc, samples, P)) {
            SampleResidual sr;
            sr.sample = pt.label;
            sr.residual = BigReal(0, W);
            for (const auto &rel : doc.relations) {
                BigReal v = abs(eval_numeric(rel, doc.bindings, pt.env, P));
                if (mpfr_nan_p(v.get()) || !(v <= sr.residual)) sr.residual = v;
            }
            for (auto &[k, v] : pt.env) sr.values.emplace_back(k, v);
            if (mpfr_nan_p(sr.residual.get()) || !(sr.residual <= rep.residual)) rep.residual = sr.residual;
            rep.samples.push_back(std::move(sr));
        }
        bool ok = !mpfr_nan_p(rep.residual.get()) && rep.residual < rep.tolerance;
        rep.status = ok ? Status::verified : Status::failed;
        if (!ok) rep.message = "residual " + rep.residual.to_string(6) + " exceeds tolerance " + rep.tolerance.to_string(3);
    } catch (const error &ex) {
        rep.status = Status::error;
        rep.message = ex.what();
    } catch (const std::exception &ex) {
        rep.status = Status::error;
        rep.message = ex.what();
    }
    return rep;
}

} // namespace qtheta
