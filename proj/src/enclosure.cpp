#include "npk/enclosure.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace npk {

namespace {

mpfr_prec_t join_prec(const Enclosure& a, const Enclosure& b) {
    return static_cast<mpfr_prec_t>(std::max(a.bits_used(), b.bits_used()));
}

// min/max over candidate products computed with a fixed rounding mode
MpF corners(const std::vector<const MpF*>& as, const std::vector<const MpF*>& bs,
            mpfr_prec_t prec, mpfr_rnd_t rnd, bool want_min,
            int (*op)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t)) {
    MpF best(prec);
    bool first = true;
    MpF tmp(prec);
    for (const MpF* a : as)
        for (const MpF* b : bs) {
            op(tmp.get(), a->get(), b->get(), rnd);
            if (tmp.is_nan()) continue;  // inf * 0 style corner; other corners bound it
            if (first || (want_min ? tmp < best : tmp > best)) {
                best = tmp;
                first = false;
            }
        }
    if (first) throw InvalidParameter("interval op: all corners indeterminate");
    return best;
}

}  // namespace

std::string MpF::to_string(size_t digits) const {
    if (digits == 0)
        digits = static_cast<size_t>(static_cast<double>(prec()) * 0.30103) + 3;
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), v_);
    std::string r(s);
    mpfr_free_str(s);
    return r;
}

std::string mpf_to_decimal(const MpF& x) { return x.to_string(); }

Enclosure Enclosure::from_rational(const Rational& q, long bits) {
    auto p = static_cast<mpfr_prec_t>(bits);
    return Enclosure(MpF::from_rational(q, p, MPFR_RNDD), MpF::from_rational(q, p, MPFR_RNDU));
}

Enclosure enclose_rational(const Rational& q, const PrecisionContext& ctx) {
    return Enclosure::from_rational(q, ctx.bits);
}

Enclosure Enclosure::pi(long bits) {
    auto p = static_cast<mpfr_prec_t>(bits);
    MpF lo(p), hi(p);
    mpfr_const_pi(lo.get(), MPFR_RNDD);
    mpfr_const_pi(hi.get(), MPFR_RNDU);
    return Enclosure(std::move(lo), std::move(hi));
}

bool Enclosure::contains(const Rational& q) const {
    return mpfr_cmp_q(lo_.get(), q.raw().get_mpq_t()) <= 0 &&
           mpfr_cmp_q(hi_.get(), q.raw().get_mpq_t()) >= 0;
}

MpF Enclosure::width() const {
    MpF w(std::max(lo_.prec(), hi_.prec()));
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    return w;
}

Rational Enclosure::midpoint() const {
    if (!is_finite()) throw InvalidParameter("midpoint of unbounded enclosure");
    return (lo_.to_rational() + hi_.to_rational()) * Rational(1, 2);
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
    mpfr_prec_t p = join_prec(a, b);
    MpF lo(p), hi(p);
    mpfr_add(lo.get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
    mpfr_add(hi.get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
    return Enclosure(std::move(lo), std::move(hi));
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) {
    mpfr_prec_t p = join_prec(a, b);
    MpF lo(p), hi(p);
    mpfr_sub(lo.get(), a.lo().get(), b.hi().get(), MPFR_RNDD);
    mpfr_sub(hi.get(), a.hi().get(), b.lo().get(), MPFR_RNDU);
    return Enclosure(std::move(lo), std::move(hi));
}

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
    mpfr_prec_t p = join_prec(a, b);
    std::vector<const MpF*> as{&a.lo(), &a.hi()}, bs{&b.lo(), &b.hi()};
    MpF lo = corners(as, bs, p, MPFR_RNDD, true, mpfr_mul);
    MpF hi = corners(as, bs, p, MPFR_RNDU, false, mpfr_mul);
    return Enclosure(std::move(lo), std::move(hi));
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
    if (b.contains_zero())
        throw std::domain_error("interval division by enclosure containing zero");
    mpfr_prec_t p = join_prec(a, b);
    std::vector<const MpF*> as{&a.lo(), &a.hi()}, bs{&b.lo(), &b.hi()};
    MpF lo = corners(as, bs, p, MPFR_RNDD, true, mpfr_div);
    MpF hi = corners(as, bs, p, MPFR_RNDU, false, mpfr_div);
    return Enclosure(std::move(lo), std::move(hi));
}

Enclosure abs(const Enclosure& a) {
    if (a.lo().sign() >= 0) return a;
    if (a.hi().sign() <= 0) return -a;
    // straddles zero: [0, max(-lo, hi)]
    mpfr_prec_t p = static_cast<mpfr_prec_t>(a.bits_used());
    MpF nlo(p), hi(p);
    mpfr_neg(nlo.get(), a.lo().get(), MPFR_RNDU);
    mpfr_max(hi.get(), nlo.get(), a.hi().get(), MPFR_RNDU);
    return Enclosure(MpF(0, p), std::move(hi));
}

Enclosure sqrt(const Enclosure& a) {
    if (a.lo().sign() < 0) throw std::domain_error("interval sqrt of negative enclosure");
    mpfr_prec_t p = static_cast<mpfr_prec_t>(a.bits_used());
    MpF lo(p), hi(p);
    mpfr_sqrt(lo.get(), a.lo().get(), MPFR_RNDD);
    mpfr_sqrt(hi.get(), a.hi().get(), MPFR_RNDU);
    return Enclosure(std::move(lo), std::move(hi));
}

Enclosure exp(const Enclosure& a) {
    mpfr_prec_t p = static_cast<mpfr_prec_t>(a.bits_used());
    MpF lo(p), hi(p);
    mpfr_exp(lo.get(), a.lo().get(), MPFR_RNDD);
    mpfr_exp(hi.get(), a.hi().get(), MPFR_RNDU);
    return Enclosure(std::move(lo), std::move(hi));
}

Enclosure reciprocal(const Enclosure& a) {
    if (a.contains_zero())
        throw std::domain_error("reciprocal of enclosure containing zero");
    mpfr_prec_t p = static_cast<mpfr_prec_t>(a.bits_used());
    MpF lo(p), hi(p);
    mpfr_si_div(lo.get(), 1, a.hi().get(), MPFR_RNDD);
    mpfr_si_div(hi.get(), 1, a.lo().get(), MPFR_RNDU);
    return Enclosure(std::move(lo), std::move(hi));
}

Enclosure pow(const Enclosure& base, const Rational& e, long bits) {
    if (!base.is_positive()) throw std::domain_error("interval pow: base must be positive");
    auto p = static_cast<mpfr_prec_t>(bits);
    MpF ed = MpF::from_rational(e, p, MPFR_RNDD);
    MpF eu = MpF::from_rational(e, p, MPFR_RNDU);
    std::vector<const MpF*> bs{&base.lo(), &base.hi()}, es{&ed, &eu};
    MpF lo = corners(bs, es, p, MPFR_RNDD, true, mpfr_pow);
    MpF hi = corners(bs, es, p, MPFR_RNDU, false, mpfr_pow);
    return Enclosure(std::move(lo), std::move(hi));
}

Enclosure min_enc(const Enclosure& a, const Enclosure& b) {
    mpfr_prec_t p = join_prec(a, b);
    MpF lo(p), hi(p);
    mpfr_min(lo.get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
    mpfr_min(hi.get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
    return Enclosure(std::move(lo), std::move(hi));
}

Enclosure max_enc(const Enclosure& a, const Enclosure& b) {
    mpfr_prec_t p = join_prec(a, b);
    MpF lo(p), hi(p);
    mpfr_max(lo.get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
    mpfr_max(hi.get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
    return Enclosure(std::move(lo), std::move(hi));
}

Enclosure hull(const Enclosure& a, const Enclosure& b) {
    return Enclosure(a.lo() < b.lo() ? a.lo() : b.lo(), a.hi() > b.hi() ? a.hi() : b.hi());
}

Enclosure intersect(const Enclosure& a, const Enclosure& b) {
    if (!a.intersects(b)) throw InvalidParameter("intersect: disjoint enclosures");
    return Enclosure(a.lo() > b.lo() ? a.lo() : b.lo(), a.hi() < b.hi() ? a.hi() : b.hi());
}

std::string Enclosure::to_string() const {
    return "[" + lo_.to_string() + ", " + hi_.to_string() + "]";
}

Enclosure arg_over_pi(const Rational& x, const Rational& y, long bits) {
    int sx = x.sign(), sy = y.sign();
    if (sx == 0 && sy == 0) throw InvalidParameter("arg of origin");
    if (sy == 0) return Enclosure::from_rational(Rational(sx > 0 ? 0 : 1), bits);
    if (sx == 0) return Enclosure::from_rational(Rational(sy > 0 ? 1 : -1, 2), bits);
    // atan(y/x)/pi plus the quadrant shift
    Rational q = y / x;
    auto p = static_cast<mpfr_prec_t>(bits);
    MpF qd = MpF::from_rational(q, p, MPFR_RNDD), qu = MpF::from_rational(q, p, MPFR_RNDU);
    MpF alo(p), ahi(p);
    mpfr_atan(alo.get(), qd.get(), MPFR_RNDD);
    mpfr_atan(ahi.get(), qu.get(), MPFR_RNDU);
    Enclosure t = Enclosure(std::move(alo), std::move(ahi)) / Enclosure::pi(bits);
    if (sx > 0) return t;
    Rational shift(sy > 0 ? 1 : -1);
    return t + Enclosure::from_rational(shift, bits);
}

Enclosure arg_over_pi(const Enclosure& x, const Enclosure& y, long bits) {
    auto p = static_cast<mpfr_prec_t>(bits);
    auto atan2_hull = [&](const Enclosure& yy, const Enclosure& xx) {
        MpF lo(p), hi(p), t(p);
        bool first = true;
        for (const MpF* a : {&yy.lo(), &yy.hi()})
            for (const MpF* b : {&xx.lo(), &xx.hi()}) {
                mpfr_atan2(t.get(), a->get(), b->get(), MPFR_RNDD);
                if (first || t < lo) lo = t;
                mpfr_atan2(t.get(), a->get(), b->get(), MPFR_RNDU);
                if (first || t > hi) hi = t;
                first = false;
            }
        return Enclosure(std::move(lo), std::move(hi)) / Enclosure::pi(bits);
    };
    if (x.is_positive()) return atan2_hull(y, x);
    if (y.is_positive())  // rotate by -pi/2: arg(z) = arg(-iz) + pi/2
        return atan2_hull(-x, y) + Enclosure::from_rational(Rational(1, 2), bits);
    if (y.is_negative())  // rotate by +pi/2
        return atan2_hull(x, -y) - Enclosure::from_rational(Rational(1, 2), bits);
    if (x.is_negative() && y.contains_zero() && y.is_point())
        return Enclosure::from_rational(Rational(1), bits);
    throw IndeterminateComparison("arg_over_pi: point not certifiably off the branch point");
}

}  // namespace npk
