#pragma once

#include <algorithm>
#include <optional>
#include <string>

#include "npk/errors.hpp"
#include "npk/mpf.hpp"
#include "npk/rational.hpp"

namespace npk {

// Working-precision policy shared by all certified computations.
struct PrecisionContext {
    long bits = 128;
    long max_bits = 4096;
    int escalation_factor = 2;

    PrecisionContext() = default;
    PrecisionContext(long b, long mb, int f) : bits(b), max_bits(mb), escalation_factor(f) {
        if (b <= 0 || mb <= 0 || f < 2 || b > mb)
            throw InvalidParameter("PrecisionContext: need 0 < bits <= max_bits, factor >= 2");
    }

    bool can_widen() const { return bits < max_bits; }
    PrecisionContext widened() const {
        if (!can_widen())
            throw EscalationExhausted("precision escalation exhausted at " + std::to_string(bits) + " bits");
        PrecisionContext c = *this;
        c.bits = std::min(bits * escalation_factor, max_bits);
        return c;
    }
};

// Certified real interval [lo, hi] with outward rounding on every operation.
// Result precision of a binary op is the max of the operand precisions.
class Enclosure {
public:
    Enclosure() : lo_(0, 53), hi_(0, 53) {}
    Enclosure(long x) : lo_(x, 53), hi_(lo_) {}  // exact point; precision grows with use
    Enclosure(long x, long bits) : lo_(x, static_cast<mpfr_prec_t>(bits)), hi_(lo_) {}
    Enclosure(MpF lo, MpF hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (!(lo_ <= hi_) && !(lo_.is_nan() || hi_.is_nan()))
            throw InvalidParameter("Enclosure: lo > hi");
    }

    static Enclosure from_rational(const Rational& q, long bits);
    static Enclosure from_int(long x, long bits) { return Enclosure(x, bits); }
    static Enclosure entire(long bits) {
        return Enclosure(MpF::neg_inf(bits), MpF::pos_inf(bits));
    }
    static Enclosure pi(long bits);

    const MpF& lo() const { return lo_; }
    const MpF& hi() const { return hi_; }
    long bits_used() const { return static_cast<long>(std::max(lo_.prec(), hi_.prec())); }

    bool is_finite() const { return lo_.is_finite() && hi_.is_finite(); }
    bool is_point() const { return lo_ == hi_; }
    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
    bool is_positive() const { return lo_.sign() > 0; }
    bool is_negative() const { return hi_.sign() < 0; }
    bool contains(const Rational& q) const;
    bool contains(const Enclosure& other) const {
        return lo_ <= other.lo_ && other.hi_ <= hi_;
    }
    bool intersects(const Enclosure& other) const {
        return !(hi_ < other.lo_ || other.hi_ < lo_);
    }

    // Certified sign: -1, 0 (point zero), +1, or nullopt when the interval
    // straddles zero.
    std::optional<int> certified_sign() const {
        if (is_positive()) return 1;
        if (is_negative()) return -1;
        if (lo_.is_zero() && hi_.is_zero()) return 0;
        return std::nullopt;
    }

    MpF width() const;                 // upper bound on hi - lo
    Rational midpoint() const;         // exact dyadic midpoint
    Rational lo_rational() const { return lo_.to_rational(); }
    Rational hi_rational() const { return hi_.to_rational(); }
    double mid_double() const { return 0.5 * (lo_.to_double() + hi_.to_double()); }

    Enclosure operator-() const { return Enclosure(neg(hi_), neg(lo_)); }
    friend Enclosure operator+(const Enclosure& a, const Enclosure& b);
    friend Enclosure operator-(const Enclosure& a, const Enclosure& b);
    friend Enclosure operator*(const Enclosure& a, const Enclosure& b);
    friend Enclosure operator/(const Enclosure& a, const Enclosure& b);
    Enclosure& operator+=(const Enclosure& b) { return *this = *this + b; }
    Enclosure& operator-=(const Enclosure& b) { return *this = *this - b; }
    Enclosure& operator*=(const Enclosure& b) { return *this = *this * b; }
    Enclosure& operator/=(const Enclosure& b) { return *this = *this / b; }

    friend bool operator==(const Enclosure& a, const Enclosure& b) {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }

    std::string to_string() const;

private:
    static MpF neg(const MpF& x) {
        MpF r(x.prec());
        mpfr_neg(r.get(), x.get(), MPFR_RNDN);  // exact
        return r;
    }
    MpF lo_, hi_;
};

// certified order relations: a.hi < b.lo and friends.
inline bool certainly_less(const Enclosure& a, const Enclosure& b) { return a.hi() < b.lo(); }
inline bool certainly_leq(const Enclosure& a, const Enclosure& b) { return a.hi() <= b.lo(); }

Enclosure abs(const Enclosure& a);
Enclosure sqrt(const Enclosure& a);              // requires lo >= 0
Enclosure exp(const Enclosure& a);
Enclosure reciprocal(const Enclosure& a);
Enclosure pow(const Enclosure& base, const Rational& e, long bits);  // base > 0
Enclosure min_enc(const Enclosure& a, const Enclosure& b);
Enclosure max_enc(const Enclosure& a, const Enclosure& b);
Enclosure hull(const Enclosure& a, const Enclosure& b);
Enclosure intersect(const Enclosure& a, const Enclosure& b);

// enclosure of q^e at the given precision (exact squaring of rationals then
// outward conversion)
Enclosure enclose_rational(const Rational& q, const PrecisionContext& ctx);

// arg(x + iy)/pi as an enclosure in (-1, 1], for an exact rational point
// that is not the origin.
Enclosure arg_over_pi(const Rational& x, const Rational& y, long bits);
// same for enclosure coordinates; requires the point certifiably off the
// origin and not straddling the branch cut unless purely real-negative.
Enclosure arg_over_pi(const Enclosure& x, const Enclosure& y, long bits);

std::string mpf_to_decimal(const MpF& x);

}  // namespace npk
