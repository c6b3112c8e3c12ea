#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "npk/rational.hpp"

namespace npk {

// RAII value wrapper around mpfr_t. Every operation takes an explicit target
// precision and rounding mode; MpF itself carries no rounding policy.
class MpF {
public:
    MpF() { mpfr_init2(v_, 53); mpfr_set_zero(v_, 1); }
    explicit MpF(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    MpF(long x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, x, MPFR_RNDN); }
    MpF(const MpF& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    MpF(MpF&& o) noexcept { mpfr_init2(v_, 53); mpfr_swap(v_, o.v_); }
    MpF& operator=(const MpF& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    MpF& operator=(MpF&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~MpF() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_); }
    bool is_inf() const { return mpfr_inf_p(v_); }
    bool is_nan() const { return mpfr_nan_p(v_); }
    bool is_finite() const { return mpfr_number_p(v_); }

    static MpF from_rational(const Rational& q, mpfr_prec_t prec, mpfr_rnd_t rnd) {
        MpF r(prec);
        mpfr_set_q(r.v_, q.raw().get_mpq_t(), rnd);
        return r;
    }
    static MpF pos_inf(mpfr_prec_t prec) { MpF r(prec); mpfr_set_inf(r.v_, 1); return r; }
    static MpF neg_inf(mpfr_prec_t prec) { MpF r(prec); mpfr_set_inf(r.v_, -1); return r; }

    // Finite mpfr values are dyadic rationals; this conversion is exact.
    Rational to_rational() const {
        mpq_class q;
        mpfr_get_q(q.get_mpq_t(), v_);
        return Rational(q);
    }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    friend bool operator<(const MpF& a, const MpF& b) { return mpfr_less_p(a.v_, b.v_); }
    friend bool operator<=(const MpF& a, const MpF& b) { return mpfr_lessequal_p(a.v_, b.v_); }
    friend bool operator>(const MpF& a, const MpF& b) { return mpfr_greater_p(a.v_, b.v_); }
    friend bool operator>=(const MpF& a, const MpF& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
    friend bool operator==(const MpF& a, const MpF& b) { return mpfr_equal_p(a.v_, b.v_); }

    std::string to_string(size_t digits = 0) const;

private:
    mpfr_t v_;
};

}  // namespace npk
