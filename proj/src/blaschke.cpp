#include "npk/blaschke.hpp"

namespace npk {

namespace {

// Escalates until the enclosure produced by f(bits) has relative width
// below 2^-32, or max precision is reached.
template <class F>
Enclosure tighten(const PrecisionContext& ctx, F&& f) {
    PrecisionContext c = ctx;
    for (;;) {
        Enclosure r = f(c.bits);
        if (!r.contains_zero()) {
            MpF w = r.width();
            MpF bound(w.prec());
            mpfr_abs(bound.get(), r.lo().get(), MPFR_RNDD);
            mpfr_mul_2si(bound.get(), bound.get(), -32, MPFR_RNDD);
            if (w <= bound) return r;
        } else if (r.is_point()) {
            return r;  // exact zero
        }
        if (!c.can_widen()) return r;
        c = c.widened();
    }
}

}  // namespace

CxE eval(const BlaschkeProduct& B, const CxE& z, const PrecisionContext& ctx) {
    Enclosure zn = z.norm_sq();
    if (!(zn.hi() < MpF(1, zn.hi().prec())))
        throw IndeterminateComparison("eval: point not certifiably inside the disk");
    const NodeSequence& seq = B.nodes;
    PrecisionContext c = ctx;
    CxE prod(Enclosure::from_int(1, c.bits), Enclosure::from_int(0, c.bits));
    for (size_t k = 0; k < seq.size(); ++k) {
        CxE zk = seq.point_at(k, c.bits);
        CxE one(Enclosure::from_int(1, c.bits), Enclosure::from_int(0, c.bits));
        CxE num = zk - z;
        CxE den = one - z * zk.conj();
        // unimodular normalization |z_k|/z_k = conj(z_k)/|z_k|
        Enclosure mod = abs(zk);
        CxE factor = (num / den) * zk.conj() / mod;
        prod = prod * factor;
    }
    return prod;
}

Rational pseudo_product_exact(const NodeSequence& seq, size_t n) {
    if (!(seq.all_exact() && seq.all_real()))
        throw InvalidParameter("pseudo_product_exact: requires real rational nodes");
    Rational zn = seq.points.at(n).re;
    Rational prod(1);
    for (size_t k = 0; k < seq.size(); ++k) {
        if (k == n) continue;
        Rational zk = seq.points[k].re;
        prod *= (zn - zk).abs() / (Rational(1) - zk * zn).abs();
    }
    return prod;
}

Enclosure pseudo_product(const NodeSequence& seq, size_t n, const PrecisionContext& ctx) {
    if (seq.all_exact() && seq.all_real())
        return Enclosure::from_rational(pseudo_product_exact(seq, n), ctx.bits);
    return tighten(ctx, [&](long bits) {
        CxE zn = seq.point_at(n, bits);
        Enclosure prod = Enclosure::from_int(1, bits);
        for (size_t k = 0; k < seq.size(); ++k) {
            if (k == n) continue;
            CxE zk = seq.point_at(k, bits);
            CxE one(Enclosure::from_int(1, bits), Enclosure::from_int(0, bits));
            prod *= sqrt((zn - zk).norm_sq() / (one - zk.conj() * zn).norm_sq());
        }
        return prod;
    });
}

Rational derivative_modulus_exact(const NodeSequence& seq, size_t n) {
    Rational zn = seq.points.at(n).re;
    Rational denom = Rational(1) - zn * zn;
    return pseudo_product_exact(seq, n) / denom;
}

Enclosure derivative_modulus_at_node(const BlaschkeProduct& B, size_t n,
                                     const PrecisionContext& ctx) {
    const NodeSequence& seq = B.nodes;
    if (seq.all_exact() && seq.all_real())
        return Enclosure::from_rational(derivative_modulus_exact(seq, n), ctx.bits);
    return tighten(ctx, [&](long bits) {
        PrecisionContext c{bits, std::max(bits, ctx.max_bits), ctx.escalation_factor};
        Enclosure prod = pseudo_product(seq, n, c);
        Enclosure one = Enclosure::from_int(1, bits);
        return prod / (one - seq.point_at(n, bits).norm_sq());
    });
}

DiscreteMeasure nu_measure(const NodeSequence& seq, const PrecisionContext& ctx) {
    DiscreteMeasure mu;
    bool exact = seq.all_exact() && seq.all_real();
    BlaschkeProduct B{seq};
    for (size_t k = 0; k < seq.size(); ++k) {
        Atom a;
        a.point = seq.points[k];
        if (exact) {
            Rational d = derivative_modulus_exact(seq, k);
            a.mass_q = (d * d).reciprocal();
            a.exact_mass = true;
            a.mass = Enclosure::from_rational(a.mass_q, ctx.bits);
        } else {
            Enclosure d = derivative_modulus_at_node(B, k, ctx);
            a.mass = reciprocal(d * d);
        }
        mu.atoms.push_back(std::move(a));
    }
    return mu;
}

Enclosure separation_constant(const NodeSequence& seq, const PrecisionContext& ctx) {
    if (seq.points.empty()) throw InvalidParameter("separation_constant: empty sequence");
    if (seq.all_exact() && seq.all_real()) {
        Rational best = pseudo_product_exact(seq, 0);
        for (size_t n = 1; n < seq.size(); ++n) {
            Rational v = pseudo_product_exact(seq, n);
            if (v < best) best = v;
        }
        return Enclosure::from_rational(best, ctx.bits);
    }
    Enclosure best = pseudo_product(seq, 0, ctx);
    for (size_t n = 1; n < seq.size(); ++n)
        best = min_enc(best, pseudo_product(seq, n, ctx));
    return best;
}

Enclosure example_mass_lower_bound(const Rational& p, long n, std::optional<long> N,
                                   const PrecisionContext& ctx) {
    if (!(p > Rational(1))) throw InvalidParameter("example_mass_lower_bound: need p > 1");
    if (n < 1) throw InvalidParameter("example_mass_lower_bound: need n >= 1");
    if (N && *N <= n) throw InvalidParameter("example_mass_lower_bound: need n < N");
    long bits = ctx.bits;
    Rational two_p = Rational(2) * p;
    Enclosure lead = pow(Enclosure::from_int(n, bits), -two_p, bits);
    Enclosure expo;
    if (N) {
        Enclosure sum = Enclosure::from_int(0, bits);
        for (long k = n + 1; k <= *N; ++k) {
            Enclosure ratio = Enclosure::from_rational(Rational(n) / Rational(k), bits);
            sum += pow(ratio, p, bits);
        }
        expo = Enclosure::from_int(2, bits) * sum;
    } else {
        // closed form (n+1) / (2^{p-1} (p-1))
        Enclosure denom = pow(Enclosure::from_int(2, bits), p - Rational(1), bits) *
                          Enclosure::from_rational(p - Rational(1), bits);
        expo = Enclosure::from_int(n + 1, bits) / denom;
    }
    return lead * exp(expo);
}

}  // namespace npk
