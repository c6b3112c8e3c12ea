#include "npk/spectra.hpp"

#include <sstream>

namespace npk {

namespace {

Rational pow2(long e) {
    mpz_class z;
    mpz_ui_pow_ui(z.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
    Rational r(z);
    return e < 0 ? r.reciprocal() : r;
}

std::optional<int> sign_of(const Rational& q) { return q.sign(); }
std::optional<int> sign_of(const Enclosure& e) { return e.certified_sign(); }

template <class S>
Inertia ldlt_real(Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& A) {
    const long d = A.rows();
    long neg = 0;
    for (long j = 0; j < d; ++j) {
        auto s = sign_of(A(j, j));
        if (!s) return {InertiaStatus::Indeterminate, neg};
        if (*s == 0) return {InertiaStatus::ZeroPivot, neg};
        if (*s < 0) ++neg;
        for (long i = j + 1; i < d; ++i) {
            S w = A(i, j) / A(j, j);
            for (long c = j + 1; c <= i; ++c) A(i, c) = A(i, c) - w * A(c, j);
        }
    }
    return {InertiaStatus::Certified, neg};
}

template <class S>
Inertia ldlt_hermitian(Eigen::Matrix<Cx<S>, Eigen::Dynamic, Eigen::Dynamic>& A) {
    const long d = A.rows();
    long neg = 0;
    for (long j = 0; j < d; ++j) {
        auto s = sign_of(A(j, j).re);
        if (!s) return {InertiaStatus::Indeterminate, neg};
        if (*s == 0) return {InertiaStatus::ZeroPivot, neg};
        if (*s < 0) ++neg;
        for (long i = j + 1; i < d; ++i) {
            Cx<S> w = A(i, j) / A(j, j);
            for (long c = j + 1; c <= i; ++c) A(i, c) = A(i, c) - w * A(c, j).conj();
        }
    }
    return {InertiaStatus::Certified, neg};
}

bool exact_feasible(const HermitianKernelMatrix& M, const DiagScale* dinv) {
    return M.is_exact && (!dinv || dinv->exact);
}

bool resolve_exact(const HermitianKernelMatrix& M, Backend be, const DiagScale* dinv) {
    if (be == Backend::Exact) {
        if (!exact_feasible(M, dinv))
            throw InvalidParameter("exact backend requested on inexact data");
        return true;
    }
    if (be == Backend::Interval) return false;
    return exact_feasible(M, dinv) && M.dim() <= 12;
}

}  // namespace

Inertia inertia_below(const HermitianKernelMatrix& M, const Rational& shift, Backend be,
                      long bits, const DiagScale* dinv) {
    const long d = M.dim();
    if (resolve_exact(M, be, dinv)) {
        if (M.is_real) {
            MatQ A = M.q;
            for (long j = 0; j < d; ++j)
                A(j, j) -= shift * (dinv ? dinv->q[static_cast<size_t>(j)] : Rational(1));
            return ldlt_real<Rational>(A);
        }
        MatCQ A = M.cq;
        for (long j = 0; j < d; ++j)
            A(j, j).re -= shift * (dinv ? dinv->q[static_cast<size_t>(j)] : Rational(1));
        return ldlt_hermitian<Rational>(A);
    }
    Enclosure sh = Enclosure::from_rational(shift, bits);
    std::vector<Enclosure> de;
    if (dinv) {
        if (dinv->exact) {
            de.reserve(static_cast<size_t>(d));
            for (long j = 0; j < d; ++j)
                de.push_back(Enclosure::from_rational(dinv->q[static_cast<size_t>(j)], bits));
        } else {
            de = dinv->gen(bits);
        }
    }
    if (M.is_real) {
        MatE A = M.real_at(bits);
        for (long j = 0; j < d; ++j)
            A(j, j) -= dinv ? sh * de[static_cast<size_t>(j)] : sh;
        return ldlt_real<Enclosure>(A);
    }
    MatCE A = M.cx_at(bits);
    for (long j = 0; j < d; ++j)
        A(j, j).re -= dinv ? sh * de[static_cast<size_t>(j)] : sh;
    return ldlt_hermitian<Enclosure>(A);
}

namespace {

// Rigorous symmetric Gershgorin bracket for M (or D^{1/2} M D^{1/2}),
// computed with outward rounding. Returned as exact dyadic rationals.
std::pair<Rational, Rational> gershgorin_bracket(const HermitianKernelMatrix& M, long bits,
                                                 const DiagScale* dinv) {
    const long d = M.dim();
    std::vector<Enclosure> s;  // scale factors sqrt(D) = 1/sqrt(dinv)
    if (dinv) {
        std::vector<Enclosure> de;
        if (dinv->exact)
            for (long j = 0; j < d; ++j)
                de.push_back(Enclosure::from_rational(dinv->q[static_cast<size_t>(j)], bits));
        else
            de = dinv->gen(bits);
        for (long j = 0; j < d; ++j) s.push_back(reciprocal(sqrt(de[static_cast<size_t>(j)])));
    }
    auto scale = [&](long i, long j, const Enclosure& v) {
        return dinv ? s[static_cast<size_t>(i)] * v * s[static_cast<size_t>(j)] : v;
    };
    Rational low, up;
    bool first = true;
    auto accumulate = [&](long i, const Enclosure& diag, const Enclosure& radius) {
        (void)i;
        Rational li = (diag - radius).lo_rational();
        Rational ui = (diag + radius).hi_rational();
        if (first || li < low) low = li;
        if (first || ui > up) up = ui;
        first = false;
    };
    if (M.is_real) {
        MatE A = M.is_exact ? to_enclosure(M.q, bits) : M.real_at(bits);
        for (long i = 0; i < d; ++i) {
            Enclosure rad = Enclosure::from_int(0, bits);
            for (long j = 0; j < d; ++j)
                if (j != i) rad += scale(i, j, abs(A(i, j)));
            accumulate(i, scale(i, i, A(i, i)), rad);
        }
    } else {
        MatCE A = M.cx_at(bits);
        for (long i = 0; i < d; ++i) {
            Enclosure rad = Enclosure::from_int(0, bits);
            for (long j = 0; j < d; ++j)
                if (j != i) rad += scale(i, j, abs(A(i, j)));
            accumulate(i, scale(i, i, A(i, i).re), rad);
        }
    }
    return {low, up};
}

}  // namespace

EigenEnclosure eigenvalue(const HermitianKernelMatrix& M, long k, const Rational& rel_tol,
                          const PrecisionContext& ctx, Backend be, const DiagScale* dinv) {
    const long d = M.dim();
    if (k < 0 || k >= d) throw InvalidParameter("eigenvalue: index out of range");
    if (!(rel_tol > Rational(0))) throw InvalidParameter("eigenvalue: rel_tol must be positive");
    bool use_exact = resolve_exact(M, be, dinv);
    Backend solved_be = use_exact ? Backend::Exact : Backend::Interval;

    long bits = ctx.bits;
    auto [low, up] = gershgorin_bracket(M, bits, dinv);
    Rational pad = (up - low + Rational(1)) * pow2(-10);
    Rational lo = low - pad, hi = up + pad;
    long c_lo = 0, c_hi = d;  // certified by the Gershgorin bracket

    // certified inertia with shift perturbation and precision escalation
    auto certified_count = [&](Rational& s, const Rational& blo, const Rational& bhi) -> long {
        for (;;) {
            Rational cands[3] = {s, (s + bhi) * Rational(1, 2), (s + blo) * Rational(1, 2)};
            for (const Rational& c : cands) {
                Inertia in = inertia_below(M, c, solved_be, bits, dinv);
                if (in.status == InertiaStatus::Certified) {
                    s = c;
                    return in.below;
                }
            }
            if (bits >= ctx.max_bits)
                throw EscalationExhausted("eigenvalue: uncertified shift " + s.to_string() +
                                          " at " + std::to_string(bits) + " bits");
            bits = std::min(bits * ctx.escalation_factor, ctx.max_bits);
        }
    };

    // escape hatch for eigenvalues that are exactly zero: a straddling
    // bracket can never meet a relative tolerance
    const Rational abs_tol = pow2(-std::max(2 * bits, 32L));
    for (long iter = 0; iter < 100000; ++iter) {
        Rational width = hi - lo;
        Rational mag = lo.abs() > hi.abs() ? lo.abs() : hi.abs();
        if (lo.sign() == hi.sign() && width <= rel_tol * mag) break;
        if (lo.sign() != hi.sign() && width <= abs_tol) break;
        Rational s = (lo + hi) * Rational(1, 2);
        long c = certified_count(s, lo, hi);
        if (c <= k) {
            lo = s;
            c_lo = c;
        } else {
            hi = s;
            c_hi = c;
        }
    }

    EigenEnclosure r;
    r.k = k;
    r.dim = d;
    r.lo_q = lo;
    r.hi_q = hi;
    r.inertia_at_lo = c_lo;
    r.inertia_at_hi = c_hi;
    r.bits_used = bits;
    // output precision must not widen the rational bracket noticeably
    long needed = 64;
    if (rel_tol < Rational(1)) {
        Rational inv = rel_tol.reciprocal();
        mpz_class c = inv.num() / inv.den() + 1;
        needed = static_cast<long>(mpz_sizeinbase(c.get_mpz_t(), 2)) + 16;
    }
    auto p = static_cast<mpfr_prec_t>(std::max({bits, 64L, needed}));
    r.value = Enclosure(MpF::from_rational(lo, p, MPFR_RNDD), MpF::from_rational(hi, p, MPFR_RNDU));
    return r;
}

InterlacingReport interlacing_check(const MatrixFamily& family, long n_max,
                                    const Rational& rel_tol, const PrecisionContext& ctx,
                                    Backend be) {
    std::vector<std::vector<EigenEnclosure>> ev(static_cast<size_t>(n_max) + 1);
    for (long n = 0; n <= n_max; ++n) {
        HermitianKernelMatrix M = family(n);
        for (long k = 0; k <= n; ++k)
            ev[static_cast<size_t>(n)].push_back(eigenvalue(M, k, rel_tol, ctx, be));
    }
    InterlacingReport rep;
    rep.pass = true;
    std::ostringstream detail;
    auto leq_within = [&](const EigenEnclosure& a, const EigenEnclosure& b, long n, long k,
                          const char* what) {
        if (a.lo_q <= b.hi_q) return;
        rep.pass = false;
        detail << "violation at n=" << n << " k=" << k << " (" << what << "): ["
               << a.lo_q.to_string() << "] > [" << b.hi_q.to_string() << "]\n";
    };
    for (long n = 0; n < n_max; ++n) {
        const auto& cur = ev[static_cast<size_t>(n)];
        const auto& nxt = ev[static_cast<size_t>(n) + 1];
        for (long k = 0; k <= n; ++k) {
            leq_within(nxt[static_cast<size_t>(k)], cur[static_cast<size_t>(k)], n, k,
                       "lambda_{n+1,k} <= lambda_{n,k}");
            leq_within(cur[static_cast<size_t>(k)], nxt[static_cast<size_t>(k) + 1], n, k,
                       "lambda_{n,k} <= lambda_{n+1,k+1}");
        }
    }
    if (rep.pass) detail << "interlacing certified up to n_max=" << n_max;
    rep.detail = detail.str();
    return rep;
}

Trajectory lambda0_trajectory(const MatrixFamily& family, long n_max, const Rational& rel_tol,
                              const PrecisionContext& ctx, Backend be) {
    Trajectory t;
    for (long n = 0; n <= n_max; ++n) {
        TrajectoryRecord rec;
        rec.n = n;
        rec.lambda0 = eigenvalue(family(n), 0, rel_tol, ctx, be);
        if (!t.records.empty()) {
            const auto& prev = t.records.back().lambda0;
            if (rec.lambda0.lo_q > prev.hi_q)
                throw InvariantViolation("lambda0 trajectory not monotone at n=" + std::to_string(n));
        }
        t.records.push_back(std::move(rec));
    }
    return t;
}

RegularityVerdict classify(const Trajectory& traj, long window, const Rational& plateau_eps,
                           const Rational& decay_threshold) {
    const long m = static_cast<long>(traj.records.size()) - 1;
    if (window < 1) throw InvalidParameter("classify: window must be positive");
    RegularityVerdict v;
    v.window = window;
    v.plateau_eps = plateau_eps;
    v.decay_threshold = decay_threshold;
    if (m < window) {
        v.tag = RegularityVerdict::Tag::Inconclusive;
        if (m >= 0) v.floor_or_decay = traj.records.back().lambda0.value;
        v.rationale = "trajectory shorter than the evidence window";
        return v;
    }

    auto lo = [&](long i) { return traj.records[static_cast<size_t>(i)].lambda0.lo_q; };
    auto hi = [&](long i) { return traj.records[static_cast<size_t>(i)].lambda0.hi_q; };

    bool plateau = true;
    const Rational anchor = hi(m - window);
    for (long i = m - window + 1; i <= m; ++i) {
        if (!(lo(i).sign() > 0) || !(lo(i) >= (Rational(1) - plateau_eps) * anchor)) {
            plateau = false;
            break;
        }
    }
    if (plateau) {
        v.tag = RegularityVerdict::Tag::RegularEvidence;
        v.floor_or_decay = traj.records.back().lambda0.value;
        v.rationale = "certified positive floor with <" ;
        v.rationale += plateau_eps.to_string() + " relative drop over the last " +
                       std::to_string(window) + " sections";
        return v;
    }

    bool decaying = true;
    Rational rate_lo(1), rate_hi(0);
    bool first = true;
    for (long i = m - window + 1; i <= m; ++i) {
        if (!(lo(i - 1).sign() > 0) || !(hi(i) <= decay_threshold * lo(i - 1))) {
            decaying = false;
            break;
        }
        Rational rl = lo(i) / hi(i - 1), rh = hi(i) / lo(i - 1);
        if (first || rl < rate_lo) rate_lo = rl;
        if (first || rh > rate_hi) rate_hi = rh;
        first = false;
    }
    if (decaying) {
        v.tag = RegularityVerdict::Tag::SingularEvidence;
        if (rate_lo.sign() < 0) rate_lo = Rational(0);
        long p = 128;
        v.floor_or_decay = Enclosure(MpF::from_rational(rate_lo, p, MPFR_RNDD),
                                     MpF::from_rational(rate_hi, p, MPFR_RNDU));
        v.rationale = "per-step decay factor certifiably <= " + decay_threshold.to_string() +
                      " over the last " + std::to_string(window) + " sections";
        return v;
    }

    v.tag = RegularityVerdict::Tag::Inconclusive;
    v.floor_or_decay = traj.records.back().lambda0.value;
    v.rationale = "neither plateau nor persistent decay certified";
    return v;
}

DominationReport domination_gap(const NodeSequence& seq, const TargetValues& targets, long n,
                                const Rational& rel_tol, const PrecisionContext& ctx, Backend be) {
    HermitianKernelMatrix K = pick_matrix(seq, n);
    HermitianKernelMatrix P = pick_general(seq, targets, n);
    EigenEnclosure lk = eigenvalue(K, 0, rel_tol, ctx, be);
    EigenEnclosure lp = eigenvalue(P, 0, rel_tol, ctx, be);
    DominationReport rep{lk.value - lp.value, false, false};

    // K - P = D K D* with D = diag(w_j); entrywise check
    const long d = n + 1;
    if (K.is_exact && K.is_real && P.is_real) {
        bool ok = true;
        for (long i = 0; i < d && ok; ++i)
            for (long j = 0; j < d && ok; ++j) {
                Rational wi = P.targets.w[static_cast<size_t>(i)].re;
                Rational wj = P.targets.w[static_cast<size_t>(j)].re;
                ok = (K.q(i, j) - P.q(i, j)) == wi * K.q(i, j) * wj;
            }
        rep.identity_certified = ok;
    } else {
        bool ok = true;
        MatCE Kc = K.cx_at(ctx.bits), Pc = P.cx_at(ctx.bits);
        for (long i = 0; i < d && ok; ++i)
            for (long j = 0; j < d && ok; ++j) {
                CxE wi = to_cxe(P.targets.w[static_cast<size_t>(i)], ctx.bits);
                CxE wj = to_cxe(P.targets.w[static_cast<size_t>(j)], ctx.bits);
                CxE diff = Kc(i, j) - Pc(i, j) - wi * Kc(i, j) * wj.conj();
                ok = diff.re.contains_zero() && diff.im.contains_zero();
            }
        rep.identity_certified = ok;
    }
    rep.psd_certified = rep.identity_certified && lk.lo_q.sign() >= 0;
    return rep;
}

}  // namespace npk
