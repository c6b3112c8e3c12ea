#include "npk/kernels.hpp"

namespace npk {

std::string MomentSequence::kind_name(Kind k) {
    switch (k) {
        case Kind::Factorial: return "factorial";
        case Kind::Lognormal: return "lognormal";
        case Kind::Gaussian: return "gaussian";
        default: return "explicit";
    }
}

Rational MomentSequence::value_q(long j) const {
    if (!exact()) throw InvalidParameter("moments: no exact values for lognormal");
    return values_q.at(static_cast<size_t>(j));
}

Enclosure MomentSequence::value_at(long j, long bits) const {
    if (j < 0 || j >= count) throw InvalidParameter("moments: index out of range");
    if (exact()) return Enclosure::from_rational(values_q[static_cast<size_t>(j)], bits);
    // lognormal: s_j = exp(j^2 / 2)
    Enclosure e = Enclosure::from_rational(Rational(j * j, 2), bits);
    return exp(e);
}

MomentSequence moment_generator(MomentSequence::Kind kind, long count) {
    if (count < 1) throw InvalidParameter("moment_generator: need count >= 1");
    MomentSequence m;
    m.kind = kind;
    m.count = count;
    switch (kind) {
        case MomentSequence::Kind::Factorial: {
            Rational f(1);
            for (long j = 0; j < count; ++j) {
                m.values_q.push_back(f);
                f *= Rational(j + 1);
            }
            break;
        }
        case MomentSequence::Kind::Gaussian: {
            for (long j = 0; j < count; ++j) {
                if (j % 2 == 1) {
                    m.values_q.push_back(Rational(0));
                } else {
                    Rational df(1);  // (j-1)!! = 1*3*...*(j-1)
                    for (long t = 1; t < j; t += 2) df *= Rational(t);
                    m.values_q.push_back(df);
                }
            }
            break;
        }
        case MomentSequence::Kind::Lognormal:
            break;
        default:
            throw InvalidParameter("moment_generator: explicit kind has no generator");
    }
    return m;
}

namespace {

bool node_is_real_exact(const NodeSequence& seq) { return seq.all_exact() && seq.all_real(); }

Rational pick_entry_q(const NodeSequence& seq, long i, long j) {
    Rational zi = seq.points[static_cast<size_t>(i)].re;
    Rational zj = seq.points[static_cast<size_t>(j)].re;
    return (Rational(1) - zi * zj).reciprocal();
}

}  // namespace

MatE HermitianKernelMatrix::real_at(long bits) const {
    if (!is_real) throw InvalidParameter("real_at on complex kernel matrix");
    if (is_exact) return to_enclosure(q, bits);
    long d = dim();
    MatE m(d, d);
    Enclosure one = Enclosure::from_int(1, bits);
    switch (recipe) {
        case Recipe::Hankel:
            for (long i = 0; i < d; ++i)
                for (long j = 0; j < d; ++j) m(i, j) = moments.value_at(i + j, bits);
            break;
        case Recipe::NormalizedGram: {
            std::vector<Enclosure> zi(d), wgt(d);
            for (long i = 0; i < d; ++i) {
                zi[i] = nodes.point_at(static_cast<size_t>(i), bits).re;
                wgt[i] = one - zi[i] * zi[i];
            }
            for (long i = 0; i < d; ++i)
                for (long j = 0; j < d; ++j)
                    m(i, j) = sqrt(wgt[i] * wgt[j]) / (one - zi[i] * zi[j]);
            break;
        }
        case Recipe::Pick: {
            std::vector<Enclosure> zi(d);
            for (long i = 0; i < d; ++i) zi[i] = nodes.point_at(static_cast<size_t>(i), bits).re;
            for (long i = 0; i < d; ++i)
                for (long j = 0; j < d; ++j) m(i, j) = one / (one - zi[i] * zi[j]);
            break;
        }
        case Recipe::PickGeneral: {
            std::vector<Enclosure> zi(d), wi(d);
            for (long i = 0; i < d; ++i) {
                zi[i] = nodes.point_at(static_cast<size_t>(i), bits).re;
                wi[i] = Enclosure::from_rational(targets.w[static_cast<size_t>(i)].re, bits);
            }
            for (long i = 0; i < d; ++i)
                for (long j = 0; j < d; ++j)
                    m(i, j) = (one - wi[i] * wi[j]) / (one - zi[i] * zi[j]);
            break;
        }
    }
    return m;
}

MatCE HermitianKernelMatrix::cx_at(long bits) const {
    long d = dim();
    MatCE m(d, d);
    Enclosure zero = Enclosure::from_int(0, bits);
    if (is_real) {
        MatE r = real_at(bits);
        for (long i = 0; i < d; ++i)
            for (long j = 0; j < d; ++j) m(i, j) = CxE(r(i, j), zero);
        return m;
    }
    if (is_exact) {
        for (long i = 0; i < d; ++i)
            for (long j = 0; j < d; ++j) m(i, j) = to_cxe(cq(i, j), bits);
        return m;
    }
    CxE one(Enclosure::from_int(1, bits), zero);
    std::vector<CxE> z(d);
    for (long i = 0; i < d; ++i) z[i] = nodes.point_at(static_cast<size_t>(i), bits);
    switch (recipe) {
        case Recipe::Pick:
            for (long i = 0; i < d; ++i)
                for (long j = 0; j < d; ++j) m(i, j) = one / (one - z[i] * z[j].conj());
            break;
        case Recipe::PickGeneral:
            for (long i = 0; i < d; ++i)
                for (long j = 0; j < d; ++j) {
                    CxE wi = to_cxe(targets.w[static_cast<size_t>(i)], bits);
                    CxE wj = to_cxe(targets.w[static_cast<size_t>(j)], bits);
                    m(i, j) = (one - wi * wj.conj()) / (one - z[i] * z[j].conj());
                }
            break;
        case Recipe::NormalizedGram: {
            std::vector<Enclosure> wgt(d);
            for (long i = 0; i < d; ++i) wgt[i] = one.re - z[i].norm_sq();
            for (long i = 0; i < d; ++i)
                for (long j = 0; j < d; ++j)
                    m(i, j) = CxE(sqrt(wgt[i] * wgt[j]), zero) / (one - z[i] * z[j].conj());
            break;
        }
        case Recipe::Hankel:
            throw InvalidParameter("hankel matrices are real");
    }
    return m;
}

HermitianKernelMatrix pick_matrix(const NodeSequence& seq, long n) {
    if (n < 0 || static_cast<size_t>(n + 1) > seq.size())
        throw InvalidParameter("pick_matrix: dimension exceeds node count");
    HermitianKernelMatrix M;
    M.recipe = Recipe::Pick;
    M.n = n;
    M.nodes = seq.prefix(static_cast<size_t>(n + 1));
    M.is_real = M.nodes.all_real();
    M.is_exact = M.nodes.all_exact();
    if (M.is_exact && M.is_real) {
        M.q.resize(n + 1, n + 1);
        for (long i = 0; i <= n; ++i)
            for (long j = 0; j <= n; ++j) M.q(i, j) = pick_entry_q(M.nodes, i, j);
    } else if (M.is_exact) {
        M.cq.resize(n + 1, n + 1);
        CxQ one(Rational(1), Rational(0));
        for (long i = 0; i <= n; ++i)
            for (long j = 0; j <= n; ++j) {
                const auto& pi = M.nodes.points[static_cast<size_t>(i)];
                const auto& pj = M.nodes.points[static_cast<size_t>(j)];
                CxQ zi(pi.re, pi.im), zj(pj.re, pj.im);
                M.cq(i, j) = one / (one - zi * zj.conj());
            }
    }
    return M;
}

HermitianKernelMatrix pick_general(const NodeSequence& seq, const TargetValues& targets, long n) {
    if (n < 0 || static_cast<size_t>(n + 1) > seq.size() ||
        static_cast<size_t>(n + 1) > targets.w.size())
        throw InvalidParameter("pick_general: dimension mismatch");
    HermitianKernelMatrix M;
    M.recipe = Recipe::PickGeneral;
    M.n = n;
    M.nodes = seq.prefix(static_cast<size_t>(n + 1));
    M.targets.w.assign(targets.w.begin(), targets.w.begin() + (n + 1));
    bool w_real = true;
    for (const auto& w : M.targets.w)
        if (!w.im.is_zero()) w_real = false;
    M.is_real = M.nodes.all_real() && w_real;
    M.is_exact = M.nodes.all_exact();
    if (M.is_exact && M.is_real) {
        M.q.resize(n + 1, n + 1);
        for (long i = 0; i <= n; ++i)
            for (long j = 0; j <= n; ++j) {
                Rational wi = M.targets.w[static_cast<size_t>(i)].re;
                Rational wj = M.targets.w[static_cast<size_t>(j)].re;
                M.q(i, j) = (Rational(1) - wi * wj) * pick_entry_q(M.nodes, i, j);
            }
    } else if (M.is_exact) {
        M.cq.resize(n + 1, n + 1);
        CxQ one(Rational(1), Rational(0));
        for (long i = 0; i <= n; ++i)
            for (long j = 0; j <= n; ++j) {
                const auto& pi = M.nodes.points[static_cast<size_t>(i)];
                const auto& pj = M.nodes.points[static_cast<size_t>(j)];
                CxQ zi(pi.re, pi.im), zj(pj.re, pj.im);
                CxQ wi = M.targets.w[static_cast<size_t>(i)], wj = M.targets.w[static_cast<size_t>(j)];
                M.cq(i, j) = (one - wi * wj.conj()) / (one - zi * zj.conj());
            }
    }
    return M;
}

HermitianKernelMatrix normalized_gram(const NodeSequence& seq, long n) {
    if (n < 0 || static_cast<size_t>(n + 1) > seq.size())
        throw InvalidParameter("normalized_gram: dimension exceeds node count");
    HermitianKernelMatrix M;
    M.recipe = Recipe::NormalizedGram;
    M.n = n;
    M.nodes = seq.prefix(static_cast<size_t>(n + 1));
    M.is_real = M.nodes.all_real();
    M.is_exact = false;  // square roots
    return M;
}

HermitianKernelMatrix hankel_matrix(const MomentSequence& moments, long n) {
    if (n < 0 || 2 * n > moments.count - 1)
        throw InvalidParameter("hankel_matrix: insufficient moments");
    HermitianKernelMatrix M;
    M.recipe = Recipe::Hankel;
    M.n = n;
    M.moments = moments;
    M.is_real = true;
    M.is_exact = moments.exact();
    if (M.is_exact) {
        M.q.resize(n + 1, n + 1);
        for (long i = 0; i <= n; ++i)
            for (long j = 0; j <= n; ++j) M.q(i, j) = moments.value_q(i + j);
    }
    return M;
}

std::vector<Rational> derivative_diagonal_exact(const NodeSequence& seq, long n) {
    NodeSequence sec = seq.prefix(static_cast<size_t>(n + 1));
    if (!node_is_real_exact(sec))
        throw InvalidParameter("derivative_diagonal_exact: requires real rational nodes");
    std::vector<Rational> w;
    for (long j = 0; j <= n; ++j) {
        Rational zj = sec.points[static_cast<size_t>(j)].re;
        Rational prod = -(Rational(1) - zj * zj).reciprocal();
        if (zj.sign() < 0) prod = -prod;  // |z_j|/z_j factor of the j-th term
        for (long k = 0; k <= n; ++k) {
            if (k == j) continue;
            Rational zk = sec.points[static_cast<size_t>(k)].re;
            Rational f = (zk - zj) / (Rational(1) - zj * zk);
            if (zk.sign() < 0) f = -f;
            prod *= f;
        }
        w.push_back(prod);
    }
    return w;
}

std::vector<CxE> derivative_diagonal(const NodeSequence& seq, long n, const PrecisionContext& ctx) {
    NodeSequence sec = seq.prefix(static_cast<size_t>(n + 1));
    long bits = ctx.bits;
    CxE one(Enclosure::from_int(1, bits), Enclosure::from_int(0, bits));
    std::vector<CxE> w;
    for (long j = 0; j <= n; ++j) {
        CxE zj = sec.point_at(static_cast<size_t>(j), bits);
        CxE lead = -(zj.conj() / abs(zj)) / (one.re - zj.norm_sq());
        CxE prod = lead;
        for (long k = 0; k <= n; ++k) {
            if (k == j) continue;
            CxE zk = sec.point_at(static_cast<size_t>(k), bits);
            prod = prod * ((zk - zj) / (one - zj * zk.conj())) * (zk.conj() / abs(zk));
        }
        w.push_back(prod);
    }
    return w;
}

bool proof_identity_exact(const NodeSequence& seq, long n) {
    HermitianKernelMatrix K = pick_matrix(seq, n);
    if (!K.is_exact || !K.is_real)
        throw InvalidParameter("proof_identity_exact: requires real rational nodes");
    std::vector<Rational> w = derivative_diagonal_exact(seq, n);
    long d = K.dim();
    MatQ kw(d, d);  // K * W^{-1}
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) kw(i, j) = K.q(i, j) / w[static_cast<size_t>(j)];
    MatQ m = kw * kw;
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j)
            if (m(i, j) != (i == j ? Rational(1) : Rational(0))) return false;
    return true;
}

bool proof_identity_certified(const NodeSequence& seq, long n, long bits) {
    HermitianKernelMatrix K = pick_matrix(seq, n);
    PrecisionContext ctx;
    ctx.bits = bits;
    std::vector<CxE> w = derivative_diagonal(seq, n, ctx);
    MatCE k = K.cx_at(bits);
    long d = K.dim();
    MatCE a(d, d), b(d, d);  // a = K W^{-*}, b = K W^{-1}
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) {
            a(i, j) = k(i, j) / w[static_cast<size_t>(j)].conj();
            b(i, j) = k(i, j) / w[static_cast<size_t>(j)];
        }
    MatCE m = a * b;
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) {
            Rational re_target = (i == j) ? Rational(1) : Rational(0);
            if (!m(i, j).re.contains(re_target) || !m(i, j).im.contains(Rational(0))) return false;
        }
    return true;
}

}  // namespace npk
