#include "npk/carleson.hpp"

#include <algorithm>
#include <set>

namespace npk {

namespace {

enum class Tri { Yes, No, Maybe };

Rational rat_floor_div2(const Rational& x) {
    // floor(x/2) as an integer rational
    mpz_class q;
    mpz_class num = x.num(), den = x.den() * 2;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return Rational(q);
}

// reduce into [0, 2)
Rational mod2(const Rational& x) { return x - Rational(2) * rat_floor_div2(x); }

// normalize an angle (units of pi) into (-1, 1]
Rational norm_angle(const Rational& t) {
    Rational m = mod2(t);  // [0,2)
    return m > Rational(1) ? m - Rational(2) : m;
}

Tri cmp_le(const Enclosure& a, const Rational& q) {
    if (mpfr_cmp_q(a.hi().get(), q.raw().get_mpq_t()) <= 0) return Tri::Yes;
    if (mpfr_cmp_q(a.lo().get(), q.raw().get_mpq_t()) > 0) return Tri::No;
    return Tri::Maybe;
}

Tri cmp_ge(const Enclosure& a, const Rational& q) {
    if (mpfr_cmp_q(a.lo().get(), q.raw().get_mpq_t()) >= 0) return Tri::Yes;
    if (mpfr_cmp_q(a.hi().get(), q.raw().get_mpq_t()) < 0) return Tri::No;
    return Tri::Maybe;
}

Tri tri_and(Tri a, Tri b) {
    if (a == Tri::No || b == Tri::No) return Tri::No;
    if (a == Tri::Yes && b == Tri::Yes) return Tri::Yes;
    return Tri::Maybe;
}

// circular distance (units of pi) of enclosure angle t from rational phi
Enclosure circ_dist(const Enclosure& t, const Rational& phi, long bits) {
    Enclosure d = abs(t - Enclosure::from_rational(phi, bits));
    // d in [0, 2): distance = min(d, 2 - d)
    return min_enc(d, Enclosure::from_int(2, bits) - d);
}

bool all_same_angle_exact(const PolarMeasure& mu) {
    for (const auto& a : mu.atoms) {
        if (!a.exact) return false;
        if (a.t_q != mu.atoms.front().t_q) return false;
    }
    return true;
}

}  // namespace

PolarAtom polar_atom_exact(const Rational& r, const Rational& t, const Rational& m, long bits) {
    if (!(r > Rational(0) && r < Rational(1)) || !(m > Rational(0)))
        throw InvalidParameter("polar_atom: need 0 < r < 1 and mass > 0");
    PolarAtom a;
    a.exact = true;
    a.r_q = r;
    a.t_q = norm_angle(t);
    a.m_q = m;
    a.r = Enclosure::from_rational(a.r_q, bits);
    a.t = Enclosure::from_rational(a.t_q, bits);
    a.m = Enclosure::from_rational(a.m_q, bits);
    return a;
}

PolarMeasure to_polar(const DiscreteMeasure& mu, const PrecisionContext& ctx) {
    PolarMeasure pm;
    for (const auto& atom : mu.atoms) {
        const NodePoint& p = atom.point;
        if (p.exact && p.im.is_zero() && atom.exact_mass) {
            pm.atoms.push_back(polar_atom_exact(p.re.abs(), p.re.sign() > 0 ? Rational(0) : Rational(1),
                                                atom.mass_q, ctx.bits));
            continue;
        }
        PolarAtom a;
        a.exact = false;
        if (p.exact) {
            a.r = sqrt(Enclosure::from_rational(p.re * p.re + p.im * p.im, ctx.bits));
            a.t = arg_over_pi(p.re, p.im, ctx.bits);
        } else {
            CxE z(p.re_e, p.im_e);
            a.r = sqrt(z.norm_sq());
            a.t = arg_over_pi(p.re_e, p.im_e, ctx.bits);
        }
        a.m = atom.exact_mass ? Enclosure::from_rational(atom.mass_q, ctx.bits) : atom.mass;
        pm.atoms.push_back(std::move(a));
    }
    return pm;
}

Rational box_mass_exact(const PolarMeasure& mu, const CarlesonBox& box) {
    if (!mu.all_exact()) throw InvalidParameter("box_mass_exact: inexact atoms");
    if (!(box.eps > Rational(0) && box.eps <= Rational(1)))
        throw InvalidParameter("box_mass: eps outside (0,1]");
    Rational sum(0);
    for (const auto& a : mu.atoms) {
        if (a.r_q < Rational(1) - box.eps) continue;
        Rational d = mod2(a.t_q - box.phi_t);
        Rational dist = d > Rational(1) ? Rational(2) - d : d;
        if (dist <= box.eps) sum += a.m_q;
    }
    return sum;
}

Enclosure box_mass(const PolarMeasure& mu, const CarlesonBox& box, long bits) {
    if (!(box.eps > Rational(0) && box.eps <= Rational(1)))
        throw InvalidParameter("box_mass: eps outside (0,1]");
    if (mu.all_exact())
        return Enclosure::from_rational(box_mass_exact(mu, box), bits);
    Enclosure definite = Enclosure::from_int(0, bits);
    Enclosure maybe = Enclosure::from_int(0, bits);
    long n_maybe = 0;
    for (const auto& a : mu.atoms) {
        Tri radial = cmp_ge(a.r, Rational(1) - box.eps);
        Tri angular = cmp_le(circ_dist(a.t, box.phi_t, bits), box.eps);
        Tri in = tri_and(radial, angular);
        if (in == Tri::Yes) definite += a.m;
        if (in == Tri::Maybe) {
            maybe += a.m;
            ++n_maybe;
        }
    }
    if (n_maybe > 0)
        throw IndeterminateComparison(
            "box_mass: " + std::to_string(n_maybe) + " atom(s) straddle the box boundary; exclusive sum " +
            definite.to_string() + ", inclusive sum " + (definite + maybe).to_string());
    return definite;
}

namespace {

BoxConstantReport box_constant_exact(const PolarMeasure& mu) {
    std::set<Rational> cands;
    auto keep = [&](const Rational& e) {
        if (e > Rational(0) && e <= Rational(1)) cands.insert(e);
    };
    keep(Rational(1));
    for (const auto& a : mu.atoms) keep(Rational(1) - a.r_q);
    bool degenerate = all_same_angle_exact(mu);
    if (!degenerate) {
        for (size_t i = 0; i < mu.atoms.size(); ++i)
            for (size_t j = i + 1; j < mu.atoms.size(); ++j) {
                Rational d = mod2(mu.atoms[i].t_q - mu.atoms[j].t_q);
                keep(d * Rational(1, 2));
                keep((Rational(2) - d) * Rational(1, 2));
            }
    }
    BoxConstantReport rep;
    rep.exact = true;
    bool first = true;
    for (const Rational& e : cands) {
        Rational two_e = Rational(2) * e;
        size_t n_anchor = degenerate ? 1 : mu.atoms.size();
        for (size_t ai = 0; ai < n_anchor; ++ai) {
            const Rational& ta = mu.atoms[ai].t_q;
            Rational mass(0);
            long count = 0;
            for (const auto& a : mu.atoms) {
                if (a.r_q < Rational(1) - e) continue;
                if (mod2(a.t_q - ta) <= two_e) {
                    mass += a.m_q;
                    ++count;
                }
            }
            Rational ratio = mass / e;
            if (first || ratio > rep.constant_q) {
                rep.constant_q = ratio;
                // degenerate (single-angle) measures get the centered witness
                rep.witness = {degenerate ? ta : norm_angle(ta + e), e};
                rep.atom_count_in_witness = count;
                first = false;
            }
        }
    }
    rep.constant = Enclosure::from_rational(rep.constant_q, 128);
    return rep;
}

BoxConstantReport box_constant_interval(const PolarMeasure& mu, const PrecisionContext& ctx) {
    const long bits = ctx.bits;
    Enclosure one = Enclosure::from_int(1, bits), two = Enclosure::from_int(2, bits);
    // candidate list, each paired with the index of the atom whose radial
    // threshold defines it (-1 for angular/whole-disk candidates)
    std::vector<std::pair<Enclosure, long>> cands;
    cands.emplace_back(one, -1);
    for (size_t k = 0; k < mu.atoms.size(); ++k)
        cands.emplace_back(one - mu.atoms[k].r, static_cast<long>(k));
    for (size_t i = 0; i < mu.atoms.size(); ++i)
        for (size_t j = i + 1; j < mu.atoms.size(); ++j) {
            Enclosure d = abs(mu.atoms[i].t - mu.atoms[j].t);
            if (d.is_positive()) {
                cands.emplace_back(d * Enclosure::from_rational(Rational(1, 2), bits), -1);
                cands.emplace_back((two - d) * Enclosure::from_rational(Rational(1, 2), bits), -1);
            }
        }
    BoxConstantReport rep;
    rep.exact = false;
    bool first = true;
    for (auto& [e, own] : cands) {
        if (!e.is_positive()) continue;  // degenerate candidate, no valid box
        if (mpfr_cmp_ui(e.lo().get(), 1) > 0) continue;
        Enclosure two_e = two * e;
        for (size_t ai = 0; ai < mu.atoms.size(); ++ai) {
            Enclosure definite = Enclosure::from_int(0, bits);
            Enclosure maybe = Enclosure::from_int(0, bits);
            long count = 0;
            for (size_t j = 0; j < mu.atoms.size(); ++j) {
                const auto& a = mu.atoms[j];
                Tri radial;
                if (static_cast<long>(j) == own) {
                    radial = Tri::Yes;  // closed box includes its defining atom
                } else {
                    Enclosure s = a.r + e;
                    radial = s.lo() >= MpF(1, s.lo().prec()) ? Tri::Yes
                             : (s.hi() < MpF(1, s.hi().prec()) ? Tri::No : Tri::Maybe);
                }
                Tri angular;
                if (j == ai) {
                    angular = Tri::Yes;
                } else {
                    Enclosure diff = a.t - mu.atoms[ai].t;  // in (-2, 2)
                    auto branch = [&](const Enclosure& w) {
                        Enclosure g = w - two_e;
                        if (g.hi().sign() <= 0) return Tri::Yes;
                        if (g.lo().sign() > 0) return Tri::No;
                        return Tri::Maybe;
                    };
                    if (diff.lo().sign() >= 0)
                        angular = branch(diff);
                    else if (diff.hi().sign() < 0)
                        angular = branch(diff + two);
                    else {
                        Tri b1 = branch(hull(diff, Enclosure::from_int(0, bits)));
                        Tri b2 = branch(diff + two);
                        angular = (b1 == b2) ? b1 : Tri::Maybe;
                    }
                }
                Tri in = tri_and(radial, angular);
                if (in == Tri::Yes) {
                    definite += a.m;
                    ++count;
                } else if (in == Tri::Maybe) {
                    maybe += a.m;
                }
            }
            Enclosure mass(definite.lo(), (definite + maybe).hi());
            if (!mass.is_positive() && mass.hi().sign() <= 0) continue;
            Enclosure ratio = mass / e;
            if (first) {
                rep.constant = ratio;
                first = false;
            } else {
                rep.constant = max_enc(rep.constant, ratio);
            }
            // track the candidate achieving the largest certified ratio
            if (ratio.hi() >= rep.constant.hi()) {
                Rational em = e.midpoint();
                rep.witness = {norm_angle(mu.atoms[ai].t.midpoint() + em), em};
                rep.atom_count_in_witness = count;
            }
        }
    }
    if (first) throw InvalidParameter("box_constant: empty measure");
    return rep;
}

}  // namespace

BoxConstantReport box_constant(const PolarMeasure& mu, const PrecisionContext& ctx) {
    if (mu.atoms.empty()) throw InvalidParameter("box_constant: empty measure");
    if (mu.all_exact()) return box_constant_exact(mu);
    return box_constant_interval(mu, ctx);
}

Trajectory box_constant_trajectory(const NodeSequence& seq, long n_max,
                                   const PrecisionContext& ctx) {
    if (n_max < 0 || static_cast<size_t>(n_max + 1) > seq.size())
        throw InvalidParameter("box_constant_trajectory: n_max exceeds node count");
    Trajectory t;
    for (long n = 0; n <= n_max; ++n) {
        NodeSequence sec = seq.prefix(static_cast<size_t>(n + 1));
        DiscreteMeasure mu = nu_measure(sec, ctx);
        BoxConstantReport rep = box_constant(to_polar(mu, ctx), ctx);
        TrajectoryRecord rec;
        rec.n = n;
        rec.aux["box_constant"] = rep.constant;
        rec.aux["witness_eps"] = Enclosure::from_rational(rep.witness.eps, ctx.bits);
        rec.aux["witness_phi"] = Enclosure::from_rational(rep.witness.phi_t, ctx.bits);
        t.records.push_back(std::move(rec));
    }
    return t;
}

TheoremComparison theorem_comparison(const NodeSequence& seq, long n, const Rational& rel_tol,
                                     const PrecisionContext& ctx, Backend be) {
    NodeSequence sec = seq.prefix(static_cast<size_t>(n + 1));
    HermitianKernelMatrix K = pick_matrix(sec, n);
    DiscreteMeasure mu = nu_measure(sec, ctx);

    DiagScale dinv;
    dinv.exact = mu.all_exact();
    if (dinv.exact) {
        for (const auto& a : mu.atoms) dinv.q.push_back(a.mass_q.reciprocal());
    } else {
        PrecisionContext base = ctx;
        dinv.gen = [sec, base](long bits) {
            PrecisionContext c{bits, std::max(bits, base.max_bits), base.escalation_factor};
            DiscreteMeasure m = nu_measure(sec, c);
            std::vector<Enclosure> out;
            for (const auto& a : m.atoms) out.push_back(reciprocal(a.mass));
            return out;
        };
    }

    TheoremComparison cmp;
    cmp.lambda0 = eigenvalue(K, 0, rel_tol, ctx, be);
    cmp.embed = eigenvalue(K, n, rel_tol, ctx, be, &dinv);
    cmp.box = box_constant(to_polar(mu, ctx), ctx);
    cmp.identity_ok = (cmp.embed.value * cmp.lambda0.value).contains(Rational(1));

    Enclosure c2 = Enclosure::from_int(2, ctx.bits) + Enclosure::pi(ctx.bits);
    c2 = c2 * c2;  // (2+pi)^2
    {
        Enclosure rhs = c2 * cmp.box.constant;
        cmp.embed_vs_box_ok = cmp.embed.value.hi() <= rhs.lo();
        Enclosure rhs2 = c2 * cmp.embed.value;
        cmp.box_vs_embed_ok = cmp.box.constant.hi() <= rhs2.lo();
    }
    return cmp;
}

}  // namespace npk
