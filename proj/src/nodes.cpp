#include "npk/nodes.hpp"

#include <utility>

namespace npk {

std::string Provenance::to_string() const {
    switch (kind) {
        case Kind::RadialPower:
            return "radial_power(p=" + param.to_string() + ",start=" + std::to_string(start_index) + ")";
        case Kind::Geometric:
            return "geometric(r=" + param.to_string() + ",start=" + std::to_string(start_index) + ")";
        default:
            return "explicit";
    }
}

std::string Violation::to_string() const {
    switch (kind) {
        case Kind::Duplicate:
            return "duplicate(" + std::to_string(i) + "," + std::to_string(j) + ")";
        case Kind::OutsideDisk:
            return "outside-disk(" + std::to_string(i) + ")";
        default:
            return "at-origin(" + std::to_string(i) + ")";
    }
}

bool NodeSequence::all_exact() const {
    for (const auto& p : points)
        if (!p.exact) return false;
    return true;
}

bool NodeSequence::all_real() const {
    for (const auto& p : points) {
        if (p.exact) {
            if (!p.im.is_zero()) return false;
        } else if (!(p.im_e.lo().is_zero() && p.im_e.hi().is_zero())) {
            return false;
        }
    }
    return true;
}

NodeSequence NodeSequence::prefix(size_t count) const {
    if (count > points.size()) throw InvalidParameter("prefix: not enough nodes");
    NodeSequence s;
    s.provenance = provenance;
    s.points.assign(points.begin(), points.begin() + static_cast<long>(count));
    return s;
}

CxE NodeSequence::point_at(size_t i, long bits) const {
    const NodePoint& p = points.at(i);
    if (p.exact)
        return CxE(Enclosure::from_rational(p.re, bits), Enclosure::from_rational(p.im, bits));
    if (provenance.kind == Provenance::Kind::RadialPower && p.gen_index >= 1) {
        Enclosure k = Enclosure::from_int(p.gen_index, bits);
        Enclosure z = Enclosure::from_int(1, bits) - pow(k, -provenance.param, bits);
        return CxE(z, Enclosure::from_int(0, bits));
    }
    return CxE(p.re_e, p.im_e);
}

NodeSequence gen_radial_power(const Rational& p, long count, const PrecisionContext& ctx) {
    if (!(p > Rational(1))) throw InvalidParameter("radial_power: need p > 1");
    if (count < 1) throw InvalidParameter("radial_power: need count >= 1");
    NodeSequence s;
    s.provenance.kind = Provenance::Kind::RadialPower;
    s.provenance.param = p;
    s.provenance.start_index = 2;  // k = 1 gives z = 0, excluded
    bool integer_p = (p.den() == 1);
    for (long k = 2; k < 2 + count; ++k) {
        NodePoint np;
        np.gen_index = k;
        if (integer_p) {
            Rational z = Rational(1) - Rational(k).pow(-p.num().get_si());
            np = NodePoint::from_rational(z, Rational(0), ctx.bits);
            np.gen_index = k;
        } else {
            np.exact = false;
            Enclosure kk = Enclosure::from_int(k, ctx.bits);
            np.re_e = Enclosure::from_int(1, ctx.bits) - pow(kk, -p, ctx.bits);
            np.im_e = Enclosure::from_int(0, ctx.bits);
        }
        s.points.push_back(std::move(np));
    }
    return s;
}

NodeSequence gen_geometric(const Rational& r, long count, const PrecisionContext& ctx) {
    if (!(r > Rational(0) && r < Rational(1)))
        throw InvalidParameter("geometric: need 0 < r < 1");
    if (count < 1) throw InvalidParameter("geometric: need count >= 1");
    NodeSequence s;
    s.provenance.kind = Provenance::Kind::Geometric;
    s.provenance.param = r;
    s.provenance.start_index = 1;
    Rational rk(1);
    for (long k = 1; k <= count; ++k) {
        rk *= r;
        NodePoint np = NodePoint::from_rational(Rational(1) - rk, Rational(0), ctx.bits);
        np.gen_index = k;
        s.points.push_back(std::move(np));
    }
    return s;
}

NodeSequence make_explicit(std::vector<NodePoint> pts) {
    NodeSequence s;
    s.provenance.kind = Provenance::Kind::Explicit;
    s.points = std::move(pts);
    return s;
}

Enclosure blaschke_sum(const NodeSequence& seq, const PrecisionContext& ctx) {
    if (seq.all_exact() && seq.all_real()) {
        Rational sum(0);
        for (const auto& p : seq.points) sum += Rational(1) - p.re.abs();
        return Enclosure::from_rational(sum, ctx.bits);
    }
    Enclosure sum = Enclosure::from_int(0, ctx.bits);
    for (size_t i = 0; i < seq.size(); ++i) {
        CxE z = seq.point_at(i, ctx.bits);
        sum += Enclosure::from_int(1, ctx.bits) - abs(z);
    }
    return sum;
}

namespace {

// tri-state certified predicate evaluation with precision escalation
template <class F>
bool certify(const NodeSequence& seq, const PrecisionContext& ctx, F&& pred) {
    PrecisionContext c = ctx;
    for (;;) {
        auto r = pred(c.bits);
        if (r.has_value()) return *r;
        if (!c.can_widen())
            throw IndeterminateComparison("validate: undecidable at max precision");
        c = c.widened();
    }
}

}  // namespace

std::vector<Violation> validate(const NodeSequence& seq, const PrecisionContext& ctx) {
    std::vector<Violation> out;
    if (seq.points.empty()) throw InvalidParameter("validate: empty node sequence");
    const size_t n = seq.size();

    for (size_t i = 0; i < n; ++i) {
        const NodePoint& p = seq.points[i];
        if (p.exact) {
            Rational nrm = p.re * p.re + p.im * p.im;
            if (nrm.is_zero()) out.push_back({Violation::Kind::AtOrigin, i, 0});
            if (nrm >= Rational(1)) out.push_back({Violation::Kind::OutsideDisk, i, 0});
            continue;
        }
        bool origin = certify(seq, ctx, [&](long bits) -> std::optional<bool> {
            Enclosure nrm = seq.point_at(i, bits).norm_sq();
            if (nrm.is_positive()) return false;
            if (nrm.lo().is_zero() && nrm.hi().is_zero()) return true;
            return std::nullopt;
        });
        if (origin) out.push_back({Violation::Kind::AtOrigin, i, 0});
        bool outside = certify(seq, ctx, [&](long bits) -> std::optional<bool> {
            Enclosure nrm = seq.point_at(i, bits).norm_sq();
            if (nrm.hi() < MpF(1, nrm.hi().prec())) return false;
            if (nrm.lo() >= MpF(1, nrm.lo().prec())) return true;
            return std::nullopt;
        });
        if (outside) out.push_back({Violation::Kind::OutsideDisk, i, 0});
    }

    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            const NodePoint &a = seq.points[i], &b = seq.points[j];
            if (a.exact && b.exact) {
                if (a.re == b.re && a.im == b.im)
                    out.push_back({Violation::Kind::Duplicate, i, j});
                continue;
            }
            bool dup = certify(seq, ctx, [&](long bits) -> std::optional<bool> {
                CxE za = seq.point_at(i, bits), zb = seq.point_at(j, bits);
                Enclosure dr = za.re - zb.re, di = za.im - zb.im;
                if (!dr.contains_zero() || !di.contains_zero()) return false;
                if (dr.is_point() && di.is_point()) return true;
                return std::nullopt;
            });
            if (dup) out.push_back({Violation::Kind::Duplicate, i, j});
        }
    return out;
}

}  // namespace npk
