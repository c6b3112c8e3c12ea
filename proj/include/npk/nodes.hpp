#pragma once

#include <string>
#include <vector>

#include "npk/complex.hpp"
#include "npk/enclosure.hpp"
#include "npk/rational.hpp"

namespace npk {

// One interpolation node in the open unit disk, z != 0.
// Exact nodes carry rational coordinates; inexact nodes (irrational radial
// powers) carry enclosures plus the generator index so they can be
// rematerialized at any precision.
struct NodePoint {
    bool exact = true;
    Rational re, im;        // valid when exact
    Enclosure re_e, im_e;   // always populated
    long gen_index = -1;    // generator k, when produced by a family

    static NodePoint from_rational(Rational r, Rational i, long bits) {
        NodePoint p;
        p.exact = true;
        p.re = std::move(r);
        p.im = std::move(i);
        p.re_e = Enclosure::from_rational(p.re, bits);
        p.im_e = Enclosure::from_rational(p.im, bits);
        return p;
    }
};

struct Provenance {
    enum class Kind { Explicit, RadialPower, Geometric };
    Kind kind = Kind::Explicit;
    Rational param;        // p for radial_power, r for geometric
    long start_index = 1;  // first generator index actually used
    std::string to_string() const;
};

struct NodeSequence {
    Provenance provenance;
    std::vector<NodePoint> points;

    size_t size() const { return points.size(); }
    bool all_exact() const;
    bool all_real() const;

    // Truncation to the first n+1 nodes (paper-style section index).
    NodeSequence prefix(size_t count) const;

    // Certified complex coordinates of node i at the requested precision;
    // exact nodes are enclosed outward, generated irrational nodes are
    // rematerialized from the family formula.
    CxE point_at(size_t i, long bits) const;
};

struct Violation {
    enum class Kind { Duplicate, OutsideDisk, AtOrigin };
    Kind kind;
    size_t i = 0, j = 0;
    std::string to_string() const;
};

// z_k = 1 - k^{-p}, p > 1. Generation starts at the first index whose node
// is nonzero (k = 2, since 1 - 1^{-p} = 0 for every p); the shift is
// recorded in provenance. Integer p gives exact rational nodes.
NodeSequence gen_radial_power(const Rational& p, long count, const PrecisionContext& ctx);

// z_k = 1 - r^k for k = 1..count, 0 < r < 1, exact rationals.
NodeSequence gen_geometric(const Rational& r, long count, const PrecisionContext& ctx);

NodeSequence make_explicit(std::vector<NodePoint> pts);

// Certified sum of (1 - |z_k|).
Enclosure blaschke_sum(const NodeSequence& seq, const PrecisionContext& ctx);

// Empty iff every NodeSequence invariant certifiably holds. Escalates
// precision on overlapping enclosures; throws IndeterminateComparison only
// when max_bits is insufficient.
std::vector<Violation> validate(const NodeSequence& seq, const PrecisionContext& ctx);

}  // namespace npk
