#pragma once

#include "npk/blaschke.hpp"
#include "npk/spectra.hpp"

namespace npk {

// Closed Carleson box Q_eps(phi). Angles are stored in units of pi, so the
// box covers { z : |arg(z)/pi - phi_t| <= eps (mod 2), 1 - eps <= |z| <= 1 }.
struct CarlesonBox {
    Rational phi_t;  // phi / pi, in (-1, 1]
    Rational eps;    // in (0, 1]
};

// Atom in polar form: radius, angle/pi in (-1, 1], positive mass.
struct PolarAtom {
    bool exact = false;       // r_q, t_q, m_q all valid
    Rational r_q, t_q, m_q;
    Enclosure r, t, m;
};

struct PolarMeasure {
    std::vector<PolarAtom> atoms;
    bool all_exact() const {
        for (const auto& a : atoms)
            if (!a.exact) return false;
        return true;
    }
};

PolarAtom polar_atom_exact(const Rational& r, const Rational& t, const Rational& m, long bits);

// Converts a node-based discrete measure to polar form. Real rational atoms
// stay exact; complex or irrational atoms become enclosures.
PolarMeasure to_polar(const DiscreteMeasure& mu, const PrecisionContext& ctx);

Rational box_mass_exact(const PolarMeasure& mu, const CarlesonBox& box);
// Certified box mass; throws IndeterminateComparison (with inclusive and
// exclusive sums in the message) if an atom straddles the boundary.
Enclosure box_mass(const PolarMeasure& mu, const CarlesonBox& box, long bits);

struct BoxConstantReport {
    Enclosure constant;
    bool exact = false;
    Rational constant_q;   // when exact
    CarlesonBox witness;
    long atom_count_in_witness = 0;
};

// sup over boxes of nu(Q_eps(phi))/eps by critical candidate enumeration:
// eps in {1 - r_k} U {angular gaps / 2} U {1}, windows anchored at atom
// angles.
BoxConstantReport box_constant(const PolarMeasure& mu, const PrecisionContext& ctx);

// Box constant of the self-consistent nu over the first n+1 nodes, for
// n = 0..n_max. Records carry aux box_constant / witness_eps / witness_phi.
Trajectory box_constant_trajectory(const NodeSequence& seq, long n_max,
                                   const PrecisionContext& ctx);

struct TheoremComparison {
    EigenEnclosure lambda0;     // lambda_0(K_n)
    EigenEnclosure embed;       // lambda_max(D^{1/2} K_n D^{1/2}) = 1/lambda_0
    BoxConstantReport box;
    bool identity_ok = false;   // embed * lambda0 contains 1
    bool embed_vs_box_ok = false;  // embed <= (2+pi)^2 * box, certified
    bool box_vs_embed_ok = false;  // box <= (2+pi)^2 * embed, certified
};

TheoremComparison theorem_comparison(const NodeSequence& seq, long n, const Rational& rel_tol,
                                     const PrecisionContext& ctx, Backend be = Backend::Auto);

}  // namespace npk
