#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "npk/carleson.hpp"

using namespace npk;

namespace {

const PrecisionContext ctx{128, 4096, 2};

Rational mod2(Rational x) {
    mpz_class q;
    mpz_class num = x.num(), den = x.den() * 2;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return x - Rational(2) * Rational(q);
}

Rational circ_dist(const Rational& a, const Rational& b) {
    Rational d = mod2(a - b);
    return d > Rational(1) ? Rational(2) - d : d;
}

Rational exact_mass(const PolarMeasure& mu, const Rational& phi, const Rational& eps) {
    Rational sum(0);
    for (const auto& a : mu.atoms)
        if (a.r_q >= Rational(1) - eps && circ_dist(a.t_q, phi) <= eps) sum += a.m_q;
    return sum;
}

// Independent brute force over critical boxes: every optimal box can be
// shrunk until it is pinned either by the angular span of an ordered atom
// pair (arc from atom i counterclockwise to atom j, box centered on the arc
// midpoint) or by a radial threshold 1 - r_k. This parameterizes by centered
// arcs instead of the left-anchored sweep used by the implementation.
Rational brute_force_constant(const PolarMeasure& mu) {
    std::vector<Rational> radial{Rational(1)};
    for (const auto& a : mu.atoms)
        if (a.r_q < Rational(1)) radial.push_back(Rational(1) - a.r_q);
    Rational best(0);
    for (const auto& ai : mu.atoms)
        for (const auto& aj : mu.atoms) {
            Rational span = mod2(aj.t_q - ai.t_q);
            Rational half = span * Rational(1, 2);
            Rational center = ai.t_q + half;
            std::vector<Rational> epss = radial;
            if (half > Rational(0)) epss.push_back(half);
            for (const Rational& eps : epss) {
                if (eps < half || eps > Rational(1)) continue;
                Rational ratio = exact_mass(mu, center, eps) / eps;
                if (ratio > best) best = ratio;
            }
        }
    return best;
}

PolarMeasure random_measure(std::mt19937_64& rng, long max_atoms = 12) {
    std::uniform_int_distribution<long> n_atoms(1, max_atoms);
    std::uniform_int_distribution<long> rnum(1, 99);
    std::uniform_int_distribution<long> tnum(-99, 100);
    std::uniform_int_distribution<long> mnum(1, 50);
    PolarMeasure mu;
    long n = n_atoms(rng);
    for (long i = 0; i < n; ++i)
        mu.atoms.push_back(polar_atom_exact(Rational(rnum(rng), 100), Rational(tnum(rng), 100),
                                            Rational(mnum(rng), 10), 128));
    return mu;
}

PolarMeasure radial_atoms(std::vector<std::pair<Rational, Rational>> rm) {
    PolarMeasure mu;
    for (auto& [r, m] : rm) mu.atoms.push_back(polar_atom_exact(r, Rational(0), m, 128));
    return mu;
}

}  // namespace

TEST_CASE("box mass, exact") {
    PolarMeasure mu = radial_atoms({{Rational(1, 2), Rational(1)}});
    CHECK(box_mass_exact(mu, {Rational(0), Rational(1, 2)}) == Rational(1));  // closed boundary
    CHECK(box_mass_exact(mu, {Rational(0), Rational(1, 4)}) == Rational(0));
    CHECK(box_mass_exact(mu, {Rational(1), Rational(1, 2)}) == Rational(0));  // wrong side

    // atom at i/2: r = 1/2, angle pi/2; angular boundary of Q_{1/2}(0) reaches pi/2
    PolarMeasure imag;
    imag.atoms.push_back(polar_atom_exact(Rational(1, 2), Rational(1, 2), Rational(1), 128));
    CHECK(box_mass_exact(imag, {Rational(0), Rational(1, 2)}) == Rational(1));

    CHECK_THROWS_AS(box_mass_exact(mu, {Rational(0), Rational(2)}), InvalidParameter);
    CHECK_THROWS_AS(box_mass_exact(mu, {Rational(0), Rational(0)}), InvalidParameter);
    CHECK(box_mass(mu, {Rational(0), Rational(1, 2)}, 128).contains(Rational(1)));
}

TEST_CASE("box mass indeterminacy reports both sums") {
    PolarAtom fuzzy;
    fuzzy.exact = false;
    fuzzy.r = Enclosure(MpF::from_rational(Rational(49, 100), 64, MPFR_RNDD),
                        MpF::from_rational(Rational(51, 100), 64, MPFR_RNDU));
    fuzzy.t = Enclosure(0, 64);
    fuzzy.m = Enclosure(1, 64);
    PolarMeasure mu;
    mu.atoms.push_back(fuzzy);
    CHECK_THROWS_AS(box_mass(mu, {Rational(0), Rational(1, 2)}, 64), IndeterminateComparison);
}

TEST_CASE("to_polar keeps real rational atoms exact") {
    NodeSequence seq = make_explicit({NodePoint::from_rational(Rational(1, 2), Rational(0), 128),
                                      NodePoint::from_rational(Rational(-3, 4), Rational(0), 128)});
    DiscreteMeasure mu = nu_measure(seq, ctx);
    PolarMeasure pm = to_polar(mu, ctx);
    REQUIRE(pm.atoms.size() == 2);
    CHECK(pm.all_exact());
    CHECK(pm.atoms[0].r_q == Rational(1, 2));
    CHECK(pm.atoms[0].t_q == Rational(0));
    CHECK(pm.atoms[1].r_q == Rational(3, 4));
    CHECK(pm.atoms[1].t_q == Rational(1));  // negative real axis

    // complex node: i/2
    NodeSequence cseq = make_explicit({NodePoint::from_rational(Rational(0), Rational(1, 2), 128)});
    PolarMeasure cpm = to_polar(nu_measure(cseq, ctx), ctx);
    CHECK(!cpm.atoms[0].exact);
    CHECK(cpm.atoms[0].r.contains(Rational(1, 2)));
    CHECK(cpm.atoms[0].t.contains(Rational(1, 2)));
}

TEST_CASE("box constant, hand-checked examples") {
    BoxConstantReport single = box_constant(radial_atoms({{Rational(1, 2), Rational(1)}}), ctx);
    CHECK(single.exact);
    CHECK(single.constant_q == Rational(2));
    CHECK(single.witness.phi_t == Rational(0));
    CHECK(single.witness.eps == Rational(1, 2));

    BoxConstantReport two = box_constant(
        radial_atoms({{Rational(1, 2), Rational(1)}, {Rational(3, 4), Rational(1)}}), ctx);
    CHECK(two.constant_q == Rational(4));
    CHECK(two.witness.eps == Rational(1, 4));

    PolarMeasure nu = radial_atoms(
        {{Rational(1, 2), Rational(225, 64)}, {Rational(3, 4), Rational(1225, 1024)}});
    BoxConstantReport r = box_constant(nu, ctx);
    CHECK(r.constant_q == Rational(4825, 512));
    CHECK(r.witness.eps == Rational(1, 2));
}

TEST_CASE("witness reproduces the constant") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 30; ++trial) {
        PolarMeasure mu = random_measure(rng, 8);
        BoxConstantReport rep = box_constant(mu, ctx);
        CHECK(exact_mass(mu, rep.witness.phi_t, rep.witness.eps) / rep.witness.eps ==
              rep.constant_q);
    }
}

TEST_CASE("candidate enumeration equals the independent brute force") {
    std::mt19937_64 rng(98765);
    for (int trial = 0; trial < 60; ++trial) {
        PolarMeasure mu = random_measure(rng);
        BoxConstantReport rep = box_constant(mu, ctx);
        REQUIRE(rep.exact);
        CHECK(rep.constant_q == brute_force_constant(mu));
    }
}

TEST_CASE("enumerated constant dominates a dense grid estimate") {
    std::mt19937_64 rng(13579);
    for (int trial = 0; trial < 5; ++trial) {
        PolarMeasure mu = random_measure(rng, 6);
        BoxConstantReport rep = box_constant(mu, ctx);
        std::vector<Rational> epss{Rational(1)};
        for (const auto& a : mu.atoms) {
            epss.push_back(Rational(1) - a.r_q);
            epss.push_back((Rational(1) - a.r_q) * Rational(1, 2));
        }
        Rational grid_best(0);
        for (long i = -200; i <= 200; ++i) {
            Rational phi(i, 200);
            for (const auto& eps : epss) {
                if (!(eps > Rational(0))) continue;
                Rational r = exact_mass(mu, phi, eps) / eps;
                if (r > grid_best) grid_best = r;
            }
        }
        CHECK(rep.constant_q >= grid_best);
    }
}

TEST_CASE("monotonicity and scaling") {
    std::mt19937_64 rng(24680);
    for (int trial = 0; trial < 20; ++trial) {
        PolarMeasure mu = random_measure(rng, 6);
        Rational base = box_constant(mu, ctx).constant_q;

        PolarMeasure more = mu;
        more.atoms.push_back(polar_atom_exact(Rational(9, 10), Rational(1, 3), Rational(2), 128));
        CHECK(box_constant(more, ctx).constant_q >= base);

        PolarMeasure scaled = mu;
        for (auto& a : scaled.atoms)
            a = polar_atom_exact(a.r_q, a.t_q, a.m_q * Rational(7, 3), 128);
        CHECK(box_constant(scaled, ctx).constant_q == base * Rational(7, 3));
    }
}

TEST_CASE("box constant trajectory for the radial family") {
    NodeSequence seq = gen_radial_power(Rational(2), 8, ctx);
    Trajectory t = box_constant_trajectory(seq, 7, ctx);
    REQUIRE(t.records.size() == 8);
    // single node 3/4: mass (16/7)^{-2} = 49/256 over eps = 1/4
    Enclosure first = t.records[0].aux.at("box_constant");
    CHECK(first.contains(Rational(49, 64)));
    for (size_t i = 1; i < t.records.size(); ++i)
        CHECK(t.records[i].aux.at("box_constant").hi() >=
              t.records[i - 1].aux.at("box_constant").lo());

    // n=0 geometric example from the module contract: atom 1/2, mass 9/16
    NodeSequence geo = gen_geometric(Rational(1, 2), 1, ctx);
    Trajectory g = box_constant_trajectory(geo, 0, ctx);
    CHECK(g.records[0].aux.at("box_constant").contains(Rational(9, 8)));
}

TEST_CASE("theorem comparison single node") {
    NodeSequence geo = gen_geometric(Rational(1, 2), 1, ctx);
    TheoremComparison tc = theorem_comparison(geo, 0, Rational(1, 1000000000), ctx);
    CHECK(tc.lambda0.value.contains(Rational(4, 3)));
    CHECK(tc.embed.value.contains(Rational(3, 4)));
    CHECK(tc.box.exact);
    CHECK(tc.box.constant_q == Rational(9, 8));
    CHECK(tc.identity_ok);
    CHECK(tc.embed_vs_box_ok);
    CHECK(tc.box_vs_embed_ok);
}

TEST_CASE("theorem comparison two nodes") {
    NodeSequence seq = make_explicit({NodePoint::from_rational(Rational(1, 2), Rational(0), 128),
                                      NodePoint::from_rational(Rational(3, 4), Rational(0), 128)});
    TheoremComparison tc = theorem_comparison(seq, 1, Rational(1, 1000000000000), ctx);
    CHECK(tc.identity_ok);
    CHECK(tc.embed_vs_box_ok);
    CHECK(tc.box_vs_embed_ok);
    CHECK(tc.box.constant_q == Rational(4825, 512));
    // embed ~ 7.134, lambda0 ~ 0.14016
    CHECK(tc.lambda0.value.lo_rational() > Rational::parse("0.1401"));
    CHECK(tc.lambda0.value.hi_rational() < Rational::parse("0.1402"));
    CHECK(tc.embed.value.lo_rational() > Rational::parse("7.13"));
    CHECK(tc.embed.value.hi_rational() < Rational::parse("7.14"));
}
