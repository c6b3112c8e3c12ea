#pragma once

#include <optional>
#include <vector>

#include "npk/complex.hpp"
#include "npk/enclosure.hpp"
#include "npk/nodes.hpp"

namespace npk {

// Finite Blaschke product with zero set equal to a node sequence.
struct BlaschkeProduct {
    NodeSequence nodes;
};

struct Atom {
    NodePoint point;
    Enclosure mass;            // certified, lo > 0
    bool exact_mass = false;
    Rational mass_q;           // valid when exact_mass
};

struct DiscreteMeasure {
    std::vector<Atom> atoms;
    bool all_exact() const {
        for (const auto& a : atoms)
            if (!a.exact_mass || !a.point.exact) return false;
        return true;
    }
};

// B(z) = prod_k (z_k - z)/(1 - z conj(z_k)) * |z_k|/z_k, certified.
CxE eval(const BlaschkeProduct& B, const CxE& z, const PrecisionContext& ctx);

// prod_{k != n} |z_n - z_k| / |1 - conj(z_k) z_n|  (empty product = 1)
Enclosure pseudo_product(const NodeSequence& seq, size_t n, const PrecisionContext& ctx);
Rational pseudo_product_exact(const NodeSequence& seq, size_t n);  // real rational nodes

// |B'(z_n)| = (1 - |z_n|^2)^{-1} * pseudo_product(n)
Enclosure derivative_modulus_at_node(const BlaschkeProduct& B, size_t n, const PrecisionContext& ctx);
Rational derivative_modulus_exact(const NodeSequence& seq, size_t n);

// nu({z_k}) = |B'(z_k)|^{-2} with B the finite product over exactly the
// nodes of seq (self-consistent weights).
DiscreteMeasure nu_measure(const NodeSequence& seq, const PrecisionContext& ctx);

// delta(Z) = min_n pseudo_product(n)
Enclosure separation_constant(const NodeSequence& seq, const PrecisionContext& ctx);

// Finite-truncation lower bound on the radial-family mass:
//   n^{-2p} * exp(2 * sum_{k=n+1}^{N} (n/k)^p),
// or the closed form n^{-2p} * exp((n+1)/(2^{p-1}(p-1))) when N is absent
// (infinite tail). Indices follow the generating formula z_k = 1 - k^{-p}.
Enclosure example_mass_lower_bound(const Rational& p, long n, std::optional<long> N,
                                   const PrecisionContext& ctx);

}  // namespace npk
