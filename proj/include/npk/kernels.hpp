#pragma once

#include <string>
#include <vector>

#include "npk/blaschke.hpp"
#include "npk/matrix.hpp"
#include "npk/nodes.hpp"

namespace npk {

struct MomentSequence {
    enum class Kind { Explicit, Factorial, Lognormal, Gaussian };
    Kind kind = Kind::Explicit;
    long count = 0;
    std::vector<Rational> values_q;  // exact values; empty for lognormal

    bool exact() const { return kind != Kind::Lognormal; }
    Rational value_q(long j) const;
    Enclosure value_at(long j, long bits) const;
    static std::string kind_name(Kind k);
};

// factorial -> s_j = j!; gaussian -> s_{2m} = (2m-1)!!, odd moments 0;
// lognormal -> s_j = exp(j^2/2) (enclosures).
MomentSequence moment_generator(MomentSequence::Kind kind, long count);

struct TargetValues {
    std::vector<CxQ> w;  // |w_k| <= 1, rational coordinates
};

enum class Recipe { Pick, PickGeneral, NormalizedGram, Hankel };

// Hermitian kernel matrix with a tagged construction recipe. Entries are
// rematerialized from the source at any requested precision; exact rational
// entries are kept when the source data allows.
struct HermitianKernelMatrix {
    Recipe recipe = Recipe::Pick;
    long n = 0;  // section index, dim = n + 1
    bool is_real = true;
    bool is_exact = false;

    MatQ q;    // exact real entries (is_exact && is_real)
    MatCQ cq;  // exact complex entries (is_exact && !is_real)

    NodeSequence nodes;      // pick / pick_general / normalized_gram sources
    MomentSequence moments;  // hankel source
    TargetValues targets;    // pick_general source

    long dim() const { return n + 1; }
    MatE real_at(long bits) const;
    MatCE cx_at(long bits) const;
};

// K_n = || 1/(1 - z_i conj(z_j)) ||, (n+1)x(n+1) over the first n+1 nodes.
HermitianKernelMatrix pick_matrix(const NodeSequence& seq, long n);

// P_n = || (1 - w_i conj(w_j)) / (1 - z_i conj(z_j)) ||
HermitianKernelMatrix pick_general(const NodeSequence& seq, const TargetValues& targets, long n);

// G_n = || (1-|z_i|^2)^{1/2} (1-|z_j|^2)^{1/2} / (1 - z_i conj(z_j)) ||
HermitianKernelMatrix normalized_gram(const NodeSequence& seq, long n);

// H_n = || s_{i+j} ||
HermitianKernelMatrix hankel_matrix(const MomentSequence& moments, long n);

// W = diag(B'(z_0), ..., B'(z_n)) for the finite Blaschke product over the
// first n+1 nodes (normalization factors |z_k|/z_k included).
std::vector<CxE> derivative_diagonal(const NodeSequence& seq, long n, const PrecisionContext& ctx);
// exact variant for real rational nodes: B'(z_j) is rational
std::vector<Rational> derivative_diagonal_exact(const NodeSequence& seq, long n);

// W* K_n^{-1} W = K_n, checked without inverting anything: the identity is
// equivalent to K_n W^{-*} K_n W^{-1} = I, and W is diagonal. The exact
// variant demands entrywise rational equality; the certified variant checks
// that every entry of the product encloses the identity entry.
bool proof_identity_exact(const NodeSequence& seq, long n);
bool proof_identity_certified(const NodeSequence& seq, long n, long bits);

}  // namespace npk
