#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "npk/kernels.hpp"

namespace npk {

enum class Backend { Auto, Exact, Interval };

enum class InertiaStatus { Certified, Indeterminate, ZeroPivot };

struct Inertia {
    InertiaStatus status = InertiaStatus::Certified;
    long below = 0;  // eigenvalues strictly below the shift
};

// Optional congruence scaling: eigenvalues of D^{1/2} M D^{1/2} are located
// through the inertia of M - shift * D^{-1} (Sylvester). `q` holds exact
// rational D^{-1} entries; `gen` materializes enclosure entries at a given
// precision when no exact form exists.
struct DiagScale {
    bool exact = false;
    std::vector<Rational> q;
    std::function<std::vector<Enclosure>(long bits)> gen;
};

// Number of eigenvalues of M (or of D^{1/2} M D^{1/2}) strictly below shift.
Inertia inertia_below(const HermitianKernelMatrix& M, const Rational& shift, Backend be,
                      long bits, const DiagScale* dinv = nullptr);

struct EigenEnclosure {
    long k = 0;
    long dim = 0;
    Enclosure value;
    Rational lo_q, hi_q;         // exact dyadic bisection endpoints
    long inertia_at_lo = 0;      // <= k
    long inertia_at_hi = 0;      // >= k+1
    long bits_used = 0;
};

// Certified k-th smallest eigenvalue by inertia bisection on dyadic shifts,
// with precision escalation on indeterminate pivots.
EigenEnclosure eigenvalue(const HermitianKernelMatrix& M, long k, const Rational& rel_tol,
                          const PrecisionContext& ctx, Backend be = Backend::Auto,
                          const DiagScale* dinv = nullptr);

struct TrajectoryRecord {
    long n = 0;
    EigenEnclosure lambda0;
    std::map<std::string, Enclosure> aux;
};

struct Trajectory {
    std::vector<TrajectoryRecord> records;
};

using MatrixFamily = std::function<HermitianKernelMatrix(long n)>;

struct InterlacingReport {
    bool pass = false;
    std::string detail;
};

// Verifies lambda_{n+1,k} <= lambda_{n,k} <= lambda_{n+1,k+1} (within
// certified enclosures) for all nested sections up to n_max.
InterlacingReport interlacing_check(const MatrixFamily& family, long n_max,
                                    const Rational& rel_tol, const PrecisionContext& ctx,
                                    Backend be = Backend::Auto);

// lambda_{n,0} for n = 0..n_max; throws InvariantViolation if a certified
// monotonicity breach is detected (analytically impossible).
Trajectory lambda0_trajectory(const MatrixFamily& family, long n_max, const Rational& rel_tol,
                              const PrecisionContext& ctx, Backend be = Backend::Auto);

struct RegularityVerdict {
    enum class Tag { RegularEvidence, SingularEvidence, Inconclusive };
    Tag tag = Tag::Inconclusive;
    Enclosure floor_or_decay;
    std::string rationale;
    long window = 5;
    Rational plateau_eps = Rational(1, 20);
    Rational decay_threshold = Rational(9, 10);
};

RegularityVerdict classify(const Trajectory& traj, long window = 5,
                           const Rational& plateau_eps = Rational(1, 20),
                           const Rational& decay_threshold = Rational(9, 10));

// lambda_0(K_n) - lambda_0(P_n) plus the structural PSD certificate for
// K_n - P_n = D K_n D* (D = diag(w_j)).
struct DominationReport {
    Enclosure gap;
    bool identity_certified = false;  // K - P == D K D* entrywise
    bool psd_certified = false;       // lambda_0(K) certified >= 0
};

DominationReport domination_gap(const NodeSequence& seq, const TargetValues& targets, long n,
                                const Rational& rel_tol, const PrecisionContext& ctx,
                                Backend be = Backend::Auto);

}  // namespace npk
