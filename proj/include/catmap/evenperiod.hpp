#pragma once

#include <array>
#include <vector>

#include "catmap/states.hpp"

namespace catmap {

struct HalfPeriodCheck {
    std::array<int, 2> indices;    ///< a_k j and a_k j + N/2, mod N
    std::array<double, 2> moduli;  ///< both 1/sqrt(2) up to tolerance
    double leakage;                ///< l2 mass off the two indices
};

/// Verifies that M^k e_j is carried by the two coordinates a_k j and
/// a_k j + N/2 with equal moduli 1/sqrt(2), at the half-period dimension
/// N = 2 p_k. Throws StructureViolation on leakage or unequal moduli.
HalfPeriodCheck half_period_check(const Propagator& P, int k, int j, double tol = 1e-6);

struct QuarterTurnCheck {
    std::vector<int> js;
    std::vector<Complex> phases;  ///< eta_{k,j} with M^{2k} e_j = eta e_{j + N/2}
};

/// In the 4k branch, M^{2k} e_j is a single coordinate at j + N/2.
/// Throws BranchMismatch when the period is 2k, StructureViolation on
/// leakage.
QuarterTurnCheck quarter_turn_check(const Propagator& P, int k, const std::vector<int>& js,
                                    double tol = 1e-6);

struct SigmaOutcome {
    int sigma;
    double norm;
    bool vanishes;
};

struct EvenCaseReport {
    int k = 0;
    int N = 0;            ///< 2 p_k
    Branch branch = Branch::Even4k;
    int t = 0;            ///< quantum period
    Int a_k;              ///< (A^k)_{11}
    Int gcd_ak_pk;        ///< gcd(a_k - 1, p_k)
    Int n_prime_k;        ///< N'_k
    bool gcd_identity = false;  ///< gcd(a_k - 1, p_k) == N'_k

    std::vector<SigmaOutcome> sigma_outcomes;    ///< at j = 0, built directly
    std::vector<std::pair<int, int>> vanishing;  ///< (j, sigma) pairs from the scan
    std::size_t candidate_count = 0;             ///< #{j in range: a_k j = j mod p_k}
    bool vanishing_in_candidates = false;        ///< every vanishing j is a candidate
    std::size_t vanishing_classes = 0;           ///< distinct vanishing j mod p_k (all sigma)
    bool classes_divide_gcd = false;
    bool dichotomy_at_zero = false;  ///< exactly one sigma of {0,2} vanishes at j = 0
};

/// Default scan range: every j when N <= 2000; otherwise the residue
/// classes with a_k j = j mod p_k (the only vanishing candidates) plus
/// 64 evenly spaced controls.
std::vector<int> default_j_range(const CatMap& A, int k, int N);

/// Sweeps (j, sigma) for vanishing projector states in the 4k branch.
/// Uses the half- and quarter-period structure to build each state from
/// a handful of stored propagator columns. Throws BranchMismatch on a
/// 2k-branch dimension.
EvenCaseReport vanishing_scan(const Propagator& P, int k, const std::vector<int>& j_range,
                              const std::vector<int>& sigmas);

struct SupportReport {
    std::vector<int> support;    ///< indices with |u| above the threshold
    double threshold = 0.0;      ///< (1/2) k^{-1/2}, documented and configurable
    double off_support_max = 0.0;
    bool size_ok = false;        ///< |S| in {2,4} (4k branch), <= 3 (2k), {j} when t = 1
};

/// Support set of a surviving normalized even-branch state.
SupportReport support_report(const QuantumState& u, const ProjectorSpec& spec, int k,
                             double threshold = 0.0);

}  // namespace catmap
