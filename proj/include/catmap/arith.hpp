#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <vector>

#include "catmap/errors.hpp"

namespace catmap {

/// Arbitrary-precision integer. Lucas values p_r grow like lambda^r and
/// overflow 64 bits near r = 33 for trace-4 maps, while the divisibility
/// scans run to r = 60.
using Int = boost::multiprecision::cpp_int;

/// Period parity branch of a dimension N: odd N, even N with quantum
/// period T_N, or even N with quantum period 2 T_N.
enum class Branch { Odd, Even2k, Even4k };

const char* to_string(Branch b);

/// A hyperbolic toral automorphism admissible for quantization:
/// det = 1, ab and cd even, trace even and > 2, gcd(b,c) = 1.
/// Entries are validated once at construction; b,c odd and a,d even
/// follow from the conditions and are asserted.
struct CatMap {
    std::int64_t a, b, c, d;
    std::int64_t trace;
    double lambda;  ///< expanding eigenvalue (trace + sqrt(trace^2 - 4))/2

    /// Validates all admissibility conditions; throws ConditionViolation
    /// naming the first failed one.
    static CatMap checked(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);
};

/// Exact 2x2 integer matrix (powers of a CatMap).
struct Mat2 {
    Int a, b, c, d;

    static Mat2 identity() { return {1, 0, 0, 1}; }
    friend bool operator==(const Mat2&, const Mat2&) = default;
};

Mat2 operator*(const Mat2& x, const Mat2& y);
Mat2 mod(const Mat2& x, const Int& n);

/// Lucas value p_r of the recurrence p_0 = 0, p_1 = 1,
/// p_{r+1} = trace * p_r - p_{r-1}, so that A^r = p_r A - p_{r-1} I.
Int p_seq(const CatMap& A, unsigned r);

/// Exact A^r, reduced mod `modulus` when given.
Mat2 matrix_power(const CatMap& A, unsigned r, const std::optional<Int>& modulus = std::nullopt);

/// Largest N with A^q = I mod N, by the closed forms
/// N'_{2k+1} = p_k + p_{k+1} and N'_{2k} = 2 p_k.
Int n_prime(const CatMap& A, unsigned q);

/// Independent route to N'_q: gcd of the four entries of A^q - I.
Int n_prime_oracle(const CatMap& A, unsigned q);

/// Minimal t >= 1 with A^t = I mod N. `ceiling` 0 selects the default
/// 10*N (safety valve against gcd(N, disc) pathologies).
unsigned order_mod(const CatMap& A, const Int& N, unsigned long long ceiling = 0);

struct QuantumPeriod {
    unsigned n;
    Branch branch;
};

/// Quantum period n(N) of the propagator dimension N: with
/// A^{T_N} = I + N * A_N, n(N) = T_N when N is odd or both off-diagonal
/// entries of A_N are even, and 2 T_N otherwise.
QuantumPeriod quantum_period(const CatMap& A, const Int& N);

/// Everything known about the modulus family at index q.
struct PeriodRecord {
    unsigned q = 0;
    std::vector<Int> p_values;  ///< p_0 .. p_q
    Int n_prime;
    unsigned T = 0;  ///< order of A mod n_prime (equals q)
    unsigned n = 0;  ///< quantum period of n_prime
    Branch branch = Branch::Odd;
};

PeriodRecord period_record(const CatMap& A, unsigned q);

struct GcdBound {
    Int lhs;   ///< gcd(N'_T, |b| p_r)
    Int rhs;   ///< |b| * N'_{gcd(T, 2r)}
    bool holds;
    bool divisibility;  ///< gcd(N'_T, p_r) divides N'_{gcd(T,2r)}
};

/// Exact check of the divisibility bound gcd(N'_T, b_r) <= |b| N'_{gcd(T,2r)}.
GcdBound gcd_bound_check(const CatMap& A, unsigned T, unsigned r);

/// Times 0 <= s < T at which the second component of (A^T)^s m is
/// congruent to c modulo `modulus`. The default modulus is N'_T.
/// Residues are normalized to [0, modulus) on entry.
std::vector<unsigned> resonance_set(const CatMap& A, std::int64_t m1, std::int64_t m2,
                                    const Int& c, unsigned T,
                                    const std::optional<Int>& modulus = std::nullopt);

unsigned resonance_count(const CatMap& A, std::int64_t m1, std::int64_t m2,
                         const Int& c, unsigned T);

}  // namespace catmap
