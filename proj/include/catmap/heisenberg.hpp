#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "catmap/arith.hpp"

namespace catmap {

using Complex = std::complex<double>;
using QuantumState = Eigen::VectorXcd;

/// Integer wave numbers of the observable e^{2 pi i (m1 x + m2 xi)}.
struct FourierMode {
    std::int64_t m1 = 0, m2 = 0;
    friend bool operator==(const FourierMode&, const FourierMode&) = default;
};

/// m -> A^T m, the classical action on wave numbers.
FourierMode transpose_apply(const CatMap& A, FourierMode m);

struct PropagatorOptions {
    int n_max = 8192;
    /// <= 0 selects the default 1e-8 * max(1, N/8192).
    double unitarity_tol = 0.0;
    bool check_unitarity = true;
};

/// The quantized map: a dense N x N unitary with mat(k, j) = <M e_j, e_k>.
struct Propagator {
    CatMap map;
    int N = 0;
    Eigen::MatrixXcd mat;
    double unitarity_defect = 0.0;  ///< measured max-norm of M*M - I
};

/// Builds the propagator from the quadratic Gauss-sum entry formula.
/// Every phase argument is an exact rational with denominator 2N|b|,
/// reduced mod 1 in integer arithmetic before exponentiation; naive
/// floating evaluation loses all phase accuracy once arguments reach
/// O(N). Throws TooLarge / UnitarityFailure.
Propagator build_propagator(const CatMap& A, int N, const PropagatorOptions& opts = {});

/// Max-norm of M*M - I.
double unitarity_defect_of(const Eigen::MatrixXcd& M);

/// Quantum translation W_N(m): e_j -> gamma_{N,m,j} e_{j - m2 mod N} with
/// gamma_{N,m,j} = exp(pi i (2 m1 j - m1 m2)/N). The wave numbers are
/// reduced mod 2N, under which W_N is exactly periodic.
class Translation {
  public:
    Translation(int N, FourierMode m);

    QuantumState apply(const QuantumState& u) const;
    Eigen::MatrixXcd left_apply(const Eigen::MatrixXcd& M) const;   ///< W * M
    Eigen::MatrixXcd right_apply(const Eigen::MatrixXcd& M) const;  ///< M * W
    Eigen::MatrixXcd materialize() const;

    /// gamma_{N,m,j}; j may be any integer.
    Complex phase(std::int64_t j) const;
    /// index shift m2 mod N
    int shift() const { return static_cast<int>(m2_ % N_); }
    int dim() const { return N_; }

  private:
    int N_;
    std::int64_t m1_, m2_;  // reduced to [0, 2N)
};

inline Translation translation(int N, FourierMode m) { return {N, m}; }

/// Linear combination sum_m coeffs(m) W_N(m), materialized densely.
Eigen::MatrixXcd quantize_trig(int N, const std::vector<std::pair<FourierMode, Complex>>& coeffs);

/// Max-norm of M* W_N(m) M - W_N(A^T m). Exact conjugation covariance
/// makes this roundoff-small for every m.
double egorov_defect(const Propagator& P, FourierMode m);

struct GaussBound {
    double value;  ///< |<W(m) M^r e_j, e_l>|
    double bound;  ///< sqrt(gcd(N, |b| p_|r|) / N)
    bool holds;    ///< value <= bound + 1e-9
};

/// Dispersive bound on a single propagated matrix entry. r may be
/// negative (inverse propagation via the adjoint).
GaussBound gauss_bound_report(const Propagator& P, int r, FourierMode m, int j, int l);

}  // namespace catmap
