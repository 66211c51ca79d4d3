#pragma once

#include <complex>
#include <vector>

#include "catmap/heisenberg.hpp"

namespace catmap {

/// Which short-period family the dimension comes from.
enum class ParityClass { Odd, Even };

/// Everything needed to define a projector state
/// v = (1/t) sum_{s<t} omega^{-s} M^s e_j with omega = exp(i(phi + 2 pi sigma)/t).
struct ProjectorSpec {
    int k = 0;
    ParityClass parity = ParityClass::Odd;
    int j = 0;
    int sigma = 0;
    int t = 1;         ///< quantum period of the dimension
    double phi = 0.0;  ///< M^t = e^{i phi} I, phi in [0, 2 pi)
    Complex omega{1.0, 0.0};
};

struct ScalarPhaseOptions {
    int sample_size = 32;
    double leak_tol = 1e-6;
    double spread_tol = 1e-6;
};

/// Deterministic sample of basis indices used for scalar checks
/// (all indices when N < sample_size).
std::vector<int> phase_sample_indices(int N, int sample_size);

/// Extracts phi from M^t = e^{i phi} I by propagating sampled basis
/// vectors t steps. Throws NotScalar when M^t leaks off the sampled
/// coordinates or the per-sample phases disagree.
double scalar_phase(const Propagator& P, int t, const ScalarPhaseOptions& opts = {});

/// Minimal t <= t_max with M^t scalar on the sample; returns (t, phi).
/// Throws NoOrderFound when no such t exists below t_max.
std::pair<int, double> minimal_scalar_period(const Propagator& P, int t_max,
                                             const ScalarPhaseOptions& opts = {});

/// Assembles a spec: t from the exact arithmetic period, phi measured.
ProjectorSpec make_spec(const Propagator& P, int k, ParityClass parity, int j, int sigma);

struct ProjectorState {
    QuantumState v;
    double norm;
};

/// The eigenspace average itself, via t-1 matrix-vector products.
/// Vanishing is reported through the returned norm, never as an error.
ProjectorState projector_state(const Propagator& P, const ProjectorSpec& spec);

/// Scale-aware vanishing tolerance 1e-10 * sqrt(N): far below the
/// 1/sqrt(t) norms of genuine states.
double default_vanish_tol(int N);

/// v / ||v||; throws VanishingState when ||v|| <= vanish_tol.
QuantumState normalize(const QuantumState& v, double vanish_tol);

/// ||M u - omega u||_2 for a unit vector u.
double eigen_residual(const Propagator& P, const QuantumState& u, Complex omega);

struct ProfileReport {
    int peak_index = 0;
    Complex peak_value{};
    double off_peak_max = 0.0;
    double linf = 0.0;
    double l2 = 0.0;
    double predicted_peak = 0.0;  ///< 1/sqrt(t)
    bool peak_at_j = false;
    double peak_deviation = 0.0;  ///< | |u(peak)| - 1/sqrt(t) |
    bool off_peak_below_half = false;
};

/// Coordinate profile of a normalized state: peak location and size
/// against the 1/sqrt(t) prediction. Assertion outcomes are report
/// fields, not errors.
ProfileReport coordinate_profile(const QuantumState& u, const ProjectorSpec& spec);

}  // namespace catmap
