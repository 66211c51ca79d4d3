#pragma once

#include <vector>

#include "catmap/states.hpp"

namespace catmap {

/// <W_N(m) u, u> via one shift-and-phase application and an inner
/// product, O(N).
Complex matrix_element(const QuantumState& u, FourierMode m);

struct ModeElement {
    FourierMode m;
    Complex value;
    double bound;  ///< (1 + log(1 + ||m||)) / t
};

struct EquidistReport {
    int N = 0;
    int t = 1;
    std::vector<ModeElement> modes;    ///< m = (0,0) first, then 0 < ||m||_inf <= cutoff
    double worst_deviation = 0.0;      ///< max |value| over nonzero modes
};

/// Tabulates matrix elements of a normalized state over all wave numbers
/// up to the cutoff.
EquidistReport equidist_report(const QuantumState& u, const ProjectorSpec& spec, int mode_cutoff);

struct DiagonalSplit {
    Complex diag;
    Complex offdiag;
    std::vector<unsigned> resonance_s;  ///< s with a nonzero diagonal term
};

/// Splits <W(m) v, v> into the r = s and r != s parts of the double sum
/// over propagated basis vectors, using the conjugation covariance to
/// reduce each term to <W(B^s m) M^{r-s} e_j, e_j>. The s contributing
/// to the diagonal are exactly the resonance times of the wave-number
/// orbit.
DiagonalSplit diagonal_split(const Propagator& P, const ProjectorSpec& spec, FourierMode m);

enum class RateModel {
    PowerLawN,    ///< deviation ~ N^{-c}
    InverseLogN,  ///< deviation ~ (log N)^{-c}
};

struct RateFit {
    double exponent;
    double quality;  ///< rms residual of the log-space fit
};

/// Least-squares fit of log(deviation) against the chosen model.
/// Throws DegenerateFit when deviations sit at roundoff level.
RateFit rate_fit(const std::vector<std::pair<double, double>>& n_dev_points, RateModel model);

struct WignerGrid {
    int resolution = 0;
    double smoothing = 0.0;
    int mode_cutoff = 0;
    Eigen::MatrixXd values;      ///< row x, column xi; dimensionless density
    double imag_residual = 0.0;  ///< max imaginary part before discarding
    double mean = 0.0;
};

/// Gaussian width in mode space: sqrt(N)/8.
double default_smoothing(int N);
/// Covers four standard deviations of the mode-space Gaussian,
/// capped at N/2.
int default_mode_cutoff(int N, double smoothing);

/// Mode-space-smoothed Wigner density
///   W(x, xi) = sum_{||m||_inf <= cutoff} <W_N(m)u, u>
///              exp(-||m||^2/(2 s^2)) e^{-2 pi i m.(x, xi)}
/// on a G x G grid over the torus. Real up to roundoff by Hermitian
/// symmetry of the coefficients; the grid mean equals the DC term.
WignerGrid smoothed_wigner(const QuantumState& u, int G, double smoothing, int cutoff);

}  // namespace catmap
