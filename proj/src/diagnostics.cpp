#include "catmap/diagnostics.hpp"

#include <cmath>
#include <numbers>

namespace catmap {

namespace {

// (A^T)^s m mod 2N, iterated with reduced arithmetic (exact: W_N has
// exact period 2N in the wave numbers)
class ModeOrbit {
  public:
    ModeOrbit(const CatMap& A, FourierMode m, int N)
        : A_(A), twoN_(2ll * N) {
        v1_ = norm(m.m1);
        v2_ = norm(m.m2);
    }

    FourierMode current() const { return {v1_, v2_}; }

    void step() {
        const std::int64_t n1 = norm(A_.a * v1_ + A_.c * v2_);
        const std::int64_t n2 = norm(A_.b * v1_ + A_.d * v2_);
        v1_ = n1;
        v2_ = n2;
    }

  private:
    std::int64_t norm(std::int64_t x) const {
        std::int64_t r = x % twoN_;
        return r < 0 ? r + twoN_ : r;
    }
    CatMap A_;
    std::int64_t twoN_;
    std::int64_t v1_, v2_;
};

}  // namespace

Complex matrix_element(const QuantumState& u, FourierMode m) {
    const int N = static_cast<int>(u.size());
    const QuantumState w = Translation(N, m).apply(u);
    return u.dot(w);  // sum conj(u_i) w_i = <W u, u>
}

EquidistReport equidist_report(const QuantumState& u, const ProjectorSpec& spec, int mode_cutoff) {
    EquidistReport rep;
    rep.N = static_cast<int>(u.size());
    rep.t = spec.t;
    rep.modes.push_back({{0, 0}, matrix_element(u, {0, 0}), 1.0});
    for (std::int64_t m1 = -mode_cutoff; m1 <= mode_cutoff; ++m1)
        for (std::int64_t m2 = -mode_cutoff; m2 <= mode_cutoff; ++m2) {
            if (m1 == 0 && m2 == 0) continue;
            const FourierMode m{m1, m2};
            const Complex val = matrix_element(u, m);
            const double bound =
                (1.0 + std::log1p(std::hypot(double(m1), double(m2)))) / double(spec.t);
            rep.modes.push_back({m, val, bound});
            rep.worst_deviation = std::max(rep.worst_deviation, std::abs(val));
        }
    return rep;
}

DiagonalSplit diagonal_split(const Propagator& P, const ProjectorSpec& spec, FourierMode m) {
    const int t = spec.t;
    const int N = P.N;
    const int j = spec.j;

    // forward[q] = M^q e_j, backward[q] = M^{-q} e_j, q = 0..t-1
    std::vector<QuantumState> fwd(static_cast<std::size_t>(t)), bwd(static_cast<std::size_t>(t));
    fwd[0] = QuantumState::Zero(N);
    fwd[0](j) = 1.0;
    bwd[0] = fwd[0];
    for (int q = 1; q < t; ++q) {
        fwd[static_cast<std::size_t>(q)] = P.mat * fwd[static_cast<std::size_t>(q - 1)];
        bwd[static_cast<std::size_t>(q)] = P.mat.adjoint() * bwd[static_cast<std::size_t>(q - 1)];
    }

    DiagonalSplit out;
    ModeOrbit orbit(P.map, m, N);
    const Complex wbar = std::conj(spec.omega);
    for (int s = 0; s < t; ++s) {
        const FourierMode mu = orbit.current();
        const Translation W(N, mu);
        const std::int64_t src = (std::int64_t(j) + mu.m2) % N;  // (W x)_j = phase(src) x_src
        const Complex ph = W.phase(src);
        if (src == j) {
            out.diag += ph;
            out.resonance_s.push_back(static_cast<unsigned>(s));
        }
        Complex wpow{1.0, 0.0};
        for (int q = 1; q < t; ++q) {
            wpow *= wbar;  // omega^{-q}
            // r - s = q
            if (int r = s + q; r < t)
                out.offdiag += wpow * ph * fwd[static_cast<std::size_t>(q)](src);
            // r - s = -q
            if (int r = s - q; r >= 0)
                out.offdiag += std::conj(wpow) * ph * bwd[static_cast<std::size_t>(q)](src);
        }
        orbit.step();
    }
    out.diag /= double(t) * double(t);
    out.offdiag /= double(t) * double(t);
    return out;
}

RateFit rate_fit(const std::vector<std::pair<double, double>>& pts, RateModel model) {
    if (pts.size() < 3) throw ConditionViolation(">= 3 points");
    for (const auto& [n, dev] : pts)
        if (dev < 10.0 * std::numeric_limits<double>::epsilon())
            throw DegenerateFit("deviation at roundoff level");

    // regress log(dev) = alpha - c * x, x = log N or log log N
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(pts.size());
    for (const auto& [N, dev] : pts) {
        const double x = model == RateModel::PowerLawN ? std::log(N) : std::log(std::log(N));
        const double y = std::log(dev);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double alpha = (sy - slope * sx) / n;
    double rss = 0;
    for (const auto& [N, dev] : pts) {
        const double x = model == RateModel::PowerLawN ? std::log(N) : std::log(std::log(N));
        const double r = std::log(dev) - (alpha + slope * x);
        rss += r * r;
    }
    return {-slope, std::sqrt(rss / n)};
}

double default_smoothing(int N) { return std::sqrt(double(N)) / 8.0; }

int default_mode_cutoff(int N, double smoothing) {
    return std::min(static_cast<int>(std::ceil(4.0 * smoothing)), N / 2);
}

WignerGrid smoothed_wigner(const QuantumState& u, int G, double smoothing, int cutoff) {
    const int N = static_cast<int>(u.size());
    if (cutoff > N / 2) throw ConditionViolation("cutoff <= N/2");
    if (G < 1) throw ConditionViolation("grid size >= 1");

    const int w = 2 * cutoff + 1;
    Eigen::MatrixXcd C(w, w);
    for (int i1 = 0; i1 < w; ++i1)
        for (int i2 = 0; i2 < w; ++i2) {
            const std::int64_t m1 = i1 - cutoff, m2 = i2 - cutoff;
            const double damp = std::exp(-(double(m1) * m1 + double(m2) * m2) /
                                         (2.0 * smoothing * smoothing));
            C(i1, i2) = damp * matrix_element(u, {m1, m2});
        }

    // grid = E C E^T with E(g, i) = exp(-2 pi i (i - cutoff) g / G)
    Eigen::MatrixXcd E(G, w);
    for (int g = 0; g < G; ++g)
        for (int i = 0; i < w; ++i)
            E(g, i) = std::polar(1.0, -2.0 * std::numbers::pi * double(i - cutoff) * g / double(G));
    const Eigen::MatrixXcd full = E * C * E.transpose();

    WignerGrid grid;
    grid.resolution = G;
    grid.smoothing = smoothing;
    grid.mode_cutoff = cutoff;
    grid.values = full.real();
    grid.imag_residual = full.imag().cwiseAbs().maxCoeff();
    grid.mean = grid.values.mean();
    return grid;
}

}  // namespace catmap
