#include "catmap/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace catmap {

namespace {

double arg_in_2pi(Complex z) {
    double a = std::arg(z);
    if (a < 0) a += 2.0 * std::numbers::pi;
    return a;
}

// leakage of x off coordinate j plus the phase there
struct ScalarProbe {
    double leak;
    Complex coeff;
};

ScalarProbe probe(const QuantumState& x, int j) {
    const Complex c = x(j);
    const double rest2 = std::max(0.0, x.squaredNorm() - std::norm(c));
    return {std::sqrt(rest2), c};
}

}  // namespace

std::vector<int> phase_sample_indices(int N, int sample_size) {
    std::vector<int> idx;
    if (N <= sample_size) {
        idx.resize(static_cast<std::size_t>(N));
        for (int i = 0; i < N; ++i) idx[static_cast<std::size_t>(i)] = i;
        return idx;
    }
    for (int i = 0; i < sample_size; ++i) {
        int j = static_cast<int>((std::int64_t(i) * N) / sample_size);
        if (idx.empty() || idx.back() != j) idx.push_back(j);
    }
    return idx;
}

double scalar_phase(const Propagator& P, int t, const ScalarPhaseOptions& opts) {
    if (t < 1) throw ConditionViolation("t >= 1");
    const auto sample = phase_sample_indices(P.N, opts.sample_size);

    Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(P.N, static_cast<Eigen::Index>(sample.size()));
    for (std::size_t i = 0; i < sample.size(); ++i) X(sample[i], static_cast<Eigen::Index>(i)) = 1.0;
    for (int s = 0; s < t; ++s) X = P.mat * X;

    double max_leak = 0.0, max_spread = 0.0;
    Complex first{};
    for (std::size_t i = 0; i < sample.size(); ++i) {
        auto pr = probe(X.col(static_cast<Eigen::Index>(i)), sample[i]);
        max_leak = std::max(max_leak, pr.leak);
        const Complex unit = pr.coeff / std::abs(pr.coeff);
        if (i == 0)
            first = unit;
        else
            max_spread = std::max(max_spread, std::abs(unit - first));
    }
    if (max_leak > opts.leak_tol || max_spread > opts.spread_tol)
        throw NotScalar(max_leak, max_spread);
    return arg_in_2pi(first);
}

std::pair<int, double> minimal_scalar_period(const Propagator& P, int t_max,
                                             const ScalarPhaseOptions& opts) {
    const auto sample = phase_sample_indices(P.N, opts.sample_size);
    Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(P.N, static_cast<Eigen::Index>(sample.size()));
    for (std::size_t i = 0; i < sample.size(); ++i) X(sample[i], static_cast<Eigen::Index>(i)) = 1.0;

    for (int t = 1; t <= t_max; ++t) {
        X = P.mat * X;
        double max_leak = 0.0, max_spread = 0.0;
        Complex first{};
        bool scalar = true;
        for (std::size_t i = 0; i < sample.size() && scalar; ++i) {
            auto pr = probe(X.col(static_cast<Eigen::Index>(i)), sample[i]);
            max_leak = std::max(max_leak, pr.leak);
            if (max_leak > opts.leak_tol) {
                scalar = false;
                break;
            }
            const Complex unit = pr.coeff / std::abs(pr.coeff);
            if (i == 0)
                first = unit;
            else
                max_spread = std::max(max_spread, std::abs(unit - first));
        }
        if (scalar && max_leak <= opts.leak_tol && max_spread <= opts.spread_tol)
            return {t, arg_in_2pi(first)};
    }
    throw NoOrderFound("no scalar power of M below t_max", static_cast<unsigned long long>(t_max));
}

ProjectorSpec make_spec(const Propagator& P, int k, ParityClass parity, int j, int sigma) {
    const unsigned q = parity == ParityClass::Odd ? 2u * k + 1u : 2u * k;
    const Int N_expected = n_prime(P.map, q);
    if (N_expected != P.N)
        throw ConditionViolation("propagator dimension matches N'_q for (k, parity)");
    const auto qp = quantum_period(P.map, Int(P.N));
    ProjectorSpec spec;
    spec.k = k;
    spec.parity = parity;
    spec.j = j;
    spec.sigma = sigma;
    spec.t = static_cast<int>(qp.n);
    spec.phi = scalar_phase(P, spec.t);
    spec.omega = std::polar(1.0, (spec.phi + 2.0 * std::numbers::pi * sigma) / spec.t);
    return spec;
}

ProjectorState projector_state(const Propagator& P, const ProjectorSpec& spec) {
    if (spec.j < 0 || spec.j >= P.N) throw ConditionViolation("j in [0,N)");
    QuantumState v = QuantumState::Zero(P.N);
    QuantumState x = QuantumState::Zero(P.N);
    x(spec.j) = 1.0;
    Complex w{1.0, 0.0};
    const Complex wbar = std::conj(spec.omega);
    for (int s = 0; s < spec.t; ++s) {
        v += w * x;
        if (s + 1 < spec.t) {
            x = P.mat * x;
            w *= wbar;
        }
    }
    v /= double(spec.t);
    const double n = v.norm();
    return {std::move(v), n};
}

double default_vanish_tol(int N) { return 1e-10 * std::sqrt(double(N)); }

QuantumState normalize(const QuantumState& v, double vanish_tol) {
    const double n = v.norm();
    if (n <= vanish_tol) throw VanishingState(n);
    return v / n;
}

double eigen_residual(const Propagator& P, const QuantumState& u, Complex omega) {
    return (P.mat * u - omega * u).norm();
}

ProfileReport coordinate_profile(const QuantumState& u, const ProjectorSpec& spec) {
    ProfileReport rep;
    rep.l2 = u.norm();
    rep.predicted_peak = 1.0 / std::sqrt(double(spec.t));
    Eigen::Index peak = 0;
    u.cwiseAbs().maxCoeff(&peak);
    rep.peak_index = static_cast<int>(peak);
    rep.peak_value = u(peak);
    rep.linf = std::abs(u(peak));
    double off = 0.0;
    for (Eigen::Index i = 0; i < u.size(); ++i)
        if (i != peak) off = std::max(off, std::abs(u(i)));
    rep.off_peak_max = off;
    rep.peak_at_j = rep.peak_index == spec.j;
    rep.peak_deviation = std::abs(rep.linf - rep.predicted_peak);
    rep.off_peak_below_half = off <= rep.linf / 2.0;
    return rep;
}

}  // namespace catmap
