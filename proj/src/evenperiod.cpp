#include "catmap/evenperiod.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace catmap {

namespace {

// a_k = (A^k)_{11} reduced mod n
std::int64_t ak_mod(const CatMap& A, int k, std::int64_t n) {
    Mat2 P = matrix_power(A, static_cast<unsigned>(k), Int(n));
    return P.a.convert_to<std::int64_t>();
}

void require_half_period_dim(const CatMap& A, int k, int N) {
    if (Int(N) != 2 * p_seq(A, static_cast<unsigned>(k)))
        throw ConditionViolation("N = 2 p_k");
}

QuantumState basis_vector(int N, int j) {
    QuantumState x = QuantumState::Zero(N);
    x(j) = 1.0;
    return x;
}

}  // namespace

HalfPeriodCheck half_period_check(const Propagator& P, int k, int j, double tol) {
    require_half_period_dim(P.map, k, P.N);
    QuantumState x = basis_vector(P.N, j);
    for (int s = 0; s < k; ++s) x = P.mat * x;

    const std::int64_t ak = ak_mod(P.map, k, P.N);
    const int l0 = static_cast<int>((ak * j) % P.N);
    const int l1 = static_cast<int>((l0 + P.N / 2) % P.N);

    HalfPeriodCheck out;
    out.indices = {l0, l1};
    out.moduli = {std::abs(x(l0)), std::abs(x(l1))};
    out.leakage = std::sqrt(std::max(
        0.0, x.squaredNorm() - std::norm(x(l0)) - std::norm(x(l1))));

    const double half = 1.0 / std::sqrt(2.0);
    if (out.leakage > tol || std::abs(out.moduli[0] - half) > tol ||
        std::abs(out.moduli[1] - half) > tol)
        throw StructureViolation("half-period column off its two-point support", out.leakage);
    return out;
}

QuarterTurnCheck quarter_turn_check(const Propagator& P, int k, const std::vector<int>& js,
                                    double tol) {
    require_half_period_dim(P.map, k, P.N);
    const auto qp = quantum_period(P.map, Int(P.N));
    if (qp.branch != Branch::Even4k)
        throw BranchMismatch("quantum period is 2k; the quarter-turn identity needs the 4k branch");

    QuarterTurnCheck out;
    for (int j : js) {
        QuantumState x = basis_vector(P.N, j);
        for (int s = 0; s < 2 * k; ++s) x = P.mat * x;
        const int l = (j + P.N / 2) % P.N;
        const double leak = std::sqrt(std::max(0.0, x.squaredNorm() - std::norm(x(l))));
        if (leak > tol || std::abs(std::abs(x(l)) - 1.0) > tol)
            throw StructureViolation("quarter-period column is not a single coordinate", leak);
        out.js.push_back(j);
        out.phases.push_back(x(l));
    }
    return out;
}

std::vector<int> default_j_range(const CatMap& A, int k, int N) {
    std::vector<int> js;
    if (N <= 2000) {
        js.resize(static_cast<std::size_t>(N));
        for (int j = 0; j < N; ++j) js[static_cast<std::size_t>(j)] = j;
        return js;
    }
    const std::int64_t p = N / 2;
    const std::int64_t ak = ak_mod(A, k, p);
    std::set<int> set;
    for (std::int64_t j = 0; j < N; ++j)
        if ((ak * j - j) % p == 0) set.insert(static_cast<int>(j));
    for (int i = 0; i < 64; ++i) set.insert(static_cast<int>((std::int64_t(i) * N) / 64));
    js.assign(set.begin(), set.end());
    return js;
}

EvenCaseReport vanishing_scan(const Propagator& P, int k, const std::vector<int>& j_range,
                              const std::vector<int>& sigmas) {
    using boost::multiprecision::gcd;
    require_half_period_dim(P.map, k, P.N);
    const auto qp = quantum_period(P.map, Int(P.N));
    if (qp.branch != Branch::Even4k)
        throw BranchMismatch("vanishing requires the 4k branch");

    const int N = P.N;
    const int t = static_cast<int>(qp.n);  // 4k
    const std::int64_t p = N / 2;
    const double phi = scalar_phase(P, t);
    const double vanish_tol = default_vanish_tol(N);

    EvenCaseReport rep;
    rep.k = k;
    rep.N = N;
    rep.branch = qp.branch;
    rep.t = t;
    Mat2 Ak = matrix_power(P.map, static_cast<unsigned>(k));
    rep.a_k = Ak.a;
    rep.gcd_ak_pk = gcd(Int(Ak.a - 1), p_seq(P.map, static_cast<unsigned>(k)));
    rep.n_prime_k = n_prime(P.map, static_cast<unsigned>(k));
    rep.gcd_identity = rep.gcd_ak_pk == rep.n_prime_k;

    // sigma outcomes at j = 0 from direct projector builds
    for (int sigma : {0, 1, 2, 3}) {
        ProjectorSpec spec{k, ParityClass::Even, 0, sigma, t, phi,
                           std::polar(1.0, (phi + 2.0 * std::numbers::pi * sigma) / t)};
        auto st = projector_state(P, spec);
        rep.sigma_outcomes.push_back({sigma, st.norm, st.norm <= vanish_tol});
    }
    int zero_vanish_02 = 0;
    for (const auto& oc : rep.sigma_outcomes)
        if ((oc.sigma == 0 || oc.sigma == 2) && oc.vanishes) ++zero_vanish_02;
    rep.dichotomy_at_zero = zero_vanish_02 == 1;

    // scan: v = (1/4k) sum_{r<k} omega^{-r} M^r h,
    // h = (I + omega^{-k} M^k)(I + omega^{-2k} M^{2k}) e_j.
    // Store M^0..M^{k-1} combined per sigma, plus M^k and M^{2k}.
    std::vector<Eigen::MatrixXcd> V(sigmas.size());
    Eigen::MatrixXcd cur = Eigen::MatrixXcd::Identity(N, N);
    std::vector<Complex> omegas(sigmas.size());
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        omegas[i] = std::polar(1.0, (phi + 2.0 * std::numbers::pi * sigmas[i]) / t);
        V[i] = Eigen::MatrixXcd::Zero(N, N);
    }
    std::vector<Complex> wpow(sigmas.size(), Complex{1.0, 0.0});
    for (int r = 0; r < k; ++r) {
        for (std::size_t i = 0; i < sigmas.size(); ++i) {
            V[i] += wpow[i] * cur;
            wpow[i] *= std::conj(omegas[i]);
        }
        cur = P.mat * cur;  // cur = M^{r+1}
    }
    const Eigen::MatrixXcd Mk = cur;  // M^k
    const Eigen::MatrixXcd M2k = Mk * Mk;

    // significant-entry truncation keeps h sparse; the discarded mass is
    // below 1e-12 per entry, so the induced error in v is under
    // k * sqrt(N) * 1e-12 / (4k), far inside vanish_tol.
    const double entry_tol = 1e-12;
    auto significant = [&](const QuantumState& x) {
        std::vector<std::pair<int, Complex>> s;
        for (int i = 0; i < N; ++i)
            if (std::abs(x(i)) > entry_tol) s.emplace_back(i, x(i));
        return s;
    };

    std::set<std::int64_t> vanishing_classes;
    const std::int64_t ak_p = ak_mod(P.map, k, p);
    bool all_candidates = true;
    std::size_t candidates = 0;
    for (int j : j_range)
        if ((ak_p * j - j) % p == 0) ++candidates;
    rep.candidate_count = candidates;

    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        const Complex om = omegas[i];
        const Complex om_k = std::pow(std::conj(om), k);
        const Complex om_2k = om_k * om_k;
        for (int j : j_range) {
            QuantumState g = om_2k * M2k.col(j);
            g(j) += 1.0;
            QuantumState h = g;
            for (const auto& [idx, coef] : significant(g)) h += om_k * coef * Mk.col(idx);
            QuantumState v = QuantumState::Zero(N);
            for (const auto& [idx, coef] : significant(h)) v += coef * V[i].col(idx);
            v /= double(t);
            if (v.norm() <= vanish_tol) {
                rep.vanishing.emplace_back(j, sigmas[i]);
                vanishing_classes.insert(j % p);
                if ((ak_p * j - j) % p != 0) all_candidates = false;
            }
        }
    }
    rep.vanishing_in_candidates = all_candidates;
    rep.vanishing_classes = vanishing_classes.size();
    rep.classes_divide_gcd =
        vanishing_classes.empty() ||
        rep.gcd_ak_pk % Int(static_cast<std::int64_t>(rep.vanishing_classes)) == 0;
    return rep;
}

SupportReport support_report(const QuantumState& u, const ProjectorSpec& spec, int k,
                             double threshold) {
    SupportReport rep;
    rep.threshold = threshold > 0 ? threshold : 0.5 / std::sqrt(double(std::max(1, k)));
    for (int i = 0; i < u.size(); ++i) {
        const double a = std::abs(u(i));
        if (a > rep.threshold)
            rep.support.push_back(i);
        else
            rep.off_support_max = std::max(rep.off_support_max, a);
    }
    const std::size_t n = rep.support.size();
    if (spec.t == 1)
        rep.size_ok = n == 1 && rep.support[0] == spec.j;
    else if (spec.t == 4 * k)
        rep.size_ok = n == 2 || n == 4;
    else
        rep.size_ok = n >= 1 && n <= 3;
    return rep;
}

}  // namespace catmap
