#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "catmap/evenperiod.hpp"

using namespace catmap;

namespace {
const CatMap A = CatMap::checked(2, 3, 1, 2);

std::vector<int> all_j(int N) {
    std::vector<int> js(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) js[static_cast<std::size_t>(j)] = j;
    return js;
}
}  // namespace

TEST_CASE("half-period columns have two-point support with equal moduli") {
    // N = 2 p_4 = 112 and N = 2 p_5 = 418
    for (int k : {4, 5}) {
        const int N = (2 * p_seq(A, static_cast<unsigned>(k))).convert_to<int>();
        auto P = build_propagator(A, N);
        const std::int64_t ak =
            matrix_power(A, static_cast<unsigned>(k), Int(N)).a.convert_to<std::int64_t>();
        for (int j : phase_sample_indices(N, 64)) {
            auto hp = half_period_check(P, k, j);
            CHECK(hp.indices[0] == static_cast<int>((ak * j) % N));
            CHECK(hp.indices[1] == static_cast<int>((ak * j + N / 2) % N));
            CHECK(hp.moduli[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
            CHECK(hp.moduli[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
            CHECK(hp.leakage <= 1e-6);
        }
    }
    // tiny case N = 2 p_1 = 2: exhaustive
    auto P2 = build_propagator(A, 2);
    for (int j : {0, 1}) CHECK_NOTHROW(half_period_check(P2, 1, j));
}

TEST_CASE("half-period check rejects the wrong dimension") {
    auto P = build_propagator(A, 112);
    CHECK_THROWS_AS(half_period_check(P, 5, 0), ConditionViolation);  // 112 != 2 p_5
}

TEST_CASE("quarter-period columns are single coordinates in the 4k branch") {
    // N = 112 = 2 p_4 has period 16 = 4k
    const int N = 112, k = 4;
    auto P = build_propagator(A, N);
    REQUIRE(quantum_period(A, Int(N)).branch == Branch::Even4k);
    auto qt = quarter_turn_check(P, k, {0, 1, N / 2, 17});
    CHECK(qt.js.size() == 4);
    for (const auto& eta : qt.phases) CHECK(std::abs(std::abs(eta) - 1.0) <= 1e-6);
}

TEST_CASE("the 2k branch is rejected by the quarter-turn identity") {
    // N = 2 p_3 = 30 has period 6 = 2k
    const int N = 30, k = 3;
    REQUIRE(quantum_period(A, Int(N)).branch == Branch::Even2k);
    auto P = build_propagator(A, N);
    CHECK_THROWS_AS(quarter_turn_check(P, k, {0}), BranchMismatch);
    CHECK_THROWS_AS(vanishing_scan(P, k, all_j(N), {0, 1, 2, 3}), BranchMismatch);
}

TEST_CASE("2k branch: the half-period combination stays away from zero") {
    // ||g||^2 = 2 + 2 Re(omega^{-k} <M^k e_j, e_j>) >= 2 - sqrt(2);
    // the bound is attained, so allow roundoff below it
    const int N = 418, k = 5, t = 10;
    auto P = build_propagator(A, N);
    const double phi = scalar_phase(P, t);
    double gmin = 10.0;
    for (int sigma : {0, 1}) {
        const Complex omega = std::polar(1.0, (phi + 2.0 * std::numbers::pi * sigma) / t);
        const Complex wk = std::pow(std::conj(omega), k);
        for (int j : phase_sample_indices(N, 64)) {
            QuantumState x = QuantumState::Zero(N);
            x(j) = 1.0;
            for (int s = 0; s < k; ++s) x = P.mat * x;
            const double g2 = 2.0 + 2.0 * (wk * x(j)).real();
            CHECK(g2 >= 2.0 - std::sqrt(2.0) - 1e-9);
            gmin = std::min(gmin, g2);
        }
    }
    MESSAGE("min ||g||^2 = ", gmin, " (bound ", 2.0 - std::sqrt(2.0), ")");
}

TEST_CASE("vanishing scan at k = 4: dichotomy, candidates, gcd identity") {
    const int N = 112, k = 4;
    auto P = build_propagator(A, N);
    auto rep = vanishing_scan(P, k, all_j(N), {0, 1, 2, 3});

    CHECK(rep.branch == Branch::Even4k);
    CHECK(rep.t == 16);
    CHECK(rep.gcd_ak_pk == 8);  // gcd(a_4 - 1, p_4) = gcd(96, 56)
    CHECK(rep.n_prime_k == 8);
    CHECK(rep.gcd_identity);
    CHECK(rep.dichotomy_at_zero);
    CHECK(rep.vanishing_in_candidates);
    CHECK(rep.candidate_count == 16);  // two representatives per class, 8 classes

    // per-branch counts as a multiset: the sigma labels may shift by a
    // global offset when phi sits at a branch point of [0, 2 pi)
    std::array<std::size_t, 4> counts{};
    for (const auto& [j, sigma] : rep.vanishing) ++counts[static_cast<std::size_t>(sigma)];
    std::sort(counts.begin(), counts.end());
    CHECK(counts == std::array<std::size_t, 4>{0, 8, 8, 16});

    CHECK(rep.vanishing_classes == 8);
    CHECK(rep.classes_divide_gcd);
}

TEST_CASE("vanishing scan at k = 2: small-dimension anomalies are visible") {
    // at N = 8 one eigenvalue branch is empty, so every j vanishes there,
    // including non-candidates; the j = 0 dichotomy still holds
    const int N = 8, k = 2;
    auto P = build_propagator(A, N);
    auto rep = vanishing_scan(P, k, all_j(N), {0, 1, 2, 3});
    CHECK(rep.t == 8);
    CHECK(rep.gcd_ak_pk == 2);
    CHECK(rep.gcd_identity);
    CHECK(rep.dichotomy_at_zero);
    CHECK_FALSE(rep.vanishing_in_candidates);

    std::array<std::size_t, 4> counts{};
    for (const auto& [j, sigma] : rep.vanishing) ++counts[static_cast<std::size_t>(sigma)];
    std::sort(counts.begin(), counts.end());
    CHECK(counts == std::array<std::size_t, 4>{0, 2, 2, 8});
}

TEST_CASE("4k branch: surviving half-period combinations have norm^2 4 or 8") {
    const int N = 112, k = 4, t = 16;
    auto P = build_propagator(A, N);
    const double phi = scalar_phase(P, t);
    Eigen::MatrixXcd Mk = Eigen::MatrixXcd::Identity(N, N);
    for (int s = 0; s < k; ++s) Mk = P.mat * Mk;
    const Eigen::MatrixXcd M2k = Mk * Mk;
    for (int sigma : {0, 1, 2, 3}) {
        const Complex omega = std::polar(1.0, (phi + 2.0 * std::numbers::pi * sigma) / t);
        const Complex wk = std::pow(std::conj(omega), k);
        for (int j = 0; j < N; ++j) {
            QuantumState g = wk * wk * M2k.col(j);
            g(j) += 1.0;
            const QuantumState h = g + wk * (Mk * g);
            const double h2 = h.squaredNorm();
            const bool ok = h2 <= 1e-6 || std::abs(h2 - 4.0) <= 1e-6 || std::abs(h2 - 8.0) <= 1e-6;
            CHECK(ok);
        }
    }
}

TEST_CASE("support reports") {
    // degenerate t = 1
    auto P1 = build_propagator(A, 1);
    auto spec1 = make_spec(P1, 0, ParityClass::Odd, 0, 0);
    auto u1 = normalize(projector_state(P1, spec1).v, 1e-12);
    auto rep1 = support_report(u1, spec1, 1);
    CHECK(rep1.size_ok);
    CHECK(rep1.support == std::vector<int>{0});

    // 4k branch survivor at j = 0: pick the surviving even-parity branch
    const int N = 1560, k = 6;
    auto P = build_propagator(A, N);
    ProjectorSpec spec = make_spec(P, k, ParityClass::Even, 0, 0);
    auto st = projector_state(P, spec);
    if (st.norm <= default_vanish_tol(N)) {
        spec = make_spec(P, k, ParityClass::Even, 0, 2);
        st = projector_state(P, spec);
    }
    REQUIRE(st.norm > default_vanish_tol(N));
    auto u = normalize(st.v, default_vanish_tol(N));
    auto rep = support_report(u, spec, k);
    CHECK(rep.size_ok);
    CHECK(rep.support == std::vector<int>{0, 780});
    CHECK(rep.off_support_max <= rep.threshold);
    MESSAGE("4k survivor: off-support max ", rep.off_support_max, " vs threshold ", rep.threshold);

    // 2k branch: at most three coordinates
    const int N5 = 418, k5 = 5;
    auto P5 = build_propagator(A, N5);
    auto spec5 = make_spec(P5, k5, ParityClass::Even, 1, 0);
    auto u5 = normalize(projector_state(P5, spec5).v, default_vanish_tol(N5));
    auto rep5 = support_report(u5, spec5, k5);
    CHECK(rep5.size_ok);
    CHECK(rep5.support.size() <= 3);
}
