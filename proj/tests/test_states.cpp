#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "catmap/states.hpp"

using namespace catmap;

namespace {
const CatMap A = CatMap::checked(2, 3, 1, 2);

ProjectorSpec spec_at(const Propagator& P, int k, ParityClass parity, int j, int sigma) {
    return make_spec(P, k, parity, j, sigma);
}
}  // namespace

TEST_CASE("phase sample covers small dimensions completely") {
    CHECK(phase_sample_indices(7, 32) == std::vector<int>{0, 1, 2, 3, 4, 5, 6});
    auto s = phase_sample_indices(989, 32);
    CHECK(s.size() == 32);
    CHECK(s.front() == 0);
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] > s[i - 1]);
}

TEST_CASE("scalar phase at the degenerate dimension") {
    auto P = build_propagator(A, 1);
    const double phi = scalar_phase(P, 1);
    CHECK(phi >= 0.0);
    CHECK(phi < 2.0 * std::numbers::pi);
    CHECK(std::abs(P.mat(0, 0) - std::polar(1.0, phi)) <= 1e-12);
}

TEST_CASE("scalar phase detects the true period and rejects smaller powers") {
    auto P5 = build_propagator(A, 5);
    CHECK_NOTHROW(scalar_phase(P5, 3));
    CHECK_THROWS_AS(scalar_phase(P5, 2), NotScalar);

    auto [t, phi] = minimal_scalar_period(P5, 10);
    CHECK(t == 3);

    auto P71 = build_propagator(A, 71);
    CHECK(minimal_scalar_period(P71, 20).first == 7);
    CHECK_THROWS_AS(minimal_scalar_period(P71, 6), NoOrderFound);

    auto P989 = build_propagator(A, 989);
    CHECK_NOTHROW(scalar_phase(P989, 11));
    CHECK_THROWS_AS(scalar_phase(P989, 10), NotScalar);
}

TEST_CASE("single-term average returns the basis vector itself") {
    auto P = build_propagator(A, 1);
    auto spec = spec_at(P, 0, ParityClass::Odd, 0, 0);
    CHECK(spec.t == 1);
    auto st = projector_state(P, spec);
    CHECK(st.norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(st.v(0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eigen_residual(P, st.v, spec.omega) <= 1e-12);
}

TEST_CASE("projector states are eigenvectors") {
    for (int k : {2, 3}) {
        const int N = n_prime(A, 2 * k + 1).convert_to<int>();
        auto P = build_propagator(A, N);
        for (int sigma : {0, 1})
            for (int j : {0, 5}) {
                auto spec = spec_at(P, k, ParityClass::Odd, j, sigma);
                auto st = projector_state(P, spec);
                auto u = normalize(st.v, default_vanish_tol(N));
                CHECK(eigen_residual(P, u, spec.omega) <= 1e-7);
            }
    }
}

TEST_CASE("sigma branches: periodic in t, orthogonal otherwise, complete") {
    const int N = 71, k = 3;
    auto P = build_propagator(A, N);
    auto spec0 = spec_at(P, k, ParityClass::Odd, 4, 0);
    const int t = spec0.t;

    auto v0 = projector_state(P, spec0).v;
    auto vt = projector_state(P, spec_at(P, k, ParityClass::Odd, 4, t)).v;
    CHECK((v0 - vt).norm() <= 1e-12);

    double total = 0.0;
    for (int sigma = 0; sigma < t; ++sigma) {
        auto vs = projector_state(P, spec_at(P, k, ParityClass::Odd, 4, sigma)).v;
        total += vs.squaredNorm();
        if (sigma > 0) CHECK(std::abs(v0.dot(vs)) <= 1e-8);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));  // branches resolve e_j
}

TEST_CASE("normalization and the vanishing tolerance") {
    QuantumState e = QuantumState::Zero(8);
    e(3) = 1.0;
    CHECK((normalize(e, default_vanish_tol(8)) - e).norm() == doctest::Approx(0.0));

    QuantumState tiny = QuantumState::Constant(8, Complex{1e-14, 0.0});
    CHECK_THROWS_AS(normalize(tiny, default_vanish_tol(8)), VanishingState);
}

TEST_CASE("basis vectors are generically not eigenvectors") {
    auto P = build_propagator(A, 19);
    QuantumState e0 = QuantumState::Zero(19);
    e0(0) = 1.0;
    CHECK(eigen_residual(P, e0, {1.0, 0.0}) > 0.1);
}

TEST_CASE("coordinate profiles") {
    // degenerate: exact delta
    auto P1 = build_propagator(A, 1);
    auto spec1 = spec_at(P1, 0, ParityClass::Odd, 0, 0);
    auto rep1 = coordinate_profile(normalize(projector_state(P1, spec1).v, 1e-12), spec1);
    CHECK(rep1.peak_at_j);
    CHECK(rep1.linf == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep1.predicted_peak == doctest::Approx(1.0));

    // the peak sits at j at moderate dimension
    auto P71 = build_propagator(A, 71);
    for (int j : {0, 5}) {
        auto spec = spec_at(P71, 3, ParityClass::Odd, j, 0);
        auto u = normalize(projector_state(P71, spec).v, default_vanish_tol(71));
        auto rep = coordinate_profile(u, spec);
        CHECK(rep.peak_at_j);
        CHECK(rep.l2 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rep.off_peak_max < rep.linf);
        CHECK(rep.linf <= 1.0);
        MESSAGE("N=71 j=", j, ": |u(j)| = ", rep.linf, ", off-peak ", rep.off_peak_max);
    }
}

TEST_CASE("norm law: t ||v||^2 approaches 1 along the odd family") {
    // sampled-max deviation of t||v||^2 from 1 is non-increasing in k
    // within a factor-2 slack
    double prev = -1.0;
    for (int k : {2, 3, 4, 5}) {
        const int N = n_prime(A, 2 * k + 1).convert_to<int>();
        auto P = build_propagator(A, N);
        auto spec = spec_at(P, k, ParityClass::Odd, 0, 0);
        double worst = 0.0;
        for (int j : phase_sample_indices(N, 16)) {
            spec.j = j;
            auto st = projector_state(P, spec);
            worst = std::max(worst, std::abs(spec.t * st.norm * st.norm - 1.0));
        }
        MESSAGE("k=", k, " N=", N, ": max |t||v||^2 - 1| = ", worst);
        if (prev >= 0.0) CHECK(worst <= 2.0 * prev);
        prev = worst;
    }
}
