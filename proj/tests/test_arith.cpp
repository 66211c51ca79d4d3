#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "catmap/arith.hpp"

using namespace catmap;

namespace {

const CatMap A = CatMap::checked(2, 3, 1, 2);

// Oracle: plain repeated multiplication, independent of both the binary
// exponentiation in matrix_power and the Lucas recurrence.
Mat2 slow_power(const CatMap& m, unsigned r) {
    Mat2 acc = Mat2::identity();
    const Mat2 base{m.a, m.b, m.c, m.d};
    for (unsigned i = 0; i < r; ++i) acc = acc * base;
    return acc;
}

Int entry_gcd_oracle(const CatMap& m, unsigned q) {
    using boost::multiprecision::gcd;
    Mat2 P = slow_power(m, q);
    return gcd(gcd(Int(P.a - 1), Int(P.b)), gcd(Int(P.c), Int(P.d - 1)));
}

}  // namespace

TEST_CASE("validation accepts the running example and rejects bad matrices") {
    CHECK(A.trace == 4);
    CHECK(A.lambda == doctest::Approx(2.0 + std::sqrt(3.0)).epsilon(1e-12));

    CHECK_THROWS_WITH_AS(CatMap::checked(1, 0, 0, 1), "condition violated: trace > 2",
                         ConditionViolation);
    CHECK_THROWS_WITH_AS(CatMap::checked(3, 2, 4, 3), "condition violated: gcd(b,c) = 1",
                         ConditionViolation);
    CHECK_THROWS_AS(CatMap::checked(2, 1, 1, 1), ConditionViolation);  // det = 1 fails
    // another admissible map
    CHECK_NOTHROW(CatMap::checked(4, 9, 7, 16));
}

TEST_CASE("Lucas values match the matrix-power oracle") {
    CHECK(p_seq(A, 0) == 0);
    CHECK(p_seq(A, 1) == 1);
    // A^5 = 209 A - 56 I and A^12 = 2107560 A - 564719 I
    CHECK(p_seq(A, 5) == 209);
    CHECK(p_seq(A, 12) == 2107560);
    Mat2 A5 = slow_power(A, 5);
    CHECK(A5.a == 209 * 2 - 56);
    CHECK(A5.b == 209 * 3);

    for (unsigned r = 0; r <= 60; ++r) {
        Mat2 P = matrix_power(A, r);
        CHECK(P == slow_power(A, r));
        // A^r = p_r A - p_{r-1} I entrywise
        const Int pr = p_seq(A, r);
        const Int prm1 = r == 0 ? Int(A.trace) * 0 - 1 : p_seq(A, r - 1);  // p_{-1} = -1
        CHECK(P.a == pr * A.a - prm1);
        CHECK(P.b == pr * A.b);
        CHECK(P.c == pr * A.c);
        CHECK(P.d == pr * A.d - prm1);
    }
}

TEST_CASE("Lucas values exceed 64 bits well before r = 60") {
    CHECK(p_seq(A, 35) > Int(std::numeric_limits<std::int64_t>::max()));
}

TEST_CASE("matrix powers reduce correctly mod N") {
    CHECK(matrix_power(A, 0) == Mat2::identity());
    Mat2 A3 = matrix_power(A, 3);
    CHECK(A3 == Mat2{26, 45, 15, 26});
    CHECK(matrix_power(A, 3, Int(5)) == Mat2{1, 0, 0, 1});
}

TEST_CASE("closed-form moduli match the entry-gcd oracle up to q = 60") {
    CHECK(n_prime(A, 11) == 989);
    CHECK(n_prime(A, 12) == 1560);
    CHECK(n_prime(A, 3) == 5);
    CHECK(entry_gcd_oracle(A, 3) == 5);
    for (unsigned q = 1; q <= 60; ++q) {
        CHECK(n_prime(A, q) == n_prime_oracle(A, q));
        CHECK(n_prime(A, q) == entry_gcd_oracle(A, q));
    }
    const CatMap B = CatMap::checked(4, 9, 7, 16);
    for (unsigned q = 1; q <= 40; ++q) CHECK(n_prime(B, q) == entry_gcd_oracle(B, q));
}

TEST_CASE("order of A mod N'_q recovers q") {
    CHECK(order_mod(A, Int(1)) == 1);
    CHECK(order_mod(A, Int(989)) == 11);
    CHECK(order_mod(A, Int(1560)) == 12);
    for (unsigned q = 1; q <= 60; ++q) CHECK(order_mod(A, n_prime(A, q)) == q);
}

TEST_CASE("order ceiling reports failure instead of spinning") {
    CHECK_THROWS_AS(order_mod(A, Int(989), 5), NoOrderFound);
}

TEST_CASE("quantum periods and parity branches") {
    auto qp1 = quantum_period(A, Int(1));
    CHECK(qp1.n == 1);

    auto qp989 = quantum_period(A, Int(989));
    CHECK(qp989.n == 11);
    CHECK(qp989.branch == Branch::Odd);

    // (A^12 - I)/1560 = 1351 A - 362 I has odd off-diagonals 4053 and 1351
    Mat2 A12 = matrix_power(A, 12);
    CHECK((A12.b - 0) / 1560 == 4053);
    CHECK((A12.c - 0) / 1560 == 1351);
    auto qp1560 = quantum_period(A, Int(1560));
    CHECK(qp1560.n == 24);
    CHECK(qp1560.branch == Branch::Even4k);

    for (unsigned k = 0; k <= 15; ++k) {
        auto qp = quantum_period(A, n_prime(A, 2 * k + 1));
        CHECK(qp.n == 2 * k + 1);
        CHECK(qp.branch == Branch::Odd);
    }
    for (unsigned k = 1; k <= 15; ++k) {
        auto qp = quantum_period(A, n_prime(A, 2 * k));
        CHECK((qp.n == 2 * k || qp.n == 4 * k));
        CHECK(qp.branch != Branch::Odd);
    }
}

TEST_CASE("period records assemble the family data") {
    auto rec = period_record(A, 11);
    CHECK(rec.p_values.size() == 12);
    CHECK(rec.p_values[5] == 209);
    CHECK(rec.n_prime == 989);
    CHECK(rec.T == 11);
    CHECK(rec.n == 11);
    CHECK(rec.branch == Branch::Odd);
    // N'_{2k+1} = p_k + p_{k+1} and N'_{2k} = 2 p_k
    CHECK(rec.n_prime == rec.p_values[5] + rec.p_values[6]);
    auto rec12 = period_record(A, 12);
    CHECK(rec12.n_prime == 2 * rec12.p_values[6]);
    CHECK(rec12.n == 24);
}

TEST_CASE("divisibility bound holds exactly for all 1 <= r < T <= 60") {
    auto g1 = gcd_bound_check(A, 11, 1);
    CHECK(g1.lhs == 1);  // gcd(989, 3)
    CHECK(g1.rhs == 3);  // |b| * N'_1
    CHECK(g1.holds);

    auto g2 = gcd_bound_check(A, 2, 1);
    CHECK(g2.rhs == 3 * n_prime(A, 2));
    CHECK(g2.holds);
    CHECK(g2.divisibility);

    for (unsigned T = 2; T <= 60; ++T)
        for (unsigned r = 1; r < T; ++r) {
            auto g = gcd_bound_check(A, T, r);
            CHECK(g.holds);
            CHECK(g.divisibility);
        }
}

TEST_CASE("resonance sets along the transpose orbit") {
    // s = 0 solves trivially when the second component already matches
    auto s1 = resonance_set(A, 0, 1, Int(1), 11);
    CHECK(std::find(s1.begin(), s1.end(), 0u) != s1.end());
    CHECK(s1 == std::vector<unsigned>{0});

    auto s2 = resonance_set(A, 1, 0, Int(0), 11);
    CHECK(s2 == std::vector<unsigned>{0});
    CHECK(resonance_count(A, 1, 0, Int(0), 11) == 1);

    // negative residues are normalized on entry
    CHECK(resonance_set(A, 0, 1, Int(1 - 989), 11) == s1);

    CHECK_THROWS_AS(resonance_set(A, 0, 0, Int(0), 7), ConditionViolation);
}

TEST_CASE("orbit second components satisfy the trace recurrence exactly") {
    // w_s = e_2 . (A^T)^s m obeys w_{s+2} = trace w_{s+1} - w_s
    for (auto [m1, m2] : {std::pair<std::int64_t, std::int64_t>{1, 0}, {0, 1}, {-3, 7}, {20, -20}}) {
        Int w_prev = m2;                    // s = 0
        Int w_cur = A.b * m1 + A.d * m2;    // s = 1
        for (unsigned s = 2; s <= 50; ++s) {
            Int w_next = A.trace * w_cur - w_prev;
            Mat2 P = matrix_power(A, s);    // (A^T)^s row 2 = (b_s, d_s)
            CHECK(w_next == P.b * m1 + P.d * m2);
            w_prev = w_cur;
            w_cur = w_next;
        }
    }
}

TEST_CASE("resonance counts stay bounded across T; fitted constant reported") {
    // exhaustive scan ||m||_inf <= 20, c = 0, T = 3..41
    unsigned maxcount = 0;
    double fitted = 0.0;
    for (unsigned T = 3; T <= 41; ++T) {
        for (std::int64_t m1 = -20; m1 <= 20; ++m1)
            for (std::int64_t m2 = -20; m2 <= 20; ++m2) {
                if (m1 == 0 && m2 == 0) continue;
                unsigned cnt = resonance_count(A, m1, m2, Int(0), T);
                maxcount = std::max(maxcount, cnt);
                const double norm = std::hypot(double(m1), double(m2));
                fitted = std::max(fitted, cnt / (1.0 + std::log1p(norm)));
            }
    }
    CHECK(maxcount == 6);  // attained at m = (-20,0), T = 6, where 30 | 60 p_s
    MESSAGE("resonance scan: max count ", maxcount, ", fitted C = ", fitted);

    // fixed small modes stay bounded uniformly in T
    for (unsigned T = 3; T <= 41; ++T) {
        CHECK(resonance_count(A, 1, 0, Int(0), T) <= 1);
        CHECK(resonance_count(A, 0, 1, Int(0), T) == 0);
    }
}
