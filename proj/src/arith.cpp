#include "catmap/arith.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <numeric>

namespace catmap {

using boost::multiprecision::abs;
using boost::multiprecision::gcd;

const char* to_string(Branch b) {
    switch (b) {
        case Branch::Odd: return "odd";
        case Branch::Even2k: return "even-2k";
        case Branch::Even4k: return "even-4k";
    }
    return "?";
}

CatMap CatMap::checked(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    if (a * d - b * c != 1) throw ConditionViolation("det = 1");
    if ((a * b) % 2 != 0) throw ConditionViolation("ab even");
    if ((c * d) % 2 != 0) throw ConditionViolation("cd even");
    const std::int64_t tr = a + d;
    if (tr % 2 != 0) throw ConditionViolation("trace even");
    if (tr <= 2) throw ConditionViolation("trace > 2");
    if (std::gcd(b, c) != 1) throw ConditionViolation("gcd(b,c) = 1");
    // forced parities: b,c odd and a,d even
    if (b % 2 == 0 || c % 2 == 0 || a % 2 != 0 || d % 2 != 0)
        throw ConditionViolation("parity consequence (b,c odd; a,d even)");
    const double trd = static_cast<double>(tr);
    return CatMap{a, b, c, d, tr, (trd + std::sqrt(trd * trd - 4.0)) / 2.0};
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Mat2 mod(const Mat2& x, const Int& n) {
    auto red = [&n](const Int& v) {
        Int r = v % n;
        if (r < 0) r += n;
        return r;
    };
    return {red(x.a), red(x.b), red(x.c), red(x.d)};
}

Int p_seq(const CatMap& A, unsigned r) {
    Int prev = 0, cur = 1;  // p_0, p_1
    if (r == 0) return prev;
    for (unsigned i = 1; i < r; ++i) {
        Int next = A.trace * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

Mat2 matrix_power(const CatMap& A, unsigned r, const std::optional<Int>& modulus) {
    Mat2 base{A.a, A.b, A.c, A.d};
    Mat2 acc = Mat2::identity();
    if (modulus) {
        base = mod(base, *modulus);
        acc = mod(acc, *modulus);
    }
    while (r > 0) {
        if (r & 1u) {
            acc = acc * base;
            if (modulus) acc = mod(acc, *modulus);
        }
        r >>= 1u;
        if (r == 0) break;
        base = base * base;
        if (modulus) base = mod(base, *modulus);
    }
    return acc;
}

Int n_prime(const CatMap& A, unsigned q) {
    if (q == 0) throw ConditionViolation("q >= 1");
    const unsigned k = q / 2;
    if (q % 2 == 1) return p_seq(A, k) + p_seq(A, k + 1);
    return 2 * p_seq(A, k);
}

Int n_prime_oracle(const CatMap& A, unsigned q) {
    if (q == 0) throw ConditionViolation("q >= 1");
    Mat2 P = matrix_power(A, q);
    Int g = gcd(gcd(Int(P.a - 1), Int(P.b)), gcd(Int(P.c), Int(P.d - 1)));
    return abs(g);
}

unsigned order_mod(const CatMap& A, const Int& N, unsigned long long ceiling) {
    if (N < 1) throw ConditionViolation("N >= 1");
    if (ceiling == 0) {
        Int c = 10 * N;
        ceiling = c > 1'000'000'000 ? 1'000'000'000ull
                                    : c.convert_to<unsigned long long>();
        if (ceiling < 16) ceiling = 16;
    }
    const Mat2 base = mod(Mat2{A.a, A.b, A.c, A.d}, N);
    const Mat2 id = mod(Mat2::identity(), N);
    Mat2 cur = base;
    for (unsigned long long t = 1; t <= ceiling; ++t) {
        if (cur == id) return static_cast<unsigned>(t);
        cur = mod(cur * base, N);
    }
    throw NoOrderFound("order of A mod N not found below ceiling", ceiling);
}

QuantumPeriod quantum_period(const CatMap& A, const Int& N) {
    const unsigned T = order_mod(A, N);
    if (N % 2 != 0) return {T, Branch::Odd};
    Mat2 P = matrix_power(A, T);
    // A^T = I + N * A_N with exact division
    Int offb = P.b / N, offc = P.c / N;
    if (offb * N != P.b || offc * N != P.c || (P.a - 1) % N != 0 || (P.d - 1) % N != 0)
        throw Error("A^T - I is not divisible by N");  // cannot happen when T is the order
    if (offb % 2 == 0 && offc % 2 == 0) return {T, Branch::Even2k};
    return {2 * T, Branch::Even4k};
}

PeriodRecord period_record(const CatMap& A, unsigned q) {
    PeriodRecord rec;
    rec.q = q;
    rec.p_values.reserve(q + 1);
    Int prev = 0, cur = 1;
    rec.p_values.push_back(prev);
    if (q >= 1) rec.p_values.push_back(cur);
    for (unsigned i = 2; i <= q; ++i) {
        Int next = A.trace * cur - prev;
        prev = cur;
        cur = next;
        rec.p_values.push_back(cur);
    }
    rec.n_prime = n_prime(A, q);
    rec.T = order_mod(A, rec.n_prime);
    auto qp = quantum_period(A, rec.n_prime);
    rec.n = qp.n;
    rec.branch = qp.branch;
    return rec;
}

GcdBound gcd_bound_check(const CatMap& A, unsigned T, unsigned r) {
    if (r < 1 || r >= T) throw ConditionViolation("1 <= r < T");
    const Int NT = n_prime(A, T);
    const Int pr = p_seq(A, r);
    const Int babs = A.b < 0 ? -A.b : A.b;
    const unsigned g = std::gcd(T, 2 * r);
    const Int Ng = n_prime(A, g);
    GcdBound out;
    out.lhs = gcd(NT, Int(abs(Int(A.b) * pr)));
    out.rhs = babs * Ng;
    out.holds = out.lhs <= out.rhs;
    const Int gp = gcd(NT, Int(abs(pr)));
    out.divisibility = gp == 0 ? true : (Ng % gp == 0);
    return out;
}

std::vector<unsigned> resonance_set(const CatMap& A, std::int64_t m1, std::int64_t m2,
                                    const Int& c, unsigned T,
                                    const std::optional<Int>& modulus) {
    if (m1 == 0 && m2 == 0) throw ConditionViolation("m != (0,0)");
    const Int N = modulus ? *modulus : n_prime(A, T);
    auto red = [&N](Int v) {
        v %= N;
        if (v < 0) v += N;
        return v;
    };
    const Int target = red(c);
    // iterate (A^T)^s m mod N; B = A^T
    Int v1 = red(Int(m1)), v2 = red(Int(m2));
    std::vector<unsigned> sols;
    for (unsigned s = 0; s < T; ++s) {
        if (v2 == target) sols.push_back(s);
        Int n1 = red(A.a * v1 + A.c * v2);
        Int n2 = red(A.b * v1 + A.d * v2);
        v1 = std::move(n1);
        v2 = std::move(n2);
    }
    return sols;
}

unsigned resonance_count(const CatMap& A, std::int64_t m1, std::int64_t m2,
                         const Int& c, unsigned T) {
    return static_cast<unsigned>(resonance_set(A, m1, m2, c, T).size());
}

}  // namespace catmap
