#include "catmap/heisenberg.hpp"

#include <cmath>
#include <numbers>

namespace catmap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// num mod d in [0, d) for 128-bit num
inline std::int64_t reduce(__int128 num, std::int64_t d) {
    std::int64_t r = static_cast<std::int64_t>(num % d);
    return r < 0 ? r + d : r;
}

}  // namespace

FourierMode transpose_apply(const CatMap& A, FourierMode m) {
    return {A.a * m.m1 + A.c * m.m2, A.b * m.m1 + A.d * m.m2};
}

Propagator build_propagator(const CatMap& A, int N, const PropagatorOptions& opts) {
    if (N < 1) throw ConditionViolation("N >= 1");
    if (N > opts.n_max)
        throw TooLarge("N = " + std::to_string(N) + " exceeds N_max = " + std::to_string(opts.n_max));

    const std::int64_t a = A.a, b = A.b, d = A.d;
    const std::int64_t babs = b < 0 ? -b : b;
    const std::int64_t D = 2ll * N * babs;  // common phase denominator
    const bool neg = b < 0;
    const double scale = 1.0 / std::sqrt(double(N) * double(babs));

    // unit phases exp(2 pi i n / D); direct evaluation when D is too big to table
    std::vector<Complex> table;
    if (D <= (1ll << 21)) {
        table.resize(static_cast<std::size_t>(D));
        for (std::int64_t n = 0; n < D; ++n)
            table[static_cast<std::size_t>(n)] = std::polar(1.0, kTwoPi * double(n) / double(D));
    }
    auto unit = [&](std::int64_t n) -> Complex {
        if (!table.empty()) return table[static_cast<std::size_t>(n)];
        return std::polar(1.0, kTwoPi * double(n) / double(D));
    };

    Eigen::MatrixXcd M(N, N);

    std::vector<std::int64_t> dk2(static_cast<std::size_t>(N));
    for (std::int64_t k = 0; k < N; ++k)
        dk2[static_cast<std::size_t>(k)] = reduce(__int128(d) * k * k, D);

#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < N; ++j) {
        // entry (k,j) = scale * sum_r exp(2 pi i sgn(b) *
        //   (a r^2 N^2 + 2N a r j + a j^2 + d k^2 - 2N k r - 2 k j) / D)
        const std::int64_t aj2 = reduce(__int128(a) * j * j, D);
        std::vector<std::int64_t> rterm(static_cast<std::size_t>(babs));
        std::vector<std::int64_t> rk(static_cast<std::size_t>(babs));
        for (std::int64_t r = 0; r < babs; ++r) {
            rterm[static_cast<std::size_t>(r)] =
                reduce(__int128(a) * r * r * N * N + __int128(2) * N * a * r * j, D);
            rk[static_cast<std::size_t>(r)] = reduce(__int128(2) * (__int128(N) * r + j), D);
        }
        for (std::int64_t k = 0; k < N; ++k) {
            const std::int64_t base = aj2 + dk2[static_cast<std::size_t>(k)];
            Complex acc{0.0, 0.0};
            for (std::int64_t r = 0; r < babs; ++r) {
                std::int64_t num =
                    reduce(__int128(base) + rterm[static_cast<std::size_t>(r)] -
                               __int128(rk[static_cast<std::size_t>(r)]) * k,
                           D);
                if (neg && num != 0) num = D - num;
                acc += unit(num);
            }
            M(k, j) = scale * acc;
        }
    }

    Propagator P{A, N, std::move(M), 0.0};
    if (opts.check_unitarity) {
        P.unitarity_defect = unitarity_defect_of(P.mat);
        const double tol =
            opts.unitarity_tol > 0 ? opts.unitarity_tol : 1e-8 * std::max(1.0, double(N) / 8192.0);
        if (P.unitarity_defect > tol) throw UnitarityFailure(P.unitarity_defect, tol);
    }
    return P;
}

double unitarity_defect_of(const Eigen::MatrixXcd& M) {
    const auto N = M.cols();
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(N, N);
    G.selfadjointView<Eigen::Lower>().rankUpdate(M.adjoint());  // G := M* M (lower half)
    double defect = 0.0;
    for (Eigen::Index c = 0; c < N; ++c)
        for (Eigen::Index r = c; r < N; ++r) {
            const Complex want = r == c ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
            defect = std::max(defect, std::abs(G(r, c) - want));
        }
    return defect;
}

Translation::Translation(int N, FourierMode m) : N_(N) {
    const std::int64_t twoN = 2ll * N;
    m1_ = ((m.m1 % twoN) + twoN) % twoN;
    m2_ = ((m.m2 % twoN) + twoN) % twoN;
}

Complex Translation::phase(std::int64_t j) const {
    const std::int64_t twoN = 2ll * N_;
    const std::int64_t num = reduce(__int128(2) * m1_ * j - __int128(m1_) * m2_, twoN);
    return std::polar(1.0, kTwoPi * double(num) / double(twoN));
}

QuantumState Translation::apply(const QuantumState& u) const {
    QuantumState out(N_);
    for (std::int64_t l = 0; l < N_; ++l) {
        const std::int64_t src = (l + m2_) % N_;  // phase() is N-periodic in j
        out(l) = phase(src) * u(src);
    }
    return out;
}

Eigen::MatrixXcd Translation::left_apply(const Eigen::MatrixXcd& M) const {
    Eigen::MatrixXcd out(N_, M.cols());
    for (std::int64_t l = 0; l < N_; ++l) {
        const std::int64_t src = (l + m2_) % N_;
        out.row(l) = phase(src) * M.row(src);
    }
    return out;
}

Eigen::MatrixXcd Translation::right_apply(const Eigen::MatrixXcd& M) const {
    Eigen::MatrixXcd out(M.rows(), N_);
    for (std::int64_t j = 0; j < N_; ++j) {
        const std::int64_t src = ((j - m2_) % N_ + N_) % N_;
        out.col(j) = phase(j) * M.col(src);
    }
    return out;
}

Eigen::MatrixXcd Translation::materialize() const {
    Eigen::MatrixXcd W = Eigen::MatrixXcd::Zero(N_, N_);
    for (std::int64_t j = 0; j < N_; ++j) {
        const std::int64_t dst = ((j - m2_) % N_ + N_) % N_;
        W(dst, j) = phase(j);
    }
    return W;
}

Eigen::MatrixXcd quantize_trig(int N, const std::vector<std::pair<FourierMode, Complex>>& coeffs) {
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(N, N);
    for (const auto& [m, c] : coeffs) op += c * Translation(N, m).materialize();
    return op;
}

double egorov_defect(const Propagator& P, FourierMode m) {
    const Translation W(P.N, m);
    const Eigen::MatrixXcd conj = P.mat.adjoint() * W.left_apply(P.mat);
    const Translation Wb(P.N, transpose_apply(P.map, m));
    double defect = 0.0;
    for (std::int64_t j = 0; j < P.N; ++j) {
        const std::int64_t dst = ((j - Wb.shift()) % P.N + P.N) % P.N;
        const Complex want = Wb.phase(j);
        for (std::int64_t l = 0; l < P.N; ++l)
            defect = std::max(defect, std::abs(conj(l, j) - (l == dst ? want : Complex{})));
    }
    return defect;
}

GaussBound gauss_bound_report(const Propagator& P, int r, FourierMode m, int j, int l) {
    using boost::multiprecision::gcd;
    if (r == 0) throw ConditionViolation("r != 0");
    if (j < 0 || j >= P.N || l < 0 || l >= P.N) throw ConditionViolation("j,l in [0,N)");

    QuantumState x = QuantumState::Zero(P.N);
    x(j) = 1.0;
    for (int i = 0; i < std::abs(r); ++i) {
        if (r > 0)
            x = P.mat * x;
        else
            x = P.mat.adjoint() * x;
    }
    const QuantumState w = Translation(P.N, m).apply(x);

    const Int g = gcd(Int(P.N), Int(abs(Int(P.map.b) * p_seq(P.map, static_cast<unsigned>(std::abs(r))))));
    GaussBound out;
    out.value = std::abs(w(l));
    out.bound = std::sqrt(g.convert_to<double>() / double(P.N));
    out.holds = out.value <= out.bound + 1e-9;
    return out;
}

}  // namespace catmap
