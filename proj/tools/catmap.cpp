// Experiment runner for quantized cat maps: periods, propagators,
// projector eigenstates, equidistribution diagnostics, even-branch scans,
// and invariant verification.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>

#include "catmap/diagnostics.hpp"
#include "catmap/evenperiod.hpp"
#include "catmap/io.hpp"

namespace {

using namespace catmap;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVanishing = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitConfig = 4;

struct CommonOpts {
    std::vector<std::int64_t> matrix{2, 3, 1, 2};
    int n_max = 8192;
    std::string cache_path;
};

CatMap parse_matrix(const CommonOpts& c) {
    if (c.matrix.size() != 4) throw ConditionViolation("matrix needs 4 entries a,b,c,d");
    return CatMap::checked(c.matrix[0], c.matrix[1], c.matrix[2], c.matrix[3]);
}

int dimension_for(const CatMap& A, int k, const std::string& parity, int n_max) {
    const unsigned q = parity == "odd" ? 2u * k + 1u : 2u * k;
    const Int N = n_prime(A, q);
    if (N > n_max)
        throw TooLarge("N'_" + std::to_string(q) + " = " + N.str() + " exceeds --nmax " +
                       std::to_string(n_max));
    return N.convert_to<int>();
}

ProjectorSpec spec_for(const Propagator& P, int k, const std::string& parity, int j, int sigma) {
    return make_spec(P, k, parity == "odd" ? ParityClass::Odd : ParityClass::Even, j, sigma);
}

// ---- periods ----

int cmd_periods(const CommonOpts& common, int q_max, bool verify, const std::string& out_path) {
    const CatMap A = parse_matrix(common);
    std::optional<PeriodCache> cache;
    if (!common.cache_path.empty()) cache.emplace(common.cache_path);

    std::ostringstream os;
    os << file_header(A, "periods", {{"q_max", std::to_string(q_max)}});
    os << "# columns: q,p_q,n_prime,T,n,branch\n";
    bool all_ok = true;
    for (int q = 1; q <= q_max; ++q) {
        PeriodRecord rec;
        if (cache) {
            if (auto hit = cache->lookup(A, static_cast<unsigned>(q)))
                rec = *hit;
            else {
                rec = period_record(A, static_cast<unsigned>(q));
                cache->store(A, rec);
            }
        } else {
            rec = period_record(A, static_cast<unsigned>(q));
        }
        if (verify) {
            const bool ok = rec.n_prime == n_prime_oracle(A, static_cast<unsigned>(q)) &&
                            rec.T == static_cast<unsigned>(q);
            if (!ok) {
                all_ok = false;
                std::cerr << "verification failed at q = " << q << "\n";
            }
        }
        os << q << "," << rec.p_values.back().str() << "," << rec.n_prime.str() << "," << rec.T
           << "," << rec.n << "," << to_string(rec.branch) << "\n";
    }
    if (cache) cache->save();
    if (out_path.empty())
        std::cout << os.str();
    else {
        std::ofstream f(out_path);
        if (!f) throw Error("cannot open " + out_path);
        f << os.str();
    }
    return all_ok ? kExitOk : kExitInvariant;
}

// ---- propagator export ----

int cmd_propagator(const CommonOpts& common, int N, const std::string& out,
                   const std::string& format) {
    const CatMap A = parse_matrix(common);
    PropagatorOptions opts;
    opts.n_max = common.n_max;
    const Propagator P = build_propagator(A, N, opts);
    write_propagator(out, P, format == "csv" ? MatrixFormat::Csv : MatrixFormat::Binary);
    std::cout << "wrote " << out << " (N = " << N << ", unitarity defect " << P.unitarity_defect
              << ")\n";
    return kExitOk;
}

// ---- eigenstate pipeline ----

struct EigenstateOpts {
    int k = 5;
    std::string parity = "odd";
    int j = 0;
    int sigma = 0;
    int cutoff = 5;
    int grid = 256;
    bool wigner = false;
    std::string out_prefix = "catmap";
    std::string format = "pgm";
};

int cmd_eigenstate(const CommonOpts& common, const EigenstateOpts& eo, bool profile_only,
                   bool equidist_only) {
    const CatMap A = parse_matrix(common);
    const int N = dimension_for(A, eo.k, eo.parity, common.n_max);
    PropagatorOptions popts;
    popts.n_max = common.n_max;
    const Propagator P = build_propagator(A, N, popts);
    const ProjectorSpec spec = spec_for(P, eo.k, eo.parity, eo.j, eo.sigma);
    const auto st = projector_state(P, spec);
    const QuantumState u = normalize(st.v, default_vanish_tol(N));  // throws VanishingState

    const std::filesystem::path prefix(eo.out_prefix);
    if (!equidist_only)
        write_profile_csv(prefix.string() + "-profile.csv", A, spec, u);
    if (!profile_only) {
        const auto rep = equidist_report(u, spec, eo.cutoff);
        write_equidist_csv(prefix.string() + "-equidist.csv", A, spec, rep);
    }
    if (eo.wigner) {
        const double s = default_smoothing(N);
        const auto grid = smoothed_wigner(u, eo.grid, s, default_mode_cutoff(N, s));
        if (eo.format == "csv")
            write_wigner_csv(prefix.string() + "-wigner.csv", A, grid);
        else
            write_wigner_pgm(prefix.string() + "-wigner.pgm", grid);
    }
    std::cout << "N = " << N << ", t = " << spec.t << ", ||v|| = " << st.norm
              << ", residual = " << eigen_residual(P, u, spec.omega) << "\n";
    return kExitOk;
}

// ---- wigner only ----

int cmd_wigner(const CommonOpts& common, const EigenstateOpts& eo, double smoothing) {
    const CatMap A = parse_matrix(common);
    const int N = dimension_for(A, eo.k, eo.parity, common.n_max);
    PropagatorOptions popts;
    popts.n_max = common.n_max;
    const Propagator P = build_propagator(A, N, popts);
    const ProjectorSpec spec = spec_for(P, eo.k, eo.parity, eo.j, eo.sigma);
    const auto st = projector_state(P, spec);
    const QuantumState u = normalize(st.v, default_vanish_tol(N));
    const double s = smoothing > 0 ? smoothing : default_smoothing(N);
    const int cutoff = eo.cutoff > 0 ? eo.cutoff : default_mode_cutoff(N, s);
    const auto grid = smoothed_wigner(u, eo.grid, s, cutoff);
    if (eo.format == "csv")
        write_wigner_csv(eo.out_prefix + "-wigner.csv", A, grid);
    else
        write_wigner_pgm(eo.out_prefix + "-wigner.pgm", grid);
    std::cout << "grid mean = " << grid.mean << ", imag residual = " << grid.imag_residual << "\n";
    return kExitOk;
}

// ---- even scan ----

int cmd_even_scan(const CommonOpts& common, int k, const std::vector<int>& sigmas, bool all_j,
                  const std::string& out_prefix) {
    const CatMap A = parse_matrix(common);
    const int N = dimension_for(A, k, "even", common.n_max);
    PropagatorOptions popts;
    popts.n_max = common.n_max;
    const Propagator P = build_propagator(A, N, popts);
    std::vector<int> range;
    if (all_j) {
        range.resize(static_cast<std::size_t>(N));
        for (int j = 0; j < N; ++j) range[static_cast<std::size_t>(j)] = j;
    } else {
        range = default_j_range(A, k, N);
    }
    const auto rep = vanishing_scan(P, k, range, sigmas);
    {
        std::ofstream f(out_prefix + "-even.json");
        if (!f) throw Error("cannot open " + out_prefix + "-even.json");
        f << even_report_json(A, rep) << "\n";
    }
    {
        std::ofstream f(out_prefix + "-even.csv");
        if (!f) throw Error("cannot open " + out_prefix + "-even.csv");
        f << even_report_csv_summary(A, rep);
    }
    std::cout << even_report_csv_summary(A, rep);
    const bool ok = rep.gcd_identity && rep.dichotomy_at_zero && rep.vanishing_in_candidates;
    return ok ? kExitOk : kExitInvariant;
}

// ---- verify ----

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

void run_arith_suite(const CatMap& A, std::vector<Check>& checks) {
    bool closed_form = true, orders = true, gcd_lemma = true;
    for (unsigned q = 1; q <= 40; ++q) {
        if (n_prime(A, q) != n_prime_oracle(A, q)) closed_form = false;
        if (order_mod(A, n_prime(A, q)) != q) orders = false;
    }
    for (unsigned T = 2; T <= 40; ++T)
        for (unsigned r = 1; r < T; ++r)
            if (auto g = gcd_bound_check(A, T, r); !g.holds || !g.divisibility) gcd_lemma = false;
    checks.push_back({"closed-form moduli match entry-gcd oracle (q <= 40)", closed_form, ""});
    checks.push_back({"order of A mod N'_q equals q (q <= 40)", orders, ""});
    checks.push_back({"gcd divisibility bound (T <= 40)", gcd_lemma, ""});
}

void run_egorov_suite(const CatMap& A, int N, std::vector<Check>& checks) {
    const Propagator P = build_propagator(A, N);
    checks.push_back({"unitarity at N = " + std::to_string(N), P.unitarity_defect <= 1e-8,
                      "defect " + std::to_string(P.unitarity_defect)});
    double worst = 0;
    for (std::int64_t m1 = -5; m1 <= 5; ++m1)
        for (std::int64_t m2 = -5; m2 <= 5; ++m2)
            worst = std::max(worst, egorov_defect(P, {m1, m2}));
    checks.push_back({"conjugation covariance, ||m||_inf <= 5", worst <= 1e-8,
                      "worst defect " + std::to_string(worst)});
}

void run_gauss_suite(const CatMap& A, int N, std::vector<Check>& checks) {
    const Propagator P = build_propagator(A, N);
    bool ok = true;
    for (int r = 1; r <= 8 && ok; ++r)
        for (int j = 0; j < N && ok; ++j)
            for (FourierMode m : {FourierMode{0, 0}, FourierMode{1, 0}})
                if (!gauss_bound_report(P, r, m, j, j).holds) ok = false;
    checks.push_back({"dispersive bound sweep at N = " + std::to_string(N), ok, ""});
}

void run_structure_suite(const CatMap& A, int k, std::vector<Check>& checks) {
    const Int Nk = 2 * p_seq(A, static_cast<unsigned>(k));
    const int N = Nk.convert_to<int>();
    const Propagator P = build_propagator(A, N);
    bool half_ok = true;
    for (int j : phase_sample_indices(N, 64)) {
        try {
            half_period_check(P, k, j);
        } catch (const StructureViolation&) {
            half_ok = false;
        }
    }
    checks.push_back({"half-period two-point support at N = " + std::to_string(N), half_ok, ""});
    if (quantum_period(A, Int(N)).branch == Branch::Even4k) {
        bool quarter_ok = true;
        try {
            quarter_turn_check(P, k, phase_sample_indices(N, 16));
        } catch (const StructureViolation&) {
            quarter_ok = false;
        }
        checks.push_back({"quarter-period single support", quarter_ok, ""});
    }
}

void run_vanishing_suite(const CatMap& A, int k, std::vector<Check>& checks) {
    const Int Nk = 2 * p_seq(A, static_cast<unsigned>(k));
    const int N = Nk.convert_to<int>();
    const Propagator P = build_propagator(A, N);
    const auto rep = vanishing_scan(P, k, default_j_range(A, k, N), {0, 1, 2, 3});
    checks.push_back({"gcd(a_k - 1, p_k) = N'_k", rep.gcd_identity,
                      rep.gcd_ak_pk.str() + " vs " + rep.n_prime_k.str()});
    checks.push_back({"exactly one of sigma = 0,2 vanishes at j = 0", rep.dichotomy_at_zero, ""});
    checks.push_back({"vanishing j's lie in the candidate classes", rep.vanishing_in_candidates,
                      std::to_string(rep.vanishing.size()) + " vanishing pairs"});
}

int cmd_verify(const CommonOpts& common, const std::string& suite, int N, int k,
               const std::string& out_path) {
    const CatMap A = parse_matrix(common);
    std::vector<Check> checks;
    if (suite == "arith" || suite == "all") run_arith_suite(A, checks);
    if (suite == "egorov" || suite == "all") run_egorov_suite(A, N, checks);
    if (suite == "gauss" || suite == "all") run_gauss_suite(A, std::min(N, 265), checks);
    if (suite == "structure" || suite == "all") run_structure_suite(A, k, checks);
    if (suite == "vanishing" || suite == "all") run_vanishing_suite(A, k, checks);
    if (checks.empty()) throw ConditionViolation("unknown suite: " + suite);

    json out;
    out["matrix"] = {A.a, A.b, A.c, A.d};
    out["suite"] = suite;
    bool all_pass = true;
    json arr = json::array();
    for (const auto& c : checks) {
        arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        all_pass &= c.pass;
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
                  << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
    }
    out["checks"] = arr;
    out["all_pass"] = all_pass;
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw Error("cannot open " + out_path);
        f << out.dump(2) << "\n";
    }
    return all_pass ? kExitOk : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantized cat maps: periods, propagators, projector eigenstates"};
    app.set_config("--config", "", "read options from a TOML-style file (flags win)");
    app.require_subcommand(1);

    CommonOpts common;
    app.add_option("--matrix", common.matrix, "cat map entries a,b,c,d")->delimiter(',');
    app.add_option("--nmax", common.n_max, "largest allowed propagator dimension");
    app.add_option("--cache-path", common.cache_path, "period cache file (JSON lines)")
        ->envname("CATMAP_CACHE");

    // periods
    auto* periods = app.add_subcommand("periods", "table of p_q, N'_q, T, n, branch");
    int q_max = 20;
    bool verify_flag = false;
    std::string out_path;
    periods->add_option("--qmax", q_max, "largest power q");
    periods->add_flag("--verify", verify_flag, "cross-check against the entry-gcd oracle");
    periods->add_option("--out", out_path, "output CSV path (stdout when absent)");

    // propagator
    auto* prop = app.add_subcommand("propagator", "build and export the unitary matrix");
    int prop_N = 0;
    std::string prop_out = "propagator.bin", prop_fmt = "bin";
    prop->add_option("--N", prop_N, "dimension")->required();
    prop->add_option("--out", prop_out, "output path");
    prop->add_option("--format", prop_fmt, "bin or csv")->check(CLI::IsMember({"bin", "csv"}));

    // eigenstate / profile / equidist
    EigenstateOpts eo;
    auto add_state_opts = [&](CLI::App* sc) {
        sc->add_option("--k", eo.k, "family index k");
        sc->add_option("--parity", eo.parity, "odd (N'_{2k+1}) or even (N'_{2k})")
            ->check(CLI::IsMember({"odd", "even"}));
        sc->add_option("--j", eo.j, "basis index");
        sc->add_option("--sigma", eo.sigma, "eigenvalue branch");
        sc->add_option("--cutoff", eo.cutoff, "wave-number cutoff");
        sc->add_option("--grid", eo.grid, "grid resolution");
        sc->add_option("--out", eo.out_prefix, "output path prefix");
        sc->add_option("--format", eo.format, "pgm or csv for grids")
            ->check(CLI::IsMember({"pgm", "csv"}));
    };
    auto* eig = app.add_subcommand("eigenstate", "build a projector eigenstate; writes profile "
                                                 "and equidistribution CSVs");
    add_state_opts(eig);
    eig->add_flag("--wigner", eo.wigner, "also write the smoothed phase-space grid");
    auto* profile = app.add_subcommand("profile", "coordinate profile CSV only");
    add_state_opts(profile);
    auto* equidist = app.add_subcommand("equidist", "matrix-element table only");
    add_state_opts(equidist);
    auto* wigner = app.add_subcommand("wigner", "smoothed phase-space grid only");
    add_state_opts(wigner);
    double smoothing = 0.0;
    wigner->add_option("--smoothing", smoothing, "Gaussian width in mode space");

    // even-scan
    auto* even = app.add_subcommand("even-scan", "vanishing scan over (j, sigma) at N = 2 p_k");
    int even_k = 6;
    bool all_j = false;
    std::vector<int> sigmas{0, 1, 2, 3};
    std::string even_out = "catmap";
    even->add_option("--k", even_k, "family index");
    even->add_option("--sigmas", sigmas, "branches to scan")->delimiter(',');
    even->add_flag("--all-j", all_j, "scan every j even when N > 2000");
    even->add_option("--out", even_out, "output path prefix");

    // verify
    auto* verify = app.add_subcommand("verify", "run invariant suites; JSON summary");
    std::string suite = "all";
    int verify_N = 265, verify_k = 6;
    std::string verify_out;
    verify->add_option("--suite", suite,
                       "arith | egorov | gauss | structure | vanishing | all");
    verify->add_option("--N", verify_N, "dimension for the egorov/gauss suites");
    verify->add_option("--k", verify_k, "family index for the structure/vanishing suites");
    verify->add_option("--out", verify_out, "JSON summary path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (periods->parsed()) return cmd_periods(common, q_max, verify_flag, out_path);
        if (prop->parsed()) return cmd_propagator(common, prop_N, prop_out, prop_fmt);
        if (eig->parsed()) return cmd_eigenstate(common, eo, false, false);
        if (profile->parsed()) return cmd_eigenstate(common, eo, true, false);
        if (equidist->parsed()) return cmd_eigenstate(common, eo, false, true);
        if (wigner->parsed()) return cmd_wigner(common, eo, smoothing);
        if (even->parsed()) return cmd_even_scan(common, even_k, sigmas, all_j, even_out);
        if (verify->parsed()) return cmd_verify(common, suite, verify_N, verify_k, verify_out);
    } catch (const VanishingState& e) {
        std::cerr << "vanishing state: " << e.what() << "\n";
        return kExitVanishing;
    } catch (const ConditionViolation& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const TooLarge& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "invariant failure: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitOk;
}
