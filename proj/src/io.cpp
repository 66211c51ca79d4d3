#include "catmap/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace catmap {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::filesystem::path& p, std::ios::openmode mode = std::ios::out) {
    std::ofstream f(p, mode);
    if (!f) throw Error("cannot open " + p.string() + " for writing");
    return f;
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string file_header(const CatMap& A, const std::string& command,
                        const std::vector<std::pair<std::string, std::string>>& params) {
    std::ostringstream os;
    os << "# catmap " << command << " format-version=" << kFormatVersion << "\n";
    os << "# matrix = " << A.a << "," << A.b << "," << A.c << "," << A.d << "\n";
    for (const auto& [k, v] : params) os << "# " << k << " = " << v << "\n";
    return os.str();
}

void write_profile_csv(const std::filesystem::path& path, const CatMap& A,
                       const ProjectorSpec& spec, const QuantumState& u) {
    auto f = open_out(path);
    f << file_header(A, "profile",
                     {{"N", std::to_string(u.size())},
                      {"t", std::to_string(spec.t)},
                      {"j", std::to_string(spec.j)},
                      {"sigma", std::to_string(spec.sigma)},
                      {"phi", fmt_double(spec.phi)},
                      {"omega", fmt_double(spec.omega.real()) + "," + fmt_double(spec.omega.imag())}});
    f << "# columns: index,re,im,modulus\n";
    for (Eigen::Index i = 0; i < u.size(); ++i)
        f << i << "," << fmt_double(u(i).real()) << "," << fmt_double(u(i).imag()) << ","
          << fmt_double(std::abs(u(i))) << "\n";
}

void write_equidist_csv(const std::filesystem::path& path, const CatMap& A,
                        const ProjectorSpec& spec, const EquidistReport& rep) {
    auto f = open_out(path);
    f << file_header(A, "equidist",
                     {{"N", std::to_string(rep.N)},
                      {"t", std::to_string(rep.t)},
                      {"j", std::to_string(spec.j)},
                      {"sigma", std::to_string(spec.sigma)},
                      {"worst_deviation", fmt_double(rep.worst_deviation)}});
    f << "# columns: m1,m2,re,im,modulus,bound\n";
    for (const auto& me : rep.modes)
        f << me.m.m1 << "," << me.m.m2 << "," << fmt_double(me.value.real()) << ","
          << fmt_double(me.value.imag()) << "," << fmt_double(std::abs(me.value)) << ","
          << fmt_double(me.bound) << "\n";
}

void write_wigner_pgm(const std::filesystem::path& path, const WignerGrid& grid) {
    auto f = open_out(path, std::ios::out | std::ios::binary);
    const int G = grid.resolution;
    // log grayscale with floor 1e-6
    Eigen::MatrixXd lg(G, G);
    for (int r = 0; r < G; ++r)
        for (int c = 0; c < G; ++c)
            lg(r, c) = std::log10(std::max(grid.values(r, c), 1e-6));
    const double lo = lg.minCoeff(), hi = lg.maxCoeff();
    const double span = hi - lo > 0 ? hi - lo : 1.0;
    f << "P5\n# catmap wigner cutoff=" << grid.mode_cutoff << " smoothing=" << grid.smoothing
      << " log-floor=1e-6\n" << G << " " << G << "\n255\n";
    std::vector<unsigned char> row(static_cast<std::size_t>(G));
    for (int r = 0; r < G; ++r) {
        for (int c = 0; c < G; ++c)
            row[static_cast<std::size_t>(c)] =
                static_cast<unsigned char>(std::lround(255.0 * (lg(r, c) - lo) / span));
        f.write(reinterpret_cast<const char*>(row.data()), G);
    }
}

void write_wigner_csv(const std::filesystem::path& path, const CatMap& A, const WignerGrid& grid) {
    auto f = open_out(path);
    f << file_header(A, "wigner",
                     {{"grid", std::to_string(grid.resolution)},
                      {"smoothing", fmt_double(grid.smoothing)},
                      {"cutoff", std::to_string(grid.mode_cutoff)},
                      {"mean", fmt_double(grid.mean)}});
    f << "# columns: ix,ixi,value\n";
    for (int r = 0; r < grid.resolution; ++r)
        for (int c = 0; c < grid.resolution; ++c)
            f << r << "," << c << "," << fmt_double(grid.values(r, c)) << "\n";
}

void write_propagator(const std::filesystem::path& path, const Propagator& P, MatrixFormat fmt) {
    if (fmt == MatrixFormat::Csv) {
        auto f = open_out(path);
        f << file_header(P.map, "propagator",
                         {{"N", std::to_string(P.N)}, {"layout", "col-major"}});
        f << "# columns: col,row,re,im\n";
        for (int j = 0; j < P.N; ++j)
            for (int k = 0; k < P.N; ++k)
                f << j << "," << k << "," << fmt_double(P.mat(k, j).real()) << ","
                  << fmt_double(P.mat(k, j).imag()) << "\n";
        return;
    }
    auto f = open_out(path, std::ios::out | std::ios::binary);
    f << "catmap-propagator v" << kFormatVersion << " matrix=" << P.map.a << "," << P.map.b << ","
      << P.map.c << "," << P.map.d << " N=" << P.N << " layout=col-major dtype=complex128-le\n";
    static_assert(sizeof(Complex) == 16);
    for (int j = 0; j < P.N; ++j)
        f.write(reinterpret_cast<const char*>(P.mat.col(j).data()),
                static_cast<std::streamsize>(sizeof(Complex)) * P.N);
}

std::string even_report_json(const CatMap& A, const EvenCaseReport& rep) {
    json out;
    out["matrix"] = {A.a, A.b, A.c, A.d};
    out["k"] = rep.k;
    out["N"] = rep.N;
    out["branch"] = to_string(rep.branch);
    out["t"] = rep.t;
    out["a_k"] = rep.a_k.str();
    out["gcd_ak_minus_1_pk"] = rep.gcd_ak_pk.str();
    out["n_prime_k"] = rep.n_prime_k.str();
    out["gcd_identity"] = rep.gcd_identity;
    out["dichotomy_at_zero"] = rep.dichotomy_at_zero;
    json outcomes = json::array();
    for (const auto& oc : rep.sigma_outcomes)
        outcomes.push_back({{"sigma", oc.sigma}, {"norm", oc.norm}, {"vanishes", oc.vanishes}});
    out["sigma_outcomes_at_j0"] = outcomes;
    json van = json::array();
    for (const auto& [j, s] : rep.vanishing) van.push_back({j, s});
    out["vanishing"] = van;
    out["candidate_count"] = rep.candidate_count;
    out["vanishing_in_candidates"] = rep.vanishing_in_candidates;
    out["vanishing_classes"] = rep.vanishing_classes;
    out["classes_divide_gcd"] = rep.classes_divide_gcd;
    return out.dump(2);
}

std::string even_report_csv_summary(const CatMap& A, const EvenCaseReport& rep) {
    std::ostringstream os;
    os << file_header(A, "even-scan",
                      {{"k", std::to_string(rep.k)}, {"N", std::to_string(rep.N)}});
    os << "# columns: k,N,branch,t,vanishing_count,vanishing_classes,gcd_identity,dichotomy\n";
    os << rep.k << "," << rep.N << "," << to_string(rep.branch) << "," << rep.t << ","
       << rep.vanishing.size() << "," << rep.vanishing_classes << ","
       << (rep.gcd_identity ? 1 : 0) << "," << (rep.dichotomy_at_zero ? 1 : 0) << "\n";
    return os.str();
}

PeriodCache::PeriodCache(std::filesystem::path path) : path_(std::move(path)) {
    std::ifstream f(path_);
    if (!f) return;  // absent cache is fine
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        json rec = json::parse(line, nullptr, false);
        if (rec.is_discarded()) continue;  // advisory: skip damaged lines
        Entry e;
        e.a = rec["matrix"][0];
        e.b = rec["matrix"][1];
        e.c = rec["matrix"][2];
        e.d = rec["matrix"][3];
        e.rec.q = rec["q"];
        for (const auto& s : rec["p"]) e.rec.p_values.emplace_back(s.get<std::string>());
        e.rec.n_prime = Int(rec["n_prime"].get<std::string>());
        e.rec.T = rec["T"];
        e.rec.n = rec["n"];
        const std::string br = rec["branch"];
        e.rec.branch = br == "odd" ? Branch::Odd : (br == "even-2k" ? Branch::Even2k : Branch::Even4k);
        entries_.push_back(std::move(e));
    }
}

std::optional<PeriodRecord> PeriodCache::lookup(const CatMap& A, unsigned q) const {
    for (const auto& e : entries_)
        if (e.a == A.a && e.b == A.b && e.c == A.c && e.d == A.d && e.rec.q == q) return e.rec;
    return std::nullopt;
}

void PeriodCache::store(const CatMap& A, const PeriodRecord& rec) {
    for (auto& e : entries_)
        if (e.a == A.a && e.b == A.b && e.c == A.c && e.d == A.d && e.rec.q == rec.q) {
            e.rec = rec;
            return;
        }
    entries_.push_back({A.a, A.b, A.c, A.d, rec});
}

void PeriodCache::save() const {
    auto f = open_out(path_);
    for (const auto& e : entries_) {
        json rec;
        rec["matrix"] = {e.a, e.b, e.c, e.d};
        rec["q"] = e.rec.q;
        json ps = json::array();
        for (const auto& p : e.rec.p_values) ps.push_back(p.str());
        rec["p"] = ps;
        rec["n_prime"] = e.rec.n_prime.str();
        rec["T"] = e.rec.T;
        rec["n"] = e.rec.n;
        rec["branch"] = to_string(e.rec.branch);
        f << rec.dump() << "\n";
    }
}

}  // namespace catmap
