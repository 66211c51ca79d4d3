#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "catmap/diagnostics.hpp"
#include "catmap/evenperiod.hpp"

namespace catmap {

inline constexpr const char* kFormatVersion = "1";

/// '#'-prefixed header block common to every emitted file: matrix,
/// command, parameter echo, format version. No wall-clock content, so
/// identical runs produce identical bytes.
std::string file_header(const CatMap& A, const std::string& command,
                        const std::vector<std::pair<std::string, std::string>>& params);

void write_profile_csv(const std::filesystem::path& path, const CatMap& A,
                       const ProjectorSpec& spec, const QuantumState& u);

void write_equidist_csv(const std::filesystem::path& path, const CatMap& A,
                        const ProjectorSpec& spec, const EquidistReport& rep);

/// 8-bit PGM on a logarithmic scale with floor 1e-6.
void write_wigner_pgm(const std::filesystem::path& path, const WignerGrid& grid);

void write_wigner_csv(const std::filesystem::path& path, const CatMap& A,
                      const WignerGrid& grid);

enum class MatrixFormat { Binary, Csv };

/// Propagator export: a '#' header (text) or a single header line
/// (binary), then the entries in column-major order as (re, im) pairs of
/// little-endian 8-byte floats.
void write_propagator(const std::filesystem::path& path, const Propagator& P, MatrixFormat fmt);

std::string even_report_json(const CatMap& A, const EvenCaseReport& rep);
std::string even_report_csv_summary(const CatMap& A, const EvenCaseReport& rep);

/// Advisory on-disk cache of period records, one JSON object per line,
/// keyed by (a, b, c, d, q). Re-derivable at any time.
class PeriodCache {
  public:
    explicit PeriodCache(std::filesystem::path path);

    std::optional<PeriodRecord> lookup(const CatMap& A, unsigned q) const;
    void store(const CatMap& A, const PeriodRecord& rec);
    void save() const;

    std::size_t size() const { return entries_.size(); }

  private:
    std::filesystem::path path_;
    struct Entry {
        std::int64_t a, b, c, d;
        PeriodRecord rec;
    };
    std::vector<Entry> entries_;
};

}  // namespace catmap
