#pragma once

#include <array>
#include <iosfwd>

#include "cloneasm/score.hpp"

namespace cloneasm {

// Histogram boundaries are part of the artifact contract; the TSV headers
// must carry these exact strings.
inline constexpr std::array<const char*, 6> kWarpBucketNames = {
    "<=1.5", "1.5-1.8", "1.8-2.0", "2.0-5.0", "5.0-10.0", ">10.0"};
inline constexpr std::array<const char*, 8> kLengthBucketNames = {
    "250K-300K", "300K-500K", "500K-800K", "800K-1M", "1M-2M", "2M-3M", "3M-10M", "10M-20M"};

/// Bucket index into kWarpBucketNames.
int warp_bucket(double warp);

/// Bucket index into kLengthBucketNames, or -1 when out of table range.
int length_bucket(bp assembled_length);

/// One clone's contribution to the reports.
struct CloneStat {
    CloneIndex clone = kNoIndex;
    bp assembled_span = 0;
    bp estimated = 0;
    double warp = 0.0;
};

struct AssemblySummaryRow {
    int64_t bacs = 0;
    int64_t fragments_used = 0;
    int64_t fragments = 0;
    int64_t contigs = 0;
    bp length = 0;
};

struct AssemblyStats {
    std::vector<CloneStat> clones;  // assembled (non-singleton) clones
    AssemblySummaryRow singletons;
    AssemblySummaryRow non_singletons;

    std::array<int64_t, 6> warp_histogram() const;
    /// Assembled-length histogram restricted to clones with warp above the
    /// flag threshold.
    std::array<int64_t, 8> length_histogram(double warp_threshold) const;
};

/// Derives per-clone spans and the summary rows from a finished run.
AssemblyStats collect_stats(const AssemblyInputs& inputs, const PipelineResult& result,
                            const PipelineParams& params);

void write_warp_histogram(std::ostream& out, const AssemblyStats& stats,
                          double warp_threshold);
void write_length_histogram(std::ostream& out, const AssemblyStats& stats,
                            double warp_threshold);
void write_summary(std::ostream& out, const AssemblyStats& stats, bool tsv);

/// Long-clone section: every clone whose assembled span exceeds the flag
/// length, largest first.
void write_long_clones(std::ostream& out, const Dataset& ds, const AssemblyStats& stats,
                       bp long_flag);

// --- artifact-based reporting (cmd_report / cmd_compare) --------------------

/// Minimal view of an assembly reloaded from its artifact directory.
struct AssemblyView {
    std::vector<CloneStat> clones;
    int64_t contigs = 0;
    int64_t fragments_used = 0;
    std::vector<std::pair<std::string, std::string>> removed;  // clone, disposition
};

/// Parses layout.txt (+ removed_clones.tsv when present) against the clone
/// table.
AssemblyView load_assembly_view(const std::string& dir, const Dataset& ds);

/// Side-by-side warp buckets, fragments-used and contig counts. Disjoint
/// clone universes are reported, not fatal.
void write_comparison(std::ostream& out, const Dataset& ds, const AssemblyView& a,
                      const AssemblyView& b, double warp_threshold);

}  // namespace cloneasm
