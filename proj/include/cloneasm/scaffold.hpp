#pragma once

#include "cloneasm/interval.hpp"

namespace cloneasm {

struct SubcontigOrientation {
    Orient dir = Orient::Forward;
    bool sure = false;
    bool low_confidence = false;  // Unsure with no orientation evidence at all
};

struct ContigEntry {
    int32_t subcontig = -1;
    bp start = 0;
};

struct Contig {
    int32_t id = -1;
    int32_t component = -1;
    std::optional<std::string> chromosome;
    std::vector<ContigEntry> entries;  // sorted by assigned coordinates
    bp length = 0;
    // Runs of entries whose coordinate keys were identical (step-13 material).
    std::vector<std::pair<size_t, size_t>> tie_groups;  // [begin, end)
};

struct ScaffoldInput {
    const Dataset& ds;
    const std::vector<Subcontig>& subcontigs;  // indexed by subcontig id
    const IntervalModel& model;
    const CloneGraph& graph;
    const PipelineParams& params;
};

/// Flips each subcontig so member-clone ranks run non-decreasing along its
/// axis. A subcontig is Sure iff its minimum- and maximum-rank clones are not
/// adjacent in the clone graph.
std::vector<SubcontigOrientation> orient_subcontigs(const ScaffoldInput& in);

/// Coordinate key (min member left endpoint, max member right endpoint,
/// subcontig id); lexicographic sort per component; identical keys become tie
/// groups. Start coordinates leave one gap spacer between subcontigs.
std::vector<Contig> assign_coordinates_and_order(
    const ScaffoldInput& in, const std::vector<SubcontigOrientation>& orient);

struct AdjacencyViolation {
    int32_t contig = -1;
    int32_t left_subcontig = -1, right_subcontig = -1;
    CloneIndex left_clone = kNoIndex, right_clone = kNoIndex;
};

/// Consecutive subcontigs must face each other with identical or adjacent
/// clones.
std::vector<AdjacencyViolation> check_adjacency(
    const ScaffoldInput& in, const Contig& contig,
    const std::vector<SubcontigOrientation>& orient);

enum class FnCause : uint8_t {
    Unclassified,
    RepeatMasking,
    LowAccuracy,
    ChimericFragment,
    Polymorphism
};

struct FnReport {
    int32_t subcontig = -1;
    std::vector<FragIndex> removed_fragments;
    std::vector<AdjacencyViolation> violations;
    FnCause cause = FnCause::Unclassified;
};

/// A subcontig violating the adjacency condition in every feasible position
/// (tie-window permutations exhausted) is FN-affected: its fragments leave
/// the assembly and the contig is re-ordered locally.
std::vector<FnReport> detect_fns(const ScaffoldInput& in, std::vector<Contig>& contigs,
                                 const std::vector<SubcontigOrientation>& orient);

struct FpReport {
    CloneIndex clone = kNoIndex;
    double warp = 0.0;
    bp assembled_span = 0;
    bp estimated = 0;
    FragIndex span_lo_frag = kNoIndex, span_hi_frag = kNoIndex;
    std::vector<int32_t> stretch_overlaps;  // witnesses holding the extremes
    bool skipped = false;
    std::string note;
};

/// Global position of one placed fragment inside a contig.
struct GlobalPlacement {
    FragIndex frag = kNoIndex;
    bp start = 0;
    Orient orient = Orient::Forward;
    int32_t subcontig = -1;
};

std::vector<GlobalPlacement> global_placements(const ScaffoldInput& in, const Contig& contig,
                                               const std::vector<SubcontigOrientation>& orient);

/// Assembled clone span over its placed fragments divided by the estimated
/// clone length.
double compute_warp(const Dataset& ds, CloneIndex clone,
                    const std::vector<GlobalPlacement>& layout);

/// Flags clones whose warp or assembled span betrays a surviving consistent
/// repeat-induced overlap. Flag-only: nothing is removed.
std::vector<FpReport> detect_residual_fps(const ScaffoldInput& in,
                                          const std::vector<Contig>& contigs,
                                          const std::vector<SubcontigOrientation>& orient);

struct ExtraInfoLog {
    std::vector<std::string> applied;
    std::vector<std::string> infeasible;
};

/// Uses declared end fragments and partial fragment orders to reorder tie
/// groups and flip Unsure subcontigs, each adjustment gated by a fresh
/// adjacency check.
ExtraInfoLog apply_extra_info(const ScaffoldInput& in, std::vector<Contig>& contigs,
                              std::vector<SubcontigOrientation>& orient);

/// Greedy minimization of disagreeing orientation pairs over Unsure
/// subcontigs; Sure subcontigs never flip.
struct OrientUnsureStats {
    int initial_disagreements = 0;
    int final_disagreements = 0;
    int flips = 0;
};
OrientUnsureStats orient_unsure(const ScaffoldInput& in, const std::vector<Contig>& contigs,
                                const std::vector<OrientationPair>& pairs,
                                std::vector<SubcontigOrientation>& orient);

struct ConsensusLayout {
    std::vector<GlobalPlacement> placements;
    std::string sequence;  // empty unless sequences were supplied
    bp length = 0;
};

/// Global coordinates for every placed fragment; with sequences present the
/// consensus base at each position comes from the covering maximal fragment
/// of highest precedence (finished beats draft, then longer, then id), and
/// inter-subcontig gaps are runs of N.
ConsensusLayout consensus_layout(const ScaffoldInput& in, const Contig& contig,
                                 const std::vector<SubcontigOrientation>& orient,
                                 const std::vector<FragmentClass>& classes);

}  // namespace cloneasm
