#pragma once

#include "cloneasm/scaffold.hpp"
#include "cloneasm/simulate.hpp"

namespace cloneasm {

struct AssemblyInputs {
    Dataset ds;
    std::vector<RawAlignment> alignments;
    std::vector<OrientationPair> orientation_pairs;
    std::vector<ValidOverlap> nt_pairs;
    Diagnostics diagnostics;
};

/// Per-step tallies mirroring the shape of the published aggregates; streamed
/// in verbose mode.
struct StepCounts {
    int64_t fragments_total = 0;
    int64_t fragments_singleton = 0;
    int64_t fragments_maximal = 0;
    int64_t fragments_subfragment = 0;
    int64_t alignments_accepted = 0;
    int64_t alignments_rejected_identity = 0;
    int64_t alignments_rejected_internal = 0;
    int64_t subcontigs_initial = 0;
    int64_t overlaps_deferred = 0;
    int64_t deferred_accepted = 0;
    int64_t clone_graph_vertices = 0;
    int64_t clone_graph_edges = 0;
    int64_t components = 0;
    int64_t noninterval_components = 0;
    int64_t clones_removed = 0;
    int64_t clones_sidelined = 0;
    int64_t fn_edges_added = 0;
    int64_t fp_edges_removed = 0;
    int64_t subcontigs_final = 0;
    int64_t contigs = 0;
    int64_t fragments_removed_fn = 0;
    int64_t fragments_used = 0;
};

struct PipelineResult {
    PipelineResult(const Dataset& ds) : index(ds) {}

    OverlapIndex index;  // all accepted overlaps (classified + nt-pairs)
    std::vector<FragmentClass> classes;
    std::vector<std::pair<RawAlignment, RejectReason>> rejected_alignments;

    std::vector<Subcontig> subcontigs;  // final, post interval resolution
    std::vector<ChromAssignment> chrom_flags;
    CloneGraph graph;  // final, including FN-added edges
    IntervalModel model;

    std::vector<ResolutionAction> actions;
    std::vector<CloneIndex> removed_clones;
    std::vector<CloneIndex> sidelined_clones;
    std::vector<ValidOverlap> accepted_deferred;
    std::vector<std::pair<ValidOverlap, DeferredFate>> rejected_overlaps;
    std::vector<RejectedSubfragment> rejected_subfragments;

    std::vector<SubcontigOrientation> orientations;
    std::vector<Contig> contigs;
    std::vector<FnReport> fn_reports;
    std::vector<FpReport> fp_reports;
    ExtraInfoLog extra_log;
    OrientUnsureStats orient_stats;
    std::vector<ConsensusLayout> layouts;  // parallel to contigs

    StepCounts counts;
};

/// Runs assembly steps 1-15 end to end. Deterministic for fixed inputs and
/// params. `log` may be null; verbose step counts go there.
PipelineResult run_pipeline(const AssemblyInputs& inputs, const PipelineParams& params,
                            std::ostream* log = nullptr);

/// Writes every assembly artifact into `dir` (created if needed).
void write_artifacts(const std::string& dir, const AssemblyInputs& inputs,
                     const PipelineResult& result, const PipelineParams& params);

std::string action_to_string(const Dataset& ds, const ResolutionAction& a);

}  // namespace cloneasm
