#pragma once

#include "cloneasm/pipeline.hpp"

namespace cloneasm {

/// Assembly-vs-truth metrics. Clone order is compared per interval component
/// up to reversal, with graph-indistinguishable clones (identical true
/// neighborhoods) collapsed into interchangeable classes first: their mutual
/// order is not determined by any overlap evidence.
struct ScoreReport {
    int components_compared = 0;
    int components_order_ok = 0;

    bp max_placement_error = 0;
    int64_t placements_compared = 0;

    int64_t true_emitted = 0, true_incorporated = 0;
    int64_t rii_emitted = 0, rii_incorporated = 0;  // repeat-induced, inconsistent
    int64_t ric_emitted = 0, ric_incorporated = 0;  // repeat-induced, consistent

    int chimeras_planted = 0;
    int chimeras_detected = 0;          // RemoveVertex with SuspiciousChimera
    int chimeras_detected_planted = 0;  // of those, actually planted
    int false_removals = 0;             // removed clones that were not chimeras
    int clones_total = 0;

    std::vector<std::pair<CloneIndex, CloneIndex>> fn_edges_added;
    int fn_reports = 0;

    std::vector<double> warps;  // one per clone assembled into a single contig
    int split_clones = 0;       // clones whose placed fragments span several contigs

    bool order_agreement_100() const {
        return components_compared == 0 || components_order_ok == components_compared;
    }
    double rejection_recall_inconsistent() const {
        return rii_emitted == 0
                   ? 1.0
                   : 1.0 - static_cast<double>(rii_incorporated) /
                               static_cast<double>(rii_emitted);
    }
};

ScoreReport score_assembly(const AssemblyInputs& inputs, const PipelineResult& result,
                           const GroundTruth& truth, const PipelineParams& params);

void write_score(std::ostream& out, const ScoreReport& s);

}  // namespace cloneasm
