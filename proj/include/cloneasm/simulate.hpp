#pragma once

#include <random>

#include "cloneasm/ingest.hpp"

namespace cloneasm {

struct SimParams {
    bp genome_length = 10000000;
    int n_chromosomes = 1;
    bp clone_length_mean = 150000;
    bp clone_length_spread = 30000;
    double target_coverage = 4.0;
    double phase_mix_p1 = 0.5;
    double phase_mix_p2 = 0.1;
    double phase_mix_p3 = 0.4;
    double fragments_per_draft_mean = 8.0;
    double fragments_per_draft_spread = 3.0;
    double fp_rate = 0.0;          // fraction of emitted overlaps that are repeat-induced
    double fp_consistent_fraction = 0.25;  // of the FPs, how many use the Fig-5 patterns
    double fn_rate = 0.0;          // fraction of true overlaps dropped
    double chimera_rate = 0.0;     // clones spliced from two distant loci
    double mislabel_rate = 0.0;    // clones given a wrong chromosome
    bool emit_sequences = false;
    uint64_t seed = 1;

    void validate() const;
};

enum class OverlapLabel : uint8_t { True, RepeatInducedInconsistent, RepeatInducedConsistent };

struct TrueFragmentPos {
    int chrom = 0;
    bp gstart = 0, gend = 0;  // half-open on the chromosome line
    Orient strand = Orient::Forward;
};

struct TrueClonePos {
    int chrom = 0;
    bp gstart = 0, gend = 0;
    bool chimera = false;
    int chrom2 = 0;  // second locus when chimeric
    bp gstart2 = 0, gend2 = 0;
    bool mislabeled = false;
    std::string true_label;  // correct chromosome, even when mislabeled
};

struct LabeledOverlap {
    FragIndex frag_a = kNoIndex, frag_b = kNoIndex;  // canonical order
    OverlapLabel label = OverlapLabel::True;
};

struct GroundTruth {
    std::vector<TrueFragmentPos> fragments;  // by FragIndex
    std::vector<TrueClonePos> clones;        // by CloneIndex
    std::vector<LabeledOverlap> overlaps;    // every emitted alignment's pair
    std::vector<std::pair<FragIndex, FragIndex>> dropped;  // FN-deleted true overlaps
    std::vector<CloneIndex> chimeras;
    std::vector<CloneIndex> mislabeled;

    OverlapLabel label_of(const Dataset& ds, FragIndex a, FragIndex b) const;
};

struct SimBundle {
    Dataset dataset;
    std::vector<RawAlignment> alignments;
    std::vector<OrientationPair> orientation_pairs;
    std::vector<ValidOverlap> nt_pairs;
    GroundTruth truth;
};

/// Generates clones, fragments and overlap evidence with full ground truth.
/// Deterministic under a fixed seed.
SimBundle simulate(const SimParams& params);

/// Writes the bundle through the ingest serializers plus truth.tsv;
/// everything round-trips through the parsers losslessly.
void write_bundle(const std::string& dir, const SimBundle& bundle);

/// Reads truth.tsv back (ids resolved against ds).
GroundTruth read_truth(std::istream& in, const Dataset& ds);
void write_truth(std::ostream& out, const Dataset& ds, const GroundTruth& truth);

}  // namespace cloneasm
