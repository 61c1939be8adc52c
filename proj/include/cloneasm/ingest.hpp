#pragma once

#include <iosfwd>
#include <variant>

#include "cloneasm/overlap.hpp"

namespace cloneasm {

/// A local alignment between two fragments, 1-based inclusive coordinates on
/// each fragment's own (forward) axis. strand Reverse means b's segment was
/// reverse-complemented to match a.
struct RawAlignment {
    FragIndex frag_a = kNoIndex;
    FragIndex frag_b = kNoIndex;
    bp a_start = 0, a_end = 0;
    bp b_start = 0, b_end = 0;
    RelOrient strand = RelOrient::Same;
    double identity = 1.0;
};

enum class RejectReason : uint8_t { LowIdentity, Internal };

struct Rejected {
    RejectReason reason;
};

using ClassifyResult = std::variant<ValidOverlap, Rejected>;

/// Decides whether a local alignment is a valid overlap (dovetail or
/// containment) given each fragment's end-allowed-error, or rejects it.
/// Classification is total: every alignment gets exactly one outcome.
ClassifyResult classify_overlap(const Dataset& ds, const RawAlignment& aln,
                                const PipelineParams& params);

/// Clone table: header row `accession estimated_length phase chromosome
/// n_fragments`, then that many fragment rows `frag_id start end length`
/// with optional trailing `L`/`R` end marker and declared order index.
/// Chromosome token `U` means Unknown.
Dataset parse_clone_table(std::istream& in);
void write_clone_table(std::ostream& out, const Dataset& ds);

/// Alignments TSV: frag_a a_start a_end frag_b b_start b_end strand identity.
std::vector<RawAlignment> parse_alignments(std::istream& in, const Dataset& ds,
                                           Diagnostics& diag);
void write_alignments(std::ostream& out, const Dataset& ds,
                      const std::vector<RawAlignment>& alns);

/// Orientation pairs TSV: frag_a frag_b Same|Reverse. Duplicates merge with
/// evidence counts summed; self pairs and unknown ids are skipped with a
/// warning.
std::vector<OrientationPair> parse_orientation_pairs(std::istream& in,
                                                     const Dataset& ds,
                                                     Diagnostics& diag);
void write_orientation_pairs(std::ostream& out, const Dataset& ds,
                             const std::vector<OrientationPair>& pairs);

/// Nt-pairs TSV: frag_a frag_b offset. Offsets may imply 0bp overlaps
/// (consecutive fragments); orientation is taken as Same.
std::vector<ValidOverlap> parse_nt_pairs(std::istream& in, const Dataset& ds,
                                         Diagnostics& diag);
void write_nt_pairs(std::ostream& out, const Dataset& ds,
                    const std::vector<ValidOverlap>& pairs);

/// Optional side file mapping frag_id -> base string over {A,C,G,T,N}.
void parse_sequences(std::istream& in, Dataset& ds, Diagnostics& diag);

}  // namespace cloneasm
