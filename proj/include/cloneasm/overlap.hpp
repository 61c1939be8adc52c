#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "cloneasm/dataset.hpp"

namespace cloneasm {

enum class OverlapKind : uint8_t { Dovetail, Containment, NtPair };

/*
 * Coordinate convention for overlaps and layouts.
 *
 * An overlap (a, b, offset, orient) places fragment b on fragment a's axis:
 * a occupies [0, len_a) and the oriented copy of b occupies
 * [offset, offset + len_b). When orient is Reverse the copy is the
 * reverse-complement of b, so b's native coordinate x sits at axis
 * coordinate offset + len_b - 1 - x.
 *
 * Swapping frames (expressing a on b's axis) is an involution:
 *   Same:     offset' = -offset
 *   Reverse:  offset' = offset + len_b - len_a
 * The Reverse case follows from flipping the whole axis about the oriented
 * copy of b; tests/test_model.cpp re-derives it by brute-force placement.
 */
struct ValidOverlap {
    FragIndex frag_a = kNoIndex;  // canonical: rank(frag_a) < rank(frag_b)
    FragIndex frag_b = kNoIndex;
    OverlapKind kind = OverlapKind::Dovetail;
    bp offset = 0;  // start of oriented b on a's axis
    RelOrient orient = RelOrient::Same;
    double identity = 1.0;  // NtPair exempt from the identity floor
    bp overlap_length = 0;
};

struct OrientationPair {
    FragIndex frag_a = kNoIndex;
    FragIndex frag_b = kNoIndex;
    RelOrient orient = RelOrient::Same;
    int32_t evidence_count = 1;
};

/// A fragment placed on a shared subcontig axis.
struct Placement {
    FragIndex frag = kNoIndex;
    bp pos = 0;
    Orient orient = Orient::Forward;
};

/// Offset of a swapped overlap: given (x, y, offset) produce the offset of
/// the (y, x) expression of the same overlap.
bp swap_offset(bp offset, RelOrient orient, bp len_x, bp len_y);

/// Re-expresses an overlap with fragments in canonical rank order.
/// Idempotent; throws InputError on unknown fragment ids.
ValidOverlap canonicalize_overlap(const Dataset& ds, const ValidOverlap& raw);

/// Intersection length of a [0,len_a) with b placed at [offset, offset+len_b);
/// clamped at zero.
bp overlap_span(bp offset, bp len_a, bp len_b);

/// Placement of g implied by f's placement plus an overlap expressed f->g.
Placement implied_placement(const Placement& f, bp len_f, bp len_g,
                            FragIndex g, bp offset_fg, RelOrient rel);

/// Offset of g on f's axis implied by their placements on a common axis.
bp implied_offset(const Placement& f, bp len_f, const Placement& g, bp len_g);

inline RelOrient implied_rel(const Placement& f, const Placement& g) {
    return f.orient == g.orient ? RelOrient::Same : RelOrient::Reverse;
}

/// Which fragment of a Containment overlap is the contained one.
/// Decided from placement geometry with each fragment's own end tolerance;
/// when both directions hold the shorter fragment is contained (ties to the
/// higher-ranked id).
FragIndex contained_fragment(const Dataset& ds, const ValidOverlap& ov,
                             const PipelineParams& params);

/// All valid overlaps keyed by canonical fragment pair.
class OverlapIndex {
public:
    explicit OverlapIndex(const Dataset& ds) : ds_(&ds) {}

    void add(const ValidOverlap& ov);
    /// Overlap ids recorded for an (unordered) fragment pair.
    std::span<const int32_t> pair_ids(FragIndex a, FragIndex b) const;
    /// Overlap ids touching one fragment.
    std::span<const int32_t> of_fragment(FragIndex f) const;
    const std::vector<ValidOverlap>& all() const { return overlaps_; }
    size_t size() const { return overlaps_.size(); }

    /// True iff some overlap of the pair matches the given f->g geometry
    /// within tol.
    bool has_matching(FragIndex f, FragIndex g, bp offset_fg, RelOrient rel, bp tol) const;

    /// Overlap-index keys of matching overlaps (for witness bookkeeping).
    void matching(FragIndex f, FragIndex g, bp offset_fg, RelOrient rel, bp tol,
                  std::vector<int32_t>& out) const;

    const ValidOverlap& at(int32_t id) const { return overlaps_[id]; }

private:
    static uint64_t key(FragIndex a, FragIndex b) {
        return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) |
               static_cast<uint32_t>(b);
    }
    const Dataset* ds_;
    std::vector<ValidOverlap> overlaps_;
    std::unordered_map<uint64_t, std::vector<int32_t>> by_pair_;
    mutable std::vector<std::vector<int32_t>> by_frag_;
};

}  // namespace cloneasm
