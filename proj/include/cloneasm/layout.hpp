#pragma once

#include <iosfwd>
#include <map>
#include <set>

#include "cloneasm/overlap.hpp"

namespace cloneasm {

enum class FragClassKind : uint8_t { Singleton, Subfragment, Maximal };

struct FragmentClass {
    FragClassKind kind = FragClassKind::Singleton;
    FragIndex container = kNoIndex;     // set for Subfragment
    int32_t container_overlap = -1;     // overlap id witnessing the containment
};

/// Singleton: no valid overlaps. Subfragment: contained in another fragment
/// (the container wins even when dovetails exist). Maximal: everything else.
std::vector<FragmentClass> classify_fragments(const Dataset& ds,
                                              const OverlapIndex& index,
                                              const PipelineParams& params);

enum class Consistency : uint8_t { Consistent, Inconsistent, Independent };

/// Composes two overlaps sharing a fragment and checks whether the implied
/// third-party overlap is supported. Implied overlaps of at most T_ov carry
/// no constraint (Independent).
Consistency check_consistency(const Dataset& ds, const ValidOverlap& o_ab,
                              const ValidOverlap& o_bc, const OverlapIndex& index,
                              const PipelineParams& params);

/// A coordinate layout of fragments built from consistent overlaps.
struct Subcontig {
    int32_t id = -1;
    std::vector<Placement> placements;  // sorted by (pos, fragment rank)
    bp length = 0;
    std::vector<CloneIndex> member_clones;  // sorted by rank, unique
};

enum class SubfragRejectReason : uint8_t { ConflictingEvidence, OrphanContainer };

struct RejectedSubfragment {
    FragIndex frag = kNoIndex;
    SubfragRejectReason reason = SubfragRejectReason::ConflictingEvidence;
};

struct DeferredOverlap {
    ValidOverlap overlap;
};

/// Greedy union of fragment layouts driven by dovetail overlaps. A merge is
/// performed only after every fragment pair the merge would bring within
/// implied-overlap range passes check_consistency; otherwise the driving
/// overlap is deferred for clone-graph resolution, never discarded.
class Assembler {
public:
    Assembler(const Dataset& ds, const OverlapIndex& index,
              const std::vector<FragmentClass>& classes, const PipelineParams& params);

    enum class Outcome : uint8_t { Merged, AlreadyConsistent, Deferred };

    /// Feeds one dovetail overlap between maximal fragments.
    Outcome process(const ValidOverlap& ov);

    /// Runs the standard first pass: dovetail overlaps between maximal
    /// fragments, sorted by (overlap_length desc, canonical pair ranks).
    void run_first_pass();

    /// Places good subfragments at container-relative coordinates; a
    /// subfragment is good iff all its other overlaps to already-placed
    /// fragments agree within T_off.
    void place_subfragments();

    /// Re-checks placed subfragments after later merge passes; evictions are
    /// recorded as ConflictingEvidence.
    void revalidate_subfragments();

    const std::vector<DeferredOverlap>& deferred() const { return deferred_; }
    std::vector<DeferredOverlap> take_deferred();
    const std::vector<RejectedSubfragment>& rejected_subfragments() const {
        return rejected_subfrags_;
    }

    bool placed(FragIndex f) const { return comp_[f] >= 0; }
    Placement placement(FragIndex f) const;

    /// Extracts normalized subcontigs: every component translated to start at
    /// 0, flipped so its lowest-ranked fragment is Forward, ids assigned in
    /// canonical order.
    std::vector<Subcontig> finalize() const;

private:
    struct Comp {
        std::vector<Placement> placements;  // sorted by pos
        bp max_len = 0;
        bool alive = false;
    };

    bp tentative_pos(bp pos, bp len, bool do_flip, bp shift) const {
        return do_flip ? shift - pos - len : pos + shift;
    }
    bool check_pair(const Placement& u, const Placement& g) const;
    bool cross_check(const Comp& small, const Comp& big, bool do_flip, bp shift) const;
    void ensure_component(FragIndex f);

    const Dataset& ds_;
    const OverlapIndex& index_;
    const std::vector<FragmentClass>& classes_;
    const PipelineParams& params_;
    std::vector<Comp> comps_;
    std::vector<int32_t> comp_;  // per fragment; -1 = unplaced
    std::vector<bp> pos_;
    std::vector<Orient> orient_;
    std::vector<DeferredOverlap> deferred_;
    std::vector<RejectedSubfragment> rejected_subfrags_;
};

/// Chromosome vote over a subcontig's member clones.
enum class ChromFlag : uint8_t { Clean, MinorityDissent, Conflicted };

struct ChromAssignment {
    std::optional<std::string> label;
    ChromFlag flag = ChromFlag::Clean;
    std::vector<CloneIndex> dissenters;
};

/// Majority label among assigned member clones; Unknown clones abstain. Ties
/// and dissent of two or more clones flag the subcontig instead of
/// relabeling anything.
std::vector<ChromAssignment> resolve_chromosome_conflicts(
    const Dataset& ds, const std::vector<Subcontig>& subcontigs);

/// TSV dump `subcontig_id frag_id start orientation`, one row per placement.
void write_subcontigs(std::ostream& out, const Dataset& ds,
                      const std::vector<Subcontig>& subcontigs);
std::vector<Subcontig> read_subcontigs(std::istream& in, const Dataset& ds);

/// Drops the given fragments, and all witness links between the given clone
/// pairs, from subcontigs; layouts split wherever the surviving
/// witnessed-overlap graph disconnects. Containment cascades: a placed
/// subfragment whose container was dropped is dropped too.
std::vector<Subcontig> apply_removals(
    const Dataset& ds, const OverlapIndex& index,
    const std::vector<FragmentClass>& classes, const std::vector<Subcontig>& subcontigs,
    const std::set<FragIndex>& removed_frags,
    const std::set<std::pair<CloneIndex, CloneIndex>>& removed_clone_pairs,
    const PipelineParams& params, std::vector<RejectedSubfragment>* orphaned);

}  // namespace cloneasm
