#pragma once

#include <iosfwd>
#include <map>

#include "cloneasm/layout.hpp"

namespace cloneasm {

/// One piece of evidence for a clone edge: a recorded overlap whose fragment
/// pair is co-placed, intersecting and offset-consistent inside a subcontig.
struct EdgeWitness {
    int32_t overlap_id = -1;
    int32_t subcontig_id = -1;
};

struct CloneEdge {
    CloneIndex a = kNoIndex;  // clone_rank(a) < clone_rank(b)
    CloneIndex b = kNoIndex;
    std::vector<EdgeWitness> witnesses;
    bool fn_added = false;  // inserted by interval resolution, no fragment witness
};

/// Vertices are clones with at least one placed fragment; an edge exists iff
/// some fragment pair of the two clones overlaps within a subcontig, with the
/// recorded overlap as witness. No self-loops.
class CloneGraph {
public:
    void add_vertex(CloneIndex c);
    CloneEdge& edge(CloneIndex a, CloneIndex b);  // creates if absent
    const CloneEdge* find_edge(CloneIndex a, CloneIndex b) const;
    bool has_edge(CloneIndex a, CloneIndex b) const { return find_edge(a, b) != nullptr; }
    void remove_edge(CloneIndex a, CloneIndex b);
    void remove_vertex(CloneIndex c);

    const std::vector<CloneIndex>& vertices() const { return vertices_; }
    const std::vector<CloneIndex>& neighbors(CloneIndex c) const;
    const std::map<std::pair<CloneIndex, CloneIndex>, CloneEdge>& edges() const {
        return edges_;
    }
    bool has_vertex(CloneIndex c) const { return adj_.count(c) > 0; }

    /// Connected components, each sorted by clone rank; component list sorted
    /// by its lowest-ranked member.
    std::vector<std::vector<CloneIndex>> components(const Dataset& ds) const;

private:
    std::pair<CloneIndex, CloneIndex> norm(CloneIndex a, CloneIndex b) const;
    std::vector<CloneIndex> vertices_;
    std::map<std::pair<CloneIndex, CloneIndex>, CloneEdge> edges_;
    std::map<CloneIndex, std::vector<CloneIndex>> adj_;
};

/// Builds the clone graph from subcontig placements: every intersecting
/// placed fragment pair of two different clones with a matching recorded
/// overlap becomes a witness.
CloneGraph build_clone_graph(const Dataset& ds, const std::vector<Subcontig>& subcontigs,
                             const OverlapIndex& index, const PipelineParams& params);

enum class DeferredFate : uint8_t {
    Accepted,
    NoWitness,
    OutWitnessed,
    Ambiguous,
    FailedReverify  // accepted by clone evidence but contradicted in the second merge pass
};

struct ResolvedOverlaps {
    std::vector<ValidOverlap> accepted;
    std::vector<std::pair<ValidOverlap, DeferredFate>> rejected;  // repeat-induced
};

/// Resolves deferred inconsistent overlaps against clone-overlap evidence: an
/// overlap is acceptable iff its clone pair has an edge with at least one
/// independent witness; pairwise conflicts keep the better-witnessed side and
/// reject ties outright (Ambiguous).
ResolvedOverlaps resolve_inconsistent_overlaps(const Dataset& ds,
                                               const std::vector<DeferredOverlap>& deferred,
                                               const CloneGraph& graph,
                                               const OverlapIndex& index,
                                               const PipelineParams& params);

/// Edge list TSV `clone_a clone_b witness_count`.
void write_clone_graph(std::ostream& out, const Dataset& ds, const CloneGraph& graph);

}  // namespace cloneasm
