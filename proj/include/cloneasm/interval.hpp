#pragma once

#include <set>
#include <variant>

#include "cloneasm/clone_graph.hpp"
#include "cloneasm/graph.hpp"

namespace cloneasm {

/*
 * Interval machinery on clone-graph components.
 *
 * Recognition is certifying in both directions: a returned model is verified
 * to realize the graph exactly before it leaves this module, and a returned
 * witness induces a non-interval subgraph checkable by definition. Decision
 * rests on chordality (LexBFS + perfect elimination test) plus asteroidal
 * triple search; models come from umbrella-free multi-sweep orders, with a
 * pruned clique-chain search as the fallback realizer.
 */

/// Closed integer intervals: u ~ v iff [l_u,r_u] and [l_v,r_v] intersect.
struct VertexInterval {
    int vertex = -1;
    int64_t left = 0;
    int64_t right = 0;
};

struct GraphModel {
    std::vector<VertexInterval> intervals;  // indexed by vertex
};

struct ChordlessCycle {
    std::vector<int> vertices;  // in cycle order, length >= 4
};

struct AsteroidalTriple {
    int x = -1, y = -1, z = -1;
    std::vector<int> path_xy, path_yz, path_xz;  // each avoids N[third]
};

using ForbiddenWitness = std::variant<ChordlessCycle, AsteroidalTriple>;

using RecognitionResult = std::variant<GraphModel, ForbiddenWitness>;

/// Exact interval-graph recognition with certificates.
RecognitionResult recognize_interval(const CompactGraph& g);

/// Decision only (no model construction); total for any size.
bool is_interval_graph(const CompactGraph& g);

/// Test oracle: decides by simplicial elimination + asteroidal-triple scan,
/// cross-asserted against an exhaustive endpoint-sequence search that also
/// produces the model. Throws on vertex counts above max_n.
struct BruteForceResult {
    bool interval = false;
    std::optional<GraphModel> model;
};
BruteForceResult brute_force_interval(const CompactGraph& g, int max_n = 9);

/// True iff g restricted to all vertices but v is interval. g must be
/// non-interval; v must be a vertex of g.
bool is_I_critical(const CompactGraph& g, int v);

/// Re-checks a witness against the graph by definition.
bool verify_witness(const CompactGraph& g, const ForbiddenWitness& w);

bool model_realizes(const CompactGraph& g, const GraphModel& m);

// ---------------------------------------------------------------------------
// Component resolution (clone-level).

enum class RemoveReason : uint8_t { SuspiciousChimera, UnidentifiedRepeat };

struct ActAddFnEdge {
    CloneIndex a = kNoIndex, b = kNoIndex;
    FragIndex frag_a = kNoIndex, frag_b = kNoIndex;  // geometry evidence
};
struct ActRemoveFpEdges {
    std::vector<std::pair<CloneIndex, CloneIndex>> edges;
    FragIndex carrier = kNoIndex;  // identified repeat carrier fragment
};
struct ActRemoveVertex {
    CloneIndex clone = kNoIndex;
    RemoveReason reason = RemoveReason::UnidentifiedRepeat;
};
/// Gap caveat: clones shorter than the configured floor are detached and kept
/// as singletons instead of being blamed.
struct ActSidelineShortClone {
    CloneIndex clone = kNoIndex;
};

using ResolutionAction =
    std::variant<ActAddFnEdge, ActRemoveFpEdges, ActRemoveVertex, ActSidelineShortClone>;

/// Fragment-pair geometry seen in subcontigs without a recorded overlap:
/// AddFnEdge candidates.
struct UnrecordedPairs {
    std::map<std::pair<CloneIndex, CloneIndex>, std::pair<FragIndex, FragIndex>> pairs;
    const std::pair<FragIndex, FragIndex>* find(CloneIndex a, CloneIndex b) const {
        auto it = pairs.find(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
        return it == pairs.end() ? nullptr : &it->second;
    }
};

/// Scans subcontigs for intersecting placed pairs of different clones whose
/// intersection is at least T_ov but which have no recorded matching overlap.
UnrecordedPairs collect_unrecorded_pairs(const Dataset& ds,
                                         const std::vector<Subcontig>& subcontigs,
                                         const OverlapIndex& index,
                                         const PipelineParams& params);

struct ResolutionContext {
    const Dataset& ds;
    const CloneGraph& graph;  // witness source
    const OverlapIndex& index;
    const UnrecordedPairs& fn_candidates;
    const PipelineParams& params;
    // Ratchets shared across resolution rounds: pairs never to re-add, pairs
    // added as FN edges.
    const std::set<std::pair<CloneIndex, CloneIndex>>* banned_fn = nullptr;
};

struct ComponentResolution {
    std::vector<ResolutionAction> actions;
    std::vector<CloneIndex> vertices;                       // survivors
    std::vector<std::pair<CloneIndex, CloneIndex>> edges;   // resolved, interval
    std::vector<CloneIndex> sidelined;
};

/// Resolves one non-interval component: per iteration find a forbidden
/// witness; if a witness vertex is I-critical apply the action ladder
/// (AddFnEdge, RemoveFpEdges, RemoveVertex); otherwise divide at articulation
/// points, resolve the blocks, and re-test the stitched component.
/// Throws InternalError when the component cannot be made interval.
ComponentResolution resolve_component(const std::vector<CloneIndex>& component,
                                      const ResolutionContext& ctx);

// ---------------------------------------------------------------------------
// Interval representation.

struct CloneInterval {
    CloneIndex clone = kNoIndex;
    int64_t left = 0;
    int64_t right = 0;
    int32_t rank = 0;       // order of left endpoints, ties by right then id
    int32_t component = 0;
};

struct IntervalModel {
    std::vector<CloneInterval> intervals;  // grouped by component, rank order
    std::map<CloneIndex, size_t> by_clone;

    const CloneInterval& of(CloneIndex c) const { return intervals[by_clone.at(c)]; }
    bool has(CloneIndex c) const { return by_clone.count(c) > 0; }
};

/// Exact realization of one resolved interval component, normalized to start
/// at coordinate 0. Throws InternalError on non-interval input.
std::vector<CloneInterval> interval_representation(const Dataset& ds,
                                                   const std::vector<CloneIndex>& vertices,
                                                   const std::vector<std::pair<CloneIndex, CloneIndex>>& edges,
                                                   int32_t component_id);

}  // namespace cloneasm
