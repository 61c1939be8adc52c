#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace cloneasm {

/// Small undirected graph on vertices 0..n-1 with sorted adjacency lists.
struct CompactGraph {
    int n = 0;
    std::vector<std::vector<int>> adj;

    static CompactGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges);
    bool has_edge(int u, int v) const;
    int64_t edge_count() const;
    std::vector<std::pair<int, int>> edges() const;
    CompactGraph induced(const std::vector<int>& keep,
                         std::vector<int>* old_of_new = nullptr) const;
    bool connected() const;
};

/// Lexicographic BFS. Ties are broken toward the vertex with the highest
/// priority, so passing positions of a previous sweep yields LBFS+.
/// Returns the visit order.
std::vector<int> lexbfs(const CompactGraph& g, const std::vector<int>& priority);

/// Tests whether the reverse of a LexBFS visit order is a perfect
/// elimination order. On failure reports (v, u, w) with u, w non-adjacent
/// neighbors of v.
struct PeoFailure {
    int v, u, w;
};
std::optional<PeoFailure> check_peo(const CompactGraph& g, const std::vector<int>& visit_order);

/// Chordless cycle (length >= 4) in a non-chordal graph, as a vertex list in
/// cycle order. Must only be called when a PEO test failed.
std::vector<int> find_hole(const CompactGraph& g, const PeoFailure& hint);

/// Umbrella-free test: order is an interval order iff for every u all
/// vertices between u and its farthest right neighbor are neighbors of u.
bool is_umbrella_free(const CompactGraph& g, const std::vector<int>& order);

/// Shortest path from s to t through allowed vertices only (s, t included);
/// empty if none.
std::vector<int> bfs_path(const CompactGraph& g, int s, int t,
                          const std::vector<char>& allowed);

/// Articulation vertices, sorted.
std::vector<int> articulation_points(const CompactGraph& g);

/// Vertex sets of biconnected components (each includes its articulation
/// vertices); bridges and isolated edges form their own blocks.
std::vector<std::vector<int>> biconnected_blocks(const CompactGraph& g);

std::vector<std::vector<int>> connected_components(const CompactGraph& g);

}  // namespace cloneasm
