#include "cloneasm/graph.hpp"

#include <algorithm>
#include <stdexcept>

#include "cloneasm/types.hpp"

namespace cloneasm {

CompactGraph CompactGraph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    CompactGraph g;
    g.n = n;
    g.adj.assign(n, {});
    for (auto [u, v] : edges) {
        if (u == v) continue;
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& a : g.adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return g;
}

bool CompactGraph::has_edge(int u, int v) const {
    const auto& a = adj[u].size() <= adj[v].size() ? adj[u] : adj[v];
    int t = adj[u].size() <= adj[v].size() ? v : u;
    return std::binary_search(a.begin(), a.end(), t);
}

int64_t CompactGraph::edge_count() const {
    int64_t m = 0;
    for (const auto& a : adj) m += static_cast<int64_t>(a.size());
    return m / 2;
}

std::vector<std::pair<int, int>> CompactGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n; ++u)
        for (int v : adj[u])
            if (u < v) out.push_back({u, v});
    return out;
}

CompactGraph CompactGraph::induced(const std::vector<int>& keep,
                                   std::vector<int>* old_of_new) const {
    std::vector<int> new_of_old(n, -1);
    for (size_t i = 0; i < keep.size(); ++i) new_of_old[keep[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> es;
    for (int u : keep)
        for (int v : adj[u])
            if (u < v && new_of_old[v] >= 0) es.push_back({new_of_old[u], new_of_old[v]});
    if (old_of_new) *old_of_new = keep;
    return from_edges(static_cast<int>(keep.size()), es);
}

bool CompactGraph::connected() const {
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int cnt = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++cnt;
                stack.push_back(v);
            }
    }
    return cnt == n;
}

std::vector<int> lexbfs(const CompactGraph& g, const std::vector<int>& priority) {
    const int n = g.n;
    std::vector<int> order;
    order.reserve(n);
    if (n == 0) return order;

    // Vertices sorted by priority descending; adjacency re-sorted the same
    // way so that bucket splits preserve internal priority order.
    std::vector<int> by_prio(n);
    for (int v = 0; v < n; ++v) by_prio[v] = v;
    std::sort(by_prio.begin(), by_prio.end(),
              [&](int a, int b) { return priority[a] > priority[b]; });
    std::vector<std::vector<int>> adj_sorted(n);
    for (int v : by_prio)
        for (int u : g.adj[v]) adj_sorted[u].push_back(v);

    // Intrusive doubly linked vertex lists per bucket, buckets chained.
    // Every pivot may split each adjacent bucket once, so bucket ids are
    // bounded by n + 2m.
    int64_t m2 = 0;
    for (const auto& a : g.adj) m2 += static_cast<int64_t>(a.size());
    const int cap = static_cast<int>(n + m2 + 4);
    std::vector<int> vnext(n, -1), vprev(n, -1), vbucket(n, -1);
    std::vector<int> head(cap, -1), tail(cap, -1), bnext(cap, -1), bprev(cap, -1);
    std::vector<int> twin(cap, -1);
    std::vector<char> visited(n, 0);
    int bucket_count = 0;
    int first_bucket = bucket_count++;

    auto push_back_vertex = [&](int b, int v) {
        vbucket[v] = b;
        vprev[v] = tail[b];
        vnext[v] = -1;
        if (tail[b] >= 0)
            vnext[tail[b]] = v;
        else
            head[b] = v;
        tail[b] = v;
    };
    auto detach_vertex = [&](int v) {
        int b = vbucket[v];
        if (vprev[v] >= 0) vnext[vprev[v]] = vnext[v];
        else head[b] = vnext[v];
        if (vnext[v] >= 0) vprev[vnext[v]] = vprev[v];
        else tail[b] = vprev[v];
    };
    auto remove_bucket_if_empty = [&](int b) {
        if (head[b] >= 0) return;
        if (bprev[b] >= 0) bnext[bprev[b]] = bnext[b];
        else first_bucket = bnext[b];
        if (bnext[b] >= 0) bprev[bnext[b]] = bprev[b];
    };

    for (int v : by_prio) push_back_vertex(first_bucket, v);

    std::vector<int> touched;
    for (int step = 0; step < n; ++step) {
        int p = head[first_bucket];
        detach_vertex(p);
        remove_bucket_if_empty(vbucket[p]);
        visited[p] = 1;
        order.push_back(p);

        touched.clear();
        for (int u : adj_sorted[p]) {
            if (visited[u]) continue;
            int b = vbucket[u];
            if (twin[b] < 0) {
                int t = bucket_count++;
                if (t >= cap) throw InternalError("lexbfs bucket overflow");
                twin[b] = t;
                touched.push_back(b);
                // insert t immediately before b
                bprev[t] = bprev[b];
                bnext[t] = b;
                if (bprev[b] >= 0) bnext[bprev[b]] = t;
                else first_bucket = t;
                bprev[b] = t;
                head[t] = tail[t] = -1;
                twin[t] = -1;
            }
            detach_vertex(u);
            int old_bucket = vbucket[u];
            push_back_vertex(twin[old_bucket], u);
            remove_bucket_if_empty(old_bucket);
        }
        for (int b : touched) twin[b] = -1;
    }
    return order;
}

std::optional<PeoFailure> check_peo(const CompactGraph& g,
                                    const std::vector<int>& visit_order) {
    const int n = g.n;
    // Elimination order is the reverse visit order.
    std::vector<int> elim_pos(n);
    for (int i = 0; i < n; ++i) elim_pos[visit_order[i]] = n - 1 - i;

    // checklist[u]: (w, v) pairs meaning "w must be adjacent to u, asserted
    // while eliminating v".
    std::vector<std::vector<std::pair<int, int>>> checklist(n);
    std::vector<int> elim_of(n);
    for (int v = 0; v < n; ++v) elim_of[elim_pos[v]] = v;
    for (int i = 0; i < n; ++i) {
        int v = elim_of[i];
        int parent = -1;
        for (int w : g.adj[v]) {
            if (elim_pos[w] <= i) continue;
            if (parent < 0 || elim_pos[w] < elim_pos[parent]) parent = w;
        }
        if (parent < 0) continue;
        for (int w : g.adj[v])
            if (elim_pos[w] > i && w != parent) checklist[parent].push_back({w, v});
    }
    std::vector<char> mark(n, 0);
    for (int u = 0; u < n; ++u) {
        if (checklist[u].empty()) continue;
        for (int w : g.adj[u]) mark[w] = 1;
        for (auto [w, v] : checklist[u])
            if (!mark[w]) {
                for (int x : g.adj[u]) mark[x] = 0;
                return PeoFailure{v, u, w};
            }
        for (int w : g.adj[u]) mark[w] = 0;
    }
    return std::nullopt;
}

namespace {

std::vector<int> hole_through(const CompactGraph& g, int v, int x, int y) {
    // Shortest x..y path avoiding v and N(v) except the endpoints; a shortest
    // path is induced, and none of its interior touches v, so v + path is a
    // chordless cycle.
    std::vector<char> allowed(g.n, 1);
    allowed[v] = 0;
    for (int w : g.adj[v]) allowed[w] = 0;
    allowed[x] = allowed[y] = 1;
    auto path = bfs_path(g, x, y, allowed);
    if (path.empty()) return {};
    std::vector<int> cycle{v};
    cycle.insert(cycle.end(), path.begin(), path.end());
    return cycle;
}

}  // namespace

std::vector<int> find_hole(const CompactGraph& g, const PeoFailure& hint) {
    if (auto c = hole_through(g, hint.v, hint.u, hint.w); !c.empty()) return c;
    // Any hole h1..hk admits the triple (h2, h1, h3), so a full scan finds one.
    for (int v = 0; v < g.n; ++v)
        for (size_t i = 0; i < g.adj[v].size(); ++i)
            for (size_t j = i + 1; j < g.adj[v].size(); ++j) {
                int x = g.adj[v][i], y = g.adj[v][j];
                if (g.has_edge(x, y)) continue;
                if (auto c = hole_through(g, v, x, y); !c.empty()) return c;
            }
    throw InternalError("find_hole: no chordless cycle in a graph that failed the PEO test");
}

bool is_umbrella_free(const CompactGraph& g, const std::vector<int>& order) {
    const int n = g.n;
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    for (int u = 0; u < n; ++u) {
        int cnt = 0, mx = -1;
        for (int w : g.adj[u])
            if (pos[w] > pos[u]) {
                ++cnt;
                mx = std::max(mx, pos[w]);
            }
        if (cnt > 0 && mx - pos[u] != cnt) return false;
    }
    return true;
}

std::vector<int> bfs_path(const CompactGraph& g, int s, int t,
                          const std::vector<char>& allowed) {
    if (!allowed[s] || !allowed[t]) return {};
    std::vector<int> parent(g.n, -2);
    std::vector<int> queue{s};
    parent[s] = -1;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int u = queue[qi];
        if (u == t) break;
        for (int v : g.adj[u]) {
            if (!allowed[v] || parent[v] != -2) continue;
            parent[v] = u;
            queue.push_back(v);
        }
    }
    if (parent[t] == -2) return {};
    std::vector<int> path;
    for (int cur = t; cur != -1; cur = parent[cur]) path.push_back(cur);
    std::reverse(path.begin(), path.end());
    return path;
}

namespace {

struct BicState {
    const CompactGraph& g;
    std::vector<int> disc, low;
    std::vector<std::pair<int, int>> estack;
    std::vector<char> is_art;
    std::vector<std::vector<int>> blocks;
    int timer = 0;

    explicit BicState(const CompactGraph& g)
        : g(g), disc(g.n, -1), low(g.n, 0), is_art(g.n, 0) {}

    void emit_block(int u, int v) {
        std::vector<int> verts;
        while (!estack.empty()) {
            auto [a, b] = estack.back();
            estack.pop_back();
            verts.push_back(a);
            verts.push_back(b);
            if (a == u && b == v) break;
        }
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        blocks.push_back(std::move(verts));
    }

    // Iterative DFS: recursion depth could hit component size.
    void run(int root) {
        struct Frame {
            int u, parent;
            size_t next_child = 0;
        };
        std::vector<Frame> stack{{root, -1}};
        disc[root] = low[root] = timer++;
        int root_children = 0;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next_child < g.adj[f.u].size()) {
                int v = g.adj[f.u][f.next_child++];
                if (v == f.parent) continue;
                if (disc[v] == -1) {
                    estack.push_back({f.u, v});
                    disc[v] = low[v] = timer++;
                    if (f.u == root) ++root_children;
                    stack.push_back({v, f.u});
                } else if (disc[v] < disc[f.u]) {
                    estack.push_back({f.u, v});
                    low[f.u] = std::min(low[f.u], disc[v]);
                }
            } else {
                int u = f.u, parent = f.parent;
                stack.pop_back();
                if (parent >= 0) {
                    low[parent] = std::min(low[parent], low[u]);
                    if (low[u] >= disc[parent]) {
                        if (parent != root) is_art[parent] = 1;
                        emit_block(parent, u);
                    }
                }
            }
        }
        if (root_children > 1) is_art[root] = 1;
    }
};

}  // namespace

std::vector<int> articulation_points(const CompactGraph& g) {
    BicState st(g);
    for (int v = 0; v < g.n; ++v)
        if (st.disc[v] == -1) st.run(v);
    std::vector<int> out;
    for (int v = 0; v < g.n; ++v)
        if (st.is_art[v]) out.push_back(v);
    return out;
}

std::vector<std::vector<int>> biconnected_blocks(const CompactGraph& g) {
    BicState st(g);
    for (int v = 0; v < g.n; ++v)
        if (st.disc[v] == -1) {
            st.run(v);
            if (!st.estack.empty()) {
                // leftover edges form the last block of this component
                std::vector<int> verts;
                for (auto [a, b] : st.estack) {
                    verts.push_back(a);
                    verts.push_back(b);
                }
                std::sort(verts.begin(), verts.end());
                verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
                st.blocks.push_back(std::move(verts));
                st.estack.clear();
            }
        }
    // Isolated vertices become singleton blocks so every vertex is covered.
    std::vector<char> covered(g.n, 0);
    for (const auto& b : st.blocks)
        for (int v : b) covered[v] = 1;
    for (int v = 0; v < g.n; ++v)
        if (!covered[v]) st.blocks.push_back({v});
    return st.blocks;
}

std::vector<std::vector<int>> connected_components(const CompactGraph& g) {
    std::vector<int> comp(g.n, -1);
    int next = 0;
    for (int v = 0; v < g.n; ++v) {
        if (comp[v] >= 0) continue;
        std::vector<int> stack{v};
        comp[v] = next;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : g.adj[u])
                if (comp[w] < 0) {
                    comp[w] = next;
                    stack.push_back(w);
                }
        }
        ++next;
    }
    std::vector<std::vector<int>> out(next);
    for (int v = 0; v < g.n; ++v) out[comp[v]].push_back(v);
    return out;
}

}  // namespace cloneasm
