#include "cloneasm/interval.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace cloneasm {

namespace {

constexpr int kMaxSweeps = 16;
constexpr int kAtStoreLimit = 4000;       // full component-label matrix below this
constexpr int64_t kChainBudget = 4000000;  // clique-chain backtracking nodes

GraphModel model_from_umbrella(const CompactGraph& g, const std::vector<int>& order) {
    std::vector<int> pos(g.n);
    for (int i = 0; i < g.n; ++i) pos[order[i]] = i;
    GraphModel m;
    m.intervals.resize(g.n);
    for (int u = 0; u < g.n; ++u) {
        int mx = pos[u];
        for (int w : g.adj[u]) mx = std::max(mx, pos[w]);
        m.intervals[u] = {u, 2 * static_cast<int64_t>(pos[u]),
                          2 * static_cast<int64_t>(mx) + 1};
    }
    return m;
}

// Maximal cliques of a chordal graph from a perfect elimination order.
std::vector<std::vector<int>> maximal_cliques(const CompactGraph& g,
                                              const std::vector<int>& visit_order) {
    const int n = g.n;
    std::vector<int> elim_pos(n);
    for (int i = 0; i < n; ++i) elim_pos[visit_order[i]] = n - 1 - i;
    std::vector<std::vector<int>> cands;
    for (int v = 0; v < n; ++v) {
        std::vector<int> c{v};
        for (int w : g.adj[v])
            if (elim_pos[w] > elim_pos[v]) c.push_back(w);
        std::sort(c.begin(), c.end());
        cands.push_back(std::move(c));
    }
    std::sort(cands.begin(), cands.end(),
              [](const auto& a, const auto& b) { return a.size() > b.size(); });
    std::vector<std::vector<int>> out;
    for (auto& c : cands) {
        bool subset = false;
        for (const auto& big : out) {
            if (big.size() < c.size()) continue;
            if (std::includes(big.begin(), big.end(), c.begin(), c.end())) {
                subset = true;
                break;
            }
        }
        if (!subset) out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Pruned search for a consecutive clique arrangement. Only reached when the
// multi-sweep path failed on a graph already decided interval, so the budget
// is a hard internal guard rather than an expected exit.
struct ChainSearch {
    const std::vector<std::vector<int>>& cliques;
    int n;
    std::vector<int> total, used_of;
    std::vector<char> used;
    std::vector<int> chain;
    int64_t budget = kChainBudget;
    std::vector<std::vector<int>> cliques_of;  // per vertex

    ChainSearch(const std::vector<std::vector<int>>& cliques, int n)
        : cliques(cliques), n(n), total(n, 0), used_of(n, 0),
          used(cliques.size(), 0), cliques_of(n) {
        for (size_t i = 0; i < cliques.size(); ++i)
            for (int v : cliques[i]) {
                ++total[v];
                cliques_of[v].push_back(static_cast<int>(i));
            }
    }

    bool feasible(int ci, const std::vector<int>& open) const {
        const auto& c = cliques[ci];
        for (int v : c)
            if (used_of[v] == total[v]) return false;  // run already closed
        for (int v : open)
            if (!std::binary_search(c.begin(), c.end(), v)) return false;
        return true;
    }

    bool search(size_t placed, std::vector<int>& open) {
        if (--budget < 0) throw InternalError("interval realizer: clique chain budget exhausted");
        if (placed == cliques.size()) return true;
        std::vector<int> cand;
        if (open.empty()) {
            for (size_t i = 0; i < cliques.size(); ++i)
                if (!used[i]) cand.push_back(static_cast<int>(i));
        } else {
            int pivot = open[0];
            for (int v : open)
                if (cliques_of[v].size() < cliques_of[pivot].size()) pivot = v;
            for (int ci : cliques_of[pivot])
                if (!used[ci]) cand.push_back(ci);
        }
        for (int ci : cand) {
            if (!feasible(ci, open)) continue;
            used[ci] = 1;
            chain.push_back(ci);
            for (int v : cliques[ci]) ++used_of[v];
            std::vector<int> next_open;
            for (int v : open)
                if (used_of[v] < total[v]) next_open.push_back(v);
            for (int v : cliques[ci])
                if (used_of[v] == 1 && used_of[v] < total[v]) next_open.push_back(v);
            std::sort(next_open.begin(), next_open.end());
            if (search(placed + 1, next_open)) return true;
            for (int v : cliques[ci]) --used_of[v];
            chain.pop_back();
            used[ci] = 0;
        }
        return false;
    }
};

GraphModel model_from_clique_chain(const CompactGraph& g,
                                   const std::vector<int>& visit_order) {
    auto cliques = maximal_cliques(g, visit_order);
    ChainSearch cs(cliques, g.n);
    std::vector<int> open;
    if (!cs.search(0, open))
        throw InternalError("interval realizer: no clique chain found for a graph decided interval");
    std::vector<int64_t> first(g.n, -1), last(g.n, -1);
    for (size_t slot = 0; slot < cs.chain.size(); ++slot)
        for (int v : cliques[cs.chain[slot]]) {
            if (first[v] < 0) first[v] = static_cast<int64_t>(slot);
            last[v] = static_cast<int64_t>(slot);
        }
    GraphModel m;
    m.intervals.resize(g.n);
    for (int v = 0; v < g.n; ++v) m.intervals[v] = {v, 2 * first[v], 2 * last[v] + 1};
    return m;
}

// Component labels of the graph with N[z] deleted; -1 for deleted vertices.
std::vector<int> components_avoiding(const CompactGraph& g, int z) {
    std::vector<int> comp(g.n, -1);
    std::vector<char> blocked(g.n, 0);
    blocked[z] = 1;
    for (int w : g.adj[z]) blocked[w] = 1;
    int next = 0;
    for (int s = 0; s < g.n; ++s) {
        if (blocked[s] || comp[s] >= 0) continue;
        std::vector<int> stack{s};
        comp[s] = next;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : g.adj[u])
                if (!blocked[v] && comp[v] < 0) {
                    comp[v] = next;
                    stack.push_back(v);
                }
        }
        ++next;
    }
    return comp;
}

std::optional<AsteroidalTriple> find_asteroidal_triple(const CompactGraph& g) {
    const int n = g.n;
    if (n < 3) return std::nullopt;

    auto make_witness = [&](int x, int y, int z) {
        AsteroidalTriple at;
        at.x = x;
        at.y = y;
        at.z = z;
        auto path_avoiding = [&](int s, int t, int third) {
            std::vector<char> allowed(n, 1);
            allowed[third] = 0;
            for (int w : g.adj[third]) allowed[w] = 0;
            return bfs_path(g, s, t, allowed);
        };
        at.path_xy = path_avoiding(x, y, z);
        at.path_yz = path_avoiding(y, z, x);
        at.path_xz = path_avoiding(x, z, y);
        return at;
    };

    if (n <= kAtStoreLimit) {
        std::vector<std::vector<int>> comp(n);
        for (int z = 0; z < n; ++z) comp[z] = components_avoiding(g, z);
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y) {
                if (g.has_edge(x, y)) continue;
                for (int z = y + 1; z < n; ++z) {
                    if (g.has_edge(x, z) || g.has_edge(y, z)) continue;
                    if (comp[z][x] >= 0 && comp[z][x] == comp[z][y] &&
                        comp[x][y] >= 0 && comp[x][y] == comp[x][z] &&
                        comp[y][x] >= 0 && comp[y][x] == comp[y][z])
                        return make_witness(x, y, z);
                }
            }
        return std::nullopt;
    }

    // Large components: stream comp(z), verify candidates on demand.
    int64_t verifications = 0;
    std::map<int, std::vector<int>> cache;
    auto comp_of = [&](int v) -> const std::vector<int>& {
        auto it = cache.find(v);
        if (it != cache.end()) return it->second;
        if (cache.size() > 64) cache.clear();
        return cache.emplace(v, components_avoiding(g, v)).first->second;
    };
    for (int z = 0; z < n; ++z) {
        auto cz = components_avoiding(g, z);
        for (int x = 0; x < n; ++x) {
            if (cz[x] < 0) continue;
            for (int y = x + 1; y < n; ++y) {
                if (y == z || cz[y] != cz[x] || g.has_edge(x, y)) continue;
                if (g.has_edge(x, z) || g.has_edge(y, z)) continue;
                if (++verifications > 200000)
                    throw InternalError(
                        "asteroidal triple search exceeded its budget on a large component");
                const auto& cx = comp_of(x);
                if (cx[y] < 0 || cx[y] != cx[z]) continue;
                const auto& cy = comp_of(y);
                if (cy[x] < 0 || cy[x] != cy[z]) continue;
                return make_witness(x, y, z);
            }
        }
    }
    return std::nullopt;
}

RecognitionResult recognize_connected(const CompactGraph& g) {
    if (g.n == 1) {
        GraphModel m;
        m.intervals = {{0, 0, 1}};
        return m;
    }
    std::vector<int> prio(g.n);
    for (int v = 0; v < g.n; ++v) prio[v] = g.n - 1 - v;
    auto order = lexbfs(g, prio);
    if (auto fail = check_peo(g, order))
        return ForbiddenWitness{ChordlessCycle{find_hole(g, *fail)}};

    std::vector<int> cur = order;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (is_umbrella_free(g, cur)) {
            auto m = model_from_umbrella(g, cur);
            if (!model_realizes(g, m))
                throw InternalError("umbrella model failed self-verification");
            return m;
        }
        std::vector<int> p(g.n);
        for (int i = 0; i < g.n; ++i) p[cur[i]] = i;
        cur = lexbfs(g, p);
    }

    if (auto at = find_asteroidal_triple(g)) return ForbiddenWitness{*at};

    // Chordal and AT-free: interval by theorem; realize via clique chain.
    auto m = model_from_clique_chain(g, order);
    if (!model_realizes(g, m))
        throw InternalError("clique chain model failed self-verification");
    return m;
}

}  // namespace

bool model_realizes(const CompactGraph& g, const GraphModel& m) {
    if (static_cast<int>(m.intervals.size()) != g.n) return false;
    for (int v = 0; v < g.n; ++v)
        if (m.intervals[v].left >= m.intervals[v].right) return false;
    std::vector<int> by_left(g.n);
    std::iota(by_left.begin(), by_left.end(), 0);
    std::sort(by_left.begin(), by_left.end(), [&](int a, int b) {
        return m.intervals[a].left < m.intervals[b].left;
    });
    int64_t m_edges = g.edge_count();
    int64_t seen = 0;
    // active = intervals whose right endpoint is still reachable
    std::vector<int> active;
    for (int v : by_left) {
        active.erase(std::remove_if(active.begin(), active.end(),
                                    [&](int u) {
                                        return m.intervals[u].right < m.intervals[v].left;
                                    }),
                     active.end());
        for (int u : active) {
            if (!g.has_edge(u, v)) return false;
            if (++seen > m_edges) return false;
        }
        active.push_back(v);
    }
    return seen == m_edges;
}

RecognitionResult recognize_interval(const CompactGraph& g) {
    if (g.n == 0) return GraphModel{};
    auto comps = connected_components(g);
    if (comps.size() == 1) return recognize_connected(g);

    GraphModel merged;
    merged.intervals.resize(g.n);
    int64_t base = 0;
    for (const auto& comp : comps) {
        std::vector<int> old_of_new;
        auto sub = g.induced(comp, &old_of_new);
        auto res = recognize_connected(sub);
        if (auto* w = std::get_if<ForbiddenWitness>(&res)) {
            // map labels back
            auto remap = [&](std::vector<int>& vs) {
                for (int& v : vs) v = old_of_new[v];
            };
            if (auto* c = std::get_if<ChordlessCycle>(w)) {
                remap(c->vertices);
                return ForbiddenWitness{*c};
            }
            auto at = std::get<AsteroidalTriple>(*w);
            at.x = old_of_new[at.x];
            at.y = old_of_new[at.y];
            at.z = old_of_new[at.z];
            remap(at.path_xy);
            remap(at.path_yz);
            remap(at.path_xz);
            return ForbiddenWitness{at};
        }
        const auto& model = std::get<GraphModel>(res);
        int64_t hi = 0;
        for (const auto& iv : model.intervals) {
            merged.intervals[old_of_new[iv.vertex]] = {old_of_new[iv.vertex],
                                                       iv.left + base, iv.right + base};
            hi = std::max(hi, iv.right);
        }
        base += hi + 2;
    }
    if (!model_realizes(g, merged))
        throw InternalError("merged component model failed self-verification");
    return merged;
}

bool is_interval_graph(const CompactGraph& g) {
    if (g.n <= 1) return true;
    auto comps = connected_components(g);
    for (const auto& comp : comps) {
        if (comp.size() <= 3) continue;  // any graph on <= 3 vertices is interval
        auto sub = g.induced(comp);
        std::vector<int> prio(sub.n);
        for (int v = 0; v < sub.n; ++v) prio[v] = sub.n - 1 - v;
        auto order = lexbfs(sub, prio);
        if (check_peo(sub, order)) return false;
        bool umbrella = false;
        std::vector<int> cur = order;
        for (int sweep = 0; sweep < 6 && !umbrella; ++sweep) {
            if (is_umbrella_free(sub, cur)) umbrella = true;
            std::vector<int> p(sub.n);
            for (int i = 0; i < sub.n; ++i) p[cur[i]] = i;
            cur = lexbfs(sub, p);
        }
        if (umbrella) continue;
        if (find_asteroidal_triple(sub)) return false;
    }
    return true;
}

bool is_I_critical(const CompactGraph& g, int v) {
    if (v < 0 || v >= g.n) throw InternalError("is_I_critical: vertex not in graph");
    std::vector<int> keep;
    for (int u = 0; u < g.n; ++u)
        if (u != v) keep.push_back(u);
    return is_interval_graph(g.induced(keep));
}

bool verify_witness(const CompactGraph& g, const ForbiddenWitness& w) {
    if (const auto* c = std::get_if<ChordlessCycle>(&w)) {
        const auto& vs = c->vertices;
        size_t k = vs.size();
        if (k < 4) return false;
        std::set<int> uniq(vs.begin(), vs.end());
        if (uniq.size() != k) return false;
        for (size_t i = 0; i < k; ++i)
            for (size_t j = i + 1; j < k; ++j) {
                bool consecutive = (j == i + 1) || (i == 0 && j == k - 1);
                if (g.has_edge(vs[i], vs[j]) != consecutive) return false;
            }
        return true;
    }
    const auto& at = std::get<AsteroidalTriple>(w);
    if (g.has_edge(at.x, at.y) || g.has_edge(at.y, at.z) || g.has_edge(at.x, at.z))
        return false;
    auto check_path = [&](const std::vector<int>& path, int s, int t, int third) {
        if (path.empty() || path.front() != s || path.back() != t) return false;
        for (size_t i = 0; i + 1 < path.size(); ++i)
            if (!g.has_edge(path[i], path[i + 1])) return false;
        for (int v : path)
            if (v == third || g.has_edge(v, third)) return false;
        return true;
    };
    return check_path(at.path_xy, at.x, at.y, at.z) &&
           check_path(at.path_yz, at.y, at.z, at.x) &&
           check_path(at.path_xz, at.x, at.z, at.y);
}

// ---------------------------------------------------------------------------
// Brute-force oracle. Kept independent of the recognition path above: its
// chordality test is naive simplicial elimination and its model search walks
// endpoint sequences directly.

namespace {

bool oracle_chordal(const CompactGraph& g) {
    std::vector<char> gone(g.n, 0);
    for (int round = 0; round < g.n; ++round) {
        int pick = -1;
        for (int v = 0; v < g.n && pick < 0; ++v) {
            if (gone[v]) continue;
            bool simplicial = true;
            for (size_t i = 0; i < g.adj[v].size() && simplicial; ++i) {
                if (gone[g.adj[v][i]]) continue;
                for (size_t j = i + 1; j < g.adj[v].size() && simplicial; ++j) {
                    if (gone[g.adj[v][j]]) continue;
                    if (!g.has_edge(g.adj[v][i], g.adj[v][j])) simplicial = false;
                }
            }
            if (simplicial) pick = v;
        }
        if (pick < 0) return false;
        gone[pick] = 1;
    }
    return true;
}

bool oracle_has_at(const CompactGraph& g) {
    const int n = g.n;
    std::vector<std::vector<int>> comp(n);
    for (int z = 0; z < n; ++z) comp[z] = components_avoiding(g, z);
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            if (g.has_edge(x, y)) continue;
            for (int z = y + 1; z < n; ++z) {
                if (g.has_edge(x, z) || g.has_edge(y, z)) continue;
                if (comp[z][x] >= 0 && comp[z][x] == comp[z][y] &&
                    comp[x][y] >= 0 && comp[x][y] == comp[x][z] &&
                    comp[y][x] >= 0 && comp[y][x] == comp[y][z])
                    return true;
            }
        }
    return false;
}

struct EndpointSearch {
    const CompactGraph& g;
    uint32_t all;
    std::vector<uint32_t> nbr;
    std::set<uint64_t> dead;
    std::vector<std::pair<bool, int>> events;  // (is_open, vertex)

    explicit EndpointSearch(const CompactGraph& g) : g(g) {
        all = (g.n == 32) ? 0xffffffffu : ((1u << g.n) - 1);
        nbr.assign(g.n, 0);
        for (int v = 0; v < g.n; ++v)
            for (int u : g.adj[v]) nbr[v] |= (1u << u);
    }

    bool run(uint32_t opened, uint32_t closed) {
        if (closed == all) return true;
        uint64_t key = (static_cast<uint64_t>(opened) << 32) | closed;
        if (dead.count(key)) return false;
        uint32_t open_now = opened & ~closed;
        // close any vertex whose neighbors have all started
        for (int v = 0; v < g.n; ++v) {
            if (!(open_now & (1u << v))) continue;
            if ((nbr[v] & ~opened) != 0) continue;
            events.push_back({false, v});
            if (run(opened, closed | (1u << v))) return true;
            events.pop_back();
        }
        // open a vertex adjacent to everything open and to nothing closed
        for (int v = 0; v < g.n; ++v) {
            if (opened & (1u << v)) continue;
            if ((open_now & ~nbr[v]) != 0) continue;
            if ((nbr[v] & closed) != 0) continue;
            events.push_back({true, v});
            if (run(opened | (1u << v), closed)) return true;
            events.pop_back();
        }
        dead.insert(key);
        return false;
    }
};

}  // namespace

BruteForceResult brute_force_interval(const CompactGraph& g, int max_n) {
    if (g.n > max_n)
        throw InputError("brute_force_interval: " + std::to_string(g.n) +
                         " vertices exceed the limit of " + std::to_string(max_n));
    BruteForceResult out;
    bool by_structure = oracle_chordal(g) && !oracle_has_at(g);
    EndpointSearch es(g);
    bool by_sequence = g.n == 0 ? true : es.run(0, 0);
    if (by_structure != by_sequence)
        throw InternalError("brute_force_interval: the two oracle routes disagree");
    out.interval = by_structure;
    if (out.interval && g.n > 0) {
        GraphModel m;
        m.intervals.resize(g.n);
        std::vector<int64_t> open_at(g.n, 0);
        for (size_t i = 0; i < es.events.size(); ++i) {
            auto [is_open, v] = es.events[i];
            if (is_open)
                open_at[v] = static_cast<int64_t>(i);
            else
                m.intervals[v] = {v, open_at[v], static_cast<int64_t>(i)};
        }
        if (!model_realizes(g, m))
            throw InternalError("brute_force_interval: endpoint model failed verification");
        out.model = std::move(m);
    } else if (out.interval) {
        out.model = GraphModel{};
    }
    return out;
}

// ---------------------------------------------------------------------------
// Component resolution.

UnrecordedPairs collect_unrecorded_pairs(const Dataset& ds,
                                         const std::vector<Subcontig>& subcontigs,
                                         const OverlapIndex& index,
                                         const PipelineParams& params) {
    UnrecordedPairs out;
    for (const Subcontig& sc : subcontigs) {
        const auto& pl = sc.placements;
        for (size_t i = 0; i < pl.size(); ++i) {
            bp len_i = ds.fragment(pl[i].frag).length;
            bp end_i = pl[i].pos + len_i;
            for (size_t j = i + 1; j < pl.size() && pl[j].pos < end_i; ++j) {
                CloneIndex ca = ds.fragment(pl[i].frag).clone;
                CloneIndex cb = ds.fragment(pl[j].frag).clone;
                if (ca == cb) continue;
                bp len_j = ds.fragment(pl[j].frag).length;
                bp inter = std::min(end_i, pl[j].pos + len_j) - pl[j].pos;
                if (inter < params.implied_overlap_threshold) continue;
                bp off = implied_offset(pl[i], len_i, pl[j], len_j);
                if (index.has_matching(pl[i].frag, pl[j].frag, off,
                                       implied_rel(pl[i], pl[j]), params.offset_tolerance))
                    continue;
                auto k = ca < cb ? std::make_pair(ca, cb) : std::make_pair(cb, ca);
                out.pairs.emplace(k, std::make_pair(pl[i].frag, pl[j].frag));
            }
        }
    }
    return out;
}

namespace {

struct Working {
    const Dataset& ds;
    std::vector<CloneIndex> label;           // local -> clone
    std::map<CloneIndex, int> local;         // clone -> local
    std::vector<std::set<int>> adj;
    std::vector<char> alive;
    std::set<std::pair<int, int>> fn_edges;  // local pairs added as FN
    std::set<std::pair<int, int>> dropped;   // local pairs removed (never re-add)

    Working(const Dataset& ds, const std::vector<CloneIndex>& component,
            const CloneGraph& graph)
        : ds(ds) {
        label = component;
        std::sort(label.begin(), label.end(), [&](CloneIndex a, CloneIndex b) {
            return ds.clone_rank(a) < ds.clone_rank(b);
        });
        for (size_t i = 0; i < label.size(); ++i) local[label[i]] = static_cast<int>(i);
        adj.assign(label.size(), {});
        alive.assign(label.size(), 1);
        for (size_t i = 0; i < label.size(); ++i)
            for (CloneIndex nb : graph.neighbors(label[i])) {
                auto it = local.find(nb);
                if (it == local.end()) continue;
                adj[i].insert(it->second);
                adj[it->second].insert(static_cast<int>(i));
                if (const CloneEdge* e = graph.find_edge(label[i], nb); e && e->fn_added) {
                    int a = static_cast<int>(i), b = it->second;
                    fn_edges.insert({std::min(a, b), std::max(a, b)});
                }
            }
    }

    void add_edge(int a, int b, bool fn) {
        adj[a].insert(b);
        adj[b].insert(a);
        if (fn) fn_edges.insert({std::min(a, b), std::max(a, b)});
    }
    void remove_edge(int a, int b) {
        adj[a].erase(b);
        adj[b].erase(a);
        dropped.insert({std::min(a, b), std::max(a, b)});
    }
    void remove_vertex(int v) {
        for (int u : std::vector<int>(adj[v].begin(), adj[v].end())) {
            adj[u].erase(v);
        }
        adj[v].clear();
        alive[v] = 0;
    }
    bool is_fn(int a, int b) const {
        return fn_edges.count({std::min(a, b), std::max(a, b)}) > 0;
    }

    // Snapshot of the alive subgraph restricted to `focus` (local ids).
    CompactGraph snapshot(const std::vector<int>& focus, std::vector<int>& old_of_new) const {
        old_of_new.clear();
        std::vector<int> new_of_old(label.size(), -1);
        for (int v : focus)
            if (alive[v]) {
                new_of_old[v] = static_cast<int>(old_of_new.size());
                old_of_new.push_back(v);
            }
        std::vector<std::pair<int, int>> es;
        for (int v : old_of_new)
            for (int u : adj[v])
                if (new_of_old[u] >= 0 && v < u) es.push_back({new_of_old[v], new_of_old[u]});
        return CompactGraph::from_edges(static_cast<int>(old_of_new.size()), es);
    }
};

std::vector<int> witness_vertices(const ForbiddenWitness& w) {
    std::vector<int> vs;
    if (const auto* c = std::get_if<ChordlessCycle>(&w)) {
        vs = c->vertices;
    } else {
        const auto& at = std::get<AsteroidalTriple>(w);
        vs = at.path_xy;
        vs.insert(vs.end(), at.path_yz.begin(), at.path_yz.end());
        vs.insert(vs.end(), at.path_xz.begin(), at.path_xz.end());
        vs.push_back(at.x);
        vs.push_back(at.y);
        vs.push_back(at.z);
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

struct Resolver {
    Working& w;
    const ResolutionContext& ctx;
    std::vector<ResolutionAction>& actions;
    std::vector<CloneIndex>& sidelined;

    bool try_add_fn(const std::vector<int>& wit) {
        for (size_t i = 0; i < wit.size(); ++i)
            for (size_t j = i + 1; j < wit.size(); ++j) {
                int p = wit[i], q = wit[j];
                if (w.adj[p].count(q)) continue;
                if (w.dropped.count({std::min(p, q), std::max(p, q)})) continue;
                CloneIndex cp = w.label[p], cq = w.label[q];
                auto key = cp < cq ? std::make_pair(cp, cq) : std::make_pair(cq, cp);
                if (ctx.banned_fn && ctx.banned_fn->count(key)) continue;
                const auto* ev = ctx.fn_candidates.find(cp, cq);
                if (!ev) continue;
                w.add_edge(p, q, true);
                actions.push_back(ActAddFnEdge{key.first, key.second, ev->first, ev->second});
                return true;
            }
        return false;
    }

    // Fragments of clone u that appear in witnesses of edge (u, z).
    std::set<FragIndex> u_side_fragments(CloneIndex u, CloneIndex z) const {
        std::set<FragIndex> out;
        const CloneEdge* e = ctx.graph.find_edge(u, z);
        if (!e) return out;
        for (const EdgeWitness& wit : e->witnesses) {
            const ValidOverlap& ov = ctx.index.at(wit.overlap_id);
            if (ctx.ds.fragment(ov.frag_a).clone == u) out.insert(ov.frag_a);
            if (ctx.ds.fragment(ov.frag_b).clone == u) out.insert(ov.frag_b);
        }
        return out;
    }

    bool try_remove_fp(const std::vector<int>& wit, const std::vector<int>& crit) {
        for (int u : crit) {
            std::vector<int> wedges;
            for (int z : wit)
                if (z != u && w.adj[u].count(z) && !w.is_fn(u, z)) wedges.push_back(z);
            if (wedges.empty()) continue;
            // Every witness edge at u must run solely through one fragment of
            // u; edges with broader support are not repeat-induced.
            std::set<FragIndex> common;
            bool sole = true;
            for (int z : wedges) {
                auto side = u_side_fragments(w.label[u], w.label[z]);
                if (side.size() != 1) {
                    sole = false;
                    break;
                }
                common.insert(*side.begin());
            }
            if (!sole || common.size() != 1) continue;
            FragIndex carrier = *common.begin();

            ActRemoveFpEdges act;
            act.carrier = carrier;
            std::set<int> to_remove(wedges.begin(), wedges.end());
            // Other edges of u carried solely by the same fragment fall too.
            for (int z : w.adj[u]) {
                if (to_remove.count(z) || w.is_fn(u, z)) continue;
                auto side = u_side_fragments(w.label[u], w.label[z]);
                if (side.size() == 1 && *side.begin() == carrier) to_remove.insert(z);
            }
            // A repeat carrier explains the whole defect: stripping its edges
            // must leave u attached at a single connected block, and the
            // stripped targets must form a foreign block with no ties to it.
            // A chimera keeps edges into its second locus through other
            // fragments; that is vertex removal territory, not edge removal.
            {
                std::vector<int> rest;
                for (int z : w.adj[u])
                    if (!to_remove.count(z)) rest.push_back(z);
                if (rest.empty()) continue;
                bool foreign = true;
                for (int z1 : to_remove)
                    for (int z2 : rest)
                        if (w.adj[z1].count(z2)) foreign = false;
                if (!foreign) continue;
                std::vector<std::pair<int, int>> es;
                for (size_t i = 0; i < rest.size(); ++i)
                    for (size_t j = i + 1; j < rest.size(); ++j)
                        if (w.adj[rest[i]].count(rest[j]))
                            es.push_back({static_cast<int>(i), static_cast<int>(j)});
                auto rest_graph = CompactGraph::from_edges(static_cast<int>(rest.size()), es);
                if (connected_components(rest_graph).size() != 1) continue;
            }
            for (int z : to_remove) {
                CloneIndex cu = w.label[u], cz = w.label[z];
                act.edges.push_back(cu < cz ? std::make_pair(cu, cz)
                                            : std::make_pair(cz, cu));
                w.remove_edge(u, z);
            }
            std::sort(act.edges.begin(), act.edges.end());
            actions.push_back(std::move(act));
            return true;
        }
        return false;
    }

    // Fig-8b style middle-vs-end test: a neighborhood falling apart into two
    // or more blocks marks the vertex as bridging, i.e. a chimera.
    int neighborhood_blocks(int v) const {
        std::vector<int> nbrs(w.adj[v].begin(), w.adj[v].end());
        if (nbrs.empty()) return 0;
        std::vector<std::pair<int, int>> es;
        for (size_t i = 0; i < nbrs.size(); ++i)
            for (size_t j = i + 1; j < nbrs.size(); ++j)
                if (w.adj[nbrs[i]].count(nbrs[j]))
                    es.push_back({static_cast<int>(i), static_cast<int>(j)});
        auto nb_graph = CompactGraph::from_edges(static_cast<int>(nbrs.size()), es);
        return static_cast<int>(connected_components(nb_graph).size());
    }

    void remove_or_sideline(const std::vector<int>& crit) {
        int pick = -1;
        for (int u : crit)
            if (ctx.ds.clone(w.label[u]).estimated_length >= ctx.params.min_clone_length_floor) {
                pick = u;
                break;
            }
        if (pick < 0) {
            int u = crit.front();
            sidelined.push_back(w.label[u]);
            actions.push_back(ActSidelineShortClone{w.label[u]});
            w.remove_vertex(u);
            return;
        }
        RemoveReason reason = neighborhood_blocks(pick) >= 2
                                  ? RemoveReason::SuspiciousChimera
                                  : RemoveReason::UnidentifiedRepeat;
        actions.push_back(ActRemoveVertex{w.label[pick], reason});
        w.remove_vertex(pick);
    }

    // Resolves the subgraph induced by `focus`; returns when interval.
    void resolve_in(std::vector<int> focus, int depth) {
        if (depth > 48) throw InternalError("interval resolution recursion too deep");
        int64_t cap = 4 * (static_cast<int64_t>(focus.size()) * focus.size() + 16);
        for (int64_t iter = 0; iter < cap; ++iter) {
            std::vector<int> old_of_new;
            auto snap = w.snapshot(focus, old_of_new);
            auto res = recognize_interval(snap);
            if (std::holds_alternative<GraphModel>(res)) return;
            const auto& witness = std::get<ForbiddenWitness>(res);
            std::vector<int> wit_local;
            for (int v : witness_vertices(witness)) wit_local.push_back(old_of_new[v]);
            std::sort(wit_local.begin(), wit_local.end());

            // I-criticality is judged against the focus subgraph.
            std::vector<int> crit;
            std::vector<int> new_of_old(w.label.size(), -1);
            for (size_t i = 0; i < old_of_new.size(); ++i) new_of_old[old_of_new[i]] = static_cast<int>(i);
            for (int v : wit_local)
                if (is_I_critical(snap, new_of_old[v])) crit.push_back(v);

            if (!crit.empty()) {
                if (try_add_fn(wit_local)) continue;
                if (try_remove_fp(wit_local, crit)) continue;
                // Blame the most bridge-like critical vertex first (Fig 8b:
                // the clone whose neighborhood splits widest is the most
                // suspicious chimera).
                std::vector<int> by_suspicion = crit;
                std::sort(by_suspicion.begin(), by_suspicion.end(), [&](int a, int b) {
                    int ba = neighborhood_blocks(a), bb = neighborhood_blocks(b);
                    if (ba != bb) return ba > bb;
                    return a < b;
                });
                remove_or_sideline(by_suspicion);
                continue;
            }

            // Non-fixable: divide at articulation points, fix the blocks,
            // then re-test the stitched graph.
            size_t before = actions.size();
            if (!articulation_points(snap).empty()) {
                auto blocks = biconnected_blocks(snap);
                std::sort(blocks.begin(), blocks.end());
                for (const auto& block : blocks) {
                    if (block.size() < 4) continue;
                    auto sub = snap.induced(block);
                    if (is_interval_graph(sub)) continue;
                    std::vector<int> sub_focus;
                    for (int v : block) sub_focus.push_back(old_of_new[v]);
                    resolve_in(sub_focus, depth + 1);
                }
            }
            if (actions.size() == before) {
                // Several independent defects can coexist (no single vertex is
                // I-critical) inside one biconnected block. Remove the witness
                // vertex that bridges the most neighborhood blocks; the rest
                // of the defects become reachable again next iteration.
                std::vector<int> cand = wit_local;
                std::sort(cand.begin(), cand.end(), [&](int a, int b) {
                    int ba = neighborhood_blocks(a), bb = neighborhood_blocks(b);
                    if (ba != bb) return ba > bb;
                    return a < b;
                });
                remove_or_sideline(cand);
            }
        }
        throw InternalError("interval resolution exceeded its iteration cap");
    }
};

}  // namespace

ComponentResolution resolve_component(const std::vector<CloneIndex>& component,
                                      const ResolutionContext& ctx) {
    Working w(ctx.ds, component, ctx.graph);
    ComponentResolution out;
    Resolver r{w, ctx, out.actions, out.sidelined};
    std::vector<int> focus(w.label.size());
    std::iota(focus.begin(), focus.end(), 0);
    r.resolve_in(focus, 0);
    for (size_t i = 0; i < w.label.size(); ++i)
        if (w.alive[i]) out.vertices.push_back(w.label[i]);
    for (size_t i = 0; i < w.label.size(); ++i)
        for (int j : w.adj[i])
            if (static_cast<int>(i) < j) {
                CloneIndex a = w.label[i], b = w.label[j];
                out.edges.push_back(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
            }
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

std::vector<CloneInterval> interval_representation(
    const Dataset& ds, const std::vector<CloneIndex>& vertices,
    const std::vector<std::pair<CloneIndex, CloneIndex>>& edges, int32_t component_id) {
    std::vector<CloneIndex> order = vertices;
    std::sort(order.begin(), order.end(), [&](CloneIndex a, CloneIndex b) {
        return ds.clone_rank(a) < ds.clone_rank(b);
    });
    std::map<CloneIndex, int> local;
    for (size_t i = 0; i < order.size(); ++i) local[order[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> es;
    for (auto [a, b] : edges) es.push_back({local.at(a), local.at(b)});
    auto g = CompactGraph::from_edges(static_cast<int>(order.size()), es);
    auto res = recognize_interval(g);
    if (!std::holds_alternative<GraphModel>(res))
        throw InternalError("interval_representation called on a non-interval component");
    const auto& model = std::get<GraphModel>(res);

    int64_t min_left = INT64_MAX;
    for (const auto& iv : model.intervals) min_left = std::min(min_left, iv.left);
    std::vector<CloneInterval> out;
    for (const auto& iv : model.intervals)
        out.push_back({order[iv.vertex], iv.left - min_left, iv.right - min_left, 0,
                       component_id});
    std::sort(out.begin(), out.end(), [&](const CloneInterval& a, const CloneInterval& b) {
        if (a.left != b.left) return a.left < b.left;
        if (a.right != b.right) return a.right < b.right;
        return ds.clone_rank(a.clone) < ds.clone_rank(b.clone);
    });
    for (size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int32_t>(i);
    return out;
}

}  // namespace cloneasm
