#include "cloneasm/clone_graph.hpp"

#include <algorithm>
#include <functional>
#include <ostream>

namespace cloneasm {

std::pair<CloneIndex, CloneIndex> CloneGraph::norm(CloneIndex a, CloneIndex b) const {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

void CloneGraph::add_vertex(CloneIndex c) {
    if (adj_.emplace(c, std::vector<CloneIndex>{}).second) vertices_.push_back(c);
}

CloneEdge& CloneGraph::edge(CloneIndex a, CloneIndex b) {
    if (a == b) throw InternalError("clone graph: self loop");
    add_vertex(a);
    add_vertex(b);
    auto k = norm(a, b);
    auto [it, inserted] = edges_.try_emplace(k);
    if (inserted) {
        it->second.a = k.first;
        it->second.b = k.second;
        adj_[a].push_back(b);
        adj_[b].push_back(a);
    }
    return it->second;
}

const CloneEdge* CloneGraph::find_edge(CloneIndex a, CloneIndex b) const {
    auto it = edges_.find(norm(a, b));
    return it == edges_.end() ? nullptr : &it->second;
}

void CloneGraph::remove_edge(CloneIndex a, CloneIndex b) {
    edges_.erase(norm(a, b));
    auto drop = [&](CloneIndex u, CloneIndex v) {
        auto& n = adj_[u];
        n.erase(std::remove(n.begin(), n.end(), v), n.end());
    };
    drop(a, b);
    drop(b, a);
}

void CloneGraph::remove_vertex(CloneIndex c) {
    auto it = adj_.find(c);
    if (it == adj_.end()) return;
    auto nbrs = it->second;
    for (CloneIndex n : nbrs) remove_edge(c, n);
    adj_.erase(c);
    vertices_.erase(std::remove(vertices_.begin(), vertices_.end(), c), vertices_.end());
}

const std::vector<CloneIndex>& CloneGraph::neighbors(CloneIndex c) const {
    static const std::vector<CloneIndex> empty;
    auto it = adj_.find(c);
    return it == adj_.end() ? empty : it->second;
}

std::vector<std::vector<CloneIndex>> CloneGraph::components(const Dataset& ds) const {
    std::map<CloneIndex, int> comp;
    int next = 0;
    for (CloneIndex v : vertices_) {
        if (comp.count(v)) continue;
        std::vector<CloneIndex> stack{v};
        comp[v] = next;
        while (!stack.empty()) {
            CloneIndex u = stack.back();
            stack.pop_back();
            for (CloneIndex w : neighbors(u))
                if (!comp.count(w)) {
                    comp[w] = next;
                    stack.push_back(w);
                }
        }
        ++next;
    }
    std::vector<std::vector<CloneIndex>> out(next);
    for (auto& [v, c] : comp) out[c].push_back(v);
    for (auto& c : out)
        std::sort(c.begin(), c.end(), [&](CloneIndex a, CloneIndex b) {
            return ds.clone_rank(a) < ds.clone_rank(b);
        });
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
        return ds.clone_rank(a.front()) < ds.clone_rank(b.front());
    });
    return out;
}

CloneGraph build_clone_graph(const Dataset& ds, const std::vector<Subcontig>& subcontigs,
                             const OverlapIndex& index, const PipelineParams& params) {
    CloneGraph g;
    std::vector<int32_t> match_ids;
    for (const Subcontig& sc : subcontigs) {
        const auto& pl = sc.placements;
        for (size_t i = 0; i < pl.size(); ++i) {
            g.add_vertex(ds.fragment(pl[i].frag).clone);
            bp end_i = pl[i].pos + ds.fragment(pl[i].frag).length;
            for (size_t j = i + 1; j < pl.size() && pl[j].pos < end_i; ++j) {
                CloneIndex ca = ds.fragment(pl[i].frag).clone;
                CloneIndex cb = ds.fragment(pl[j].frag).clone;
                if (ca == cb) continue;
                bp off = implied_offset(pl[i], ds.fragment(pl[i].frag).length, pl[j],
                                        ds.fragment(pl[j].frag).length);
                match_ids.clear();
                index.matching(pl[i].frag, pl[j].frag, off, implied_rel(pl[i], pl[j]),
                               params.offset_tolerance, match_ids);
                for (int32_t oid : match_ids)
                    g.edge(ca, cb).witnesses.push_back({oid, sc.id});
            }
        }
    }
    return g;
}

ResolvedOverlaps resolve_inconsistent_overlaps(const Dataset& ds,
                                               const std::vector<DeferredOverlap>& deferred,
                                               const CloneGraph& graph,
                                               const OverlapIndex& index,
                                               const PipelineParams& params) {
    ResolvedOverlaps out;

    struct Candidate {
        ValidOverlap ov;
        int64_t witness_count = 0;
        bool viable = false;
    };
    std::vector<Candidate> cands;
    cands.reserve(deferred.size());
    for (const auto& d : deferred) {
        Candidate c;
        c.ov = d.overlap;
        CloneIndex x = ds.fragment(d.overlap.frag_a).clone;
        CloneIndex y = ds.fragment(d.overlap.frag_b).clone;
        if (x != y) {
            if (const CloneEdge* e = graph.find_edge(x, y)) {
                // Independent witnesses: overlaps other than this one.
                for (const EdgeWitness& w : e->witnesses) {
                    const ValidOverlap& wov = index.at(w.overlap_id);
                    if (wov.frag_a == d.overlap.frag_a && wov.frag_b == d.overlap.frag_b &&
                        wov.offset == d.overlap.offset && wov.orient == d.overlap.orient)
                        continue;
                    ++c.witness_count;
                }
            }
        }
        c.viable = c.witness_count >= 1;
        cands.push_back(c);
    }

    // Pairwise conflicts among viable candidates sharing a fragment.
    auto conflicts = [&](const Candidate& p, const Candidate& q) {
        const ValidOverlap& o1 = p.ov;
        const ValidOverlap& o2 = q.ov;
        bool share = o1.frag_a == o2.frag_a || o1.frag_a == o2.frag_b ||
                     o1.frag_b == o2.frag_a || o1.frag_b == o2.frag_b;
        if (!share) return false;
        return check_consistency(ds, o1, o2, index, params) == Consistency::Inconsistent;
    };

    std::vector<size_t> order(cands.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
        if (cands[x].witness_count != cands[y].witness_count)
            return cands[x].witness_count > cands[y].witness_count;
        auto rx = std::make_pair(ds.fragment_rank(cands[x].ov.frag_a),
                                 ds.fragment_rank(cands[x].ov.frag_b));
        auto ry = std::make_pair(ds.fragment_rank(cands[y].ov.frag_a),
                                 ds.fragment_rank(cands[y].ov.frag_b));
        return rx < ry;
    });

    enum class State : uint8_t { Pending, Accepted, Done };
    std::vector<State> state(cands.size(), State::Pending);
    std::vector<size_t> accepted_ids;
    for (size_t oi : order) {
        Candidate& c = cands[oi];
        if (state[oi] != State::Pending) continue;
        if (!c.viable) {
            state[oi] = State::Done;
            out.rejected.push_back({c.ov, DeferredFate::NoWitness});
            continue;
        }
        bool beaten = false;
        for (size_t ai : accepted_ids)
            if (conflicts(c, cands[ai])) {
                beaten = true;
                break;
            }
        if (beaten) {
            state[oi] = State::Done;
            out.rejected.push_back({c.ov, DeferredFate::OutWitnessed});
            continue;
        }
        // A live equal-witness alternative in conflict rejects both sides.
        std::vector<size_t> tied_with;
        for (size_t oj = 0; oj < cands.size(); ++oj) {
            if (oj == oi || state[oj] != State::Pending || !cands[oj].viable) continue;
            if (cands[oj].witness_count == c.witness_count && conflicts(c, cands[oj]))
                tied_with.push_back(oj);
        }
        if (!tied_with.empty()) {
            state[oi] = State::Done;
            out.rejected.push_back({c.ov, DeferredFate::Ambiguous});
            for (size_t oj : tied_with) {
                state[oj] = State::Done;
                out.rejected.push_back({cands[oj].ov, DeferredFate::Ambiguous});
            }
            continue;
        }
        state[oi] = State::Accepted;
        accepted_ids.push_back(oi);
        out.accepted.push_back(c.ov);
    }
    return out;
}

void write_clone_graph(std::ostream& out, const Dataset& ds, const CloneGraph& graph) {
    out << "clone_a\tclone_b\twitness_count\n";
    std::vector<std::pair<std::pair<int32_t, int32_t>, const CloneEdge*>> rows;
    for (const auto& [k, e] : graph.edges())
        rows.push_back({{ds.clone_rank(k.first), ds.clone_rank(k.second)}, &e});
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [ranks, e] : rows) {
        CloneIndex a = e->a, b = e->b;
        if (ds.clone_rank(a) > ds.clone_rank(b)) std::swap(a, b);
        out << ds.clone(a).id << '\t' << ds.clone(b).id << '\t' << e->witnesses.size()
            << '\n';
    }
}

}  // namespace cloneasm
