#include "cloneasm/layout.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

namespace cloneasm {

namespace {

// Expresses a stored (canonical) overlap in from->to direction.
std::pair<bp, RelOrient> oriented_offset(const Dataset& ds, const ValidOverlap& ov,
                                         FragIndex from) {
    if (ov.frag_a == from) return {ov.offset, ov.orient};
    return {swap_offset(ov.offset, ov.orient, ds.fragment(ov.frag_a).length,
                        ds.fragment(ov.frag_b).length),
            ov.orient};
}

char orient_char(Orient o) { return o == Orient::Forward ? '+' : '-'; }

Orient parse_orient(const std::string& tok) {
    if (tok == "+") return Orient::Forward;
    if (tok == "-") return Orient::Reverse;
    throw InputError("bad orientation token '" + tok + "'");
}

}  // namespace

std::vector<FragmentClass> classify_fragments(const Dataset& ds,
                                              const OverlapIndex& index,
                                              const PipelineParams& params) {
    std::vector<FragmentClass> out(ds.fragment_count());
    std::vector<bool> has_overlap(ds.fragment_count(), false);

    // Longest containment wins as the container; ties go to the lower rank.
    std::vector<int32_t> best(ds.fragment_count(), -1);
    const auto& all = index.all();
    for (int32_t id = 0; id < static_cast<int32_t>(all.size()); ++id) {
        const ValidOverlap& ov = all[id];
        has_overlap[ov.frag_a] = true;
        has_overlap[ov.frag_b] = true;
        if (ov.kind != OverlapKind::Containment) continue;
        FragIndex inner = contained_fragment(ds, ov, params);
        int32_t& b = best[inner];
        if (b < 0) {
            b = id;
            continue;
        }
        const ValidOverlap& cur = all[b];
        FragIndex cur_container = cur.frag_a == inner ? cur.frag_b : cur.frag_a;
        FragIndex new_container = ov.frag_a == inner ? ov.frag_b : ov.frag_a;
        if (ov.overlap_length > cur.overlap_length ||
            (ov.overlap_length == cur.overlap_length &&
             ds.fragment_rank(new_container) < ds.fragment_rank(cur_container)))
            b = id;
    }
    for (size_t f = 0; f < ds.fragment_count(); ++f) {
        if (best[f] >= 0) {
            const ValidOverlap& ov = index.at(best[f]);
            out[f].kind = FragClassKind::Subfragment;
            out[f].container = ov.frag_a == static_cast<FragIndex>(f) ? ov.frag_b : ov.frag_a;
            out[f].container_overlap = best[f];
        } else if (has_overlap[f]) {
            out[f].kind = FragClassKind::Maximal;
        } else {
            out[f].kind = FragClassKind::Singleton;
        }
    }
    return out;
}

Consistency check_consistency(const Dataset& ds, const ValidOverlap& o_ab,
                              const ValidOverlap& o_bc, const OverlapIndex& index,
                              const PipelineParams& params) {
    // Identify the shared fragment.
    FragIndex shared;
    if (o_ab.frag_a == o_bc.frag_a || o_ab.frag_a == o_bc.frag_b)
        shared = o_ab.frag_a;
    else if (o_ab.frag_b == o_bc.frag_a || o_ab.frag_b == o_bc.frag_b)
        shared = o_ab.frag_b;
    else
        throw InternalError("check_consistency: overlaps do not share a fragment");

    FragIndex a = o_ab.frag_a == shared ? o_ab.frag_b : o_ab.frag_a;
    FragIndex c = o_bc.frag_a == shared ? o_bc.frag_b : o_bc.frag_a;
    if (a == c) {
        // Two overlaps of the same pair: parallel evidence, agree or not.
        auto [off1, rel1] = oriented_offset(ds, o_ab, shared);
        auto [off2, rel2] = oriented_offset(ds, o_bc, shared);
        return (rel1 == rel2 && std::llabs(off1 - off2) <= params.offset_tolerance)
                   ? Consistency::Consistent
                   : Consistency::Inconsistent;
    }

    Placement pa{a, 0, Orient::Forward};
    auto [off_ab, rel_ab] = oriented_offset(ds, o_ab, a);
    Placement pb = implied_placement(pa, ds.fragment(a).length, ds.fragment(shared).length,
                                     shared, off_ab, rel_ab);
    auto [off_bc, rel_bc] = oriented_offset(ds, o_bc, shared);
    Placement pc = implied_placement(pb, ds.fragment(shared).length, ds.fragment(c).length,
                                     c, off_bc, rel_bc);

    bp span = overlap_span(pc.pos, ds.fragment(a).length, ds.fragment(c).length);
    if (span <= params.implied_overlap_threshold) return Consistency::Independent;

    RelOrient rel_ac = implied_rel(pa, pc);
    return index.has_matching(a, c, pc.pos, rel_ac, params.offset_tolerance)
               ? Consistency::Consistent
               : Consistency::Inconsistent;
}

Assembler::Assembler(const Dataset& ds, const OverlapIndex& index,
                     const std::vector<FragmentClass>& classes,
                     const PipelineParams& params)
    : ds_(ds),
      index_(index),
      classes_(classes),
      params_(params),
      comp_(ds.fragment_count(), -1),
      pos_(ds.fragment_count(), 0),
      orient_(ds.fragment_count(), Orient::Forward) {}

void Assembler::ensure_component(FragIndex f) {
    if (comp_[f] >= 0) return;
    auto id = static_cast<int32_t>(comps_.size());
    Comp c;
    c.placements.push_back({f, 0, Orient::Forward});
    c.max_len = ds_.fragment(f).length;
    c.alive = true;
    comps_.push_back(std::move(c));
    comp_[f] = id;
}

Placement Assembler::placement(FragIndex f) const {
    if (comp_[f] < 0) throw InternalError("placement of unplaced fragment requested");
    return {f, pos_[f], orient_[f]};
}

bool Assembler::check_pair(const Placement& u, const Placement& g) const {
    bp len_u = ds_.fragment(u.frag).length;
    bp len_g = ds_.fragment(g.frag).length;
    bp inter = std::min(u.pos + len_u, g.pos + len_g) - std::max(u.pos, g.pos);
    if (inter <= params_.implied_overlap_threshold) return true;  // independent
    bp off = implied_offset(u, len_u, g, len_g);
    return index_.has_matching(u.frag, g.frag, off, implied_rel(u, g),
                               params_.offset_tolerance);
}

bool Assembler::cross_check(const Comp& small, const Comp& big, bool do_flip,
                            bp shift) const {
    for (const Placement& p : small.placements) {
        bp len_u = ds_.fragment(p.frag).length;
        Placement u;
        u.frag = p.frag;
        u.pos = tentative_pos(p.pos, len_u, do_flip, shift);
        u.orient = do_flip ? flip(p.orient) : p.orient;

        // Candidates in the big layout whose interval can reach u.
        bp lo = u.pos - big.max_len;
        auto it = std::lower_bound(big.placements.begin(), big.placements.end(), lo,
                                   [](const Placement& pl, bp v) { return pl.pos < v; });
        for (; it != big.placements.end() && it->pos < u.pos + len_u; ++it) {
            if (!check_pair(u, *it)) return false;
        }
    }
    return true;
}

Assembler::Outcome Assembler::process(const ValidOverlap& ov) {
    FragIndex f = ov.frag_a, g = ov.frag_b;
    ensure_component(f);
    ensure_component(g);
    int32_t cf = comp_[f], cg = comp_[g];

    Placement pf = placement(f);
    Placement desired = implied_placement(pf, ds_.fragment(f).length,
                                          ds_.fragment(g).length, g, ov.offset, ov.orient);
    if (cf == cg) {
        if (desired.orient == orient_[g] &&
            std::llabs(desired.pos - pos_[g]) <= params_.offset_tolerance)
            return Outcome::AlreadyConsistent;
        deferred_.push_back({ov});
        return Outcome::Deferred;
    }

    // Transform taking cg's frame into cf's so that g lands on `desired`.
    bool do_flip = desired.orient != orient_[g];
    bp shift = do_flip ? desired.pos + pos_[g] + ds_.fragment(g).length
                       : desired.pos - pos_[g];

    Comp& A = comps_[cf];
    Comp& B = comps_[cg];
    bool small_is_b = B.placements.size() <= A.placements.size();
    // The inverse of a flip transform reuses the same shift; a translation
    // inverts its sign.
    bool ok = small_is_b ? cross_check(B, A, do_flip, shift)
                         : cross_check(A, B, do_flip, do_flip ? shift : -shift);
    if (!ok) {
        deferred_.push_back({ov});
        return Outcome::Deferred;
    }

    // Merge the smaller layout into the larger one's frame. When the smaller
    // side is cf, the merged component keeps cg's frame.
    Comp& small = small_is_b ? B : A;
    Comp& big = small_is_b ? A : B;
    int32_t big_id = small_is_b ? cf : cg;
    bp apply_shift = small_is_b ? shift : (do_flip ? shift : -shift);
    std::vector<Placement> moved;
    moved.reserve(small.placements.size());
    for (const Placement& p : small.placements) {
        Placement q = p;
        bp len = ds_.fragment(p.frag).length;
        q.pos = tentative_pos(p.pos, len, do_flip, apply_shift);
        if (do_flip) q.orient = flip(q.orient);
        moved.push_back(q);
        comp_[q.frag] = big_id;
        pos_[q.frag] = q.pos;
        orient_[q.frag] = q.orient;
    }
    std::sort(moved.begin(), moved.end(), [&](const Placement& x, const Placement& y) {
        if (x.pos != y.pos) return x.pos < y.pos;
        return ds_.fragment_rank(x.frag) < ds_.fragment_rank(y.frag);
    });
    std::vector<Placement> merged;
    merged.reserve(big.placements.size() + moved.size());
    std::merge(big.placements.begin(), big.placements.end(), moved.begin(), moved.end(),
               std::back_inserter(merged), [&](const Placement& x, const Placement& y) {
                   if (x.pos != y.pos) return x.pos < y.pos;
                   return ds_.fragment_rank(x.frag) < ds_.fragment_rank(y.frag);
               });
    big.placements = std::move(merged);
    big.max_len = std::max(big.max_len, small.max_len);
    small.placements.clear();
    small.alive = false;
    return Outcome::Merged;
}

void Assembler::run_first_pass() {
    for (size_t f = 0; f < ds_.fragment_count(); ++f)
        if (classes_[f].kind == FragClassKind::Maximal)
            ensure_component(static_cast<FragIndex>(f));

    std::vector<int32_t> order;
    const auto& all = index_.all();
    for (int32_t id = 0; id < static_cast<int32_t>(all.size()); ++id) {
        const ValidOverlap& ov = all[id];
        if (ov.kind != OverlapKind::Dovetail) continue;
        if (classes_[ov.frag_a].kind != FragClassKind::Maximal ||
            classes_[ov.frag_b].kind != FragClassKind::Maximal)
            continue;
        order.push_back(id);
    }
    std::sort(order.begin(), order.end(), [&](int32_t x, int32_t y) {
        const ValidOverlap& a = all[x];
        const ValidOverlap& b = all[y];
        if (a.overlap_length != b.overlap_length) return a.overlap_length > b.overlap_length;
        if (a.frag_a != b.frag_a) return ds_.fragment_rank(a.frag_a) < ds_.fragment_rank(b.frag_a);
        if (a.frag_b != b.frag_b) return ds_.fragment_rank(a.frag_b) < ds_.fragment_rank(b.frag_b);
        return x < y;
    });
    for (int32_t id : order) process(all[id]);
}

void Assembler::place_subfragments() {
    // Containers may themselves be subfragments; place outermost first.
    std::vector<int32_t> depth(ds_.fragment_count(), -1);
    auto chain_depth = [&](FragIndex f) {
        int32_t d = 0;
        FragIndex cur = f;
        std::vector<FragIndex> seen;
        while (classes_[cur].kind == FragClassKind::Subfragment) {
            seen.push_back(cur);
            if (seen.size() > 64) return int32_t{1 << 20};  // defensive cycle cap
            cur = classes_[cur].container;
            ++d;
        }
        return d;
    };
    std::vector<FragIndex> subs;
    for (size_t f = 0; f < ds_.fragment_count(); ++f) {
        if (classes_[f].kind != FragClassKind::Subfragment) continue;
        depth[f] = chain_depth(static_cast<FragIndex>(f));
        subs.push_back(static_cast<FragIndex>(f));
    }
    std::sort(subs.begin(), subs.end(), [&](FragIndex x, FragIndex y) {
        if (depth[x] != depth[y]) return depth[x] < depth[y];
        return ds_.fragment_rank(x) < ds_.fragment_rank(y);
    });

    for (FragIndex s : subs) {
        FragIndex c = classes_[s].container;
        if (comp_[c] < 0) {
            rejected_subfrags_.push_back({s, SubfragRejectReason::OrphanContainer});
            continue;
        }
        const ValidOverlap& cov = index_.at(classes_[s].container_overlap);
        auto [off, rel] = oriented_offset(ds_, cov, c);
        Placement tentative = implied_placement(placement(c), ds_.fragment(c).length,
                                                ds_.fragment(s).length, s, off, rel);
        bool good = true;
        for (int32_t oid : index_.of_fragment(s)) {
            if (oid == classes_[s].container_overlap) continue;
            const ValidOverlap& ov = index_.at(oid);
            FragIndex x = ov.frag_a == s ? ov.frag_b : ov.frag_a;
            if (comp_[x] < 0) continue;  // not already placed; no constraint
            if (comp_[x] != comp_[c]) {
                good = false;
                break;
            }
            auto [off_xs, rel_xs] = oriented_offset(ds_, ov, x);
            Placement expect = implied_placement(placement(x), ds_.fragment(x).length,
                                                 ds_.fragment(s).length, s, off_xs, rel_xs);
            if (expect.orient != tentative.orient ||
                std::llabs(expect.pos - tentative.pos) > params_.offset_tolerance) {
                good = false;
                break;
            }
        }
        if (!good) {
            rejected_subfrags_.push_back({s, SubfragRejectReason::ConflictingEvidence});
            continue;
        }
        comp_[s] = comp_[c];
        pos_[s] = tentative.pos;
        orient_[s] = tentative.orient;
        Comp& comp = comps_[comp_[s]];
        auto it = std::lower_bound(
            comp.placements.begin(), comp.placements.end(), tentative,
            [&](const Placement& x, const Placement& y) {
                if (x.pos != y.pos) return x.pos < y.pos;
                return ds_.fragment_rank(x.frag) < ds_.fragment_rank(y.frag);
            });
        comp.placements.insert(it, tentative);
        comp.max_len = std::max(comp.max_len, ds_.fragment(s).length);
    }
}

void Assembler::revalidate_subfragments() {
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t f = 0; f < ds_.fragment_count(); ++f) {
            if (classes_[f].kind != FragClassKind::Subfragment || comp_[f] < 0) continue;
            auto s = static_cast<FragIndex>(f);
            FragIndex c = classes_[s].container;
            bool good = comp_[c] >= 0 && comp_[c] == comp_[s];
            SubfragRejectReason why = SubfragRejectReason::OrphanContainer;
            if (good) {
                why = SubfragRejectReason::ConflictingEvidence;
                for (int32_t oid : index_.of_fragment(s)) {
                    const ValidOverlap& ov = index_.at(oid);
                    FragIndex x = ov.frag_a == s ? ov.frag_b : ov.frag_a;
                    if (comp_[x] < 0) continue;
                    if (comp_[x] != comp_[s]) {
                        good = false;
                        break;
                    }
                    auto [off_xs, rel_xs] = oriented_offset(ds_, ov, x);
                    Placement expect =
                        implied_placement(placement(x), ds_.fragment(x).length,
                                          ds_.fragment(s).length, s, off_xs, rel_xs);
                    if (expect.orient != orient_[s] ||
                        std::llabs(expect.pos - pos_[s]) > params_.offset_tolerance) {
                        good = false;
                        break;
                    }
                }
            }
            if (good) continue;
            Comp& comp = comps_[comp_[s]];
            comp.placements.erase(
                std::remove_if(comp.placements.begin(), comp.placements.end(),
                               [&](const Placement& p) { return p.frag == s; }),
                comp.placements.end());
            comp_[s] = -1;
            rejected_subfrags_.push_back({s, why});
            changed = true;
        }
    }
}

std::vector<DeferredOverlap> Assembler::take_deferred() {
    return std::exchange(deferred_, {});
}

namespace {

std::vector<Subcontig> normalize_components(const Dataset& ds,
                                            std::vector<std::vector<Placement>> groups) {
    std::vector<Subcontig> out;
    for (auto& g : groups) {
        if (g.empty()) continue;
        Subcontig sc;
        const Placement* anchor = &g.front();
        for (const Placement& p : g)
            if (ds.fragment_rank(p.frag) < ds.fragment_rank(anchor->frag)) anchor = &p;
        bool do_flip = anchor->orient == Orient::Reverse;
        bp lo = INT64_MAX, hi = INT64_MIN;
        for (Placement& p : g) {
            bp len = ds.fragment(p.frag).length;
            if (do_flip) {
                p.pos = -(p.pos + len);
                p.orient = flip(p.orient);
            }
            lo = std::min(lo, p.pos);
            hi = std::max(hi, p.pos + len);
        }
        for (Placement& p : g) p.pos -= lo;
        std::sort(g.begin(), g.end(), [&](const Placement& x, const Placement& y) {
            if (x.pos != y.pos) return x.pos < y.pos;
            return ds.fragment_rank(x.frag) < ds.fragment_rank(y.frag);
        });
        sc.placements = std::move(g);
        sc.length = hi - lo;
        std::vector<CloneIndex> clones;
        for (const Placement& p : sc.placements) clones.push_back(ds.fragment(p.frag).clone);
        std::sort(clones.begin(), clones.end(), [&](CloneIndex a, CloneIndex b) {
            return ds.clone_rank(a) < ds.clone_rank(b);
        });
        clones.erase(std::unique(clones.begin(), clones.end()), clones.end());
        sc.member_clones = std::move(clones);
        out.push_back(std::move(sc));
    }
    auto min_rank = [&](const Subcontig& s) {
        int32_t r = INT32_MAX;
        for (const Placement& p : s.placements) r = std::min(r, ds.fragment_rank(p.frag));
        return r;
    };
    std::sort(out.begin(), out.end(), [&](const Subcontig& a, const Subcontig& b) {
        return min_rank(a) < min_rank(b);
    });
    for (size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<int32_t>(i);
    return out;
}

}  // namespace

std::vector<Subcontig> Assembler::finalize() const {
    std::vector<std::vector<Placement>> groups;
    for (const Comp& c : comps_)
        if (c.alive && !c.placements.empty()) groups.push_back(c.placements);
    return normalize_components(ds_, std::move(groups));
}

std::vector<ChromAssignment> resolve_chromosome_conflicts(
    const Dataset& ds, const std::vector<Subcontig>& subcontigs) {
    std::vector<ChromAssignment> out;
    out.reserve(subcontigs.size());
    for (const Subcontig& sc : subcontigs) {
        std::map<std::string, std::vector<CloneIndex>> votes;
        int assigned = 0;
        for (CloneIndex c : sc.member_clones) {
            if (!ds.clone(c).chromosome) continue;
            votes[*ds.clone(c).chromosome].push_back(c);
            ++assigned;
        }
        ChromAssignment a;
        if (votes.empty()) {
            out.push_back(std::move(a));
            continue;
        }
        auto top = votes.begin();
        bool tie = false;
        for (auto it = votes.begin(); it != votes.end(); ++it) {
            if (it == top) continue;
            if (it->second.size() > top->second.size()) {
                top = it;
                tie = false;
            } else if (it->second.size() == top->second.size()) {
                tie = true;
            }
        }
        int minority = assigned - static_cast<int>(top->second.size());
        if (tie || minority >= 2) {
            a.flag = ChromFlag::Conflicted;
            for (auto& [label, cl] : votes)
                if (tie || label != top->first)
                    a.dissenters.insert(a.dissenters.end(), cl.begin(), cl.end());
        } else {
            a.label = top->first;
            if (minority == 1) {
                a.flag = ChromFlag::MinorityDissent;
                for (auto& [label, cl] : votes)
                    if (label != top->first)
                        a.dissenters.insert(a.dissenters.end(), cl.begin(), cl.end());
            }
        }
        out.push_back(std::move(a));
    }
    return out;
}

void write_subcontigs(std::ostream& out, const Dataset& ds,
                      const std::vector<Subcontig>& subcontigs) {
    out << "subcontig_id\tfrag_id\tstart\torientation\n";
    for (const Subcontig& sc : subcontigs)
        for (const Placement& p : sc.placements)
            out << sc.id << '\t' << ds.fragment(p.frag).id << '\t' << p.pos << '\t'
                << orient_char(p.orient) << '\n';
}

std::vector<Subcontig> read_subcontigs(std::istream& in, const Dataset& ds) {
    std::map<int32_t, std::vector<Placement>> groups;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#' || line.rfind("subcontig_id", 0) == 0) continue;
        std::istringstream ss(line);
        int32_t id;
        std::string frag, orient;
        bp start;
        if (!(ss >> id >> frag >> start >> orient))
            throw InputError("subcontig dump line " + std::to_string(line_no) + ": malformed row");
        FragIndex fi = ds.find_fragment(frag);
        if (fi == kNoIndex)
            throw InputError("subcontig dump line " + std::to_string(line_no) +
                             ": unknown fragment " + frag);
        groups[id].push_back({fi, start, parse_orient(orient)});
    }
    std::vector<Subcontig> out;
    for (auto& [id, placements] : groups) {
        Subcontig sc;
        sc.id = id;
        std::sort(placements.begin(), placements.end(),
                  [&](const Placement& x, const Placement& y) {
                      if (x.pos != y.pos) return x.pos < y.pos;
                      return ds.fragment_rank(x.frag) < ds.fragment_rank(y.frag);
                  });
        bp hi = 0;
        for (const Placement& p : placements)
            hi = std::max(hi, p.pos + ds.fragment(p.frag).length);
        sc.length = hi;
        std::vector<CloneIndex> clones;
        for (const Placement& p : placements) clones.push_back(ds.fragment(p.frag).clone);
        std::sort(clones.begin(), clones.end(), [&](CloneIndex a, CloneIndex b) {
            return ds.clone_rank(a) < ds.clone_rank(b);
        });
        clones.erase(std::unique(clones.begin(), clones.end()), clones.end());
        sc.member_clones = std::move(clones);
        sc.placements = std::move(placements);
        out.push_back(std::move(sc));
    }
    return out;
}

std::vector<Subcontig> apply_removals(
    const Dataset& ds, const OverlapIndex& index,
    const std::vector<FragmentClass>& classes, const std::vector<Subcontig>& subcontigs,
    const std::set<FragIndex>& removed_frags,
    const std::set<std::pair<CloneIndex, CloneIndex>>& removed_clone_pairs,
    const PipelineParams& params, std::vector<RejectedSubfragment>* orphaned) {
    // Transitive closure over containment: dropping a container drops its
    // placed subfragments.
    std::set<FragIndex> gone = removed_frags;
    bool grew = true;
    while (grew) {
        grew = false;
        for (const Subcontig& sc : subcontigs) {
            for (const Placement& p : sc.placements) {
                if (gone.count(p.frag)) continue;
                if (classes[p.frag].kind != FragClassKind::Subfragment) continue;
                if (gone.count(classes[p.frag].container)) {
                    gone.insert(p.frag);
                    if (orphaned)
                        orphaned->push_back({p.frag, SubfragRejectReason::OrphanContainer});
                    grew = true;
                }
            }
        }
    }

    auto pair_removed = [&](FragIndex a, FragIndex b) {
        CloneIndex ca = ds.fragment(a).clone, cb = ds.fragment(b).clone;
        if (ca > cb) std::swap(ca, cb);
        return removed_clone_pairs.count({ca, cb}) > 0;
    };

    std::vector<std::vector<Placement>> groups;
    for (const Subcontig& sc : subcontigs) {
        std::vector<Placement> kept;
        for (const Placement& p : sc.placements)
            if (!gone.count(p.frag)) kept.push_back(p);
        if (kept.empty()) continue;

        // Reconnect via surviving witnessed overlaps.
        size_t n = kept.size();
        std::vector<int32_t> dsu(n);
        for (size_t i = 0; i < n; ++i) dsu[i] = static_cast<int32_t>(i);
        std::function<int32_t(int32_t)> find = [&](int32_t x) {
            while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
            return x;
        };
        for (size_t i = 0; i < n; ++i) {
            bp end_i = kept[i].pos + ds.fragment(kept[i].frag).length;
            for (size_t j = i + 1; j < n && kept[j].pos < end_i; ++j) {
                if (pair_removed(kept[i].frag, kept[j].frag)) continue;
                bp off = implied_offset(kept[i], ds.fragment(kept[i].frag).length, kept[j],
                                        ds.fragment(kept[j].frag).length);
                if (index.has_matching(kept[i].frag, kept[j].frag, off,
                                       implied_rel(kept[i], kept[j]),
                                       params.offset_tolerance))
                    dsu[find(static_cast<int32_t>(i))] = find(static_cast<int32_t>(j));
            }
        }
        std::map<int32_t, std::vector<Placement>> parts;
        for (size_t i = 0; i < n; ++i) parts[find(static_cast<int32_t>(i))].push_back(kept[i]);
        for (auto& [root, part] : parts) groups.push_back(std::move(part));
    }
    return normalize_components(ds, std::move(groups));
}

}  // namespace cloneasm
