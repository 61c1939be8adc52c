#include "cloneasm/scaffold.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace cloneasm {

namespace {

// Facing end clones of an oriented subcontig: per member clone take its
// placed span inside the subcontig, then pick the clone whose span reaches
// farthest in the facing direction.
CloneIndex end_clone(const ScaffoldInput& in, int32_t sc_id, Orient dir, bool right_face) {
    const Subcontig& sc = in.subcontigs[sc_id];
    std::map<CloneIndex, std::pair<bp, bp>> spans;
    for (const Placement& p : sc.placements) {
        CloneIndex c = in.ds.fragment(p.frag).clone;
        bp lo = p.pos, hi = p.pos + in.ds.fragment(p.frag).length;
        auto [it, fresh] = spans.try_emplace(c, std::make_pair(lo, hi));
        if (!fresh) {
            it->second.first = std::min(it->second.first, lo);
            it->second.second = std::max(it->second.second, hi);
        }
    }
    // A flipped subcontig faces with its other end.
    bool use_max_end = (dir == Orient::Forward) == right_face;
    CloneIndex best = kNoIndex;
    std::pair<bp, bp> best_span{0, 0};
    for (auto& [c, span] : spans) {
        if (best == kNoIndex) {
            best = c;
            best_span = span;
            continue;
        }
        bool better;
        if (use_max_end)
            better = span.second > best_span.second ||
                     (span.second == best_span.second &&
                      in.ds.clone_rank(c) < in.ds.clone_rank(best));
        else
            better = span.first < best_span.first ||
                     (span.first == best_span.first &&
                      in.ds.clone_rank(c) < in.ds.clone_rank(best));
        if (better) {
            best = c;
            best_span = span;
        }
    }
    return best;
}

bool clones_adjacent(const ScaffoldInput& in, CloneIndex a, CloneIndex b) {
    return a == b || in.graph.has_edge(a, b);
}

std::pair<int64_t, int64_t> subcontig_key(const ScaffoldInput& in, const Subcontig& sc) {
    int64_t lo = INT64_MAX, hi = INT64_MIN;
    for (CloneIndex c : sc.member_clones) {
        const CloneInterval& iv = in.model.of(c);
        lo = std::min(lo, iv.left);
        hi = std::max(hi, iv.right);
    }
    return {lo, hi};
}

void recompute_coordinates(const ScaffoldInput& in, Contig& contig) {
    bp cursor = 0;
    for (size_t i = 0; i < contig.entries.size(); ++i) {
        contig.entries[i].start = cursor;
        cursor += in.subcontigs[contig.entries[i].subcontig].length + in.params.gap_spacer;
    }
    contig.length = contig.entries.empty()
                        ? 0
                        : contig.entries.back().start +
                              in.subcontigs[contig.entries.back().subcontig].length;
}

char complement(char b) {
    switch (b) {
        case 'A': return 'T';
        case 'T': return 'A';
        case 'C': return 'G';
        case 'G': return 'C';
        default: return 'N';
    }
}

}  // namespace

std::vector<SubcontigOrientation> orient_subcontigs(const ScaffoldInput& in) {
    std::vector<SubcontigOrientation> out(in.subcontigs.size());
    for (size_t i = 0; i < in.subcontigs.size(); ++i) {
        const Subcontig& sc = in.subcontigs[i];
        int64_t score = 0;
        for (size_t j = 0; j + 1 < sc.placements.size(); ++j) {
            int32_t r1 = in.model.of(in.ds.fragment(sc.placements[j].frag).clone).rank;
            int32_t r2 = in.model.of(in.ds.fragment(sc.placements[j + 1].frag).clone).rank;
            if (r2 > r1) ++score;
            else if (r2 < r1) --score;
        }
        out[i].dir = score < 0 ? Orient::Reverse : Orient::Forward;
        CloneIndex lo = sc.member_clones.front(), hi = lo;
        for (CloneIndex c : sc.member_clones) {
            if (in.model.of(c).rank < in.model.of(lo).rank) lo = c;
            if (in.model.of(c).rank > in.model.of(hi).rank) hi = c;
        }
        out[i].sure = lo != hi && !in.graph.has_edge(lo, hi);
    }
    return out;
}

std::vector<Contig> assign_coordinates_and_order(
    const ScaffoldInput& in, const std::vector<SubcontigOrientation>& orient) {
    (void)orient;
    std::map<int32_t, std::vector<int32_t>> by_component;
    for (const Subcontig& sc : in.subcontigs) {
        if (sc.placements.empty()) continue;
        int32_t comp = in.model.of(sc.member_clones.front()).component;
        by_component[comp].push_back(sc.id);
    }
    std::vector<Contig> out;
    for (auto& [comp, ids] : by_component) {
        Contig contig;
        contig.component = comp;
        std::vector<std::pair<std::pair<int64_t, int64_t>, int32_t>> keyed;
        for (int32_t id : ids) keyed.push_back({subcontig_key(in, in.subcontigs[id]), id});
        std::sort(keyed.begin(), keyed.end());
        for (size_t i = 0; i < keyed.size(); ++i) {
            contig.entries.push_back({keyed[i].second, 0});
            if (i > 0 && keyed[i].first == keyed[i - 1].first) {
                if (!contig.tie_groups.empty() && contig.tie_groups.back().second == i)
                    contig.tie_groups.back().second = i + 1;
                else
                    contig.tie_groups.push_back({i - 1, i + 1});
            }
        }
        recompute_coordinates(in, contig);

        // Majority chromosome over member clones; ties stay unassigned.
        std::map<std::string, int> votes;
        for (const ContigEntry& e : contig.entries)
            for (CloneIndex c : in.subcontigs[e.subcontig].member_clones)
                if (in.ds.clone(c).chromosome) ++votes[*in.ds.clone(c).chromosome];
        int best = 0;
        bool tie = false;
        for (auto& [label, n] : votes) {
            if (n > best) {
                best = n;
                contig.chromosome = label;
                tie = false;
            } else if (n == best) {
                tie = true;
            }
        }
        if (tie) contig.chromosome.reset();
        out.push_back(std::move(contig));
    }
    std::sort(out.begin(), out.end(),
              [](const Contig& a, const Contig& b) { return a.component < b.component; });
    for (size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<int32_t>(i);
    return out;
}

std::vector<AdjacencyViolation> check_adjacency(
    const ScaffoldInput& in, const Contig& contig,
    const std::vector<SubcontigOrientation>& orient) {
    std::vector<AdjacencyViolation> out;
    for (size_t i = 0; i + 1 < contig.entries.size(); ++i) {
        int32_t s1 = contig.entries[i].subcontig;
        int32_t s2 = contig.entries[i + 1].subcontig;
        CloneIndex c1 = end_clone(in, s1, orient[s1].dir, true);
        CloneIndex c2 = end_clone(in, s2, orient[s2].dir, false);
        if (!clones_adjacent(in, c1, c2))
            out.push_back({contig.id, s1, s2, c1, c2});
    }
    return out;
}

namespace {

// Permutations of one tie group, capped; larger groups fall back to adjacent
// transpositions.
std::vector<std::vector<int32_t>> group_arrangements(const std::vector<int32_t>& ids) {
    std::vector<std::vector<int32_t>> out;
    if (ids.size() <= 6) {
        std::vector<int32_t> perm = ids;
        std::sort(perm.begin(), perm.end());
        do {
            out.push_back(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
        out.push_back(ids);
        for (size_t i = 0; i + 1 < ids.size(); ++i) {
            auto swapped = ids;
            std::swap(swapped[i], swapped[i + 1]);
            out.push_back(swapped);
        }
    }
    return out;
}

}  // namespace

std::vector<FnReport> detect_fns(const ScaffoldInput& in, std::vector<Contig>& contigs,
                                 const std::vector<SubcontigOrientation>& orient) {
    std::vector<FnReport> reports;
    for (Contig& contig : contigs) {
        for (size_t guard = 0; guard <= in.subcontigs.size(); ++guard) {
            auto violations = check_adjacency(in, contig, orient);
            if (violations.empty()) break;
            const AdjacencyViolation& v = violations.front();

            // If the junction sits inside a tie group, some permutation of
            // the group may satisfy the condition: then it is a tie, not an FN.
            bool fixed_by_ties = false;
            for (auto [b, e] : contig.tie_groups) {
                bool touches = false;
                for (size_t k = b; k < e; ++k)
                    if (contig.entries[k].subcontig == v.left_subcontig ||
                        contig.entries[k].subcontig == v.right_subcontig)
                        touches = true;
                if (!touches) continue;
                std::vector<int32_t> ids;
                for (size_t k = b; k < e; ++k) ids.push_back(contig.entries[k].subcontig);
                for (const auto& arr : group_arrangements(ids)) {
                    Contig trial = contig;
                    for (size_t k = b; k < e; ++k) trial.entries[k].subcontig = arr[k - b];
                    recompute_coordinates(in, trial);
                    if (check_adjacency(in, trial, orient).size() < violations.size()) {
                        auto trial_violations = check_adjacency(in, trial, orient);
                        bool junction_ok = true;
                        for (const auto& tv : trial_violations)
                            if (tv.left_subcontig == v.left_subcontig &&
                                tv.right_subcontig == v.right_subcontig)
                                junction_ok = false;
                        if (junction_ok) {
                            contig = std::move(trial);
                            fixed_by_ties = true;
                            break;
                        }
                    }
                }
                if (fixed_by_ties) break;
            }
            if (fixed_by_ties) continue;

            // FN: blame the side with violations on both flanks, else the one
            // with less fragment evidence, else the higher id.
            auto violation_count = [&](int32_t sc) {
                int n = 0;
                for (const auto& viol : violations)
                    if (viol.left_subcontig == sc || viol.right_subcontig == sc) ++n;
                return n;
            };
            int32_t blame;
            int nl = violation_count(v.left_subcontig);
            int nr = violation_count(v.right_subcontig);
            size_t fl = in.subcontigs[v.left_subcontig].placements.size();
            size_t fr = in.subcontigs[v.right_subcontig].placements.size();
            if (nl != nr)
                blame = nl > nr ? v.left_subcontig : v.right_subcontig;
            else if (fl != fr)
                blame = fl < fr ? v.left_subcontig : v.right_subcontig;
            else
                blame = std::max(v.left_subcontig, v.right_subcontig);

            FnReport rep;
            rep.subcontig = blame;
            for (const Placement& p : in.subcontigs[blame].placements)
                rep.removed_fragments.push_back(p.frag);
            for (const auto& viol : violations)
                if (viol.left_subcontig == blame || viol.right_subcontig == blame)
                    rep.violations.push_back(viol);
            reports.push_back(std::move(rep));

            contig.entries.erase(std::remove_if(contig.entries.begin(), contig.entries.end(),
                                                [&](const ContigEntry& e) {
                                                    return e.subcontig == blame;
                                                }),
                                 contig.entries.end());
            // Tie bookkeeping is positional; rebuild groups after removal.
            std::vector<std::pair<size_t, size_t>> groups;
            for (size_t i = 0; i + 1 < contig.entries.size(); ++i) {
                auto k1 = subcontig_key(in, in.subcontigs[contig.entries[i].subcontig]);
                auto k2 = subcontig_key(in, in.subcontigs[contig.entries[i + 1].subcontig]);
                if (k1 == k2) {
                    if (!groups.empty() && groups.back().second == i + 1)
                        groups.back().second = i + 2;
                    else
                        groups.push_back({i, i + 2});
                }
            }
            contig.tie_groups = std::move(groups);
            recompute_coordinates(in, contig);
        }
    }
    return reports;
}

std::vector<GlobalPlacement> global_placements(const ScaffoldInput& in, const Contig& contig,
                                               const std::vector<SubcontigOrientation>& orient) {
    std::vector<GlobalPlacement> out;
    for (const ContigEntry& e : contig.entries) {
        const Subcontig& sc = in.subcontigs[e.subcontig];
        Orient dir = orient[e.subcontig].dir;
        for (const Placement& p : sc.placements) {
            bp len = in.ds.fragment(p.frag).length;
            GlobalPlacement gp;
            gp.frag = p.frag;
            gp.subcontig = e.subcontig;
            if (dir == Orient::Forward) {
                gp.start = e.start + p.pos;
                gp.orient = p.orient;
            } else {
                gp.start = e.start + sc.length - p.pos - len;
                gp.orient = flip(p.orient);
            }
            out.push_back(gp);
        }
    }
    std::sort(out.begin(), out.end(), [&](const GlobalPlacement& a, const GlobalPlacement& b) {
        if (a.start != b.start) return a.start < b.start;
        return in.ds.fragment_rank(a.frag) < in.ds.fragment_rank(b.frag);
    });
    return out;
}

double compute_warp(const Dataset& ds, CloneIndex clone,
                    const std::vector<GlobalPlacement>& layout) {
    bp lo = INT64_MAX, hi = INT64_MIN;
    for (const GlobalPlacement& p : layout) {
        if (ds.fragment(p.frag).clone != clone) continue;
        lo = std::min(lo, p.start);
        hi = std::max(hi, p.start + ds.fragment(p.frag).length);
    }
    if (lo == INT64_MAX) throw InternalError("compute_warp: clone has no placed fragments");
    if (ds.clone(clone).estimated_length <= 0)
        throw InternalError("compute_warp: clone has no estimated length");
    return static_cast<double>(hi - lo) / static_cast<double>(ds.clone(clone).estimated_length);
}

std::vector<FpReport> detect_residual_fps(const ScaffoldInput& in,
                                          const std::vector<Contig>& contigs,
                                          const std::vector<SubcontigOrientation>& orient) {
    std::vector<FpReport> out;
    for (const Contig& contig : contigs) {
        auto layout = global_placements(in, contig, orient);
        std::map<CloneIndex, std::pair<const GlobalPlacement*, const GlobalPlacement*>> extremes;
        for (const GlobalPlacement& p : layout) {
            CloneIndex c = in.ds.fragment(p.frag).clone;
            auto [it, fresh] = extremes.try_emplace(c, std::make_pair(&p, &p));
            if (fresh) continue;
            if (p.start < it->second.first->start) it->second.first = &p;
            bp hi_new = p.start + in.ds.fragment(p.frag).length;
            bp hi_old = it->second.second->start + in.ds.fragment(it->second.second->frag).length;
            if (hi_new > hi_old) it->second.second = &p;
        }
        for (auto& [clone, ends] : extremes) {
            if (in.ds.clone(clone).estimated_length <= 0) {
                FpReport r;
                r.clone = clone;
                r.skipped = true;
                r.note = "no estimated length";
                out.push_back(std::move(r));
                continue;
            }
            bp span = ends.second->start + in.ds.fragment(ends.second->frag).length -
                      ends.first->start;
            double warp = static_cast<double>(span) /
                          static_cast<double>(in.ds.clone(clone).estimated_length);
            if (warp <= in.params.warp_flag_threshold && span <= in.params.long_bac_length_flag)
                continue;
            FpReport r;
            r.clone = clone;
            r.warp = warp;
            r.assembled_span = span;
            r.estimated = in.ds.clone(clone).estimated_length;
            r.span_lo_frag = ends.first->frag;
            r.span_hi_frag = ends.second->frag;
            out.push_back(std::move(r));
        }
    }
    std::sort(out.begin(), out.end(), [&](const FpReport& a, const FpReport& b) {
        return in.ds.clone_rank(a.clone) < in.ds.clone_rank(b.clone);
    });
    return out;
}

ExtraInfoLog apply_extra_info(const ScaffoldInput& in, std::vector<Contig>& contigs,
                              std::vector<SubcontigOrientation>& orient) {
    ExtraInfoLog log;

    // Effective orientation of a clone inside one subcontig: majority over
    // its placed fragments.
    auto clone_orient_in = [&](int32_t sc_id, CloneIndex clone) {
        int fwd = 0, rev = 0;
        for (const Placement& p : in.subcontigs[sc_id].placements) {
            if (in.ds.fragment(p.frag).clone != clone) continue;
            Orient o = orient[sc_id].dir == Orient::Forward ? p.orient : flip(p.orient);
            (o == Orient::Forward ? fwd : rev)++;
        }
        return fwd >= rev ? Orient::Forward : Orient::Reverse;
    };

    for (Contig& contig : contigs) {
        // Tie-group reordering driven by declared fragment orders / end marks.
        for (auto [b, e] : contig.tie_groups) {
            std::vector<int32_t> ids;
            for (size_t k = b; k < e; ++k) ids.push_back(contig.entries[k].subcontig);

            // Constraints: clone X wants subcontig s1 before s2.
            std::vector<std::pair<int32_t, int32_t>> wants;
            std::map<CloneIndex, std::map<int32_t, int32_t>> best_order;  // clone -> sc -> min order
            std::map<CloneIndex, std::map<int32_t, EndMark>> marks;
            for (int32_t id : ids)
                for (const Placement& p : in.subcontigs[id].placements) {
                    const Fragment& f = in.ds.fragment(p.frag);
                    if (f.declared_order) {
                        auto& m = best_order[f.clone];
                        auto it = m.find(id);
                        if (it == m.end() || *f.declared_order < it->second)
                            m[id] = *f.declared_order;
                    }
                    if (f.end_mark != EndMark::None) marks[f.clone][id] = f.end_mark;
                }
            for (auto& [clone, sc_orders] : best_order) {
                if (sc_orders.size() < 2) continue;
                bool reversed = clone_orient_in(sc_orders.begin()->first, clone) ==
                                Orient::Reverse;
                for (auto it1 = sc_orders.begin(); it1 != sc_orders.end(); ++it1)
                    for (auto it2 = std::next(it1); it2 != sc_orders.end(); ++it2) {
                        auto [lo, hi] = it1->second < it2->second
                                            ? std::make_pair(it1->first, it2->first)
                                            : std::make_pair(it2->first, it1->first);
                        if (reversed) std::swap(lo, hi);
                        wants.push_back({lo, hi});
                    }
            }
            for (auto& [clone, mk] : marks) {
                // A left-end fragment belongs at the clone's extreme.
                for (auto& [sc_id, mark] : mk)
                    for (int32_t other : ids) {
                        if (other == sc_id) continue;
                        bool other_has_clone = false;
                        for (const Placement& p : in.subcontigs[other].placements)
                            if (in.ds.fragment(p.frag).clone == clone) other_has_clone = true;
                        if (!other_has_clone) continue;
                        bool reversed = clone_orient_in(sc_id, clone) == Orient::Reverse;
                        bool left = (mark == EndMark::Left) != reversed;
                        wants.push_back(left ? std::make_pair(sc_id, other)
                                             : std::make_pair(other, sc_id));
                    }
            }
            if (wants.empty()) continue;

            auto score = [&](const std::vector<int32_t>& arr) {
                std::map<int32_t, size_t> pos;
                for (size_t i = 0; i < arr.size(); ++i) pos[arr[i]] = i;
                int s = 0;
                for (auto [lo, hi] : wants)
                    if (pos.count(lo) && pos.count(hi) && pos[lo] < pos[hi]) ++s;
                return s;
            };
            int cur_score = score(ids);
            std::vector<int32_t> best = ids;
            int best_score = cur_score;
            for (const auto& arr : group_arrangements(ids))
                if (int s = score(arr); s > best_score) {
                    best = arr;
                    best_score = s;
                }
            if (best == ids) continue;

            Contig trial = contig;
            for (size_t k = b; k < e; ++k) trial.entries[k].subcontig = best[k - b];
            recompute_coordinates(in, trial);
            if (check_adjacency(in, trial, orient).size() <=
                check_adjacency(in, contig, orient).size()) {
                contig = std::move(trial);
                std::ostringstream msg;
                msg << "contig " << contig.id << ": tie group reordered for extra info ("
                    << best_score << "/" << wants.size() << " constraints)";
                log.applied.push_back(msg.str());
            } else {
                std::ostringstream msg;
                msg << "contig " << contig.id
                    << ": tie reorder skipped, adjacency condition would break";
                log.infeasible.push_back(msg.str());
            }
        }

        // Unsure subcontigs whose end marks read backwards get flipped.
        for (ContigEntry& e : contig.entries) {
            if (orient[e.subcontig].sure) continue;
            int good = 0, bad = 0;
            const Subcontig& sc = in.subcontigs[e.subcontig];
            std::map<CloneIndex, std::pair<bp, bp>> spans;
            for (const Placement& p : sc.placements) {
                CloneIndex c = in.ds.fragment(p.frag).clone;
                bp lo = p.pos, hi = p.pos + in.ds.fragment(p.frag).length;
                auto [it, fresh] = spans.try_emplace(c, std::make_pair(lo, hi));
                if (!fresh) {
                    it->second.first = std::min(it->second.first, lo);
                    it->second.second = std::max(it->second.second, hi);
                }
            }
            for (const Placement& p : sc.placements) {
                const Fragment& f = in.ds.fragment(p.frag);
                if (f.end_mark == EndMark::None) continue;
                auto span = spans[f.clone];
                bp mid = p.pos + f.length / 2;
                bool at_low = mid - span.first < span.second - mid;
                Orient o = orient[e.subcontig].dir == Orient::Forward ? p.orient
                                                                      : flip(p.orient);
                bool low_is_left = orient[e.subcontig].dir == Orient::Forward;
                bool is_left_end = (f.end_mark == EndMark::Left) == (o == Orient::Forward);
                (((at_low == low_is_left) == is_left_end) ? good : bad)++;
            }
            if (bad > good) {
                auto flipped = orient;
                flipped[e.subcontig].dir = flip(orient[e.subcontig].dir);
                if (check_adjacency(in, contig, flipped).size() <=
                    check_adjacency(in, contig, orient).size()) {
                    orient = std::move(flipped);
                    log.applied.push_back("subcontig " + std::to_string(e.subcontig) +
                                          " flipped to honor end-fragment marks");
                } else {
                    log.infeasible.push_back("subcontig " + std::to_string(e.subcontig) +
                                             " end-mark flip skipped, adjacency would break");
                }
            }
        }
    }
    return log;
}

OrientUnsureStats orient_unsure(const ScaffoldInput& in, const std::vector<Contig>& contigs,
                                const std::vector<OrientationPair>& pairs,
                                std::vector<SubcontigOrientation>& orient) {
    OrientUnsureStats stats;
    // Locate each fragment's subcontig and in-subcontig orientation.
    std::vector<int32_t> sc_of(in.ds.fragment_count(), -1);
    std::vector<Orient> o_of(in.ds.fragment_count(), Orient::Forward);
    std::vector<char> in_layout(in.subcontigs.size(), 0);
    for (const Contig& c : contigs)
        for (const ContigEntry& e : c.entries) in_layout[e.subcontig] = 1;
    for (const Subcontig& sc : in.subcontigs) {
        if (!in_layout[sc.id]) continue;
        for (const Placement& p : sc.placements) {
            sc_of[p.frag] = sc.id;
            o_of[p.frag] = p.orient;
        }
    }

    struct Evidence {
        int32_t a, b;          // subcontigs
        RelOrient want;        // required composed orientation
        Orient oa, ob;         // fragment orientations inside subcontigs
        int32_t count;
    };
    std::vector<Evidence> ev;
    std::vector<std::vector<size_t>> incident(in.subcontigs.size());
    for (const OrientationPair& p : pairs) {
        int32_t a = sc_of[p.frag_a], b = sc_of[p.frag_b];
        if (a < 0 || b < 0 || a == b) continue;
        ev.push_back({a, b, p.orient, o_of[p.frag_a], o_of[p.frag_b], p.evidence_count});
        incident[a].push_back(ev.size() - 1);
        incident[b].push_back(ev.size() - 1);
    }

    auto agrees = [&](const Evidence& e) {
        RelOrient eff = RelOrient::Same;
        Orient ga = e.oa, gb = e.ob;
        if (orient[e.a].dir == Orient::Reverse) ga = flip(ga);
        if (orient[e.b].dir == Orient::Reverse) gb = flip(gb);
        eff = ga == gb ? RelOrient::Same : RelOrient::Reverse;
        return eff == e.want;
    };
    auto total_disagree = [&] {
        int d = 0;
        for (const Evidence& e : ev)
            if (!agrees(e)) d += e.count;
        return d;
    };

    stats.initial_disagreements = total_disagree();
    std::vector<char> has_evidence(in.subcontigs.size(), 0);
    for (const Evidence& e : ev) {
        has_evidence[e.a] = 1;
        has_evidence[e.b] = 1;
    }
    for (size_t sc = 0; sc < in.subcontigs.size(); ++sc)
        if (in_layout[sc] && !orient[sc].sure && !has_evidence[sc])
            orient[sc].low_confidence = true;

    // Progressively flip the unsure subcontig with the worst margin.
    int max_rounds = static_cast<int>(in.subcontigs.size() * (ev.size() + 1) + 8);
    for (int round = 0; round < max_rounds; ++round) {
        int32_t best_sc = -1;
        int best_gain = 0;
        for (size_t sc = 0; sc < in.subcontigs.size(); ++sc) {
            if (!in_layout[sc] || orient[sc].sure || incident[sc].empty()) continue;
            int gain = 0;
            for (size_t ei : incident[sc]) {
                const Evidence& e = ev[ei];
                bool now = agrees(e);
                orient[sc].dir = flip(orient[sc].dir);
                bool after = agrees(e);
                orient[sc].dir = flip(orient[sc].dir);
                if (!now && after) gain += e.count;
                if (now && !after) gain -= e.count;
            }
            if (gain > best_gain) {
                best_gain = gain;
                best_sc = static_cast<int32_t>(sc);
            }
        }
        if (best_sc < 0 || best_gain <= 0) break;
        orient[best_sc].dir = flip(orient[best_sc].dir);
        ++stats.flips;
    }
    stats.final_disagreements = total_disagree();
    return stats;
}

ConsensusLayout consensus_layout(const ScaffoldInput& in, const Contig& contig,
                                 const std::vector<SubcontigOrientation>& orient,
                                 const std::vector<FragmentClass>& classes) {
    ConsensusLayout out;
    out.placements = global_placements(in, contig, orient);
    out.length = contig.length;

    bool have_sequences = !out.placements.empty();
    for (const GlobalPlacement& p : out.placements)
        if (classes[p.frag].kind != FragClassKind::Subfragment &&
            in.ds.fragment(p.frag).sequence.empty())
            have_sequences = false;
    if (!have_sequences) return out;

    // Paint in ascending precedence so the preferred fragment lands last:
    // finished beats draft, then longer, then lower id.
    std::vector<const GlobalPlacement*> order;
    for (const GlobalPlacement& p : out.placements)
        if (classes[p.frag].kind != FragClassKind::Subfragment) order.push_back(&p);
    auto precedence = [&](const GlobalPlacement* p) {
        const Fragment& f = in.ds.fragment(p->frag);
        bool finished = f.clone != kNoIndex && in.ds.clone(f.clone).phase == Phase::Finished;
        return std::make_tuple(finished ? 1 : 0, f.length,
                               -static_cast<int64_t>(in.ds.fragment_rank(p->frag)));
    };
    std::sort(order.begin(), order.end(),
              [&](const GlobalPlacement* a, const GlobalPlacement* b) {
                  return precedence(a) < precedence(b);
              });
    out.sequence.assign(static_cast<size_t>(out.length), 'N');
    for (const GlobalPlacement* p : order) {
        const Fragment& f = in.ds.fragment(p->frag);
        for (bp i = 0; i < f.length; ++i) {
            bp gpos = p->start + i;
            if (gpos < 0 || gpos >= out.length) continue;
            char base = p->orient == Orient::Forward
                            ? f.sequence[static_cast<size_t>(i)]
                            : complement(f.sequence[static_cast<size_t>(f.length - 1 - i)]);
            out.sequence[static_cast<size_t>(gpos)] = base;
        }
    }
    return out;
}

}  // namespace cloneasm
