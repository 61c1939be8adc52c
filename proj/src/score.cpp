#include "cloneasm/score.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <ostream>
#include <set>

namespace cloneasm {

namespace {

// Union-find over clones with identical true neighborhoods (excluding each
// other): their relative order is invisible to the assembler.
struct TwinClasses {
    std::map<CloneIndex, CloneIndex> parent;
    CloneIndex find(CloneIndex c) {
        auto it = parent.find(c);
        if (it == parent.end() || it->second == c) return c;
        return parent[c] = find(it->second);
    }
    void unite(CloneIndex a, CloneIndex b) {
        parent.try_emplace(a, a);
        parent.try_emplace(b, b);
        parent[find(a)] = find(b);
    }
};

}  // namespace

ScoreReport score_assembly(const AssemblyInputs& inputs, const PipelineResult& result,
                           const GroundTruth& truth, const PipelineParams& params) {
    const Dataset& ds = inputs.ds;
    ScoreReport out;
    out.clones_total = static_cast<int>(ds.clone_count());

    // --- true clone adjacency from emitted True overlaps ---------------------
    std::map<CloneIndex, std::set<CloneIndex>> true_nbrs;
    for (const LabeledOverlap& o : truth.overlaps) {
        if (o.label != OverlapLabel::True) continue;
        CloneIndex a = ds.fragment(o.frag_a).clone;
        CloneIndex b = ds.fragment(o.frag_b).clone;
        if (a == b) continue;
        true_nbrs[a].insert(b);
        true_nbrs[b].insert(a);
    }

    // --- order agreement per component ---------------------------------------
    std::map<int32_t, std::vector<const CloneInterval*>> by_comp;
    for (const CloneInterval& iv : result.model.intervals)
        by_comp[iv.component].push_back(&iv);

    std::set<CloneIndex> chimera_set(truth.chimeras.begin(), truth.chimeras.end());
    for (auto& [comp, ivs] : by_comp) {
        std::vector<CloneIndex> clones;
        for (const CloneInterval* iv : ivs)
            if (!chimera_set.count(iv->clone)) clones.push_back(iv->clone);
        if (clones.size() < 2) continue;

        TwinClasses twins;
        for (size_t i = 0; i < clones.size(); ++i)
            for (size_t j = i + 1; j < clones.size(); ++j) {
                auto na = true_nbrs[clones[i]];
                auto nb = true_nbrs[clones[j]];
                na.erase(clones[j]);
                nb.erase(clones[i]);
                if (na == nb) twins.unite(clones[i], clones[j]);
            }

        std::vector<CloneIndex> model_order = clones;
        std::sort(model_order.begin(), model_order.end(), [&](CloneIndex a, CloneIndex b) {
            return result.model.of(a).rank < result.model.of(b).rank;
        });
        std::vector<CloneIndex> truth_order = clones;
        std::sort(truth_order.begin(), truth_order.end(), [&](CloneIndex a, CloneIndex b) {
            const TrueClonePos& pa = truth.clones[a];
            const TrueClonePos& pb = truth.clones[b];
            if (pa.chrom != pb.chrom) return pa.chrom < pb.chrom;
            if (pa.gstart != pb.gstart) return pa.gstart < pb.gstart;
            if (pa.gend != pb.gend) return pa.gend < pb.gend;
            return ds.clone_rank(a) < ds.clone_rank(b);
        });
        auto classes_of = [&](const std::vector<CloneIndex>& order) {
            std::vector<CloneIndex> cl;
            for (CloneIndex c : order) cl.push_back(twins.find(c));
            return cl;
        };
        auto mc = classes_of(model_order);
        auto tc = classes_of(truth_order);
        auto rc = tc;
        std::reverse(rc.begin(), rc.end());
        ++out.components_compared;
        if (mc == tc || mc == rc) ++out.components_order_ok;
    }

    // --- fragment placement error per subcontig -------------------------------
    for (const Subcontig& sc : result.subcontigs) {
        if (sc.placements.size() < 2) continue;
        bool skip = false;
        for (const Placement& p : sc.placements)
            if (chimera_set.count(ds.fragment(p.frag).clone)) skip = true;
        if (skip) continue;
        const Placement& anchor = sc.placements.front();
        const TrueFragmentPos& ta = truth.fragments[anchor.frag];
        bp err_fwd = 0, err_rev = 0;
        bool chrom_ok = true;
        for (const Placement& p : sc.placements) {
            const TrueFragmentPos& tp = truth.fragments[p.frag];
            if (tp.chrom != ta.chrom) {
                chrom_ok = false;
                break;
            }
            bp expect_fwd = anchor.pos + (tp.gstart - ta.gstart);
            bp expect_rev = anchor.pos + (ta.gend - tp.gend);
            err_fwd = std::max<bp>(err_fwd, std::llabs(p.pos - expect_fwd));
            err_rev = std::max<bp>(err_rev, std::llabs(p.pos - expect_rev));
        }
        bp err = chrom_ok ? std::min(err_fwd, err_rev)
                          : std::numeric_limits<bp>::max() / 2;
        out.max_placement_error = std::max(out.max_placement_error, err);
        ++out.placements_compared;
    }

    // --- overlap incorporation vs labels ---------------------------------------
    std::set<std::pair<FragIndex, FragIndex>> incorporated;
    std::vector<int32_t> ids;
    for (const Subcontig& sc : result.subcontigs) {
        const auto& pl = sc.placements;
        for (size_t i = 0; i < pl.size(); ++i) {
            bp end_i = pl[i].pos + ds.fragment(pl[i].frag).length;
            for (size_t j = i + 1; j < pl.size() && pl[j].pos < end_i; ++j) {
                bp off = implied_offset(pl[i], ds.fragment(pl[i].frag).length, pl[j],
                                        ds.fragment(pl[j].frag).length);
                ids.clear();
                result.index.matching(pl[i].frag, pl[j].frag, off,
                                      implied_rel(pl[i], pl[j]), params.offset_tolerance,
                                      ids);
                if (ids.empty()) continue;
                FragIndex a = pl[i].frag, b = pl[j].frag;
                if (!ds.canonical_before(a, b)) std::swap(a, b);
                incorporated.insert({a, b});
            }
        }
    }
    for (const LabeledOverlap& o : truth.overlaps) {
        bool used = incorporated.count({o.frag_a, o.frag_b}) > 0;
        switch (o.label) {
            case OverlapLabel::True:
                ++out.true_emitted;
                if (used) ++out.true_incorporated;
                break;
            case OverlapLabel::RepeatInducedInconsistent:
                ++out.rii_emitted;
                if (used) ++out.rii_incorporated;
                break;
            case OverlapLabel::RepeatInducedConsistent:
                ++out.ric_emitted;
                if (used) ++out.ric_incorporated;
                break;
        }
    }

    // --- chimera detection -------------------------------------------------------
    out.chimeras_planted = static_cast<int>(truth.chimeras.size());
    for (const ResolutionAction& a : result.actions) {
        if (const auto* rv = std::get_if<ActRemoveVertex>(&a)) {
            bool planted = chimera_set.count(rv->clone) > 0;
            if (rv->reason == RemoveReason::SuspiciousChimera) {
                ++out.chimeras_detected;
                if (planted) ++out.chimeras_detected_planted;
            }
            if (!planted) ++out.false_removals;
        } else if (const auto* fn = std::get_if<ActAddFnEdge>(&a)) {
            out.fn_edges_added.push_back({fn->a, fn->b});
        }
    }
    out.fn_reports = static_cast<int>(result.fn_reports.size());

    // --- warps -----------------------------------------------------------------
    // A clone split across contigs has no single assembled span; its
    // per-contig warp would understate trivially, so those are counted apart.
    ScaffoldInput sin{ds, result.subcontigs, result.model, result.graph, params};
    std::map<CloneIndex, int> contigs_of_clone;
    for (const Contig& contig : result.contigs) {
        auto layout = global_placements(sin, contig, result.orientations);
        std::set<CloneIndex> seen;
        for (const GlobalPlacement& p : layout) seen.insert(ds.fragment(p.frag).clone);
        for (CloneIndex c : seen) ++contigs_of_clone[c];
    }
    for (const Contig& contig : result.contigs) {
        auto layout = global_placements(sin, contig, result.orientations);
        std::set<CloneIndex> seen;
        for (const GlobalPlacement& p : layout) seen.insert(ds.fragment(p.frag).clone);
        for (CloneIndex c : seen)
            if (contigs_of_clone[c] == 1) out.warps.push_back(compute_warp(ds, c, layout));
    }
    for (auto& [c, n] : contigs_of_clone)
        if (n > 1) ++out.split_clones;

    return out;
}

void write_score(std::ostream& out, const ScoreReport& s) {
    out << "components_compared\t" << s.components_compared << '\n'
        << "components_order_ok\t" << s.components_order_ok << '\n'
        << "max_placement_error\t" << s.max_placement_error << '\n'
        << "true_overlaps\t" << s.true_incorporated << '/' << s.true_emitted << '\n'
        << "repeat_inconsistent_incorporated\t" << s.rii_incorporated << '/' << s.rii_emitted
        << '\n'
        << "repeat_consistent_incorporated\t" << s.ric_incorporated << '/' << s.ric_emitted
        << '\n'
        << "chimeras_planted\t" << s.chimeras_planted << '\n'
        << "chimeras_detected\t" << s.chimeras_detected << '\n'
        << "chimeras_detected_planted\t" << s.chimeras_detected_planted << '\n'
        << "false_removals\t" << s.false_removals << '\n'
        << "fn_edges_added\t" << s.fn_edges_added.size() << '\n'
        << "fn_reports\t" << s.fn_reports << '\n';
    double wmin = 1.0, wmax = 1.0;
    if (!s.warps.empty()) {
        wmin = *std::min_element(s.warps.begin(), s.warps.end());
        wmax = *std::max_element(s.warps.begin(), s.warps.end());
    }
    out << "warp_min\t" << wmin << '\n'
        << "warp_max\t" << wmax << '\n'
        << "split_clones\t" << s.split_clones << '\n';
}

}  // namespace cloneasm
