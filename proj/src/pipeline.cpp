#include "cloneasm/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace cloneasm {

namespace {

constexpr int kMaxResolveRounds = 8;

void add_fn_edges(CloneGraph& g, const std::set<std::pair<CloneIndex, CloneIndex>>& fn_edges) {
    for (auto [a, b] : fn_edges) {
        if (!g.has_vertex(a) || !g.has_vertex(b)) continue;
        if (g.has_edge(a, b)) continue;
        g.edge(a, b).fn_added = true;
    }
}

}  // namespace

std::string action_to_string(const Dataset& ds, const ResolutionAction& a) {
    std::ostringstream out;
    if (const auto* fn = std::get_if<ActAddFnEdge>(&a)) {
        out << "add_fn_edge\t" << ds.clone(fn->a).id << '\t' << ds.clone(fn->b).id
            << "\tevidence=" << ds.fragment(fn->frag_a).id << ','
            << ds.fragment(fn->frag_b).id;
    } else if (const auto* fp = std::get_if<ActRemoveFpEdges>(&a)) {
        out << "remove_fp_edges\tcarrier=" << ds.fragment(fp->carrier).id << "\tedges=";
        for (size_t i = 0; i < fp->edges.size(); ++i) {
            if (i) out << ',';
            out << ds.clone(fp->edges[i].first).id << '-' << ds.clone(fp->edges[i].second).id;
        }
        out << "\treason=identified_repeat";
    } else if (const auto* rv = std::get_if<ActRemoveVertex>(&a)) {
        out << "remove_vertex\t" << ds.clone(rv->clone).id << "\treason="
            << (rv->reason == RemoveReason::SuspiciousChimera ? "suspicious_chimera"
                                                              : "unidentified_repeat");
    } else {
        const auto& s = std::get<ActSidelineShortClone>(a);
        out << "sideline_short_clone\t" << ds.clone(s.clone).id
            << "\treason=below_length_floor";
    }
    return out.str();
}

PipelineResult run_pipeline(const AssemblyInputs& inputs, const PipelineParams& params,
                            std::ostream* log) {
    params.validate();
    const Dataset& ds = inputs.ds;
    PipelineResult res(ds);
    auto say = [&](const std::string& s) {
        if (log) *log << "[cloneasm] " << s << '\n';
    };

    // Step 0: classify raw alignments into valid overlaps.
    for (const RawAlignment& aln : inputs.alignments) {
        auto cls = classify_overlap(ds, aln, params);
        if (const auto* ov = std::get_if<ValidOverlap>(&cls)) {
            res.index.add(*ov);
            ++res.counts.alignments_accepted;
        } else {
            RejectReason why = std::get<Rejected>(cls).reason;
            res.rejected_alignments.push_back({aln, why});
            if (why == RejectReason::LowIdentity)
                ++res.counts.alignments_rejected_identity;
            else
                ++res.counts.alignments_rejected_internal;
        }
    }
    for (const ValidOverlap& nt : inputs.nt_pairs) res.index.add(nt);

    // Step 1: fragment classification.
    res.classes = classify_fragments(ds, res.index, params);
    res.counts.fragments_total = static_cast<int64_t>(ds.fragment_count());
    for (const auto& c : res.classes) {
        if (c.kind == FragClassKind::Singleton) ++res.counts.fragments_singleton;
        if (c.kind == FragClassKind::Maximal) ++res.counts.fragments_maximal;
        if (c.kind == FragClassKind::Subfragment) ++res.counts.fragments_subfragment;
    }
    say("step 1: " + std::to_string(res.counts.fragments_maximal) + " maximal, " +
        std::to_string(res.counts.fragments_subfragment) + " subfragments, " +
        std::to_string(res.counts.fragments_singleton) + " singleton fragments");

    // Steps 2-3: conservative assembly, then good subfragments.
    Assembler assembler(ds, res.index, res.classes, params);
    assembler.run_first_pass();
    assembler.place_subfragments();
    auto subcontigs = assembler.finalize();
    res.counts.subcontigs_initial = static_cast<int64_t>(subcontigs.size());
    say("step 2-3: " + std::to_string(subcontigs.size()) + " subcontigs");

    // Step 4: chromosome conflicts (flag-only).
    res.chrom_flags = resolve_chromosome_conflicts(ds, subcontigs);

    // Step 5: clone graph.
    CloneGraph graph = build_clone_graph(ds, subcontigs, res.index, params);
    say("step 5: clone graph with " + std::to_string(graph.vertices().size()) +
        " clones, " + std::to_string(graph.edges().size()) + " edges");

    // Step 6: resolve deferred inconsistent overlaps, one feedback merge pass.
    auto deferred = assembler.take_deferred();
    res.counts.overlaps_deferred = static_cast<int64_t>(deferred.size());
    auto resolved = resolve_inconsistent_overlaps(ds, deferred, graph, res.index, params);
    res.rejected_overlaps = std::move(resolved.rejected);
    for (const ValidOverlap& ov : resolved.accepted) {
        auto outcome = assembler.process(ov);
        if (outcome == Assembler::Outcome::Deferred)
            res.rejected_overlaps.push_back({ov, DeferredFate::FailedReverify});
        else
            res.accepted_deferred.push_back(ov);
    }
    // Drop anything the second pass deferred again; those stay rejected.
    assembler.take_deferred();
    assembler.revalidate_subfragments();
    res.rejected_subfragments = assembler.rejected_subfragments();
    subcontigs = assembler.finalize();
    res.counts.deferred_accepted = static_cast<int64_t>(res.accepted_deferred.size());
    say("step 6: " + std::to_string(res.counts.deferred_accepted) + " of " +
        std::to_string(res.counts.overlaps_deferred) + " deferred overlaps accepted");

    // Step 7: interval resolution rounds. FP-removed clone pairs stay dead
    // across rebuilds: surviving co-placements must not resurrect them.
    std::set<std::pair<CloneIndex, CloneIndex>> fn_edges;
    std::set<std::pair<CloneIndex, CloneIndex>> banned_fn;
    std::set<std::pair<CloneIndex, CloneIndex>> fp_removed_pairs;
    std::set<FragIndex> removed_frags;
    for (int round = 0;; ++round) {
        if (round >= kMaxResolveRounds)
            throw InternalError("interval resolution did not converge");
        graph = build_clone_graph(ds, subcontigs, res.index, params);
        for (auto e : fp_removed_pairs) graph.remove_edge(e.first, e.second);
        add_fn_edges(graph, fn_edges);
        auto fn_candidates = collect_unrecorded_pairs(ds, subcontigs, res.index, params);
        auto components = graph.components(ds);
        if (round == 0) {
            res.counts.components = static_cast<int64_t>(components.size());
        }

        size_t actions_before = res.actions.size();
        std::set<FragIndex> newly_removed;
        int noninterval = 0;
        for (const auto& comp : components) {
            if (comp.size() < 4) continue;  // small components are always interval
            std::map<CloneIndex, int> local;
            for (size_t i = 0; i < comp.size(); ++i) local[comp[i]] = static_cast<int>(i);
            std::vector<std::pair<int, int>> es;
            for (CloneIndex c : comp)
                for (CloneIndex nb : graph.neighbors(c))
                    if (c < nb) es.push_back({local[c], local[nb]});
            auto g = CompactGraph::from_edges(static_cast<int>(comp.size()), es);
            if (is_interval_graph(g)) continue;
            ++noninterval;
            ResolutionContext ctx{ds, graph, res.index, fn_candidates, params, &banned_fn};
            auto resolution = resolve_component(comp, ctx);
            for (const ResolutionAction& a : resolution.actions) {
                if (const auto* fn = std::get_if<ActAddFnEdge>(&a)) {
                    fn_edges.insert({fn->a, fn->b});
                    ++res.counts.fn_edges_added;
                } else if (const auto* fp = std::get_if<ActRemoveFpEdges>(&a)) {
                    for (auto e : fp->edges) {
                        fp_removed_pairs.insert(e);
                        banned_fn.insert(e);
                        fn_edges.erase(e);
                        ++res.counts.fp_edges_removed;
                    }
                } else if (const auto* rv = std::get_if<ActRemoveVertex>(&a)) {
                    res.removed_clones.push_back(rv->clone);
                    for (FragIndex f : ds.clone(rv->clone).fragments)
                        newly_removed.insert(f);
                } else {
                    const auto& s = std::get<ActSidelineShortClone>(a);
                    res.sidelined_clones.push_back(s.clone);
                    for (FragIndex f : ds.clone(s.clone).fragments) newly_removed.insert(f);
                }
                res.actions.push_back(a);
            }
        }
        if (round == 0) res.counts.noninterval_components = noninterval;
        if (res.actions.size() == actions_before) break;  // all interval now
        removed_frags.insert(newly_removed.begin(), newly_removed.end());
        std::vector<RejectedSubfragment> orphaned;
        subcontigs = apply_removals(ds, res.index, res.classes, subcontigs, newly_removed,
                                    fp_removed_pairs, params, &orphaned);
        res.rejected_subfragments.insert(res.rejected_subfragments.end(), orphaned.begin(),
                                         orphaned.end());
        say("step 7 round " + std::to_string(round + 1) + ": " +
            std::to_string(res.actions.size() - actions_before) + " actions");
    }
    res.counts.clones_removed = static_cast<int64_t>(res.removed_clones.size());
    res.counts.clones_sidelined = static_cast<int64_t>(res.sidelined_clones.size());
    res.counts.subcontigs_final = static_cast<int64_t>(subcontigs.size());
    say("step 7: " + std::to_string(res.counts.noninterval_components) +
        " non-interval components, " + std::to_string(res.counts.clones_removed) +
        " clones removed, " + std::to_string(res.counts.clones_sidelined) + " sidelined");

    // Refresh step-4 flags for the final subcontig set.
    res.chrom_flags = resolve_chromosome_conflicts(ds, subcontigs);

    // Step 8: interval representation per component.
    res.subcontigs = std::move(subcontigs);
    res.graph = build_clone_graph(ds, res.subcontigs, res.index, params);
    for (auto e : fp_removed_pairs) res.graph.remove_edge(e.first, e.second);
    add_fn_edges(res.graph, fn_edges);
    auto components = res.graph.components(ds);
    int32_t comp_id = 0;
    for (const auto& comp : components) {
        std::vector<std::pair<CloneIndex, CloneIndex>> es;
        for (CloneIndex c : comp)
            for (CloneIndex nb : res.graph.neighbors(c))
                if (c < nb) es.push_back({c, nb});
        auto intervals = interval_representation(ds, comp, es, comp_id);
        for (auto& iv : intervals) {
            res.model.by_clone[iv.clone] = res.model.intervals.size();
            res.model.intervals.push_back(iv);
        }
        ++comp_id;
    }
    say("step 8: " + std::to_string(comp_id) + " interval components realized");

    // Steps 9-15.
    ScaffoldInput sin{ds, res.subcontigs, res.model, res.graph, params};
    res.orientations = orient_subcontigs(sin);
    res.contigs = assign_coordinates_and_order(sin, res.orientations);
    res.fn_reports = detect_fns(sin, res.contigs, res.orientations);
    for (const FnReport& r : res.fn_reports)
        res.counts.fragments_removed_fn += static_cast<int64_t>(r.removed_fragments.size());
    res.fp_reports = detect_residual_fps(sin, res.contigs, res.orientations);
    res.extra_log = apply_extra_info(sin, res.contigs, res.orientations);
    res.orient_stats = orient_unsure(sin, res.contigs, inputs.orientation_pairs,
                                     res.orientations);
    for (const Contig& c : res.contigs)
        res.layouts.push_back(consensus_layout(sin, c, res.orientations, res.classes));
    res.counts.contigs = static_cast<int64_t>(res.contigs.size());
    for (const auto& l : res.layouts)
        res.counts.fragments_used += static_cast<int64_t>(l.placements.size());
    say("steps 9-15: " + std::to_string(res.contigs.size()) + " contigs, " +
        std::to_string(res.counts.fragments_removed_fn) + " fragments removed by FN detection");

    res.counts.clone_graph_vertices = static_cast<int64_t>(res.graph.vertices().size());
    res.counts.clone_graph_edges = static_cast<int64_t>(res.graph.edges().size());
    return res;
}

void write_artifacts(const std::string& dir, const AssemblyInputs& inputs,
                     const PipelineResult& res, const PipelineParams& params) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const Dataset& ds = inputs.ds;

    {
        std::ofstream f(dir + "/subcontigs.tsv");
        write_subcontigs(f, ds, res.subcontigs);
    }
    {
        std::ofstream f(dir + "/clone_graph.tsv");
        write_clone_graph(f, ds, res.graph);
    }
    {
        std::ofstream f(dir + "/intervals.tsv");
        f << "clone_id\tleft\tright\trank\tcomponent_id\n";
        for (const CloneInterval& iv : res.model.intervals)
            f << ds.clone(iv.clone).id << '\t' << iv.left << '\t' << iv.right << '\t'
              << iv.rank << '\t' << iv.component << '\n';
    }
    {
        std::ofstream f(dir + "/actions.log");
        for (const ResolutionAction& a : res.actions) f << action_to_string(ds, a) << '\n';
    }
    {
        std::ofstream f(dir + "/layout.txt");
        for (size_t ci = 0; ci < res.contigs.size(); ++ci) {
            const Contig& c = res.contigs[ci];
            f << "contig\t" << c.id << '\t' << c.component << '\t'
              << (c.chromosome ? *c.chromosome : std::string("U")) << '\t' << c.length << '\n';
            for (const ContigEntry& e : c.entries)
                f << e.subcontig << '\t'
                  << (res.orientations[e.subcontig].dir == Orient::Forward ? '+' : '-') << '\t'
                  << e.start << '\n';
            for (const GlobalPlacement& p : res.layouts[ci].placements)
                f << ds.fragment(p.frag).id << '\t' << ds.clone(ds.fragment(p.frag).clone).id
                  << '\t' << p.start << '\t' << (p.orient == Orient::Forward ? '+' : '-')
                  << '\n';
        }
    }
    {
        std::ofstream f(dir + "/consensus.fa");
        for (size_t ci = 0; ci < res.contigs.size(); ++ci) {
            if (res.layouts[ci].sequence.empty()) continue;
            f << ">contig_" << res.contigs[ci].id << '\n';
            const std::string& s = res.layouts[ci].sequence;
            for (size_t i = 0; i < s.size(); i += 80)
                f << s.substr(i, 80) << '\n';
        }
    }
    {
        std::ofstream f(dir + "/fn_reports.tsv");
        f << "subcontig\tcause\tremoved_fragments\tviolated_pairs\n";
        for (const FnReport& r : res.fn_reports) {
            f << r.subcontig << "\tunclassified\t";
            for (size_t i = 0; i < r.removed_fragments.size(); ++i)
                f << (i ? "," : "") << ds.fragment(r.removed_fragments[i]).id;
            f << '\t';
            for (size_t i = 0; i < r.violations.size(); ++i)
                f << (i ? "," : "") << ds.clone(r.violations[i].left_clone).id << '-'
                  << ds.clone(r.violations[i].right_clone).id;
            f << '\n';
        }
    }
    {
        std::ofstream f(dir + "/fp_reports.tsv");
        f << "clone\twarp\tassembled_span\testimated\tspan_fragments\tnote\n";
        for (const FpReport& r : res.fp_reports) {
            f << ds.clone(r.clone).id << '\t';
            if (r.skipped) {
                f << "-\t-\t-\t-\t" << r.note << '\n';
                continue;
            }
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.4f", r.warp);
            f << buf << '\t' << r.assembled_span << '\t' << r.estimated << '\t'
              << ds.fragment(r.span_lo_frag).id << ',' << ds.fragment(r.span_hi_frag).id
              << "\t\n";
        }
    }
    {
        std::ofstream f(dir + "/singletons.tsv");
        f << "clone_id\tfragments\ttotal_length\n";
        for (size_t i = 0; i < ds.clone_count(); ++i) {
            auto ci = static_cast<CloneIndex>(i);
            bool all_singleton = true;
            bp total = 0;
            for (FragIndex fi : ds.clone(ci).fragments) {
                total += ds.fragment(fi).length;
                if (res.classes[fi].kind != FragClassKind::Singleton) all_singleton = false;
            }
            if (all_singleton)
                f << ds.clone(ci).id << '\t' << ds.clone(ci).fragments.size() << '\t' << total
                  << '\n';
        }
    }
    {
        std::ofstream f(dir + "/removed_clones.tsv");
        f << "clone_id\tdisposition\n";
        for (CloneIndex c : res.removed_clones) f << ds.clone(c).id << "\tremoved\n";
        for (CloneIndex c : res.sidelined_clones) f << ds.clone(c).id << "\tsidelined\n";
    }
    {
        std::ofstream f(dir + "/params.txt");
        f << "end_error_finished=" << params.end_error_finished << '\n'
          << "end_error_draft_fraction=" << params.end_error_draft_fraction << '\n'
          << "end_error_draft_cap=" << params.end_error_draft_cap << '\n'
          << "min_identity=" << params.min_identity << '\n'
          << "implied_overlap_threshold=" << params.implied_overlap_threshold << '\n'
          << "offset_tolerance=" << params.offset_tolerance << '\n'
          << "warp_flag_threshold=" << params.warp_flag_threshold << '\n'
          << "long_bac_length_flag=" << params.long_bac_length_flag << '\n'
          << "min_clone_length_floor=" << params.min_clone_length_floor << '\n'
          << "gap_spacer=" << params.gap_spacer << '\n'
          << "random_seed=" << params.random_seed << '\n';
    }
}

}  // namespace cloneasm
