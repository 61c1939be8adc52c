#include "cloneasm/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace cloneasm {

int warp_bucket(double warp) {
    if (warp <= 1.5) return 0;
    if (warp <= 1.8) return 1;
    if (warp <= 2.0) return 2;
    if (warp <= 5.0) return 3;
    if (warp <= 10.0) return 4;
    return 5;
}

int length_bucket(bp len) {
    if (len < 250000) return -1;
    if (len < 300000) return 0;
    if (len < 500000) return 1;
    if (len < 800000) return 2;
    if (len < 1000000) return 3;
    if (len < 2000000) return 4;
    if (len < 3000000) return 5;
    if (len < 10000000) return 6;
    if (len < 20000000) return 7;
    return -1;
}

std::array<int64_t, 6> AssemblyStats::warp_histogram() const {
    std::array<int64_t, 6> h{};
    for (const CloneStat& c : clones) ++h[static_cast<size_t>(warp_bucket(c.warp))];
    return h;
}

std::array<int64_t, 8> AssemblyStats::length_histogram(double warp_threshold) const {
    std::array<int64_t, 8> h{};
    for (const CloneStat& c : clones) {
        if (c.warp <= warp_threshold) continue;
        int b = length_bucket(c.assembled_span);
        if (b >= 0) ++h[static_cast<size_t>(b)];
    }
    return h;
}

AssemblyStats collect_stats(const AssemblyInputs& inputs, const PipelineResult& result,
                            const PipelineParams& params) {
    const Dataset& ds = inputs.ds;
    AssemblyStats stats;

    ScaffoldInput sin{ds, result.subcontigs, result.model, result.graph, params};
    std::set<CloneIndex> assembled;
    for (size_t ci = 0; ci < result.contigs.size(); ++ci) {
        const auto& layout = result.layouts[ci].placements;
        std::map<CloneIndex, std::pair<bp, bp>> spans;
        for (const GlobalPlacement& p : layout) {
            CloneIndex c = ds.fragment(p.frag).clone;
            bp lo = p.start, hi = p.start + ds.fragment(p.frag).length;
            auto [it, fresh] = spans.try_emplace(c, std::make_pair(lo, hi));
            if (!fresh) {
                it->second.first = std::min(it->second.first, lo);
                it->second.second = std::max(it->second.second, hi);
            }
        }
        for (auto& [c, span] : spans) {
            CloneStat cs;
            cs.clone = c;
            cs.assembled_span = span.second - span.first;
            cs.estimated = ds.clone(c).estimated_length;
            cs.warp = static_cast<double>(cs.assembled_span) /
                      static_cast<double>(cs.estimated);
            stats.clones.push_back(cs);
            assembled.insert(c);
        }
        stats.non_singletons.contigs += 1;
        stats.non_singletons.fragments_used += static_cast<int64_t>(layout.size());
        stats.non_singletons.length += result.layouts[ci].length;
    }
    std::sort(stats.clones.begin(), stats.clones.end(),
              [&](const CloneStat& a, const CloneStat& b) {
                  return ds.clone_rank(a.clone) < ds.clone_rank(b.clone);
              });

    for (size_t i = 0; i < ds.clone_count(); ++i) {
        auto ci = static_cast<CloneIndex>(i);
        const Clone& c = ds.clone(ci);
        bool all_singleton = true;
        for (FragIndex f : c.fragments)
            if (result.classes[f].kind != FragClassKind::Singleton) all_singleton = false;
        if (all_singleton) {
            stats.singletons.bacs += 1;
            stats.singletons.contigs += 1;
            stats.singletons.fragments += static_cast<int64_t>(c.fragments.size());
            stats.singletons.fragments_used += static_cast<int64_t>(c.fragments.size());
            for (FragIndex f : c.fragments) stats.singletons.length += ds.fragment(f).length;
        } else if (assembled.count(ci)) {
            stats.non_singletons.bacs += 1;
            stats.non_singletons.fragments += static_cast<int64_t>(c.fragments.size());
        }
    }
    return stats;
}

void write_warp_histogram(std::ostream& out, const AssemblyStats& stats,
                          double warp_threshold) {
    (void)warp_threshold;
    auto h = stats.warp_histogram();
    for (size_t i = 0; i < kWarpBucketNames.size(); ++i)
        out << kWarpBucketNames[i] << (i + 1 < kWarpBucketNames.size() ? '\t' : '\n');
    for (size_t i = 0; i < h.size(); ++i) out << h[i] << (i + 1 < h.size() ? '\t' : '\n');
}

void write_length_histogram(std::ostream& out, const AssemblyStats& stats,
                            double warp_threshold) {
    auto h = stats.length_histogram(warp_threshold);
    for (size_t i = 0; i < kLengthBucketNames.size(); ++i)
        out << kLengthBucketNames[i] << (i + 1 < kLengthBucketNames.size() ? '\t' : '\n');
    int64_t total = 0;
    for (size_t i = 0; i < h.size(); ++i) {
        total += h[i];
        out << h[i] << (i + 1 < h.size() ? '\t' : '\n');
    }
    out << "total\t" << total << '\n';
}

void write_summary(std::ostream& out, const AssemblyStats& stats, bool tsv) {
    auto total = [](const AssemblySummaryRow& a, const AssemblySummaryRow& b) {
        AssemblySummaryRow t;
        t.bacs = a.bacs + b.bacs;
        t.fragments_used = a.fragments_used + b.fragments_used;
        t.fragments = a.fragments + b.fragments;
        t.contigs = a.contigs + b.contigs;
        t.length = a.length + b.length;
        return t;
    };
    AssemblySummaryRow tot = total(stats.singletons, stats.non_singletons);
    if (tsv) {
        out << "group\tbacs\tfragments_used\tfragments\tcontigs\tlength_bp\n";
        auto row = [&](const char* name, const AssemblySummaryRow& r) {
            out << name << '\t' << r.bacs << '\t' << r.fragments_used << '\t' << r.fragments
                << '\t' << r.contigs << '\t' << r.length << '\n';
        };
        row("singletons", stats.singletons);
        row("non_singletons", stats.non_singletons);
        row("total", tot);
    } else {
        out << "                 BACs  Fragments Used/Fragments  Contigs  Length (bp)\n";
        auto row = [&](const char* name, const AssemblySummaryRow& r) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%-14s %6lld %13lld/%-9lld %8lld %12lld\n", name,
                          static_cast<long long>(r.bacs),
                          static_cast<long long>(r.fragments_used),
                          static_cast<long long>(r.fragments),
                          static_cast<long long>(r.contigs),
                          static_cast<long long>(r.length));
            out << buf;
        };
        row("singletons", stats.singletons);
        row("non-singletons", stats.non_singletons);
        row("total", tot);
    }
}

void write_long_clones(std::ostream& out, const Dataset& ds, const AssemblyStats& stats,
                       bp long_flag) {
    std::vector<const CloneStat*> longs;
    for (const CloneStat& c : stats.clones)
        if (c.assembled_span > long_flag) longs.push_back(&c);
    std::sort(longs.begin(), longs.end(), [&](const CloneStat* a, const CloneStat* b) {
        if (a->assembled_span != b->assembled_span)
            return a->assembled_span > b->assembled_span;
        return ds.clone_rank(a->clone) < ds.clone_rank(b->clone);
    });
    out << "clone_id\tassembled_span\testimated\twarp\n";
    for (const CloneStat* c : longs) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", c->warp);
        out << ds.clone(c->clone).id << '\t' << c->assembled_span << '\t' << c->estimated
            << '\t' << buf << '\n';
    }
}

AssemblyView load_assembly_view(const std::string& dir, const Dataset& ds) {
    AssemblyView view;
    std::ifstream layout(dir + "/layout.txt");
    if (!layout) throw InputError("cannot open " + dir + "/layout.txt");
    std::string line;
    std::map<CloneIndex, std::pair<bp, bp>> spans;
    auto flush_contig = [&] {
        for (auto& [c, span] : spans) {
            CloneStat cs;
            cs.clone = c;
            cs.assembled_span = span.second - span.first;
            cs.estimated = ds.clone(c).estimated_length;
            cs.warp = static_cast<double>(cs.assembled_span) /
                      static_cast<double>(cs.estimated);
            view.clones.push_back(cs);
        }
        spans.clear();
    };
    while (std::getline(layout, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::vector<std::string> tok;
        std::string t;
        while (ss >> t) tok.push_back(t);
        if (tok.size() == 5 && tok[0] == "contig") {
            flush_contig();
            ++view.contigs;
        } else if (tok.size() == 4) {
            FragIndex fi = ds.find_fragment(tok[0]);
            if (fi == kNoIndex)
                throw InputError("layout references unknown fragment " + tok[0]);
            bp start = std::stoll(tok[2]);
            CloneIndex c = ds.fragment(fi).clone;
            bp lo = start, hi = start + ds.fragment(fi).length;
            auto [it, fresh] = spans.try_emplace(c, std::make_pair(lo, hi));
            if (!fresh) {
                it->second.first = std::min(it->second.first, lo);
                it->second.second = std::max(it->second.second, hi);
            }
            ++view.fragments_used;
        }
        // 3-token rows are subcontig entries; nothing to collect from them here.
    }
    flush_contig();

    std::ifstream removed(dir + "/removed_clones.tsv");
    if (removed) {
        while (std::getline(removed, line)) {
            if (line.empty() || line.rfind("clone_id", 0) == 0) continue;
            std::istringstream ss(line);
            std::string id, disp;
            ss >> id >> disp;
            view.removed.push_back({id, disp});
        }
    }
    return view;
}

void write_comparison(std::ostream& out, const Dataset& ds, const AssemblyView& a,
                      const AssemblyView& b, double warp_threshold) {
    std::set<CloneIndex> ca, cb;
    for (const CloneStat& c : a.clones) ca.insert(c.clone);
    for (const CloneStat& c : b.clones) cb.insert(c.clone);
    std::vector<CloneIndex> common;
    std::set_intersection(ca.begin(), ca.end(), cb.begin(), cb.end(),
                          std::back_inserter(common));
    if (common.empty())
        out << "# warning: assemblies share no clones; empty intersection compared\n";
    else if (common.size() != ca.size() || common.size() != cb.size())
        out << "# note: clone universes differ (" << ca.size() << " vs " << cb.size()
            << ", " << common.size() << " shared); intersection compared\n";

    std::set<CloneIndex> keep(common.begin(), common.end());
    auto hist = [&](const AssemblyView& v) {
        std::array<int64_t, 6> h{};
        for (const CloneStat& c : v.clones)
            if (keep.count(c.clone)) ++h[static_cast<size_t>(warp_bucket(c.warp))];
        return h;
    };
    auto ha = hist(a), hb = hist(b);
    out << "warp\tassembly_a\tassembly_b\n";
    for (size_t i = 0; i < kWarpBucketNames.size(); ++i)
        out << kWarpBucketNames[i] << '\t' << ha[i] << '\t' << hb[i] << '\n';

    auto lhist = [&](const AssemblyView& v) {
        std::array<int64_t, 8> h{};
        for (const CloneStat& c : v.clones) {
            if (!keep.count(c.clone) || c.warp <= warp_threshold) continue;
            int bidx = length_bucket(c.assembled_span);
            if (bidx >= 0) ++h[static_cast<size_t>(bidx)];
        }
        return h;
    };
    auto la = lhist(a), lb = lhist(b);
    out << "assembled_length(warp>" << warp_threshold << ")\tassembly_a\tassembly_b\n";
    for (size_t i = 0; i < kLengthBucketNames.size(); ++i)
        out << kLengthBucketNames[i] << '\t' << la[i] << '\t' << lb[i] << '\n';

    out << "fragments_used\t" << a.fragments_used << '\t' << b.fragments_used << '\n';
    out << "contigs\t" << a.contigs << '\t' << b.contigs << '\n';
    (void)ds;
}

}  // namespace cloneasm
