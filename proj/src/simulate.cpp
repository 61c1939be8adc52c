#include "cloneasm/simulate.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace cloneasm {

namespace {

constexpr bp kMinEmitOverlap = 40;   // alignments below this are not produced
constexpr bp kDeepCover = 2400;      // coverage needed to contradict a planted FP

struct CloneDraft {
    std::string id;
    int chrom = 0;
    bp gstart = 0;
    bp length = 0;
    Orient strand = Orient::Forward;
    Phase phase = Phase::Draft1;
    bool chimera = false;
    int chrom2 = 0;
    bp gstart2 = 0;
    bp split_at = 0;  // clone-local coordinate where locus 2 begins
    std::string label;
    std::string true_label;
    bool mislabeled = false;
};

struct FragDraft {
    std::string id;
    size_t clone = 0;
    bp local_start = 0;  // on the clone's own axis
    bp length = 0;
    bool flipped = false;  // relative to the clone strand
    std::optional<int32_t> declared_order;
    EndMark end_mark = EndMark::None;
    int chrom = 0;
    bp gstart = 0, gend = 0;
    Orient strand = Orient::Forward;
};

}  // namespace

void SimParams::validate() const {
    if (genome_length <= 0 || n_chromosomes <= 0)
        throw InputError("sim: genome_length and n_chromosomes must be positive");
    if (clone_length_mean <= 0 || clone_length_mean > genome_length / n_chromosomes)
        throw InputError("sim: clone length must be positive and fit a chromosome");
    if (target_coverage <= 0) throw InputError("sim: coverage must be positive");
    double mix = phase_mix_p1 + phase_mix_p2 + phase_mix_p3;
    if (mix <= 0.99 || mix >= 1.01) throw InputError("sim: phase mix must sum to 1");
    for (double r : {fp_rate, fn_rate, chimera_rate, mislabel_rate, fp_consistent_fraction})
        if (r < 0.0 || r > 1.0) throw InputError("sim: rates must be in [0,1]");
    if (fragments_per_draft_mean < 1.0)
        throw InputError("sim: fragments_per_draft_mean must be at least 1");
}

OverlapLabel GroundTruth::label_of(const Dataset& ds, FragIndex a, FragIndex b) const {
    if (!ds.canonical_before(a, b)) std::swap(a, b);
    for (const LabeledOverlap& o : overlaps)
        if (o.frag_a == a && o.frag_b == b) return o.label;
    throw InternalError("truth: overlap pair has no label");
}

SimBundle simulate(const SimParams& params) {
    params.validate();
    std::mt19937_64 rng(params.seed);
    auto uni = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    auto uni_bp = [&](bp lo, bp hi) {
        return std::uniform_int_distribution<bp>(lo, hi)(rng);
    };

    std::vector<bp> chrom_len(params.n_chromosomes,
                              params.genome_length / params.n_chromosomes);
    chrom_len.back() += params.genome_length % params.n_chromosomes;

    // --- clones -------------------------------------------------------------
    std::vector<CloneDraft> clones;
    for (int c = 0; c < params.n_chromosomes; ++c) {
        auto n = static_cast<int64_t>(params.target_coverage * static_cast<double>(chrom_len[c]) /
                                      static_cast<double>(params.clone_length_mean));
        for (int64_t i = 0; i < n; ++i) {
            CloneDraft cd;
            cd.chrom = c;
            double raw = std::normal_distribution<double>(
                static_cast<double>(params.clone_length_mean),
                static_cast<double>(params.clone_length_spread))(rng);
            bp lo_len = std::max<bp>(params.clone_length_mean / 2, 20000);
            bp hi_len = std::min(chrom_len[c], params.clone_length_mean * 2);
            cd.length = std::max(lo_len, std::min<bp>(static_cast<bp>(raw), hi_len));
            cd.gstart = uni_bp(0, chrom_len[c] - cd.length);
            cd.strand = uni(0, 1) < 0.5 ? Orient::Forward : Orient::Reverse;
            double p = uni(0, 1);
            cd.phase = p < params.phase_mix_p1
                           ? Phase::Draft1
                           : (p < params.phase_mix_p1 + params.phase_mix_p2 ? Phase::Draft2
                                                                            : Phase::Finished);
            cd.true_label = std::to_string(c + 1);
            cd.label = cd.true_label;
            clones.push_back(cd);
        }
    }
    std::sort(clones.begin(), clones.end(), [](const CloneDraft& a, const CloneDraft& b) {
        if (a.chrom != b.chrom) return a.chrom < b.chrom;
        if (a.gstart != b.gstart) return a.gstart < b.gstart;
        return a.length < b.length;
    });
    for (size_t i = 0; i < clones.size(); ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "SIM%06zu.1", i);
        clones[i].id = buf;
    }

    // --- chimeras: splice a distant locus into the clone's tail --------------
    for (auto& cd : clones) {
        if (uni(0, 1) >= params.chimera_rate) continue;
        bp margin = cd.length * 2;
        if (cd.gstart < margin || cd.gstart + cd.length + margin > chrom_len[cd.chrom])
            continue;  // both attachment points must be interior (Fig-8b middle)
        int c2 = cd.chrom;
        bp g2 = 0;
        bool found = false;
        bp part2 = cd.length - cd.length / 2;
        for (int attempt = 0; attempt < 16 && !found; ++attempt) {
            c2 = static_cast<int>(uni_bp(0, params.n_chromosomes - 1));
            if (chrom_len[c2] < part2 + 2 * margin) continue;
            g2 = uni_bp(margin, chrom_len[c2] - part2 - margin);
            if (c2 == cd.chrom && std::llabs(g2 - cd.gstart) < 10 * cd.length) continue;
            found = true;
        }
        if (!found) continue;
        cd.chimera = true;
        cd.phase = Phase::Draft1;
        cd.split_at = cd.length / 2;
        cd.chrom2 = c2;
        cd.gstart2 = g2;
    }

    // --- mislabels ------------------------------------------------------------
    if (params.n_chromosomes >= 2) {
        for (auto& cd : clones) {
            if (uni(0, 1) >= params.mislabel_rate) continue;
            int wrong = (cd.chrom + 1 +
                         static_cast<int>(uni_bp(0, params.n_chromosomes - 2))) %
                        params.n_chromosomes;
            cd.label = std::to_string(wrong + 1);
            cd.mislabeled = true;
        }
    }

    // --- fragments --------------------------------------------------------------
    std::vector<FragDraft> frags;
    auto tile_segment = [&](size_t clone_i, bp seg_lo, bp seg_hi, bool overlapping,
                            int& ordinal) {
        const CloneDraft& cd = clones[clone_i];
        bp len_total = seg_hi - seg_lo;
        double want = std::normal_distribution<double>(params.fragments_per_draft_mean,
                                                       params.fragments_per_draft_spread)(rng);
        want *= static_cast<double>(len_total) / static_cast<double>(cd.length);
        int k = std::max(1, std::min(64, static_cast<int>(want)));
        while (k > 1 && len_total / k < 6000) --k;

        // breakpoints with jitter, then fragments overlap or leave small gaps
        std::vector<bp> cut(k + 1);
        cut[0] = seg_lo;
        cut[k] = seg_hi;
        for (int i = 1; i < k; ++i) {
            bp anchor = seg_lo + len_total * i / k;
            bp jitter = uni_bp(-len_total / (6 * k), len_total / (6 * k));
            cut[i] = anchor + jitter;
        }
        for (int i = 1; i < k; ++i) cut[i] = std::max(cut[i], cut[i - 1] + 1500);
        for (int i = k - 1; i >= 1; --i) cut[i] = std::min(cut[i], cut[i + 1] - 1500);

        for (int i = 0; i < k; ++i) {
            FragDraft fd;
            fd.clone = clone_i;
            if (overlapping) {
                bp ext = i > 0 ? uni_bp(800, 2500) : 0;
                fd.local_start = std::max(seg_lo, cut[i] - ext);
            } else {
                bp gap = i > 0 ? uni_bp(50, 200) : 0;
                fd.local_start = std::min(cut[i] + gap, cut[i + 1] - 500);
            }
            fd.length = cut[i + 1] - fd.local_start;
            fd.id = cd.id + "~" + std::to_string(++ordinal);
            frags.push_back(fd);
        }
    };

    for (size_t i = 0; i < clones.size(); ++i) {
        CloneDraft& cd = clones[i];
        int ordinal = 0;
        size_t first_frag = frags.size();
        if (cd.phase == Phase::Finished && !cd.chimera) {
            FragDraft fd;
            fd.clone = i;
            fd.local_start = 0;
            fd.length = cd.length;
            fd.id = cd.id + "~1";
            frags.push_back(fd);
        } else if (cd.chimera) {
            tile_segment(i, 0, cd.split_at, true, ordinal);
            tile_segment(i, cd.split_at, cd.length, true, ordinal);
        } else {
            tile_segment(i, 0, cd.length, cd.phase == Phase::Draft1, ordinal);
        }
        size_t n_new = frags.size() - first_frag;
        if (cd.phase == Phase::Draft2) {
            for (size_t f = first_frag; f < frags.size(); ++f)
                frags[f].declared_order = static_cast<int32_t>(f - first_frag);
        }
        if (cd.phase == Phase::Draft1 && n_new >= 2) {
            for (size_t f = first_frag; f < frags.size(); ++f)
                if (uni(0, 1) < 0.3) frags[f].flipped = true;
            if (uni(0, 1) < 0.5) {
                frags[first_frag].end_mark = EndMark::Left;
                frags[frags.size() - 1].end_mark = EndMark::Right;
            }
            if (uni(0, 1) < 0.3)
                for (size_t f = first_frag; f < frags.size(); ++f)
                    frags[f].declared_order = static_cast<int32_t>(f - first_frag);
        }
    }

    // Genome placement of each fragment.
    for (FragDraft& fd : frags) {
        const CloneDraft& cd = clones[fd.clone];
        bool in_part2 = cd.chimera && fd.local_start >= cd.split_at;
        bp seg_lo = in_part2 ? cd.split_at : 0;
        bp seg_hi = cd.chimera ? (in_part2 ? cd.length : cd.split_at) : cd.length;
        bp seg_base = in_part2 ? cd.gstart2 : cd.gstart;
        fd.chrom = in_part2 ? cd.chrom2 : cd.chrom;
        if (cd.strand == Orient::Forward)
            fd.gstart = seg_base + (fd.local_start - seg_lo);
        else
            fd.gstart = seg_base + (seg_hi - fd.local_start - fd.length);
        fd.gend = fd.gstart + fd.length;
        fd.strand = fd.flipped ? flip(cd.strand) : cd.strand;
    }

    // --- dataset -----------------------------------------------------------------
    SimBundle out;
    Dataset& ds = out.dataset;
    std::vector<CloneIndex> clone_idx(clones.size());
    for (size_t i = 0; i < clones.size(); ++i) {
        Clone c;
        c.id = clones[i].id;
        c.estimated_length = clones[i].length;
        c.phase = clones[i].phase;
        c.chromosome = clones[i].label;
        clone_idx[i] = ds.add_clone(std::move(c));
    }
    std::vector<FragIndex> frag_idx(frags.size());
    for (size_t i = 0; i < frags.size(); ++i) {
        Fragment f;
        f.id = frags[i].id;
        f.clone = clone_idx[frags[i].clone];
        f.length = frags[i].length;
        f.declared_order = frags[i].declared_order;
        f.end_mark = frags[i].end_mark;
        CloneIndex owner = f.clone;
        frag_idx[i] = ds.add_fragment(std::move(f));
        ds.link_fragment(owner, frag_idx[i]);
    }
    ds.build();

    out.truth.fragments.resize(frags.size());
    for (size_t i = 0; i < frags.size(); ++i)
        out.truth.fragments[frag_idx[i]] = {frags[i].chrom, frags[i].gstart, frags[i].gend,
                                            frags[i].strand};
    out.truth.clones.resize(clones.size());
    for (size_t i = 0; i < clones.size(); ++i) {
        TrueClonePos t;
        t.chrom = clones[i].chrom;
        t.gstart = clones[i].gstart;
        t.gend = clones[i].gstart + (clones[i].chimera ? clones[i].split_at : clones[i].length);
        t.chimera = clones[i].chimera;
        t.chrom2 = clones[i].chrom2;
        t.gstart2 = clones[i].gstart2;
        t.gend2 =
            clones[i].gstart2 + (clones[i].chimera ? clones[i].length - clones[i].split_at : 0);
        t.mislabeled = clones[i].mislabeled;
        t.true_label = clones[i].true_label;
        out.truth.clones[clone_idx[i]] = t;
        if (t.chimera) out.truth.chimeras.push_back(clone_idx[i]);
        if (t.mislabeled) out.truth.mislabeled.push_back(clone_idx[i]);
    }
    std::sort(out.truth.chimeras.begin(), out.truth.chimeras.end());
    std::sort(out.truth.mislabeled.begin(), out.truth.mislabeled.end());

    // --- true overlaps --------------------------------------------------------
    auto local_coords = [&](const TrueFragmentPos& f, bp lo, bp hi) {
        bp a_start, a_end;
        if (f.strand == Orient::Forward) {
            a_start = lo - f.gstart + 1;
            a_end = hi - f.gstart;
        } else {
            a_start = f.gend - hi + 1;
            a_end = f.gend - lo;
        }
        return std::make_pair(a_start, a_end);
    };
    auto emit_true = [&](FragIndex fa, FragIndex fb) {
        const TrueFragmentPos& pa = out.truth.fragments[fa];
        const TrueFragmentPos& pb = out.truth.fragments[fb];
        bp lo = std::max(pa.gstart, pb.gstart);
        bp hi = std::min(pa.gend, pb.gend);
        RawAlignment aln;
        aln.frag_a = fa;
        aln.frag_b = fb;
        std::tie(aln.a_start, aln.a_end) = local_coords(pa, lo, hi);
        std::tie(aln.b_start, aln.b_end) = local_coords(pb, lo, hi);
        aln.strand = pa.strand == pb.strand ? RelOrient::Same : RelOrient::Reverse;
        aln.identity = 1.0;
        out.alignments.push_back(aln);
    };

    std::vector<size_t> by_pos(frags.size());
    std::iota(by_pos.begin(), by_pos.end(), 0);
    std::sort(by_pos.begin(), by_pos.end(), [&](size_t a, size_t b) {
        if (frags[a].chrom != frags[b].chrom) return frags[a].chrom < frags[b].chrom;
        if (frags[a].gstart != frags[b].gstart) return frags[a].gstart < frags[b].gstart;
        if (frags[a].gend != frags[b].gend) return frags[a].gend < frags[b].gend;
        return a < b;
    });
    std::vector<bp> left_cover(frags.size(), 0), right_cover(frags.size(), 0);
    int64_t n_true_emitted = 0;
    for (size_t i = 0; i < by_pos.size(); ++i) {
        const FragDraft& fi = frags[by_pos[i]];
        for (size_t j = i + 1; j < by_pos.size(); ++j) {
            const FragDraft& fj = frags[by_pos[j]];
            if (fj.chrom != fi.chrom || fj.gstart >= fi.gend) break;
            bp inter = std::min(fi.gend, fj.gend) - fj.gstart;
            // coverage depth bookkeeping (sorted: fi.gstart <= fj.gstart)
            left_cover[by_pos[j]] = std::max(left_cover[by_pos[j]], inter);
            if (fj.gend > fi.gend)
                right_cover[by_pos[i]] = std::max(right_cover[by_pos[i]], fi.gend - fj.gstart);
            else
                right_cover[by_pos[j]] = std::max(right_cover[by_pos[j]], fj.gend - fj.gstart);
            if (inter < kMinEmitOverlap) continue;
            FragIndex a = frag_idx[by_pos[i]];
            FragIndex b = frag_idx[by_pos[j]];
            if (uni(0, 1) < params.fn_rate) {
                auto pair = ds.canonical_before(a, b) ? std::make_pair(a, b)
                                                      : std::make_pair(b, a);
                out.truth.dropped.push_back(pair);
                continue;
            }
            emit_true(a, b);
            auto pair = ds.canonical_before(a, b) ? std::make_pair(a, b) : std::make_pair(b, a);
            out.truth.overlaps.push_back({pair.first, pair.second, OverlapLabel::True});
            ++n_true_emitted;
        }
    }

    // --- repeat-induced overlaps ------------------------------------------------
    auto far_apart = [&](size_t f1, size_t f2) {
        if (frags[f1].chrom != frags[f2].chrom) return true;
        return std::llabs(frags[f1].gstart - frags[f2].gstart) > 8 * params.clone_length_mean;
    };
    std::set<std::pair<CloneIndex, CloneIndex>> used_clone_pairs;
    auto clone_pair_of = [&](size_t f1, size_t f2) {
        CloneIndex c1 = clone_idx[frags[f1].clone];
        CloneIndex c2 = clone_idx[frags[f2].clone];
        return c1 < c2 ? std::make_pair(c1, c2) : std::make_pair(c2, c1);
    };
    // Fabricated dovetail: f's left end glued onto h's right end, Same strand.
    auto emit_fp = [&](size_t f, size_t h, OverlapLabel label) {
        bp max_l = std::min(frags[f].length, frags[h].length) - 200;
        bp l = std::min<bp>(uni_bp(1500, 4000), max_l);
        RawAlignment aln;
        aln.frag_a = frag_idx[f];
        aln.frag_b = frag_idx[h];
        aln.a_start = 1;
        aln.a_end = l;
        aln.b_start = frags[h].length - l + 1;
        aln.b_end = frags[h].length;
        aln.strand = RelOrient::Same;
        aln.identity = 1.0;
        out.alignments.push_back(aln);
        FragIndex a = frag_idx[f], b = frag_idx[h];
        if (!ds.canonical_before(a, b)) std::swap(a, b);
        out.truth.overlaps.push_back({a, b, label});
        used_clone_pairs.insert(clone_pair_of(f, h));
    };

    auto n_fp = static_cast<int64_t>(params.fp_rate * static_cast<double>(n_true_emitted));
    auto n_fp_consistent =
        static_cast<int64_t>(params.fp_consistent_fraction * static_cast<double>(n_fp));
    int64_t n_fp_inconsistent = n_fp - n_fp_consistent;

    std::vector<size_t> deep_left, deep_right, bare_left, bare_right;
    for (size_t i = 0; i < frags.size(); ++i) {
        if (frags[i].length < 6000) continue;
        if (left_cover[i] >= kDeepCover) deep_left.push_back(i);
        if (right_cover[i] >= kDeepCover) deep_right.push_back(i);
        if (clones[frags[i].clone].chimera) continue;
        if (left_cover[i] == 0) bare_left.push_back(i);
        if (right_cover[i] == 0) bare_right.push_back(i);
    }
    int64_t made = 0;
    for (int64_t attempt = 0; attempt < 60 * n_fp_inconsistent && made < n_fp_inconsistent;
         ++attempt) {
        if (deep_left.empty() || deep_right.empty()) break;
        size_t f = deep_left[uni_bp(0, static_cast<bp>(deep_left.size()) - 1)];
        size_t h = deep_right[uni_bp(0, static_cast<bp>(deep_right.size()) - 1)];
        if (!far_apart(f, h) || frags[f].clone == frags[h].clone) continue;
        if (used_clone_pairs.count(clone_pair_of(f, h))) continue;
        emit_fp(f, h, OverlapLabel::RepeatInducedInconsistent);
        ++made;
    }
    made = 0;
    for (int64_t attempt = 0; attempt < 60 * n_fp_consistent && made < n_fp_consistent;
         ++attempt) {
        if (bare_left.empty() || bare_right.empty()) break;
        size_t f = bare_left[uni_bp(0, static_cast<bp>(bare_left.size()) - 1)];
        size_t h = bare_right[uni_bp(0, static_cast<bp>(bare_right.size()) - 1)];
        if (!far_apart(f, h) || frags[f].clone == frags[h].clone) continue;
        if (used_clone_pairs.count(clone_pair_of(f, h))) continue;
        emit_fp(f, h, OverlapLabel::RepeatInducedConsistent);
        ++made;
    }

    // --- orientation pairs --------------------------------------------------------
    std::vector<size_t> pos_in_sorted(frags.size());
    for (size_t i = 0; i < by_pos.size(); ++i) pos_in_sorted[by_pos[i]] = i;
    auto n_orient = static_cast<int64_t>(static_cast<double>(frags.size()) * 1.5);
    for (int64_t i = 0; i < n_orient; ++i) {
        size_t si = static_cast<size_t>(uni_bp(0, static_cast<bp>(by_pos.size()) - 1));
        size_t f = by_pos[si];
        size_t j0 = si >= 40 ? si - 40 : 0;
        size_t j1 = std::min(by_pos.size(), si + 40);
        std::vector<size_t> nearby;
        for (size_t j = j0; j < j1; ++j) {
            size_t g = by_pos[j];
            if (g == f || frags[g].chrom != frags[f].chrom) continue;
            if (std::llabs(frags[g].gstart - frags[f].gstart) <= 200000) nearby.push_back(g);
        }
        if (nearby.empty()) continue;
        size_t g = nearby[uni_bp(0, static_cast<bp>(nearby.size()) - 1)];
        OrientationPair p;
        p.frag_a = frag_idx[f];
        p.frag_b = frag_idx[g];
        p.orient = frags[f].strand == frags[g].strand ? RelOrient::Same : RelOrient::Reverse;
        p.evidence_count = 1;
        out.orientation_pairs.push_back(p);
    }

    // --- nt-pairs: annotation-derived overlaps between finished fragments ------
    int nt_counter = 0;
    for (const LabeledOverlap& lo : out.truth.overlaps) {
        if (lo.label != OverlapLabel::True) continue;
        const Fragment& fa = ds.fragment(lo.frag_a);
        const Fragment& fb = ds.fragment(lo.frag_b);
        if (ds.clone(fa.clone).phase != Phase::Finished ||
            ds.clone(fb.clone).phase != Phase::Finished)
            continue;
        if (++nt_counter % 5 != 0) continue;
        const TrueFragmentPos& pa = out.truth.fragments[lo.frag_a];
        const TrueFragmentPos& pb = out.truth.fragments[lo.frag_b];
        if (pa.strand != pb.strand) continue;  // annotation order implies Same
        ValidOverlap nt;
        nt.frag_a = lo.frag_a;
        nt.frag_b = lo.frag_b;
        nt.kind = OverlapKind::NtPair;
        nt.orient = RelOrient::Same;
        nt.identity = 1.0;
        nt.offset = pa.strand == Orient::Forward ? pb.gstart - pa.gstart : pa.gend - pb.gend;
        nt.overlap_length = overlap_span(nt.offset, fa.length, fb.length);
        out.nt_pairs.push_back(canonicalize_overlap(ds, nt));
    }

    // --- sequences ------------------------------------------------------------
    if (params.emit_sequences) {
        static const char bases[4] = {'A', 'C', 'G', 'T'};
        std::vector<std::string> genome(params.n_chromosomes);
        std::mt19937_64 seq_rng(params.seed ^ 0x9e3779b97f4a7c15ull);
        for (int c = 0; c < params.n_chromosomes; ++c) {
            genome[c].resize(static_cast<size_t>(chrom_len[c]));
            for (auto& ch : genome[c]) ch = bases[seq_rng() & 3];
        }
        for (size_t i = 0; i < frags.size(); ++i) {
            const FragDraft& fd = frags[i];
            std::string s = genome[fd.chrom].substr(static_cast<size_t>(fd.gstart),
                                                    static_cast<size_t>(fd.length));
            if (fd.strand == Orient::Reverse) {
                std::reverse(s.begin(), s.end());
                for (char& ch : s) {
                    switch (ch) {
                        case 'A': ch = 'T'; break;
                        case 'T': ch = 'A'; break;
                        case 'C': ch = 'G'; break;
                        case 'G': ch = 'C'; break;
                        default: break;
                    }
                }
            }
            ds.set_sequence(frag_idx[i], std::move(s));
        }
    }

    return out;
}

void write_bundle(const std::string& dir, const SimBundle& bundle) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    {
        std::ofstream f(dir + "/clones.txt");
        write_clone_table(f, bundle.dataset);
    }
    {
        std::ofstream f(dir + "/alignments.tsv");
        write_alignments(f, bundle.dataset, bundle.alignments);
    }
    {
        std::ofstream f(dir + "/orientation_pairs.tsv");
        write_orientation_pairs(f, bundle.dataset, bundle.orientation_pairs);
    }
    {
        std::ofstream f(dir + "/nt_pairs.tsv");
        write_nt_pairs(f, bundle.dataset, bundle.nt_pairs);
    }
    bool any_seq = false;
    for (size_t i = 0; i < bundle.dataset.fragment_count(); ++i)
        if (!bundle.dataset.fragment(static_cast<FragIndex>(i)).sequence.empty()) any_seq = true;
    if (any_seq) {
        std::ofstream f(dir + "/sequences.txt");
        for (size_t i = 0; i < bundle.dataset.fragment_count(); ++i) {
            const Fragment& fr = bundle.dataset.fragment(static_cast<FragIndex>(i));
            if (!fr.sequence.empty()) f << fr.id << '\t' << fr.sequence << '\n';
        }
    }
    {
        std::ofstream f(dir + "/truth.tsv");
        write_truth(f, bundle.dataset, bundle.truth);
    }
}

void write_truth(std::ostream& out, const Dataset& ds, const GroundTruth& truth) {
    out << "# record\tfields...\n";
    for (size_t i = 0; i < truth.fragments.size(); ++i) {
        const TrueFragmentPos& p = truth.fragments[i];
        out << "fragment\t" << ds.fragment(static_cast<FragIndex>(i)).id << '\t' << p.chrom
            << '\t' << p.gstart << '\t' << p.gend << '\t'
            << (p.strand == Orient::Forward ? '+' : '-') << '\n';
    }
    for (size_t i = 0; i < truth.clones.size(); ++i) {
        const TrueClonePos& c = truth.clones[i];
        out << "clone\t" << ds.clone(static_cast<CloneIndex>(i)).id << '\t' << c.chrom << '\t'
            << c.gstart << '\t' << c.gend << '\t' << (c.chimera ? 1 : 0) << '\t' << c.chrom2
            << '\t' << c.gstart2 << '\t' << c.gend2 << '\t' << (c.mislabeled ? 1 : 0) << '\t'
            << c.true_label << '\n';
    }
    for (const LabeledOverlap& o : truth.overlaps) {
        const char* label = o.label == OverlapLabel::True
                                ? "true"
                                : (o.label == OverlapLabel::RepeatInducedInconsistent
                                       ? "repeat_inconsistent"
                                       : "repeat_consistent");
        out << "overlap\t" << ds.fragment(o.frag_a).id << '\t' << ds.fragment(o.frag_b).id
            << '\t' << label << '\n';
    }
    for (auto [a, b] : truth.dropped)
        out << "dropped\t" << ds.fragment(a).id << '\t' << ds.fragment(b).id << '\n';
}

GroundTruth read_truth(std::istream& in, const Dataset& ds) {
    GroundTruth t;
    t.fragments.resize(ds.fragment_count());
    t.clones.resize(ds.clone_count());
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string kind;
        ss >> kind;
        if (kind == "fragment") {
            std::string id, strand;
            TrueFragmentPos p;
            ss >> id >> p.chrom >> p.gstart >> p.gend >> strand;
            FragIndex fi = ds.find_fragment(id);
            if (fi == kNoIndex) throw InputError("truth: unknown fragment " + id);
            p.strand = strand == "+" ? Orient::Forward : Orient::Reverse;
            t.fragments[fi] = p;
        } else if (kind == "clone") {
            std::string id;
            TrueClonePos c;
            int chim, mis;
            ss >> id >> c.chrom >> c.gstart >> c.gend >> chim >> c.chrom2 >> c.gstart2 >>
                c.gend2 >> mis >> c.true_label;
            c.chimera = chim != 0;
            c.mislabeled = mis != 0;
            CloneIndex ci = ds.find_clone(id);
            if (ci == kNoIndex) throw InputError("truth: unknown clone " + id);
            t.clones[ci] = c;
            if (c.chimera) t.chimeras.push_back(ci);
            if (c.mislabeled) t.mislabeled.push_back(ci);
        } else if (kind == "overlap") {
            std::string a, b, label;
            ss >> a >> b >> label;
            LabeledOverlap o;
            o.frag_a = ds.find_fragment(a);
            o.frag_b = ds.find_fragment(b);
            if (o.frag_a == kNoIndex || o.frag_b == kNoIndex)
                throw InputError("truth: unknown overlap fragment on line " +
                                 std::to_string(line_no));
            o.label = label == "true" ? OverlapLabel::True
                                      : (label == "repeat_inconsistent"
                                             ? OverlapLabel::RepeatInducedInconsistent
                                             : OverlapLabel::RepeatInducedConsistent);
            t.overlaps.push_back(o);
        } else if (kind == "dropped") {
            std::string a, b;
            ss >> a >> b;
            FragIndex fa = ds.find_fragment(a), fb = ds.find_fragment(b);
            if (fa == kNoIndex || fb == kNoIndex)
                throw InputError("truth: unknown dropped fragment on line " +
                                 std::to_string(line_no));
            t.dropped.push_back({fa, fb});
        } else {
            throw InputError("truth: unknown record kind '" + kind + "' on line " +
                             std::to_string(line_no));
        }
    }
    std::sort(t.chimeras.begin(), t.chimeras.end());
    std::sort(t.mislabeled.begin(), t.mislabeled.end());
    return t;
}

}  // namespace cloneasm
