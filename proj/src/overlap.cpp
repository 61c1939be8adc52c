#include "cloneasm/overlap.hpp"

#include <algorithm>

namespace cloneasm {

bp swap_offset(bp offset, RelOrient orient, bp len_x, bp len_y) {
    if (orient == RelOrient::Same) return -offset;
    return offset + len_y - len_x;
}

ValidOverlap canonicalize_overlap(const Dataset& ds, const ValidOverlap& raw) {
    if (raw.frag_a < 0 || raw.frag_a >= static_cast<FragIndex>(ds.fragment_count()) ||
        raw.frag_b < 0 || raw.frag_b >= static_cast<FragIndex>(ds.fragment_count()))
        throw InputError("overlap references unknown fragment");
    if (raw.frag_a == raw.frag_b)
        throw InputError("overlap references a fragment against itself");
    if (ds.canonical_before(raw.frag_a, raw.frag_b)) return raw;
    ValidOverlap out = raw;
    std::swap(out.frag_a, out.frag_b);
    out.offset = swap_offset(raw.offset, raw.orient,
                             ds.fragment(raw.frag_a).length,
                             ds.fragment(raw.frag_b).length);
    return out;
}

bp overlap_span(bp offset, bp len_a, bp len_b) {
    bp lo = std::max<bp>(0, offset);
    bp hi = std::min(len_a, offset + len_b);
    return std::max<bp>(0, hi - lo);
}

Placement implied_placement(const Placement& f, bp len_f, bp len_g,
                            FragIndex g, bp offset_fg, RelOrient rel) {
    Placement out;
    out.frag = g;
    if (f.orient == Orient::Forward)
        out.pos = f.pos + offset_fg;
    else
        out.pos = f.pos + len_f - offset_fg - len_g;
    out.orient = rel == RelOrient::Same ? f.orient : flip(f.orient);
    return out;
}

bp implied_offset(const Placement& f, bp len_f, const Placement& g, bp len_g) {
    if (f.orient == Orient::Forward) return g.pos - f.pos;
    return f.pos + len_f - g.pos - len_g;
}

FragIndex contained_fragment(const Dataset& ds, const ValidOverlap& ov,
                             const PipelineParams& params) {
    bp len_a = ds.fragment(ov.frag_a).length;
    bp len_b = ds.fragment(ov.frag_b).length;
    bp tol_a = ds.end_tolerance(ov.frag_a, params);
    bp tol_b = ds.end_tolerance(ov.frag_b, params);
    // b sits at [offset, offset+len_b) on a's axis
    bool b_in_a = ov.offset >= -tol_b && ov.offset + len_b <= len_a + tol_b;
    bool a_in_b = ov.offset <= tol_a && ov.offset + len_b >= len_a - tol_a;
    if (b_in_a && a_in_b) {
        if (len_a != len_b) return len_a < len_b ? ov.frag_a : ov.frag_b;
        return ds.canonical_before(ov.frag_a, ov.frag_b) ? ov.frag_b : ov.frag_a;
    }
    if (b_in_a) return ov.frag_b;
    if (a_in_b) return ov.frag_a;
    // Degenerate geometry; fall back to the shorter fragment.
    return len_a <= len_b ? ov.frag_a : ov.frag_b;
}

void OverlapIndex::add(const ValidOverlap& ov) {
    auto canon = canonicalize_overlap(*ds_, ov);
    auto id = static_cast<int32_t>(overlaps_.size());
    overlaps_.push_back(canon);
    by_pair_[key(canon.frag_a, canon.frag_b)].push_back(id);
    if (by_frag_.size() < ds_->fragment_count()) by_frag_.resize(ds_->fragment_count());
    by_frag_[canon.frag_a].push_back(id);
    by_frag_[canon.frag_b].push_back(id);
}

std::span<const int32_t> OverlapIndex::of_fragment(FragIndex f) const {
    if (static_cast<size_t>(f) >= by_frag_.size()) return {};
    return {by_frag_[f].data(), by_frag_[f].size()};
}

std::span<const int32_t> OverlapIndex::pair_ids(FragIndex a, FragIndex b) const {
    if (!ds_->canonical_before(a, b)) std::swap(a, b);
    auto it = by_pair_.find(key(a, b));
    if (it == by_pair_.end()) return {};
    return {it->second.data(), it->second.size()};
}

bool OverlapIndex::has_matching(FragIndex f, FragIndex g, bp offset_fg,
                                RelOrient rel, bp tol) const {
    FragIndex a = f, b = g;
    bp off = offset_fg;
    if (!ds_->canonical_before(a, b)) {
        std::swap(a, b);
        off = swap_offset(offset_fg, rel, ds_->fragment(f).length,
                          ds_->fragment(g).length);
    }
    auto it = by_pair_.find(key(a, b));
    if (it == by_pair_.end()) return false;
    for (int32_t id : it->second) {
        const auto& ov = overlaps_[id];
        if (ov.orient == rel && std::llabs(ov.offset - off) <= tol) return true;
    }
    return false;
}

void OverlapIndex::matching(FragIndex f, FragIndex g, bp offset_fg, RelOrient rel,
                            bp tol, std::vector<int32_t>& out) const {
    FragIndex a = f, b = g;
    bp off = offset_fg;
    if (!ds_->canonical_before(a, b)) {
        std::swap(a, b);
        off = swap_offset(offset_fg, rel, ds_->fragment(f).length,
                          ds_->fragment(g).length);
    }
    auto it = by_pair_.find(key(a, b));
    if (it == by_pair_.end()) return;
    for (int32_t id : it->second) {
        const auto& ov = overlaps_[id];
        if (ov.orient == rel && std::llabs(ov.offset - off) <= tol) out.push_back(id);
    }
}

}  // namespace cloneasm
