#include "cloneasm/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cloneasm {

FragIndex Dataset::add_fragment(Fragment f) {
    if (built_) throw InternalError("dataset already built");
    if (f.length <= 0)
        throw InputError("fragment " + f.id + ": length must be positive");
    if (!f.sequence.empty() && static_cast<bp>(f.sequence.size()) != f.length)
        throw InputError("fragment " + f.id + ": sequence length mismatch");
    auto idx = static_cast<FragIndex>(fragments_.size());
    auto [it, inserted] = frag_by_id_.emplace(f.id, idx);
    (void)it;
    if (!inserted) throw InputError("duplicate fragment id " + f.id);
    max_frag_len_ = std::max(max_frag_len_, f.length);
    fragments_.push_back(std::move(f));
    return idx;
}

CloneIndex Dataset::add_clone(Clone c) {
    if (built_) throw InternalError("dataset already built");
    if (c.estimated_length <= 0)
        throw InputError("clone " + c.id + ": estimated length must be positive");
    auto idx = static_cast<CloneIndex>(clones_.size());
    auto [it, inserted] = clone_by_id_.emplace(c.id, idx);
    (void)it;
    if (!inserted) throw InputError("duplicate clone accession " + c.id);
    clones_.push_back(std::move(c));
    return idx;
}

void Dataset::link_fragment(CloneIndex c, FragIndex f) {
    if (built_) throw InternalError("dataset already built");
    clones_.at(c).fragments.push_back(f);
}

void Dataset::build() {
    if (built_) return;
    for (const auto& c : clones_) {
        if (c.fragments.empty())
            throw InputError("clone " + c.id + " has no fragments");
        if (c.phase == Phase::Finished && c.fragments.size() != 1)
            throw InputError("clone " + c.id + ": phase 3 requires exactly one fragment");
        // declared_order values must be unique within the clone
        std::vector<int32_t> orders;
        for (FragIndex fi : c.fragments) {
            if (fragments_[fi].clone != static_cast<CloneIndex>(&c - clones_.data()))
                throw InternalError("fragment/clone back-reference broken");
            if (fragments_[fi].declared_order)
                orders.push_back(*fragments_[fi].declared_order);
        }
        std::sort(orders.begin(), orders.end());
        if (std::adjacent_find(orders.begin(), orders.end()) != orders.end())
            throw InputError("clone " + c.id + ": duplicate declared fragment order");
        if (c.phase == Phase::Draft2 && orders.size() != c.fragments.size())
            throw InputError("clone " + c.id + ": phase 2 requires a total fragment order");
    }

    auto ranks_for = [](auto&& ids) {
        std::vector<int32_t> order(ids.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int32_t a, int32_t b) { return ids[a] < ids[b]; });
        std::vector<int32_t> rank(ids.size());
        for (size_t pos = 0; pos < order.size(); ++pos) rank[order[pos]] = static_cast<int32_t>(pos);
        return rank;
    };
    std::vector<std::string> fids(fragments_.size()), cids(clones_.size());
    for (size_t i = 0; i < fragments_.size(); ++i) fids[i] = fragments_[i].id;
    for (size_t i = 0; i < clones_.size(); ++i) cids[i] = clones_[i].id;
    frag_rank_ = ranks_for(fids);
    clone_rank_ = ranks_for(cids);
    built_ = true;
}

void Dataset::set_sequence(FragIndex i, std::string seq) {
    Fragment& f = fragments_.at(i);
    if (static_cast<bp>(seq.size()) != f.length)
        throw InputError("fragment " + f.id + ": sequence length mismatch");
    f.sequence = std::move(seq);
}

FragIndex Dataset::find_fragment(const std::string& id) const {
    auto it = frag_by_id_.find(id);
    return it == frag_by_id_.end() ? kNoIndex : it->second;
}

CloneIndex Dataset::find_clone(const std::string& id) const {
    auto it = clone_by_id_.find(id);
    return it == clone_by_id_.end() ? kNoIndex : it->second;
}

bp Dataset::end_tolerance(FragIndex i, const PipelineParams& p) const {
    const Fragment& f = fragments_[i];
    if (f.clone != kNoIndex && clones_[f.clone].phase == Phase::Finished)
        return p.end_error_finished;
    auto frac = static_cast<bp>(std::floor(static_cast<double>(f.length) * p.end_error_draft_fraction));
    return std::min(frac, p.end_error_draft_cap);
}

}  // namespace cloneasm
