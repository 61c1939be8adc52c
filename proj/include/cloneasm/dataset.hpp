#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "cloneasm/types.hpp"

namespace cloneasm {

/// A preassembled contiguous piece of a clone. Draft clones have many,
/// finished clones exactly one.
struct Fragment {
    std::string id;
    CloneIndex clone = kNoIndex;
    bp length = 0;
    std::optional<int32_t> declared_order;  // phase 2 total order, partial phase 1 info
    EndMark end_mark = EndMark::None;
    std::string sequence;  // empty when no sequence was supplied
};

struct Clone {
    std::string id;
    bp estimated_length = 0;
    Phase phase = Phase::Draft1;
    std::optional<std::string> chromosome;  // nullopt == Unknown
    std::vector<FragIndex> fragments;       // in file order
};

/// Immutable after build(); shared read-only across pipeline stages.
class Dataset {
public:
    FragIndex add_fragment(Fragment f);
    CloneIndex add_clone(Clone c);

    /// Appends a fragment to its owning clone's list (pre-build only).
    void link_fragment(CloneIndex c, FragIndex f);

    /// Freezes the dataset: checks invariants and computes canonical ranks
    /// (position of each id in lexicographic order). Ranks are the tie-break
    /// currency of the whole pipeline.
    void build();

    /// Attaches a sequence after build(); length must match the fragment.
    void set_sequence(FragIndex i, std::string seq);

    const Fragment& fragment(FragIndex i) const { return fragments_[i]; }
    const Clone& clone(CloneIndex i) const { return clones_[i]; }
    size_t fragment_count() const { return fragments_.size(); }
    size_t clone_count() const { return clones_.size(); }

    FragIndex find_fragment(const std::string& id) const;
    CloneIndex find_clone(const std::string& id) const;

    int32_t fragment_rank(FragIndex i) const { return frag_rank_[i]; }
    int32_t clone_rank(CloneIndex i) const { return clone_rank_[i]; }

    /// Fragment pair in canonical order (lower id rank first).
    bool canonical_before(FragIndex a, FragIndex b) const {
        return frag_rank_[a] < frag_rank_[b];
    }

    /// End-allowed-error for one fragment: finished sequences get a fixed
    /// slack, drafts min{fraction of length, cap}.
    bp end_tolerance(FragIndex i, const PipelineParams& p) const;

    bp max_fragment_length() const { return max_frag_len_; }

private:
    std::vector<Fragment> fragments_;
    std::vector<Clone> clones_;
    std::unordered_map<std::string, FragIndex> frag_by_id_;
    std::unordered_map<std::string, CloneIndex> clone_by_id_;
    std::vector<int32_t> frag_rank_;
    std::vector<int32_t> clone_rank_;
    bp max_frag_len_ = 0;
    bool built_ = false;
};

}  // namespace cloneasm
