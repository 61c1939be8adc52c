#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cloneasm {

// Coordinates and lengths are integer base pairs throughout; layouts never
// use floating point, so positional comparisons in tests can be exact.
using bp = int64_t;

using FragIndex = int32_t;
using CloneIndex = int32_t;
constexpr int32_t kNoIndex = -1;

enum class Phase : uint8_t { Draft1 = 1, Draft2 = 2, Finished = 3 };

enum class Orient : uint8_t { Forward, Reverse };

inline Orient flip(Orient o) {
    return o == Orient::Forward ? Orient::Reverse : Orient::Forward;
}

// Relative orientation of a fragment pair.
enum class RelOrient : uint8_t { Same, Reverse };

inline RelOrient compose(RelOrient a, RelOrient b) {
    return a == b ? RelOrient::Same : RelOrient::Reverse;
}

// Optional end-of-clone marker carried by some phase 1 fragments.
enum class EndMark : uint8_t { None, Left, Right };

/// Thrown on malformed input files or unusable run configuration. Maps to
/// process exit code 1.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an internal invariant is violated. Maps to exit code 2.
class InternalError : public std::runtime_error {
public:
    explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

/// Tunable thresholds for the whole pipeline. All values are plain data so a
/// run can be reproduced from the flat key=value config alone.
struct PipelineParams {
    bp end_error_finished = 350;          // allowed end slack, finished sequence
    double end_error_draft_fraction = 0.10;  // allowed end slack, draft: min{fraction*len, cap}
    bp end_error_draft_cap = 1000;
    double min_identity = 0.97;
    bp implied_overlap_threshold = 1000;  // T_ov: implied overlaps above this need a witness
    bp offset_tolerance = 300;            // T_off: max offset disagreement for a witness
    double warp_flag_threshold = 1.5;
    bp long_bac_length_flag = 250000;
    bp min_clone_length_floor = 10000;    // clones shorter than this are sidelined, not removed
    bp gap_spacer = 100;                  // N run emitted between subcontigs in consensus
    uint64_t random_seed = 1;

    void validate() const {
        if (end_error_finished <= 0 || end_error_draft_cap <= 0 ||
            implied_overlap_threshold <= 0 || offset_tolerance <= 0 ||
            long_bac_length_flag <= 0 || min_clone_length_floor <= 0 ||
            gap_spacer <= 0)
            throw InputError("pipeline params: all thresholds must be positive");
        if (end_error_draft_fraction <= 0.0 || end_error_draft_fraction > 1.0)
            throw InputError("pipeline params: end_error_draft_fraction must be in (0,1]");
        if (min_identity <= 0.0 || min_identity > 1.0)
            throw InputError("pipeline params: min_identity must be in (0,1]");
        if (warp_flag_threshold <= 0.0)
            throw InputError("pipeline params: warp_flag_threshold must be positive");
    }
};

/// Warnings collected while parsing secondary inputs (unknown ids are
/// skipped, not fatal; the pipeline tolerates absent fragments).
struct Diagnostics {
    std::vector<std::string> warnings;
    int64_t skipped_rows = 0;

    void warn(std::string msg) {
        warnings.push_back(std::move(msg));
        ++skipped_rows;
    }
};

}  // namespace cloneasm
