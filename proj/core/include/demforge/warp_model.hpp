#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace demforge {

enum class CollideVariant { baseline, two_phase };

/// Cost parameters of the lockstep warp model. One cost unit is one "loop
/// block" of the contact traversal: a check block, a force block, or the
/// store/load bookkeeping the two-phase variant adds.
struct WarpCostParams {
    int warp_size = 32;      // threads per warp
    double c_check = 1.0;    // cycles per contact-check block
    double c_force = 20.0;   // cycles per force-computation block
    double c_store = 1.0;    // cycles per contact-ID store (two-phase, loop 1)
    double c_load = 1.0;     // cycles per contact-ID load (two-phase, loop 2)

    /// warp_size >= 1, costs >= 0, and c_force > c_check (the model's
    /// premise: checking is much cheaper than the force computation).
    void validate() const;
};

/// One traversal event of one lane: which candidate was inspected and
/// whether the contact check succeeded.
struct TraceEvent {
    std::int32_t candidate = 0;
    bool contact = false;

    bool operator==(const TraceEvent&) const = default;
};

/// Ordered candidate events of one lane (one particle), in the pipeline's
/// deterministic traversal order.
using LaneTrace = std::vector<TraceEvent>;

std::size_t contact_count(const LaneTrace& trace);

/// Consecutive chunks of warp_size lanes, in lane order. The final warp may
/// be partial.
std::vector<std::span<const LaneTrace>> group_warps(std::span<const LaneTrace> traces,
                                                    int warp_size);

/// Lockstep cost of the single-loop traversal: every iteration costs a
/// check, and an iteration where any lane computes a force costs every lane
/// the force time.
double warp_cycles_baseline(std::span<const LaneTrace> warp, const WarpCostParams& params);

/// Lockstep cost of the two-loop traversal: loop 1 checks and stores
/// contact IDs, loop 2 runs max-contact-count force iterations.
double warp_cycles_two_phase(std::span<const LaneTrace> warp, const WarpCostParams& params);

/// Sum of the cycles each lane actually needs for its own work.
double warp_useful_cycles(std::span<const LaneTrace> warp, const WarpCostParams& params,
                          CollideVariant variant);

/// useful / (lanes * cycles); 1.0 for a warp with no events at all.
double utilization(std::span<const LaneTrace> warp, const WarpCostParams& params,
                   CollideVariant variant);

/// Aggregate model output over all warps of a trace set.
struct WarpReport {
    double cycles_baseline = 0.0;
    double cycles_two_phase = 0.0;
    double utilization_baseline = 1.0;
    double utilization_two_phase = 1.0;
    std::size_t warp_count = 0;
    // Raw sums, so reports for several steps can be merged exactly.
    double useful_baseline = 0.0;
    double useful_two_phase = 0.0;
    double occupied_baseline = 0.0;   // sum of lanes * cycles
    double occupied_two_phase = 0.0;

    /// baseline / two_phase; 1.0 when both are zero.
    double speedup() const;

    void merge(const WarpReport& other);
};

WarpReport model_report(std::span<const LaneTrace> traces, const WarpCostParams& params);

}  // namespace demforge
