#include "demforge/warp_model.hpp"

#include <algorithm>

#include "demforge/error.hpp"

namespace demforge {

void WarpCostParams::validate() const {
    if (warp_size < 1) throw ConfigError("simt.warp_size must be >= 1");
    if (c_check < 0.0 || c_force < 0.0 || c_store < 0.0 || c_load < 0.0) {
        throw ConfigError("simt cost parameters must be >= 0");
    }
    if (!(c_force > c_check)) {
        throw ConfigError("simt.c_force must exceed simt.c_check");
    }
}

std::size_t contact_count(const LaneTrace& trace) {
    return static_cast<std::size_t>(
        std::count_if(trace.begin(), trace.end(), [](const TraceEvent& e) { return e.contact; }));
}

std::vector<std::span<const LaneTrace>> group_warps(std::span<const LaneTrace> traces,
                                                    int warp_size) {
    std::vector<std::span<const LaneTrace>> warps;
    const std::size_t w = static_cast<std::size_t>(warp_size);
    for (std::size_t begin = 0; begin < traces.size(); begin += w) {
        warps.push_back(traces.subspan(begin, std::min(w, traces.size() - begin)));
    }
    return warps;
}

namespace {

std::size_t max_events(std::span<const LaneTrace> warp) {
    std::size_t m = 0;
    for (const auto& lane : warp) m = std::max(m, lane.size());
    return m;
}

bool any_contact_at(std::span<const LaneTrace> warp, std::size_t j) {
    for (const auto& lane : warp) {
        if (j < lane.size() && lane[j].contact) return true;
    }
    return false;
}

}  // namespace

double warp_cycles_baseline(std::span<const LaneTrace> warp, const WarpCostParams& params) {
    const std::size_t l_max = max_events(warp);
    double cycles = 0.0;
    for (std::size_t j = 0; j < l_max; ++j) {
        cycles += params.c_check;
        if (any_contact_at(warp, j)) cycles += params.c_force;
    }
    return cycles;
}

double warp_cycles_two_phase(std::span<const LaneTrace> warp, const WarpCostParams& params) {
    const std::size_t l_max = max_events(warp);
    double phase1 = 0.0;
    for (std::size_t j = 0; j < l_max; ++j) {
        phase1 += params.c_check;
        if (any_contact_at(warp, j)) phase1 += params.c_store;
    }
    std::size_t c_max = 0;
    for (const auto& lane : warp) c_max = std::max(c_max, contact_count(lane));
    const double phase2 = static_cast<double>(c_max) * (params.c_load + params.c_force);
    return phase1 + phase2;
}

double warp_useful_cycles(std::span<const LaneTrace> warp, const WarpCostParams& params,
                          CollideVariant variant) {
    double useful = 0.0;
    for (const auto& lane : warp) {
        const double contacts = static_cast<double>(contact_count(lane));
        useful += static_cast<double>(lane.size()) * params.c_check + contacts * params.c_force;
        if (variant == CollideVariant::two_phase) {
            useful += contacts * (params.c_store + params.c_load);
        }
    }
    return useful;
}

double utilization(std::span<const LaneTrace> warp, const WarpCostParams& params,
                   CollideVariant variant) {
    const double cycles = variant == CollideVariant::baseline
                              ? warp_cycles_baseline(warp, params)
                              : warp_cycles_two_phase(warp, params);
    if (cycles == 0.0) return 1.0;  // nothing to do, nothing wasted
    const double useful = warp_useful_cycles(warp, params, variant);
    return useful / (static_cast<double>(warp.size()) * cycles);
}

double WarpReport::speedup() const {
    if (cycles_two_phase == 0.0) return 1.0;
    return cycles_baseline / cycles_two_phase;
}

void WarpReport::merge(const WarpReport& other) {
    cycles_baseline += other.cycles_baseline;
    cycles_two_phase += other.cycles_two_phase;
    warp_count += other.warp_count;
    useful_baseline += other.useful_baseline;
    useful_two_phase += other.useful_two_phase;
    occupied_baseline += other.occupied_baseline;
    occupied_two_phase += other.occupied_two_phase;
    if (occupied_baseline > 0.0) utilization_baseline = useful_baseline / occupied_baseline;
    if (occupied_two_phase > 0.0) utilization_two_phase = useful_two_phase / occupied_two_phase;
}

WarpReport model_report(std::span<const LaneTrace> traces, const WarpCostParams& params) {
    WarpReport report;
    for (const auto warp : group_warps(traces, params.warp_size)) {
        ++report.warp_count;
        const double base = warp_cycles_baseline(warp, params);
        const double two = warp_cycles_two_phase(warp, params);
        report.cycles_baseline += base;
        report.cycles_two_phase += two;
        report.useful_baseline += warp_useful_cycles(warp, params, CollideVariant::baseline);
        report.useful_two_phase += warp_useful_cycles(warp, params, CollideVariant::two_phase);
        report.occupied_baseline += static_cast<double>(warp.size()) * base;
        report.occupied_two_phase += static_cast<double>(warp.size()) * two;
    }
    if (report.occupied_baseline > 0.0) {
        report.utilization_baseline = report.useful_baseline / report.occupied_baseline;
    }
    if (report.occupied_two_phase > 0.0) {
        report.utilization_two_phase = report.useful_two_phase / report.occupied_two_phase;
    }
    return report;
}

}  // namespace demforge
