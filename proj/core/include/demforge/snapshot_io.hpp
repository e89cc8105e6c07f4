#pragma once

#include <filesystem>
#include <string>

#include "demforge/particle_set.hpp"
#include "demforge/pipeline.hpp"

namespace demforge {

/// Shortest decimal form that round-trips the exact double value.
std::string format_double(double value);

/// Writes one snapshot CSV. Header is exactly
/// `id,x,y,z,vx,vy,vz,wx,wy,wz,r`; one row per particle, ordered by the
/// stable particle id, full round-trip precision.
void write_snapshot(const std::filesystem::path& path, const ParticleSet& state);

/// Parsed snapshot row (mainly for tests and post-processing).
struct SnapshotRow {
    std::uint32_t id;
    Vec3 position, velocity, angular_velocity;
    double radius;
};
std::vector<SnapshotRow> read_snapshot(const std::filesystem::path& path);

inline constexpr const char* kMetricsHeader =
    "step,kernel,wall_ns,model_cycles_baseline,model_cycles_two_phase,"
    "utilization_baseline,utilization_two_phase,contacts,max_contacts_per_particle,clamps";

/// Appends the nine kernel rows of one step to an open metrics stream.
/// Model columns are populated on the Collide row and zero elsewhere;
/// contacts/max/clamps are step-level and repeated on every row. When
/// `zero_wall_time` is set the wall_ns column is written as 0 so that runs
/// with the same seed produce byte-identical files.
void append_metrics_rows(std::string& out, const StepMetrics& metrics, bool zero_wall_time);

}  // namespace demforge
