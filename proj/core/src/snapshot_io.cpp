#include "demforge/snapshot_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "demforge/error.hpp"
#include "demforge/sorted_order.hpp"

namespace demforge {

std::string format_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

void write_snapshot(const std::filesystem::path& path, const ParticleSet& state) {
    // Rows are emitted in stable-id order so snapshots of the same particle
    // line up across steps regardless of the cell reordering.
    std::vector<std::uint32_t> slot_of_id(state.size());
    for (std::uint32_t slot = 0; slot < state.size(); ++slot) {
        slot_of_id[state.ids[slot]] = slot;
    }

    std::string out = "id,x,y,z,vx,vy,vz,wx,wy,wz,r\n";
    for (std::uint32_t id = 0; id < state.size(); ++id) {
        const std::uint32_t i = slot_of_id[id];
        const Vec3& x = state.positions[i];
        const Vec3& v = state.velocities[i];
        const Vec3& w = state.angular_velocities[i];
        out += std::to_string(id);
        for (double value : {x.x, x.y, x.z, v.x, v.y, v.z, w.x, w.y, w.z, state.radii[i]}) {
            out += ',';
            out += format_double(value);
        }
        out += '\n';
    }

    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open snapshot file " + path.string());
    f << out;
}

std::vector<SnapshotRow> read_snapshot(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read snapshot file " + path.string());
    std::string line;
    std::getline(f, line);  // header
    std::vector<SnapshotRow> rows;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        double v[11];
        int k = 0;
        while (std::getline(ss, field, ',') && k < 11) v[k++] = std::stod(field);
        if (k != 11) throw ConfigError("bad snapshot row in " + path.string());
        SnapshotRow row;
        row.id = static_cast<std::uint32_t>(v[0]);
        row.position = {v[1], v[2], v[3]};
        row.velocity = {v[4], v[5], v[6]};
        row.angular_velocity = {v[7], v[8], v[9]};
        row.radius = v[10];
        rows.push_back(row);
    }
    return rows;
}

void append_metrics_rows(std::string& out, const StepMetrics& metrics, bool zero_wall_time) {
    for (int k = 0; k < kKernelCount; ++k) {
        const bool collide_row = static_cast<Kernel>(k) == Kernel::collide;
        out += std::to_string(metrics.step);
        out += ',';
        out += kernel_name(static_cast<Kernel>(k));
        out += ',';
        out += std::to_string(zero_wall_time ? 0 : metrics.kernel_wall_ns[k]);
        out += ',';
        out += format_double(collide_row ? metrics.model_cycles_baseline : 0.0);
        out += ',';
        out += format_double(collide_row ? metrics.model_cycles_two_phase : 0.0);
        out += ',';
        out += format_double(collide_row ? metrics.utilization_baseline : 0.0);
        out += ',';
        out += format_double(collide_row ? metrics.utilization_two_phase : 0.0);
        out += ',';
        out += std::to_string(metrics.contacts);
        out += ',';
        out += std::to_string(metrics.max_contacts_per_particle);
        out += ',';
        out += std::to_string(metrics.clamps);
        out += '\n';
    }
}

}  // namespace demforge
