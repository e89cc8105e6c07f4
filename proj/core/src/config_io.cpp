#include "demforge/config_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "demforge/error.hpp"
#include "demforge/snapshot_io.hpp"

namespace demforge {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, sep)) parts.push_back(part);
    return parts;
}

bool valid_name(const std::string& s) {
    if (s.empty() || (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
    });
}

struct Entry {
    int line;
    std::string value;
};

class Parser {
  public:
    Parser(const std::string& text, std::string origin) : origin_(std::move(origin)) {
        std::stringstream ss(text);
        std::string line;
        int line_no = 0;
        while (std::getline(ss, line)) {
            ++line_no;
            const std::size_t hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos) {
                fail(line_no, "expected 'key = value'");
            }
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty()) fail(line_no, "empty key");
            if (value.empty()) fail(line_no, "empty value for key '" + key + "'");
            if (entries_.count(key)) fail(line_no, "duplicate key '" + key + "'");
            entries_[key] = {line_no, value};
            order_.push_back(key);
        }
    }

    SimConfig build() {
        SimConfig cfg;
        parse_materials(cfg);
        parse_scalars(cfg);
        parse_walls(cfg);
        parse_pair_overrides(cfg);

        // Everything recognized was consumed; anything left is unknown.
        for (const auto& key : order_) {
            if (!used_.count(key)) {
                fail(entries_[key].line, "unknown key '" + key + "'");
            }
        }

        for (const char* required : {"dt", "particles.count", "particles.radius",
                                     "particles.mass", "particles.material"}) {
            if (!entries_.count(required)) {
                throw ConfigError(origin_ + ": missing required key '" + std::string(required) +
                                  "'");
            }
        }
        for (const char* axis : {"x", "y", "z"}) {
            for (const char* side : {"min", "max"}) {
                const std::string key = std::string("domain.") + side + "." + axis;
                if (!entries_.count(key)) {
                    throw ConfigError(origin_ + ": missing required key '" + key + "'");
                }
            }
        }
        if (cfg.materials.size() == 0) {
            throw ConfigError(origin_ + ": no material.<name>.* block defined");
        }

        cfg.validate();
        return cfg;
    }

  private:
    [[noreturn]] void fail(int line, const std::string& what) const {
        throw ConfigError(origin_ + ":" + std::to_string(line) + ": " + what);
    }

    const Entry* take(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return nullptr;
        used_.insert(key);
        return &it->second;
    }

    double parse_double(const Entry& e, const std::string& key) const {
        double out;
        const char* begin = e.value.data();
        const char* end = begin + e.value.size();
        const auto res = std::from_chars(begin, end, out);
        if (res.ec != std::errc{} || res.ptr != end) {
            fail(e.line, "key '" + key + "': expected a number, got '" + e.value + "'");
        }
        return out;
    }

    std::int64_t parse_int(const Entry& e, const std::string& key) const {
        std::int64_t out;
        const char* begin = e.value.data();
        const char* end = begin + e.value.size();
        const auto res = std::from_chars(begin, end, out);
        if (res.ec != std::errc{} || res.ptr != end) {
            fail(e.line, "key '" + key + "': expected an integer, got '" + e.value + "'");
        }
        return out;
    }

    Vec3 parse_vec3(const Entry& e, const std::string& key) const {
        std::string cleaned = e.value;
        std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
        std::stringstream ss(cleaned);
        std::vector<std::string> parts;
        std::string part;
        while (ss >> part) parts.push_back(part);
        if (parts.size() != 3) {
            fail(e.line, "key '" + key + "': expected three numbers, got '" + e.value + "'");
        }
        Vec3 v;
        double* comp[3] = {&v.x, &v.y, &v.z};
        for (int i = 0; i < 3; ++i) {
            const char* b = parts[i].data();
            const char* en = b + parts[i].size();
            const auto res = std::from_chars(b, en, *comp[i]);
            if (res.ec != std::errc{} || res.ptr != en) {
                fail(e.line, "key '" + key + "': expected three numbers, got '" + e.value + "'");
            }
        }
        return v;
    }

    void set_double(const std::string& key, double& target) {
        if (const Entry* e = take(key)) target = parse_double(*e, key);
    }
    void set_int(const std::string& key, auto& target) {
        if (const Entry* e = take(key)) {
            target = static_cast<std::remove_reference_t<decltype(target)>>(parse_int(*e, key));
        }
    }

    void parse_scalars(SimConfig& cfg) {
        set_double("dt", cfg.dt);
        set_double("gravity.x", cfg.gravity.x);
        set_double("gravity.y", cfg.gravity.y);
        set_double("gravity.z", cfg.gravity.z);
        set_double("domain.min.x", cfg.domain_min.x);
        set_double("domain.min.y", cfg.domain_min.y);
        set_double("domain.min.z", cfg.domain_min.z);
        set_double("domain.max.x", cfg.domain_max.x);
        set_double("domain.max.y", cfg.domain_max.y);
        set_double("domain.max.z", cfg.domain_max.z);
        set_double("grid.cell_size", cfg.grid_cell_size);
        set_int("contacts.capacity", cfg.contact_capacity);
        set_int("seed", cfg.seed);

        set_int("simt.warp_size", cfg.warp.warp_size);
        set_double("simt.c_check", cfg.warp.c_check);
        set_double("simt.c_force", cfg.warp.c_force);
        set_double("simt.c_store", cfg.warp.c_store);
        set_double("simt.c_load", cfg.warp.c_load);

        set_int("run.steps", cfg.run.steps);
        set_int("run.warmup_steps", cfg.run.warmup_steps);
        set_int("run.snapshot_every", cfg.run.snapshot_every);
        if (const Entry* e = take("run.collide_variant")) {
            if (e->value == "baseline") {
                cfg.run.collide_variant = CollideVariant::baseline;
            } else if (e->value == "two_phase") {
                cfg.run.collide_variant = CollideVariant::two_phase;
            } else {
                fail(e->line, "run.collide_variant must be 'baseline' or 'two_phase'");
            }
        }

        set_int("particles.count", cfg.particles.count);
        set_double("particles.radius", cfg.particles.radius);
        set_double("particles.mass", cfg.particles.mass);
        if (const Entry* e = take("particles.material")) cfg.particles.material = e->value;
        if (const Entry* e = take("particles.init")) {
            if (e->value == "lattice") {
                cfg.particles.mode = InitMode::lattice;
            } else if (e->value == "headon") {
                cfg.particles.mode = InitMode::headon;
            } else {
                fail(e->line, "particles.init must be 'lattice' or 'headon'");
            }
        }
        set_double("particles.jitter", cfg.particles.jitter);
        set_double("particles.lattice_spacing", cfg.particles.lattice_spacing);
        set_double("particles.headon_gap", cfg.particles.headon_gap);
        set_double("particles.headon_speed", cfg.particles.headon_speed);
    }

    void parse_materials(SimConfig& cfg) {
        // First-appearance order fixes the material indices.
        std::vector<std::string> names;
        for (const auto& key : order_) {
            const auto parts = split(key, '.');
            if (parts.size() == 3 && parts[0] == "material") {
                if (!valid_name(parts[1])) {
                    fail(entries_[key].line, "bad material name '" + parts[1] + "'");
                }
                if (std::find(names.begin(), names.end(), parts[1]) == names.end()) {
                    names.push_back(parts[1]);
                }
            }
        }
        for (const auto& name : names) {
            MaterialParams params;
            const std::string prefix = "material." + name + ".";
            set_double(prefix + "poisson", params.poisson_ratio);
            set_double(prefix + "shear_modulus", params.shear_modulus);
            set_double(prefix + "youngs_modulus", params.youngs_modulus);
            set_double(prefix + "restitution", params.restitution);
            set_double(prefix + "mu_d", params.sliding_friction);
            cfg.materials.add(name, params);
        }
    }

    void parse_pair_overrides(SimConfig& cfg) {
        for (const auto& key : order_) {
            const auto parts = split(key, '.');
            if (parts.size() == 3 && parts[0] == "restitution_pair") {
                const Entry& e = entries_[key];
                used_.insert(key);
                if (!cfg.materials.contains(parts[1]) || !cfg.materials.contains(parts[2])) {
                    fail(e.line, "restitution_pair references an unknown material");
                }
                cfg.materials.set_pair_restitution(cfg.materials.index_of(parts[1]),
                                                   cfg.materials.index_of(parts[2]),
                                                   parse_double(e, key));
            }
        }
    }

    void parse_walls(SimConfig& cfg) {
        std::set<int> rect_indices;
        std::set<int> line_indices;
        for (const auto& key : order_) {
            const auto parts = split(key, '.');
            if (parts.size() == 4 && parts[0] == "wall") {
                const Entry& e = entries_[key];
                int idx;
                const auto res =
                    std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), idx);
                if (res.ec != std::errc{} || res.ptr != parts[2].data() + parts[2].size() ||
                    idx < 0) {
                    fail(e.line, "bad wall index in '" + key + "'");
                }
                if (parts[1] == "rect") {
                    rect_indices.insert(idx);
                } else if (parts[1] == "line") {
                    line_indices.insert(idx);
                } else {
                    fail(e.line, "unknown wall kind '" + parts[1] + "'");
                }
            }
        }

        auto check_contiguous = [&](const std::set<int>& indices, const char* kind) {
            int expected = 0;
            for (int idx : indices) {
                if (idx != expected++) {
                    throw ConfigError(origin_ + ": wall." + kind + " indices must be 0.." +
                                      std::to_string(static_cast<int>(indices.size()) - 1));
                }
            }
        };
        check_contiguous(rect_indices, "rect");
        check_contiguous(line_indices, "line");

        auto wall_material = [&](const std::string& key) -> std::uint32_t {
            const Entry* e = take(key);
            if (!e) throw ConfigError(origin_ + ": missing required key '" + key + "'");
            if (!cfg.materials.contains(e->value)) {
                fail(e->line, "key '" + key + "': unknown material '" + e->value + "'");
            }
            return cfg.materials.index_of(e->value);
        };
        auto wall_vec = [&](const std::string& key) -> Vec3 {
            const Entry* e = take(key);
            if (!e) throw ConfigError(origin_ + ": missing required key '" + key + "'");
            return parse_vec3(*e, key);
        };

        for (int i = 0; i < static_cast<int>(rect_indices.size()); ++i) {
            const std::string prefix = "wall.rect." + std::to_string(i) + ".";
            RectWall w;
            w.corner = wall_vec(prefix + "corner");
            w.edge_u = wall_vec(prefix + "edge_u");
            w.edge_v = wall_vec(prefix + "edge_v");
            w.material_id = wall_material(prefix + "material");
            cfg.rect_walls.push_back(w);
        }
        for (int i = 0; i < static_cast<int>(line_indices.size()); ++i) {
            const std::string prefix = "wall.line." + std::to_string(i) + ".";
            LineWall w;
            w.a = wall_vec(prefix + "a");
            w.b = wall_vec(prefix + "b");
            w.material_id = wall_material(prefix + "material");
            cfg.line_walls.push_back(w);
        }
    }

    std::string origin_;
    std::map<std::string, Entry> entries_;
    std::vector<std::string> order_;
    std::set<std::string> used_;
};

}  // namespace

SimConfig parse_config(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file " + path.string());
    std::stringstream buffer;
    buffer << f.rdbuf();
    return parse_config_text(buffer.str(), path.filename().string());
}

SimConfig parse_config_text(const std::string& text, const std::string& origin) {
    return Parser(text, origin).build();
}

std::string serialize_config(const SimConfig& cfg) {
    std::string out;
    auto emit = [&](const std::string& key, const std::string& value) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    };
    auto emit_d = [&](const std::string& key, double v) { emit(key, format_double(v)); };
    auto emit_i = [&](const std::string& key, std::int64_t v) { emit(key, std::to_string(v)); };
    auto emit_v = [&](const std::string& key, const Vec3& v) {
        emit(key, format_double(v.x) + " " + format_double(v.y) + " " + format_double(v.z));
    };

    emit_d("dt", cfg.dt);
    emit_d("gravity.x", cfg.gravity.x);
    emit_d("gravity.y", cfg.gravity.y);
    emit_d("gravity.z", cfg.gravity.z);
    emit_d("domain.min.x", cfg.domain_min.x);
    emit_d("domain.min.y", cfg.domain_min.y);
    emit_d("domain.min.z", cfg.domain_min.z);
    emit_d("domain.max.x", cfg.domain_max.x);
    emit_d("domain.max.y", cfg.domain_max.y);
    emit_d("domain.max.z", cfg.domain_max.z);
    emit_i("seed", static_cast<std::int64_t>(cfg.seed));

    emit_i("particles.count", cfg.particles.count);
    emit_d("particles.radius", cfg.particles.radius);
    emit_d("particles.mass", cfg.particles.mass);
    emit("particles.material", cfg.particles.material);
    emit("particles.init", cfg.particles.mode == InitMode::lattice ? "lattice" : "headon");
    if (cfg.particles.jitter >= 0.0) emit_d("particles.jitter", cfg.particles.jitter);
    if (cfg.particles.lattice_spacing > 0.0) {
        emit_d("particles.lattice_spacing", cfg.particles.lattice_spacing);
    }
    if (cfg.particles.mode == InitMode::headon) {
        if (cfg.particles.headon_gap >= 0.0) emit_d("particles.headon_gap", cfg.particles.headon_gap);
        emit_d("particles.headon_speed", cfg.particles.headon_speed);
    }

    for (std::uint32_t m = 0; m < cfg.materials.size(); ++m) {
        const std::string prefix = "material." + cfg.materials.name(m) + ".";
        const MaterialParams& p = cfg.materials.params(m);
        emit_d(prefix + "poisson", p.poisson_ratio);
        emit_d(prefix + "shear_modulus", p.shear_modulus);
        emit_d(prefix + "youngs_modulus", p.youngs_modulus);
        emit_d(prefix + "restitution", p.restitution);
        emit_d(prefix + "mu_d", p.sliding_friction);
    }
    for (const auto& o : cfg.materials.pair_overrides()) {
        emit_d("restitution_pair." + cfg.materials.name(o.a) + "." + cfg.materials.name(o.b),
               o.eps);
    }

    for (std::size_t i = 0; i < cfg.rect_walls.size(); ++i) {
        const std::string prefix = "wall.rect." + std::to_string(i) + ".";
        emit_v(prefix + "corner", cfg.rect_walls[i].corner);
        emit_v(prefix + "edge_u", cfg.rect_walls[i].edge_u);
        emit_v(prefix + "edge_v", cfg.rect_walls[i].edge_v);
        emit(prefix + "material", cfg.materials.name(cfg.rect_walls[i].material_id));
    }
    for (std::size_t i = 0; i < cfg.line_walls.size(); ++i) {
        const std::string prefix = "wall.line." + std::to_string(i) + ".";
        emit_v(prefix + "a", cfg.line_walls[i].a);
        emit_v(prefix + "b", cfg.line_walls[i].b);
        emit(prefix + "material", cfg.materials.name(cfg.line_walls[i].material_id));
    }

    if (cfg.grid_cell_size > 0.0) emit_d("grid.cell_size", cfg.grid_cell_size);
    emit_i("contacts.capacity", cfg.contact_capacity);
    emit_i("simt.warp_size", cfg.warp.warp_size);
    emit_d("simt.c_check", cfg.warp.c_check);
    emit_d("simt.c_force", cfg.warp.c_force);
    emit_d("simt.c_store", cfg.warp.c_store);
    emit_d("simt.c_load", cfg.warp.c_load);
    emit_i("run.steps", cfg.run.steps);
    emit_i("run.warmup_steps", cfg.run.warmup_steps);
    emit_i("run.snapshot_every", cfg.run.snapshot_every);
    emit("run.collide_variant",
         cfg.run.collide_variant == CollideVariant::baseline ? "baseline" : "two_phase");
    return out;
}

}  // namespace demforge
