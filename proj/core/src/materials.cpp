#include "demforge/materials.hpp"

#include <algorithm>
#include <cmath>

#include "demforge/error.hpp"

namespace demforge {

void MaterialParams::validate(const std::string& where) const {
    auto fail = [&](const std::string& field, const std::string& why) {
        throw ConfigError(where + "." + field + ": " + why);
    };
    if (!(poisson_ratio >= 0.0 && poisson_ratio < 0.5)) fail("poisson", "must satisfy 0 <= sigma < 0.5");
    if (!(shear_modulus > 0.0)) fail("shear_modulus", "must be > 0");
    if (!(youngs_modulus > 0.0)) fail("youngs_modulus", "must be > 0");
    if (!(restitution > 0.0 && restitution <= 1.0)) fail("restitution", "must satisfy 0 < eps <= 1");
    if (!(sliding_friction >= 0.0)) fail("mu_d", "must be >= 0");
}

std::uint32_t MaterialTable::add(std::string name, const MaterialParams& params) {
    if (contains(name)) throw ConfigError("material '" + name + "' defined twice");
    names_.push_back(std::move(name));
    materials_.push_back(params);
    return static_cast<std::uint32_t>(materials_.size() - 1);
}

std::uint32_t MaterialTable::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return static_cast<std::uint32_t>(i);
    }
    throw ConfigError("unknown material '" + name + "'");
}

bool MaterialTable::contains(const std::string& name) const {
    return std::find(names_.begin(), names_.end(), name) != names_.end();
}

void MaterialTable::set_pair_restitution(std::uint32_t a, std::uint32_t b, double eps) {
    if (a > b) std::swap(a, b);
    for (auto& o : overrides_) {
        if (o.a == a && o.b == b) {
            o.eps = eps;
            return;
        }
    }
    overrides_.push_back({a, b, eps});
}

bool MaterialTable::pair_overridden(std::uint32_t a, std::uint32_t b) const {
    if (a > b) std::swap(a, b);
    for (const auto& o : overrides_) {
        if (o.a == a && o.b == b) return true;
    }
    return false;
}

double MaterialTable::pair_restitution(std::uint32_t a, std::uint32_t b) const {
    if (a > b) std::swap(a, b);
    for (const auto& o : overrides_) {
        if (o.a == a && o.b == b) return o.eps;
    }
    return std::sqrt(materials_[a].restitution * materials_[b].restitution);
}

double MaterialTable::pair_sliding_friction(std::uint32_t a, std::uint32_t b) const {
    return std::sqrt(materials_[a].sliding_friction * materials_[b].sliding_friction);
}

std::vector<MaterialTable::PairOverrideView> MaterialTable::pair_overrides() const {
    std::vector<PairOverrideView> out;
    out.reserve(overrides_.size());
    for (const auto& o : overrides_) out.push_back({o.a, o.b, o.eps});
    return out;
}

void MaterialTable::validate() const {
    if (materials_.empty()) throw ConfigError("no materials defined");
    for (std::size_t i = 0; i < materials_.size(); ++i) {
        materials_[i].validate("material." + names_[i]);
    }
    for (const auto& o : overrides_) {
        if (!(o.eps > 0.0 && o.eps <= 1.0)) {
            throw ConfigError("restitution_pair." + names_[o.a] + "." + names_[o.b] +
                              ": must satisfy 0 < eps <= 1");
        }
    }
}

}  // namespace demforge
