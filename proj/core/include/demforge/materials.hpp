#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace demforge {

/// Contact-law material parameters for one material.
struct MaterialParams {
    double poisson_ratio = 0.3;      // sigma, dimensionless, 0 <= sigma < 0.5
    double shear_modulus = 4e5;      // G, Pa
    double youngs_modulus = 1e6;     // E, Pa
    double restitution = 0.9;        // epsilon, per-pair value comes from MaterialTable
    double sliding_friction = 0.3;   // mu_D, dimensionless

    /// Throws ConfigError naming the offending field. `where` prefixes the message.
    void validate(const std::string& where) const;
};

/// Named material set plus the symmetric per-pair restitution table.
/// Entries default to sqrt(eps_i * eps_j) and can be overridden pairwise.
class MaterialTable {
  public:
    /// Returns the index of the added material.
    std::uint32_t add(std::string name, const MaterialParams& params);

    std::uint32_t index_of(const std::string& name) const;  // throws ConfigError if unknown
    bool contains(const std::string& name) const;

    const MaterialParams& params(std::uint32_t id) const { return materials_[id]; }
    const std::string& name(std::uint32_t id) const { return names_[id]; }
    std::size_t size() const { return materials_.size(); }

    void set_pair_restitution(std::uint32_t a, std::uint32_t b, double eps);
    bool pair_overridden(std::uint32_t a, std::uint32_t b) const;
    double pair_restitution(std::uint32_t a, std::uint32_t b) const;

    struct PairOverrideView {
        std::uint32_t a, b;
        double eps;
    };
    std::vector<PairOverrideView> pair_overrides() const;

    /// Sliding friction for a pair: geometric mean of the two mu_D values.
    double pair_sliding_friction(std::uint32_t a, std::uint32_t b) const;

    void validate() const;

  private:
    std::vector<std::string> names_;
    std::vector<MaterialParams> materials_;
    struct PairOverride {
        std::uint32_t a, b;
        double eps;
    };
    std::vector<PairOverride> overrides_;
};

}  // namespace demforge
