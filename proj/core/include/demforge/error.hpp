#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace demforge {

/// Configuration file or validation failure. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Runtime failure inside a simulation kernel. Maps to CLI exit code 3.
/// Carries the kernel name so the step loop can report where it aborted.
class KernelError : public std::runtime_error {
  public:
    KernelError(std::string kernel, const std::string& what)
        : std::runtime_error(kernel + ": " + what), kernel_(std::move(kernel)) {}

    const std::string& kernel() const { return kernel_; }

  private:
    std::string kernel_;
};

/// A particle's contact slot row is full: the configured per-particle
/// capacity is too small for the packing.
class CapacityError : public KernelError {
  public:
    CapacityError(std::string kernel, std::uint32_t particle, int capacity)
        : KernelError(std::move(kernel),
                      "contact capacity exceeded for particle " + std::to_string(particle) +
                          " (capacity " + std::to_string(capacity) + ")"),
          particle_(particle) {}

    std::uint32_t particle() const { return particle_; }

  private:
    std::uint32_t particle_;
};

/// Coincident centers: the contact normal is undefined. Signals a broken
/// state or a timestep too large, so it is a hard error rather than a skip.
class DegenerateContactError : public KernelError {
  public:
    using KernelError::KernelError;
};

}  // namespace demforge
