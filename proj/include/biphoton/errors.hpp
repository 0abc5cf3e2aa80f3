#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace biphoton
{
// Input outside the domain of a physical relation (Sellmeier window, total
// internal reflection, evanescent diffraction order, bad argument).
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

// Phase matching cannot be satisfied (no cut angle, no conjugate idler angle).
class PhaseMatchingError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// A numerical procedure failed to converge.
class NumericalError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Configuration parse or validation failure. `where` is "line N" or a
// dotted field path such as "fiber.numerical_aperture".
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(std::string where, const std::string& message)
        : std::runtime_error(where + ": " + message), where_(std::move(where))
    {
    }

    const std::string& where() const noexcept { return where_; }

  private:
    std::string where_;
};
}  // namespace biphoton
