#pragma once

#include <stdexcept>
#include <string>

namespace squeeze {

// Base for every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input that is structurally wrong (bad config, invalid parameter ranges).
class config_error : public error {
public:
    using error::error;
};

// Input that is well formed but outside the physical domain of an operation.
class physics_error : public error {
public:
    using error::error;
};

class degenerate_slope_error : public physics_error {
public:
    degenerate_slope_error() : physics_error("degenerate slope: use the constant-profile matrix") {}
};

class evanescent_lead_error : public physics_error {
public:
    explicit evanescent_lead_error(const std::string& side)
        : physics_error("evanescent lead on the " + side + " side: energy must exceed the lead potential") {}
};

class bias_free_layer_error : public physics_error {
public:
    bias_free_layer_error() : physics_error("bias-free layer: c1 and c2 need a nonzero bias b") {}
};

class unsupported_limit_error : public physics_error {
public:
    explicit unsupported_limit_error(const std::string& what)
        : physics_error("no closed-form limit available: " + what) {}
};

class overflow_error : public physics_error {
public:
    using physics_error::physics_error;
};

} // namespace squeeze
