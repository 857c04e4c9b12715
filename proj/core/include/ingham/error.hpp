#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

namespace ingham {

/// Malformed input: empty sequences, non-finite values, bad shapes.
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A well-formed input that violates a mathematical precondition
/// (gap condition, band condition, resonance, singular pencil, ...).
///
/// `kind` is a stable machine-readable tag; `details` carries the offending
/// indices or values so callers can serialize an error report.
class ValidationError : public std::runtime_error {
public:
    ValidationError(std::string kind, const std::string& message,
                    nlohmann::json details = nlohmann::json::object())
        : std::runtime_error(message), kind_(std::move(kind)), details_(std::move(details)) {}

    const std::string& kind() const noexcept { return kind_; }
    const nlohmann::json& details() const noexcept { return details_; }

private:
    std::string kind_;
    nlohmann::json details_;
};

} // namespace ingham
