#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mpbandit {

enum class ErrorKind {
    InvalidTarget,
    NumericPathology,
    InvalidPlayCount,
    InvalidMarginals,
    InvalidReward,
    InvalidSpec,
    InvalidParameter,
    InvalidConfig,
    Schema,
    Parse,
    EmptyInput,
    Shape,
    Io,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidTarget: return "invalid-target";
        case ErrorKind::NumericPathology: return "numeric-pathology";
        case ErrorKind::InvalidPlayCount: return "invalid-play-count";
        case ErrorKind::InvalidMarginals: return "invalid-marginals";
        case ErrorKind::InvalidReward: return "invalid-reward";
        case ErrorKind::InvalidSpec: return "invalid-spec";
        case ErrorKind::InvalidParameter: return "invalid-parameter";
        case ErrorKind::InvalidConfig: return "invalid-config";
        case ErrorKind::Schema: return "schema";
        case ErrorKind::Parse: return "parse";
        case ErrorKind::EmptyInput: return "empty-input";
        case ErrorKind::Shape: return "shape";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

/// Library exception tagged with an ErrorKind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace mpbandit
