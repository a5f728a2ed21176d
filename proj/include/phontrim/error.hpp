#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace phontrim {

enum class ErrorKind {
    MissingColumn,
    DuplicateId,
    RaggedAlignment,
    EmptyAlignment,
    MalformedRow,
    UnknownCogid,
    InvalidMatrix,
    ClassCountImpossible,
    DuplicateSiteId,
    UnassignedSite,
    InconsistentInputs,
    InvalidConfig,
    Io,
};

inline std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::MissingColumn: return "MissingColumn";
        case ErrorKind::DuplicateId: return "DuplicateId";
        case ErrorKind::RaggedAlignment: return "RaggedAlignment";
        case ErrorKind::EmptyAlignment: return "EmptyAlignment";
        case ErrorKind::MalformedRow: return "MalformedRow";
        case ErrorKind::UnknownCogid: return "UnknownCogid";
        case ErrorKind::InvalidMatrix: return "InvalidMatrix";
        case ErrorKind::ClassCountImpossible: return "ClassCountImpossible";
        case ErrorKind::DuplicateSiteId: return "DuplicateSiteId";
        case ErrorKind::UnassignedSite: return "UnassignedSite";
        case ErrorKind::InconsistentInputs: return "InconsistentInputs";
        case ErrorKind::InvalidConfig: return "InvalidConfig";
        case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

// All library failures are reported through this type; kind() tells callers
// which contract was violated.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace phontrim
