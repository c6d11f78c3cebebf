#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace saito {

enum class ErrorKind {
    GroupTooLarge,
    DomainMismatch,
    PairingInconsistent,
    MalformedEnhancedSet,
    NotInB1,
    NotIntegral,
    NotSquare,
    Degenerate,
    ParseError,
    InternalInconsistency,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::GroupTooLarge: return "GroupTooLarge";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::PairingInconsistent: return "PairingInconsistent";
    case ErrorKind::MalformedEnhancedSet: return "MalformedEnhancedSet";
    case ErrorKind::NotInB1: return "NotInB1";
    case ErrorKind::NotIntegral: return "NotIntegral";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    }
    return "Unknown";
}

/// Every failure raised by the library. `position` is meaningful for
/// ParseError only and counts bytes from the start of the parsed text.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what, std::size_t position = npos)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what),
          kind_(kind), message_(what), position_(position) {}

    ErrorKind kind() const noexcept { return kind_; }
    std::size_t position() const noexcept { return position_; }
    /// what() without the kind prefix.
    const std::string& message() const noexcept { return message_; }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    ErrorKind kind_;
    std::string message_;
    std::size_t position_;
};

} // namespace saito
