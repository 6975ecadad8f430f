#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vortex {

/// Error categories reported by fallible operations. Validation-style
/// operations return report structs instead of throwing; exceptions are
/// reserved for contract violations and rejected constructions.
enum class ErrorCode {
    MalformedSubset,
    NoProbe,
    CapExceeded,
    LengthMismatch,
    SizeMismatch,
    NotNested,
    NotSimple,
    Disconnected,
    Degenerate,
    BadBridge,
    UndeclaredVertex,
    DuplicateVertex,
    TooFewCycles,
    CwViolation,
    NoSuchCycle,
    BadGroupTable,
    SchemaViolation,
    DanglingReference,
    QuantizationOverflow,
    DuplicateName,
    UnknownName,
};

constexpr std::string_view error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::MalformedSubset: return "MALFORMED_SUBSET";
        case ErrorCode::NoProbe: return "NO_PROBE";
        case ErrorCode::CapExceeded: return "CAP_EXCEEDED";
        case ErrorCode::LengthMismatch: return "LENGTH_MISMATCH";
        case ErrorCode::SizeMismatch: return "SIZE_MISMATCH";
        case ErrorCode::NotNested: return "NOT_NESTED";
        case ErrorCode::NotSimple: return "NOT_SIMPLE";
        case ErrorCode::Disconnected: return "DISCONNECTED";
        case ErrorCode::Degenerate: return "DEGENERATE";
        case ErrorCode::BadBridge: return "BAD_BRIDGE";
        case ErrorCode::UndeclaredVertex: return "UNDECLARED_VERTEX";
        case ErrorCode::DuplicateVertex: return "DUPLICATE_VERTEX";
        case ErrorCode::TooFewCycles: return "TOO_FEW_CYCLES";
        case ErrorCode::CwViolation: return "CW_VIOLATION";
        case ErrorCode::NoSuchCycle: return "NO_SUCH_CYCLE";
        case ErrorCode::BadGroupTable: return "BAD_GROUP_TABLE";
        case ErrorCode::SchemaViolation: return "SCHEMA_VIOLATION";
        case ErrorCode::DanglingReference: return "DANGLING_REFERENCE";
        case ErrorCode::QuantizationOverflow: return "QUANTIZATION_OVERFLOW";
        case ErrorCode::DuplicateName: return "DUPLICATE_NAME";
        case ErrorCode::UnknownName: return "UNKNOWN_NAME";
    }
    return "UNKNOWN";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace vortex
