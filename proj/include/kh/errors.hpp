#pragma once

#include <stdexcept>
#include <string>

namespace kh {

enum class ErrorKind {
    MalformedSyntax,
    EdgeCountViolation,
    NonOrientable,
    InvalidLetter,
    UnknownName,
    InvalidComponentIndex,
    NotACable,
    BitAlreadyOne,
    MissingBasepoint,
    ResourceLimit,
    TooLarge,
    InconsistentComplex,
    NotPlanar,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    // exit-code classification used by the CLI: 2 = bad input, 3 = resource cap
    bool is_input_error() const noexcept {
        return kind_ != ErrorKind::ResourceLimit && kind_ != ErrorKind::TooLarge &&
               kind_ != ErrorKind::InconsistentComplex;
    }

private:
    ErrorKind kind_;
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::MalformedSyntax: return "MalformedSyntax";
        case ErrorKind::EdgeCountViolation: return "EdgeCountViolation";
        case ErrorKind::NonOrientable: return "NonOrientable";
        case ErrorKind::InvalidLetter: return "InvalidLetter";
        case ErrorKind::UnknownName: return "UnknownName";
        case ErrorKind::InvalidComponentIndex: return "InvalidComponentIndex";
        case ErrorKind::NotACable: return "NotACable";
        case ErrorKind::BitAlreadyOne: return "BitAlreadyOne";
        case ErrorKind::MissingBasepoint: return "MissingBasepoint";
        case ErrorKind::ResourceLimit: return "ResourceLimit";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::InconsistentComplex: return "InconsistentComplex";
        case ErrorKind::NotPlanar: return "NotPlanar";
    }
    return "Error";
}

} // namespace kh
