#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fqm {

enum class ErrorCode {
    NotAUnit,
    ModulusMismatch,
    InvalidModulus,
    UnsupportedOrder,
    OrderMismatch,
    Overflow,
    DimMismatch,
    BackendMismatch,
    InvalidParams,
    EvenModulus,
    BadDeterminant,
    Unreachable,
    TooLarge,
    BadBranch,
    NonGeneric,
    IllFormed,
    NotMetaplectic,
    NotInvertible,
    UnknownSuite,
    ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace fqm
