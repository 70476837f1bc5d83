#include "fqm/error.hpp"

namespace fqm {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotAUnit: return "NotAUnit";
        case ErrorCode::ModulusMismatch: return "ModulusMismatch";
        case ErrorCode::InvalidModulus: return "InvalidModulus";
        case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
        case ErrorCode::OrderMismatch: return "OrderMismatch";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::DimMismatch: return "DimMismatch";
        case ErrorCode::BackendMismatch: return "BackendMismatch";
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::EvenModulus: return "EvenModulus";
        case ErrorCode::BadDeterminant: return "BadDeterminant";
        case ErrorCode::Unreachable: return "Unreachable";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::BadBranch: return "BadBranch";
        case ErrorCode::NonGeneric: return "NonGeneric";
        case ErrorCode::IllFormed: return "IllFormed";
        case ErrorCode::NotMetaplectic: return "NotMetaplectic";
        case ErrorCode::NotInvertible: return "NotInvertible";
        case ErrorCode::UnknownSuite: return "UnknownSuite";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace fqm
