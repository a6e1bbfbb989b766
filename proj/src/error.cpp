#include "flatq/error.hpp"

namespace flatq {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::DenominatorNotInvertible: return "DenominatorNotInvertible";
    case Errc::NotAUnit: return "NotAUnit";
    case Errc::BadPrime: return "BadPrime";
    case Errc::NotSplit: return "NotSplit";
    case Errc::ZeroConstantTerm: return "ZeroConstantTerm";
    case Errc::SearchCeilingExceeded: return "SearchCeilingExceeded";
    case Errc::NotCommuting: return "NotCommuting";
    case Errc::Singular: return "Singular";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::BadOrder: return "BadOrder";
    case Errc::NotGenerating: return "NotGenerating";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NotAbelian: return "NotAbelian";
    case Errc::BadParameters: return "BadParameters";
    case Errc::NotNormallyGenerating: return "NotNormallyGenerating";
    case Errc::Degenerate: return "Degenerate";
    case Errc::OrderMismatch: return "OrderMismatch";
    case Errc::InvalidConstruction: return "InvalidConstruction";
    case Errc::ParseError: return "ParseError";
    case Errc::IoError: return "IoError";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace flatq
