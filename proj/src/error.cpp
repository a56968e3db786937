#include "logdiss/error.hpp"

namespace logdiss {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Nondeterministic: return "Nondeterministic";
    case ErrorCode::NonInjectiveOutput: return "NonInjectiveOutput";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::UnknownState: return "UnknownState";
    case ErrorCode::MissingOutput: return "MissingOutput";
    case ErrorCode::MissingInitial: return "MissingInitial";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::MultiplyDrivenPort: return "MultiplyDrivenPort";
    case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorCode::AlphabetTooSmall: return "AlphabetTooSmall";
    case ErrorCode::NonPositiveTemperature: return "NonPositiveTemperature";
    case ErrorCode::ForbiddenInput: return "ForbiddenInput";
    case ErrorCode::Untestable: return "Untestable";
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::DeviceRefused: return "DeviceRefused";
    case ErrorCode::NoRule: return "NoRule";
    case ErrorCode::Halted: return "Halted";
    case ErrorCode::NotHalted: return "NotHalted";
    case ErrorCode::NotHalting: return "NotHalting";
    case ErrorCode::TapeOverflow: return "TapeOverflow";
    case ErrorCode::RepeatedConfiguration: return "RepeatedConfiguration";
    case ErrorCode::IrreversibleStep: return "IrreversibleStep";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Parse:
    case ErrorCode::InvalidArgument:
    case ErrorCode::Nondeterministic:
    case ErrorCode::NonInjectiveOutput:
    case ErrorCode::UnknownSymbol:
    case ErrorCode::UnknownState:
    case ErrorCode::MissingOutput:
    case ErrorCode::MissingInitial:
    case ErrorCode::InvalidDistribution:
    case ErrorCode::MultiplyDrivenPort:
    case ErrorCode::AlphabetMismatch:
    case ErrorCode::AlphabetTooSmall:
    case ErrorCode::NonPositiveTemperature:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message, std::optional<std::size_t> position)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      position_(position) {}

}  // namespace logdiss
