#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace logdiss {

enum class ErrorCode {
  // structural / input errors
  Parse,
  InvalidArgument,
  Nondeterministic,
  NonInjectiveOutput,
  UnknownSymbol,
  UnknownState,
  MissingOutput,
  MissingInitial,
  InvalidDistribution,
  MultiplyDrivenPort,
  AlphabetMismatch,
  AlphabetTooSmall,
  NonPositiveTemperature,
  // run-time / domain errors
  ForbiddenInput,
  Untestable,
  SizeLimit,
  DeviceRefused,
  NoRule,
  Halted,
  NotHalted,
  NotHalting,
  TapeOverflow,
  RepeatedConfiguration,
  IrreversibleStep,
};

std::string_view to_string(ErrorCode code) noexcept;

// True for errors caused by malformed input descriptions rather than by
// the behaviour of a valid machine.
bool is_input_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> position = std::nullopt);

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }
  // Word position, step index or line number, depending on the error.
  [[nodiscard]] std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> position_;
};

}  // namespace logdiss
