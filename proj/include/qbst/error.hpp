#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qbst {

enum class ErrorCode {
  SteinerSteinerEdge,
  NegativeCost,
  RootNotTerminal,
  EmptyTerminalSet,
  SelfLoop,
  InvalidVertex,
  NoFiniteCut,
  Infeasible,
  Unbounded,
  NoFeasibleComponent,
  InvariantBreach,
  TooLarge,
  ZeroMass,
  DisconnectedAfterRetries,
  ParseError,
  InvalidArgument,
};

std::string_view code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qbst
