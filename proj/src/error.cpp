#include "qbst/error.hpp"

namespace qbst {

std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::SteinerSteinerEdge: return "SteinerSteinerEdge";
    case ErrorCode::NegativeCost: return "NegativeCost";
    case ErrorCode::RootNotTerminal: return "RootNotTerminal";
    case ErrorCode::EmptyTerminalSet: return "EmptyTerminalSet";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::InvalidVertex: return "InvalidVertex";
    case ErrorCode::NoFiniteCut: return "NoFiniteCut";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::NoFeasibleComponent: return "NoFeasibleComponent";
    case ErrorCode::InvariantBreach: return "InvariantBreach";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ZeroMass: return "ZeroMass";
    case ErrorCode::DisconnectedAfterRetries: return "DisconnectedAfterRetries";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace qbst
