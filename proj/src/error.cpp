#include "tropdeg/error.hpp"

namespace tropdeg {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::LoopRejected: return "LoopRejected";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::UnknownEdge: return "UnknownEdge";
    case ErrorKind::InvalidChain: return "InvalidChain";
    case ErrorKind::NotEquivalent: return "NotEquivalent";
    case ErrorKind::NoNonnegativeTwist: return "NoNonnegativeTwist";
    case ErrorKind::InvalidSlope: return "InvalidSlope";
    case ErrorKind::IrrationalInput: return "IrrationalInput";
    case ErrorKind::NotEdgeReduced: return "NotEdgeReduced";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::WitnessUnverified: return "WitnessUnverified";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotMultitree: return "NotMultitree";
    case ErrorKind::ConditionIIViolated: return "ConditionIIViolated";
    case ErrorKind::InvalidFiltration: return "InvalidFiltration";
    case ErrorKind::InconsistentProfile: return "InconsistentProfile";
    case ErrorKind::ProfileViolatesI: return "ProfileViolatesI";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Error";
}

}  // namespace tropdeg
