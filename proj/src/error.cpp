#include "hhcarbon/error.hpp"

namespace hhcarbon {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::YearOutOfRange: return "YearOutOfRange";
    case ErrorKind::EmptyBundle: return "EmptyBundle";
    case ErrorKind::EmptyCohort: return "EmptyCohort";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::AllZero: return "AllZero";
    case ErrorKind::InvalidQuantile: return "InvalidQuantile";
    case ErrorKind::InvalidValue: return "InvalidValue";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::Underdetermined: return "Underdetermined";
    case ErrorKind::NoWithinVariation: return "NoWithinVariation";
    case ErrorKind::InsufficientPanel: return "InsufficientPanel";
    case ErrorKind::SpecMismatch: return "SpecMismatch";
    case ErrorKind::MissingCreditTerm: return "MissingCreditTerm";
    case ErrorKind::InfeasibleConfig: return "InfeasibleConfig";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace hhcarbon
