#pragma once

#include <stdexcept>
#include <string>

namespace hhcarbon {

enum class ErrorKind {
  YearOutOfRange,
  EmptyBundle,
  EmptyCohort,
  EmptyInput,
  AllZero,
  InvalidQuantile,
  InvalidValue,
  RankDeficient,
  Underdetermined,
  NoWithinVariation,
  InsufficientPanel,
  SpecMismatch,
  MissingCreditTerm,
  InfeasibleConfig,
  Parse,
  Io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hhcarbon
