#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lpa {

enum class ErrorKind {
  // scalars
  DivisionByZero,
  MixedFieldOperands,
  ZeroConstantTerm,
  DegreeZero,
  // graph
  DuplicateName,
  DanglingEndpoint,
  BundleLoop,
  EmptyGraph,
  UnknownVertex,
  UnknownEdge,
  NotHereditarySaturated,
  NotAdmissible,
  // algebra
  UnknownSymbol,
  MixedGraphs,
  NotSquareZero,
  NotReduced,
  InvalidPath,
  // ideals
  NotBreakingVertex,
  TypeIIIMembershipUnsupported,
  NotACycle,
  TooLarge,
  // repr
  FieldMismatch,
  NotAWitnessEdge,
  NotInvariant,
  InvalidModule,
  // freeness
  NoWitnessFound,
  // io
  SchemaError,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Usage and parse errors map to CLI exit status 2; everything else is a
/// domain error (status 1).
bool is_input_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lpa
