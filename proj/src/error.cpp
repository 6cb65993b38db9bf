#include "lpa/error.hpp"

namespace lpa {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::MixedFieldOperands: return "MixedFieldOperands";
    case ErrorKind::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorKind::DegreeZero: return "DegreeZero";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::DanglingEndpoint: return "DanglingEndpoint";
    case ErrorKind::BundleLoop: return "BundleLoop";
    case ErrorKind::EmptyGraph: return "EmptyGraph";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::UnknownEdge: return "UnknownEdge";
    case ErrorKind::NotHereditarySaturated: return "NotHereditarySaturated";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::MixedGraphs: return "MixedGraphs";
    case ErrorKind::NotSquareZero: return "NotSquareZero";
    case ErrorKind::NotReduced: return "NotReduced";
    case ErrorKind::InvalidPath: return "InvalidPath";
    case ErrorKind::NotBreakingVertex: return "NotBreakingVertex";
    case ErrorKind::TypeIIIMembershipUnsupported: return "TypeIIIMembershipUnsupported";
    case ErrorKind::NotACycle: return "NotACycle";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::NotAWitnessEdge: return "NotAWitnessEdge";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::InvalidModule: return "InvalidModule";
    case ErrorKind::NoWitnessFound: return "NoWitnessFound";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Error";
}

bool is_input_error(ErrorKind kind) {
  return kind == ErrorKind::SchemaError || kind == ErrorKind::ParseError ||
         kind == ErrorKind::UnknownSymbol;
}

}  // namespace lpa
