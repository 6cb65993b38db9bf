#pragma once

// Noncommutativity, discovery of unipotent free-generator pairs
// (1+2t_a, 1+2t_b) with t^2 = 0, and bounded verification over all freely
// reduced words up to a given length.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpa/algebra.hpp"
#include "lpa/graph.hpp"
#include "lpa/ideals.hpp"
#include "lpa/repr.hpp"

namespace lpa {

struct CommutativityReport {
  bool commutative = true;
  // x, y with xy != yx when noncommutative.
  std::optional<std::pair<AlgebraElement, AlgebraElement>> witness;
  std::string note;
};

CommutativityReport is_commutative(const GraphPtr& g);

struct Witness {
  enum class Kind { SinkEdge, InfinitePathEdge, BreakingVertex };

  Kind kind = Kind::SinkEdge;
  EdgeId edge = 0;      // f in E, possibly minted
  VertexId vertex = 0;  // r(f) in E; the breaking vertex w for BreakingVertex
  VertexSet h, s;       // the pair whose quotient carries the module
  // InfinitePathEdge only, as paths in the quotient graph: r(f) -> cycle, then the cycle.
  std::optional<Path> tail_prefix;
  std::optional<Path> tail_cycle;

  bool operator==(const Witness&) const = default;
};

std::string_view to_string(Witness::Kind k);

enum class VerifyMode { Algebra, Matrix, Both };

std::string_view to_string(VerifyMode m);
/// "algebra" | "matrix" | "both"; throws ParseError.
VerifyMode parse_verify_mode(std::string_view s);

struct VerificationTranscript {
  std::size_t max_len = 0;
  VerifyMode mode = VerifyMode::Both;
  std::size_t words_checked = 0;
  bool all_nontrivial = true;
  bool cross_check = true;  // matrix_of(word) equals the matrix product; Both only
  std::optional<std::string> first_violation;
  std::optional<Matrix2> matrix_a, matrix_b;

  /// "no nontrivial relation of length <= L" or the violation found.
  std::string bound_note() const;
};

struct FreePairCertificate {
  GraphPtr graph;
  AlgebraElement t_a, t_b;
  AlgebraElement a, a_inv, b, b_inv;
  std::optional<Witness> witness;
  std::optional<ClassificationResult> classification;
  std::vector<EdgeId> minted;
  std::optional<VerificationTranscript> verification;

  GeneratorPair generators() const { return {a, a_inv, b, b_inv}; }
};

/// a = 1 + 2 t_a, b = 1 + 2 t_b. Throws NotSquareZero.
FreePairCertificate make_certificate(const AlgebraElement& t_a, const AlgebraElement& t_b);

/// Certificates in admissible-pair order, then edge order, deduplicated by the
/// generator normal forms. Throws NoWitnessFound.
std::vector<FreePairCertificate> find_free_generators(const GraphPtr& g);

/// Module and basis (q, p) in the quotient for the witness.
struct WitnessModule {
  AdmissiblePair pair;
  Module module;
  std::pair<BasisVector, BasisVector> basis;
};

/// Throws NoWitnessFound when the certificate has no witness.
WitnessModule witness_module(const FreePairCertificate& cert);

/// Number of nonempty freely reduced words of length <= L: 4 (3^L - 1) / 2.
std::size_t reduced_word_count(std::size_t max_len);

/// Exhaustive check of all nonempty reduced words of length <= max_len.
/// Throws NoWitnessFound (matrix modes without witness) or NotInvariant.
VerificationTranscript verify_free_words(const FreePairCertificate& cert, std::size_t max_len,
                                         VerifyMode mode);

}  // namespace lpa
